use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{check_cap, residual, CheckResult, VerificationReport};
use crate::algebra::{AlgebraElement, RatAlgebraElement};
use crate::error::{Error, Result};
use crate::fusion::{baxterized_s, baxterized_s_active, member_poly, FusionConfig};
use crate::scalar::{Cyclotomic, Poly, Rational};

const HEIGHT: i64 = 100;

/// `k` distinct rationals with numerator and denominator bounded by 100.
pub fn random_parameters(rng: &mut impl Rng, k: usize) -> Vec<Cyclotomic> {
    let mut out: Vec<Cyclotomic> = Vec::with_capacity(k);
    while out.len() < k {
        let p = rng.gen_range(-HEIGHT..=HEIGHT);
        let q = rng.gen_range(1..=HEIGHT);
        let c = Cyclotomic::from_rational(Rational::new(p.into(), q.into()));
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

fn show(params: &[(&str, &Cyclotomic)]) -> String {
    params.iter().map(|(k, v)| format!("{k} = {v}")).collect::<Vec<_>>().join(", ")
}

/// Precomputed generators of one wreath product.
struct Gens {
    cfg: FusionConfig,
    one: AlgebraElement,
    /// `s[i]` for `i` in `1..n`, index 0 unused.
    s: Vec<AlgebraElement>,
    /// `e[i][j]`, 1-based.
    e: Vec<Vec<AlgebraElement>>,
    /// `jm[k]`, 1-based.
    jm: Vec<AlgebraElement>,
}

impl Gens {
    fn new(cfg: &FusionConfig) -> Result<Self> {
        let ctx = cfg.ctx();
        let n = cfg.n();
        let one = AlgebraElement::one(ctx);
        let mut s = vec![one.clone()];
        for i in 1..n {
            s.push(AlgebraElement::s(ctx, i)?);
        }
        let mut e = vec![vec![one.clone(); n + 1]; n + 1];
        for i in 1..=n {
            for j in 1..=n {
                e[i][j] = AlgebraElement::e(ctx, i, j)?;
            }
        }
        let mut jm = vec![AlgebraElement::zero(ctx)];
        for k in 1..=n {
            jm.push(AlgebraElement::jucys_murphy(ctx, k)?);
        }
        Ok(Gens { cfg: cfg.clone(), one, s, e, jm })
    }

    fn n(&self) -> usize {
        self.cfg.n()
    }

    /// Image of `j` under the transposition of `k` and `k+1`.
    fn pi(k: usize, j: usize) -> usize {
        if j == k {
            k + 1
        } else if j == k + 1 {
            k
        } else {
            j
        }
    }

    /// `s_a s_{a+1} .. s_{b-1}` skipping `s_skip`.
    fn run(&self, a: usize, b: usize, skip: Option<usize>) -> AlgebraElement {
        (a..b).filter(|&i| Some(i) != skip).fold(self.one.clone(), |acc, i| &acc * &self.s[i])
    }

    fn rel_sn(&self) -> CheckResult {
        let n = self.n();
        let mut out = Vec::new();
        for i in 1..n {
            out.push((format!("s_{i}^2"), residual(&(&self.s[i] * &self.s[i]), &self.one)));
        }
        for i in 1..n.saturating_sub(1) {
            let (a, b) = (&self.s[i], &self.s[i + 1]);
            out.push((format!("braid i = {i}"), residual(&(&(a * b) * a), &(&(b * a) * b))));
        }
        for i in 1..n {
            for j in i + 2..n {
                let (a, b) = (&self.s[i], &self.s[j]);
                out.push((format!("i = {i}, j = {j}"), residual(&(a * b), &(b * a))));
            }
        }
        CheckResult::collect("rel-sn", "s_i^2 = 1, s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}, s_i s_j = s_j s_i", out)
    }

    fn s_e(&self) -> CheckResult {
        let n = self.n();
        let mut out = Vec::new();
        for k in 1..n {
            for i in 1..=n {
                for j in 1..=n {
                    let lhs = &self.s[k] * &self.e[i][j];
                    let rhs = &self.e[Self::pi(k, i)][Self::pi(k, j)] * &self.s[k];
                    out.push((format!("k = {k}, i = {i}, j = {j}"), residual(&lhs, &rhs)));
                }
            }
        }
        CheckResult::collect("s-e", "s_k e_{i,j} = e_{pi_k(i),pi_k(j)} s_k", out)
    }

    fn e_e(&self) -> Vec<CheckResult> {
        let n = self.n();
        let mut commute = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                for k in 1..=n {
                    for l in k + 1..=n {
                        if [k, l].iter().any(|x| *x == i || *x == j) {
                            continue;
                        }
                        let (a, b) = (&self.e[i][j], &self.e[k][l]);
                        commute.push((format!("({i},{j}), ({k},{l})"), residual(&(a * b), &(b * a))));
                    }
                }
            }
        }
        let mut conj = Vec::new();
        for i in 1..n {
            for k in 1..=n {
                for l in 1..=n {
                    let lhs = &self.e[i][i + 1] * &self.e[k][l];
                    let rhs = &self.e[Self::pi(i, k)][Self::pi(i, l)] * &self.e[i][i + 1];
                    conj.push((format!("i = {i}, k = {k}, l = {l}"), residual(&lhs, &rhs)));
                }
            }
        }
        let mut braid = Vec::new();
        for i in 1..n.saturating_sub(1) {
            let (a, b) = (&self.e[i][i + 1], &self.e[i + 1][i + 2]);
            braid.push((format!("i = {i}"), residual(&(&(a * b) * a), &(&(b * a) * b))));
        }
        vec![
            CheckResult::collect("e-commute", "e_{i,j} e_{k,l} = e_{k,l} e_{i,j}, {i,j} and {k,l} disjoint", commute),
            CheckResult::collect("e-conjugate", "e_{i,i+1} e_{k,l} = e_{pi_i(k),pi_i(l)} e_{i,i+1}", conj),
            CheckResult::collect("e-braid", "e_{i,i+1} e_{i+1,i+2} e_{i,i+1} = e_{i+1,i+2} e_{i,i+1} e_{i+1,i+2}", braid),
        ]
    }

    fn jm_relations(&self) -> Vec<CheckResult> {
        let n = self.n();
        let ctx = self.cfg.ctx();
        let mut commute = Vec::new();
        for k in 1..=n {
            for l in k + 1..=n {
                let (a, b) = (&self.jm[k], &self.jm[l]);
                commute.push((format!("k = {k}, l = {l}"), residual(&(a * b), &(b * a))));
            }
        }
        let mut with_s = Vec::new();
        for k in 1..=n {
            for i in (1..n).filter(|&i| i + 1 != k && i != k) {
                let (a, b) = (&self.s[i], &self.jm[k]);
                with_s.push((format!("i = {i}, k = {k}"), residual(&(a * b), &(b * a))));
            }
        }
        let mut with_g = Vec::new();
        for k in 1..=n {
            for l in 1..=n {
                for g in 0..self.cfg.group().order() {
                    let x = AlgebraElement::g(ctx, l, g).expect("valid slot");
                    let b = &self.jm[k];
                    with_g.push((format!("g = {g}, l = {l}, k = {k}"), residual(&(&x * b), &(b * &x))));
                }
            }
        }
        vec![
            CheckResult::collect("jm-commute", "j_k j_l = j_l j_k", commute),
            CheckResult::collect("jm-s", "s_i j_k = j_k s_i for i != k-1, k", with_s),
            CheckResult::collect("jm-g", "g_l j_k = j_k g_l", with_g),
        ]
    }

    fn char_g(&self) -> CheckResult {
        let group = self.cfg.group();
        let ctx = self.cfg.ctx();
        let mut out = Vec::new();
        for j in 1..=self.n() {
            for (a, values) in group.spectral.values.iter().enumerate() {
                let g = AlgebraElement::class_sum(ctx, j, a).expect("valid slot and class");
                let prod = values.iter().fold(self.one.clone(), |acc, xi| &acc * &g.add_scalar(&-xi));
                out.push((format!("j = {j}, class {a}"), (!prod.is_zero()).then(|| prod.to_structured())));
            }
        }
        CheckResult::collect("char-g", "prod_{xi in S} (g_j - xi) = 0", out)
    }

    fn jm_shift(&self) -> CheckResult {
        let n = self.n();
        let mut out = Vec::new();
        for l in 1..n {
            let run = self.run(l, n, None);
            let lhs = &self.jm[l] * &run;
            let mut rhs = &run * &self.jm[n];
            for k in l..n {
                rhs = &rhs - &(&self.run(l, n, Some(k)) * &self.e[k][n]);
            }
            out.push((format!("l = {l}"), residual(&lhs, &rhs)));
        }
        CheckResult::collect(
            "jm-shift",
            "j_l s_l..s_{n-1} = s_l..s_{n-1} j_n - sum_k s_l..(no s_k)..s_{n-1} e_{k,n}",
            out,
        )
    }

    fn bax(&self, i: usize, c: &Cyclotomic, c2: &Cyclotomic) -> AlgebraElement {
        baxterized_s(self.cfg.ctx(), i, c, c2).expect("distinct parameters")
    }

    fn yang_baxter(&self, params: &[Vec<Cyclotomic>]) -> CheckResult {
        let n = self.n();
        let out: Vec<_> = params
            .par_iter()
            .flat_map_iter(|p| {
                let (c, c1, c2) = (&p[0], &p[1], &p[2]);
                (1..n.saturating_sub(1)).map(move |i| {
                    let lhs = &(&self.bax(i, c, c1) * &self.bax(i + 1, c, c2)) * &self.bax(i, c1, c2);
                    let rhs = &(&self.bax(i + 1, c1, c2) * &self.bax(i, c, c2)) * &self.bax(i + 1, c, c1);
                    (format!("i = {i}, {}", show(&[("c", c), ("c'", c1), ("c''", c2)])), residual(&lhs, &rhs))
                })
            })
            .collect();
        CheckResult::collect(
            "yang-baxter",
            "s_i(c,c') s_{i+1}(c,c'') s_i(c',c'') = s_{i+1}(c',c'') s_i(c,c'') s_{i+1}(c,c')",
            out,
        )
    }

    fn far_commute(&self, params: &[Vec<Cyclotomic>]) -> CheckResult {
        let n = self.n();
        let out: Vec<_> = params
            .par_iter()
            .flat_map_iter(|p| {
                let (c, c1, d, d1) = (&p[0], &p[1], &p[2], &p[3]);
                (1..n).flat_map(move |i| {
                    (i + 2..n).map(move |j| {
                        let (a, b) = (self.bax(i, c, c1), self.bax(j, d, d1));
                        let at = format!("i = {i}, j = {j}, {}", show(&[("c", c), ("c'", c1), ("d", d), ("d'", d1)]));
                        (at, residual(&(&a * &b), &(&b * &a)))
                    })
                })
            })
            .collect();
        CheckResult::collect("far-commute", "s_i(c,c') s_j(d,d') = s_j(d,d') s_i(c,c') for |i-j| > 1", out)
    }

    fn unitarity(&self, params: &[Vec<Cyclotomic>]) -> CheckResult {
        let n = self.n();
        let out: Vec<_> = params
            .par_iter()
            .flat_map_iter(|p| {
                let (c, c1) = (&p[0], &p[1]);
                (1..n).map(move |i| {
                    let lhs = &self.bax(i, c, c1) * &self.bax(i, c1, c);
                    let e = &self.e[i][i + 1];
                    let d = (c - c1).pow(2).inv().expect("distinct parameters");
                    let rhs = &self.one - &(e * e).scale(&d);
                    (format!("i = {i}, {}", show(&[("c", c), ("c'", c1)])), residual(&lhs, &rhs))
                })
            })
            .collect();
        CheckResult::collect("unitarity", "s_i(c,c') s_i(c',c) = 1 - e_{i,i+1}^2 / (c-c')^2", out)
    }

    /// The same identity with `c = u` kept symbolic.
    fn unitarity_symbolic(&self, params: &[Vec<Cyclotomic>]) -> Result<CheckResult> {
        let ctx = self.cfg.ctx();
        let mut out = Vec::new();
        for p in params {
            let c1 = &p[0];
            for i in 1..self.n() {
                let e = &self.e[i][i + 1];
                let left = baxterized_s_active(ctx, i, c1)?;
                // s_i(c', u) = ((u - c') s_i - e) / (u - c')
                let right = RatAlgebraElement::linear_over(&self.s[i], &-e, c1);
                let lhs = left.checked_mul(&right)?;
                let sq = Poly::from_roots([c1, c1]);
                let rhs = RatAlgebraElement::constant(self.one.clone())
                    .checked_add(&RatAlgebraElement::new(ctx, vec![-&(e * e)], sq)?)?;
                let ok = lhs.equals(&rhs)?;
                out.push((
                    format!("i = {i}, {}", show(&[("c'", c1)])),
                    (!ok).then(|| format!("lhs: {lhs}\nrhs: {rhs}\n")),
                ));
            }
        }
        Ok(CheckResult::collect("unitarity-u", "s_i(u,c') s_i(c',u) = 1 - e_{i,i+1}^2 / (u-c')^2 in u", out))
    }

    fn reflection(&self, params: &[Vec<Cyclotomic>]) -> CheckResult {
        let ctx = self.cfg.ctx();
        let n = self.n();
        let members = &self.cfg.family().members;
        let out: Vec<_> = params
            .par_iter()
            .flat_map_iter(|p| {
                let (c, c1) = (&p[0], &p[1]);
                (1..n).flat_map(move |i| {
                    members.iter().map(move |m| {
                        let gc = member_poly(ctx, i, m, c).expect("valid slot");
                        let gc1 = member_poly(ctx, i, m, c1).expect("valid slot");
                        let b = self.bax(i, c, c1);
                        let s = &self.s[i];
                        let lhs = &(&(&b * &gc) * s) * &gc1;
                        let rhs = &(&(&gc1 * s) * &gc) * &b;
                        let at = format!("i = {i}, {}, {}", m.label, show(&[("c", c), ("c'", c1)]));
                        (at, residual(&lhs, &rhs))
                    })
                })
            })
            .collect();
        CheckResult::collect("reflection", "s_i(c,c') g_i(c) s_i g_i(c') = g_i(c') s_i g_i(c) s_i(c,c')", out)
    }
}

/// Every relation among the generators, Jucys-Murphy elements and baxterized
/// elements of one wreath product. Parameter-dependent identities use
/// `trials` tuples drawn from `seed`.
pub fn verify_relations(cfg: &FusionConfig, trials: usize, seed: u64) -> Result<VerificationReport> {
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    check_cap(cfg.group().order(), cfg.n())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |k: usize| -> Vec<Vec<Cyclotomic>> { (0..trials).map(|_| random_parameters(&mut rng, k)).collect() };
    let yb = draw(3);
    let far = draw(4);
    let unit = draw(2);
    let unit_u = draw(1);
    let refl = draw(2);
    let g = Gens::new(cfg)?;
    let mut checks = vec![g.rel_sn(), g.s_e()];
    checks.extend(g.e_e());
    checks.extend(g.jm_relations());
    checks.push(g.char_g());
    checks.push(g.jm_shift());
    checks.push(g.yang_baxter(&yb));
    checks.push(g.far_commute(&far));
    checks.push(g.unitarity(&unit));
    checks.push(g.unitarity_symbolic(&unit_u)?);
    checks.push(g.reflection(&refl));
    Ok(VerificationReport {
        suite: "relations".into(),
        group: cfg.group().table.name().to_string(),
        n: cfg.n(),
        mode: cfg.mode_label(),
        construction: None,
        seed: Some(seed),
        trials: Some(trials),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupData;

    #[test]
    fn parameters_are_distinct_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let p = random_parameters(&mut rng, 4);
            for (i, x) in p.iter().enumerate() {
                let r = x.to_rational().unwrap();
                assert!(r.numer().magnitude() <= &100u32.into() && r.denom() <= &100.into());
                assert!(p[..i].iter().all(|y| y != x));
            }
        }
    }

    #[test]
    fn c2_rank_three_holds_and_is_deterministic() {
        let g = GroupData::from_spec(&"C2".parse().unwrap()).unwrap();
        let cfg = FusionConfig::full(&g, 3).unwrap();
        let a = verify_relations(&cfg, 3, 11).unwrap();
        assert!(a.passed(), "{}", a.to_human());
        assert_eq!(a, verify_relations(&cfg, 3, 11).unwrap());
        assert!(verify_relations(&cfg, 0, 11).is_err());
    }
}
