//! End-to-end acceptance checks. Every comparison is exact.

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::sync::Arc;

use num_traits::{One, Zero};
use wreath_fusion::algebra::{AlgebraElement, WreathGroup};
use wreath_fusion::fusion::{fusion_idempotent, jm_idempotent, FusionConfig};
use wreath_fusion::groups::GroupData;
use wreath_fusion::scalar::{Cyclotomic, Poly, Rational};
use wreath_fusion::shapes::{
    fg_product, fgt_eval, ft_function, hook_product, multipartitions, standard_tableaux, MultiPartition,
    StandardMultiTableau,
};
use wreath_fusion::verify::{
    check_system, compute_idempotents, perturb, verify_idempotent_system, verify_relations, Construction,
};

fn criterion(number: u32, title: &str, body: impl FnOnce()) {
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let verdict = if outcome.is_ok() { "pass" } else { "FAIL" };
    println!("criterion {number} ({title}): {verdict}");
    if let Err(e) = outcome {
        resume_unwind(e);
    }
}

fn group(name: &str) -> Arc<GroupData> {
    GroupData::from_spec(&name.parse().unwrap()).unwrap()
}

fn q(p: i64, r: i64) -> Cyclotomic {
    Cyclotomic::ratio(p, r).unwrap()
}

fn int(i: i64) -> Cyclotomic {
    Cyclotomic::from_int(i)
}

fn tableau(s: &str, m: usize) -> StandardMultiTableau {
    StandardMultiTableau::parse(s, m).unwrap()
}

/// Elements of `G` of the given order.
fn of_order(g: &GroupData, k: usize) -> Vec<usize> {
    (0..g.order()).filter(|&x| g.table.element_order(x) == k).collect()
}

/// `(1/|X|) sum_{x in X} x` placed in slot `j`, built element by element.
fn average(ctx: &Arc<WreathGroup>, j: usize, xs: &[usize]) -> AlgebraElement {
    let w = q(1, xs.len() as i64);
    xs.iter()
        .fold(AlgebraElement::zero(ctx), |acc, &x| &acc + &AlgebraElement::g(ctx, j, x).unwrap().scale(&w))
}

/// `(1/|G|) sum_g g_i g_j^{-1}`, built element by element.
fn e_ij(ctx: &Arc<WreathGroup>, g: &GroupData, i: usize, j: usize) -> AlgebraElement {
    let w = q(1, g.order() as i64);
    (0..g.order()).fold(AlgebraElement::zero(ctx), |acc, x| {
        let term = &AlgebraElement::g(ctx, i, x).unwrap() * &AlgebraElement::g(ctx, j, g.table.inv(x)).unwrap();
        &acc + &term.scale(&w)
    })
}

fn s(ctx: &Arc<WreathGroup>, i: usize) -> AlgebraElement {
    AlgebraElement::s(ctx, i).unwrap()
}

fn prod(factors: &[&AlgebraElement]) -> AlgebraElement {
    let mut it = factors.iter();
    let first = (*it.next().unwrap()).clone();
    it.fold(first, |acc, f| &acc * *f)
}

fn class_index(g: &GroupData, members: &[usize]) -> usize {
    g.classes.class_of[members[0]]
}

#[test]
fn criterion_1_golden_spectral_data() {
    criterion(1, "golden S3 eigenvalues and g(v)", || {
        let g = group("S3");
        let transp = class_index(&g, &of_order(&g, 2));
        let cycles = class_index(&g, &of_order(&g, 3));
        let id = g.classes.class_of[g.table.identity()];
        let sign = (0..3).find(|&nu| g.degrees()[nu] == 1 && g.spectral.xi[nu][transp] != int(1)).unwrap();
        let trivial = (0..3).find(|&nu| g.degrees()[nu] == 1 && nu != sign).unwrap();
        let standard = (0..3).find(|&nu| g.degrees()[nu] == 2).unwrap();
        let xi = &g.spectral.xi;
        let expect = [
            (transp, [int(1), int(-1), int(0)]),
            (cycles, [int(1), int(1), q(-1, 2)]),
            (id, [int(1), int(1), int(1)]),
        ];
        for (alpha, row) in expect {
            assert_eq!(xi[trivial][alpha], row[0]);
            assert_eq!(xi[sign][alpha], row[1]);
            assert_eq!(xi[standard][alpha], row[2]);
        }
        let p = |cs: &[i64]| Poly::new(cs.iter().map(|&c| int(c)).collect());
        let pq = |cs: &[Cyclotomic]| Poly::new(cs.to_vec());
        // g^2 + v g + v^2 - 1
        assert_eq!(g.spectral.a_polys[transp], vec![p(&[-1, 0, 1]), p(&[0, 1]), p(&[1])]);
        // g + v - 1/2
        assert_eq!(g.spectral.a_polys[cycles], vec![pq(&[q(-1, 2), int(1)]), p(&[1])]);
        // 1
        assert_eq!(g.spectral.a_polys[id], vec![p(&[1])]);
    });
}

struct S3Golden {
    g: Arc<GroupData>,
    transp: Vec<usize>,
    cycles: Vec<usize>,
}

impl S3Golden {
    fn new() -> Self {
        let g = group("S3");
        let transp = of_order(&g, 2);
        let cycles = of_order(&g, 3);
        S3Golden { g, transp, cycles }
    }

    fn g1(&self, ctx: &Arc<WreathGroup>, j: usize) -> AlgebraElement {
        average(ctx, j, &self.transp)
    }

    fn g2(&self, ctx: &Arc<WreathGroup>, j: usize) -> AlgebraElement {
        average(ctx, j, &self.cycles)
    }

    /// `((g1)^2 + g1)(g2 + 1/2)` in slot `j`.
    fn trivial_factor(&self, ctx: &Arc<WreathGroup>, j: usize) -> AlgebraElement {
        let g1 = self.g1(ctx, j);
        &(&g1.pow(2) + &g1) * &self.g2(ctx, j).add_scalar(&q(1, 2))
    }

    /// `((g1)^2 - 1)(g2 - 1)` in slot `j`.
    fn standard_factor(&self, ctx: &Arc<WreathGroup>, j: usize) -> AlgebraElement {
        &self.g1(ctx, j).pow(2).add_scalar(&int(-1)) * &self.g2(ctx, j).add_scalar(&int(-1))
    }
}

#[test]
fn criterion_2_golden_idempotents() {
    criterion(2, "golden idempotents", || {
        let gold = S3Golden::new();
        let g = &gold.g;
        let full = |n| FusionConfig::full(g, n).unwrap();

        let c1 = full(1);
        let x1 = c1.ctx();
        let e1 = gold.trivial_factor(x1, 1).scale(&q(1, 3));
        assert_eq!(fusion_idempotent(&tableau("1:(1,1,1)", 3), &c1).unwrap(), e1);

        let c2 = full(2);
        let x2 = c2.ctx();
        let e1_in_2 = gold.trivial_factor(x2, 1).scale(&q(1, 3));
        let e12 = (&gold.standard_factor(x2, 2) * &e1_in_2).scale(&q(2, 3));
        let t12 = tableau("1:(1,1,1) 2:(3,1,1)", 3);
        assert_eq!(fusion_idempotent(&t12, &c2).unwrap(), e12);
        let second = (&gold.standard_factor(x2, 2) * &gold.trivial_factor(x2, 1)).scale(&q(2, 9));
        assert_eq!(e12, second);

        let c3 = full(3);
        let x3 = c3.ctx();
        let e12_in_3 = e12.embed(x3).unwrap();
        let tail = (&gold.trivial_factor(x3, 3) * &e12_in_3).scale(&q(9, 2));
        let s1_10 = &s(x3, 1) + &e_ij(x3, g, 1, 2);
        let s2_10 = &s(x3, 2) + &e_ij(x3, g, 2, 3);
        let short = prod(&[&s(x3, 2), &s1_10, &s(x3, 1), &s(x3, 2), &tail]).scale(&q(1, 27));
        let long = prod(&[&s2_10, &s1_10, &s(x3, 1), &s(x3, 2), &tail]).scale(&q(1, 27));
        assert_eq!(short, long);
        let t132 = tableau("1:(1,1,1) 2:(3,1,1) 3:(1,1,2)", 3);
        assert_eq!(fusion_idempotent(&t132, &c3).unwrap(), short);

        // Transposition class sums alone already separate the irreducibles.
        let transp = class_index(g, &gold.transp);
        let only = |n| FusionConfig::with_classes(g, n, &[transp]).unwrap();
        let a = |x: &Arc<WreathGroup>, j| &gold.g1(x, j).pow(2) + &gold.g1(x, j);
        let b = |x: &Arc<WreathGroup>, j| gold.g1(x, j).pow(2).add_scalar(&int(-1));
        let o1 = only(1);
        assert_eq!(fusion_idempotent(&tableau("1:(1,1,1)", 3), &o1).unwrap(), a(o1.ctx(), 1).scale(&q(1, 2)));
        let o2 = only(2);
        let want = (&b(o2.ctx(), 2) * &a(o2.ctx(), 1)).scale(&q(-1, 2));
        assert_eq!(fusion_idempotent(&t12, &o2).unwrap(), want);
        let o3 = only(3);
        let y = o3.ctx();
        let s1_10 = &s(y, 1) + &e_ij(y, g, 1, 2);
        let want = prod(&[&s(y, 2), &s1_10, &s(y, 1), &s(y, 2), &a(y, 3), &b(y, 2), &a(y, 1)]).scale(&q(-1, 8));
        assert_eq!(fusion_idempotent(&t132, &o3).unwrap(), want);

        // Cyclic group of order three with the generator family.
        let c = group("C3");
        let ab = FusionConfig::abelian(&c, 3, None).unwrap();
        let z = ab.ctx();
        let member = &ab.family().members[0];
        let t = member.element[0].0;
        let xi = &member.xi;
        let mut roots = xi.clone();
        roots.sort_by_key(ToString::to_string);
        let mut cube_roots: Vec<Cyclotomic> = (0..3).map(|k| Cyclotomic::root_of_unity(3, k).unwrap()).collect();
        cube_roots.sort_by_key(ToString::to_string);
        assert_eq!(roots, cube_roots);
        let poly = |slot: usize, x: &Cyclotomic| {
            let tt = AlgebraElement::g(z, slot, t).unwrap();
            &(&tt.pow(2) + &tt.scale(x)) + &AlgebraElement::scalar(z, x.pow(2))
        };
        let s1_10 = &s(z, 1) + &e_ij(z, &c, 1, 2);
        let coefficient = (&xi[0].pow(2) * &xi[2]).checked_div(&int(54)).unwrap();
        let want = prod(&[&s(z, 2), &s1_10, &s(z, 1), &s(z, 2), &poly(3, &xi[0]), &poly(2, &xi[2]), &poly(1, &xi[0])])
            .scale(&coefficient);
        assert_eq!(fusion_idempotent(&t132, &ab).unwrap(), want);
    });
}

#[test]
fn criterion_3_golden_coefficients() {
    criterion(3, "golden F and F^G", || {
        let g = group("S3");
        let fam = FusionConfig::full(&g, 1).unwrap().family().clone();
        let transp = class_index(&g, &of_order(&g, 2));
        let standard = (0..3).find(|&nu| g.degrees()[nu] == 2).unwrap();
        let trivial = (0..3).find(|&nu| g.degrees()[nu] == 1 && g.spectral.xi[nu][transp] == int(1)).unwrap();
        assert_eq!((trivial, standard), (0, 2), "components follow the irreducible order");
        let shape = |s: &str| s.parse::<MultiPartition>().unwrap();
        for (s, f, fg) in [
            ("[1],[],[]", 1, q(3, 1)),
            ("[1],[],[1]", 1, q(9, 2)),
            ("[2],[],[1]", 2, q(27, 2)),
        ] {
            assert_eq!(hook_product(&shape(s)), Rational::from_integer(f.into()), "{s}");
            assert_eq!(fg_product(&shape(s), &fam), fg, "{s}");
        }
        let c = group("C3");
        let ab = FusionConfig::abelian(&c, 3, None).unwrap();
        let xi = &ab.family().members[0].xi;
        let want = (&xi[0].pow(2) * &xi[2]).inv().unwrap().scale(&Rational::from_integer(27.into()));
        assert_eq!(fg_product(&shape("[2],[],[1]"), ab.family()), want);
    });
}

const GRID: [(&str, usize); 4] = [("C2", 3), ("C3", 3), ("C2xC2", 2), ("S3", 3)];

#[test]
fn criterion_4_and_5_complete_system_and_oracle() {
    let mut reports = Vec::new();
    for (name, max_n) in GRID {
        let g = group(name);
        for n in 1..=max_n {
            let cfg = FusionConfig::full(&g, n).unwrap();
            reports.push(verify_idempotent_system(&cfg, Construction::Both).unwrap());
        }
    }
    criterion(4, "complete orthogonal system with eigenvalues", || {
        for r in &reports {
            for label in ["idempotent", "orthogonal", "complete", "eigen-g", "eigen-j"] {
                let c = r.check(label).unwrap_or_else(|| panic!("{} n={} lacks {label}", r.group, r.n));
                assert!(c.passed(), "{}", r.to_human());
            }
        }
    });
    criterion(5, "fusion equals the Jucys-Murphy oracle", || {
        for r in &reports {
            assert!(r.check("constructions").unwrap().passed(), "{}", r.to_human());
        }
    });
}

#[test]
fn criterion_6_abelian_mode() {
    criterion(6, "generator family equals class-sum family", || {
        for name in ["C2", "C3", "C2xC2"] {
            let g = group(name);
            for n in 1..=3 {
                let full = FusionConfig::full(&g, n).unwrap();
                let ab = FusionConfig::abelian(&g, n, None).unwrap();
                let a = compute_idempotents(&full, Construction::Fusion).unwrap();
                let b = compute_idempotents(&ab, Construction::Fusion).unwrap();
                assert_eq!(a, b, "{name} n={n}");
                let r = verify_idempotent_system(&ab, Construction::Both).unwrap();
                assert!(r.passed(), "{}", r.to_human());
            }
        }
    });
}

#[test]
fn criterion_7_relation_suites() {
    criterion(7, "algebraic relations", || {
        for name in ["C2", "S3"] {
            let cfg = FusionConfig::full(&group(name), 3).unwrap();
            let r = verify_relations(&cfg, 20, 11).unwrap();
            assert!(r.passed(), "{}", r.to_human());
            for label in ["yang-baxter", "unitarity", "reflection"] {
                assert!(r.check(label).unwrap().instances >= 20, "{label}");
            }
        }
        for name in ["trivial", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3"] {
            let g = group(name);
            for n in 2..=4 {
                let cfg = FusionConfig::full(&g, n).unwrap();
                let r = verify_relations(&cfg, 1, 0).unwrap();
                assert!(r.passed(), "{}", r.to_human());
                for label in ["rel-sn", "s-e", "e-commute", "e-conjugate", "e-braid", "jm-commute", "jm-s", "jm-g", "char-g"] {
                    assert!(r.check(label).is_some(), "{label}");
                }
                assert!(r.check("jm-shift").unwrap().instances > 0);
            }
        }
    });
}

/// Hook lengths computed cell by cell.
fn hooks(shape: &MultiPartition) -> Rational {
    let mut out = Rational::one();
    for rows in shape.components() {
        for (r, &len) in rows.iter().enumerate() {
            for c in 0..len {
                let below = rows[r + 1..].iter().filter(|&&l| l > c).count();
                out *= Rational::from_integer(((len - c - 1) + below + 1).into());
            }
        }
    }
    out
}

/// `F_T(c_N)` after cancelling equal linear factors of numerator and denominator.
fn ft_limit(t: &StandardMultiTableau) -> Rational {
    let n = t.size();
    let last = t.node(n);
    let cn = last.content();
    let mut num = vec![cn];
    let mut den = vec![0];
    for i in 1..n {
        let node = t.node(i);
        let c = node.content();
        num.extend([c, c]);
        if node.component == last.component {
            den.extend([c + 1, c - 1]);
        } else {
            den.extend([c, c]);
        }
    }
    let mut k = 0;
    while k < num.len() {
        if let Some(j) = den.iter().position(|&d| d == num[k]) {
            den.swap_remove(j);
            num.swap_remove(k);
        } else {
            k += 1;
        }
    }
    let at = |roots: &[i64]| roots.iter().fold(Rational::one(), |acc, &r| acc * Rational::from_integer((cn - r).into()));
    let (a, b) = (at(&num), at(&den));
    assert!(!b.is_zero(), "pole left after cancellation");
    a / b
}

#[test]
fn criterion_8_evaluation_identities() {
    criterion(8, "evaluation of F_T and F^G_T", || {
        let g = group("S3");
        let fam = FusionConfig::full(&g, 1).unwrap().family().clone();
        for m in 1..=3 {
            for n in 1..=4 {
                for shape in multipartitions(m, n) {
                    for t in standard_tableaux(&shape) {
                        let mu = t.restrict();
                        let expect = hooks(mu.shape()) / hooks(&shape);
                        assert_eq!(hook_product(mu.shape()) / hook_product(&shape), expect);
                        assert_eq!(ft_limit(&t), expect, "{t}");
                        let c = Cyclotomic::from_int(t.node(n).content());
                        assert_eq!(ft_function(&t).eval(&c).unwrap(), Cyclotomic::from_rational(expect), "{t}");
                        if m == 3 {
                            let p = t.node(n).component - 1;
                            let v: Vec<Cyclotomic> = fam.members.iter().map(|x| x.xi[p].clone()).collect();
                            let direct = fam.members.iter().fold(Cyclotomic::one(), |acc, x| {
                                x.values.iter().filter(|y| **y != x.xi[p]).fold(acc, |acc, y| {
                                    &acc * &(&x.xi[p] - y).inv().unwrap()
                                })
                            });
                            let ratio = fg_product(mu.shape(), &fam).checked_div(&fg_product(&shape, &fam)).unwrap();
                            assert_eq!(fgt_eval(&t, &fam, &v).unwrap(), ratio, "{t}");
                            assert_eq!(direct, ratio, "{t}");
                        }
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_9_negative_controls() {
    criterion(9, "perturbed idempotents are rejected", || {
        for (name, n) in [("C2", 2), ("S3", 2), ("C3", 2)] {
            let cfg = FusionConfig::full(&group(name), n).unwrap();
            let items = compute_idempotents(&cfg, Construction::Fusion).unwrap();
            let size = cfg.group().order().pow(n as u32) as u64 * (1..=n as u64).product::<u64>();
            for (t, e) in &items {
                for code in 0..size {
                    for delta in [int(1), q(-1, 7)] {
                        let bad = perturb(e, code, &delta);
                        let checks = check_system(&cfg, &[(t.clone(), bad)]);
                        let idem = checks.iter().find(|c| c.label == "idempotent").unwrap();
                        assert!(!idem.passed(), "{name} {t} code {code}");
                        let ce = idem.counterexample.as_ref().unwrap();
                        let replay = AlgebraElement::parse_structured(cfg.ctx(), &ce.element).unwrap();
                        assert_ne!(&replay * &replay, replay);
                    }
                }
            }
        }
        let cfg = FusionConfig::full(&group("S3"), 2).unwrap();
        let t = tableau("1:(1,1,1) 2:(3,1,1)", 3);
        assert_eq!(fusion_idempotent(&t, &cfg).unwrap(), jm_idempotent(&t, &cfg).unwrap());
    });
}
