use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{check_cap, residual, CheckResult, VerificationReport};
use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::fusion::{fusion_idempotent, jm_idempotent, FusionConfig};
use crate::scalar::Cyclotomic;
use crate::shapes::{multipartitions, standard_tableaux, StandardMultiTableau};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Fusion,
    Jm,
    Both,
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fusion" => Ok(Construction::Fusion),
            "jm" => Ok(Construction::Jm),
            "both" => Ok(Construction::Both),
            _ => Err(Error::Parse(format!("construction {s:?} (expected fusion, jm or both)"))),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::Fusion => "fusion",
            Construction::Jm => "jm",
            Construction::Both => "both",
        })
    }
}

fn all_tableaux(cfg: &FusionConfig) -> Vec<StandardMultiTableau> {
    multipartitions(cfg.m(), cfg.n()).iter().flat_map(standard_tableaux).collect()
}

/// Idempotents of every standard tableau of size `n`, in enumeration order.
/// `Both` uses the fusion construction.
pub fn compute_idempotents(
    cfg: &FusionConfig,
    construction: Construction,
) -> Result<Vec<(StandardMultiTableau, AlgebraElement)>> {
    all_tableaux(cfg)
        .into_par_iter()
        .map(|t| {
            let e = match construction {
                Construction::Jm => jm_idempotent(&t, cfg)?,
                _ => fusion_idempotent(&t, cfg)?,
            };
            Ok((t, e))
        })
        .collect()
}

/// `e` with `delta` added to the coefficient of `code`.
pub fn perturb(e: &AlgebraElement, code: u64, delta: &Cyclotomic) -> AlgebraElement {
    let mut out = e.clone();
    out.set_coeff(code, &e.coeff(code) + delta);
    out
}

fn at(t: &StandardMultiTableau) -> String {
    format!("T = {}", t.positions())
}

/// Idempotency, orthogonality, completeness and both eigenvalue relations.
pub fn check_system(cfg: &FusionConfig, items: &[(StandardMultiTableau, AlgebraElement)]) -> Vec<CheckResult> {
    let ctx = cfg.ctx();
    let group = cfg.group();
    let idempotency = CheckResult::collect(
        "idempotent",
        "E_T E_T = E_T",
        items
            .par_iter()
            .map(|(t, e)| (at(t), (&(e * e) != e).then(|| e.to_structured())))
            .collect::<Vec<_>>(),
    );
    let pairs: Vec<(usize, usize)> =
        (0..items.len()).flat_map(|i| (0..items.len()).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let orthogonality = CheckResult::collect(
        "orthogonal",
        "E_T E_T' = 0 for T != T'",
        pairs
            .par_iter()
            .map(|&(i, j)| {
                let (t, a) = &items[i];
                let (u, b) = &items[j];
                let p = a * b;
                (format!("{}, T' = {}", at(t), u.positions()), (!p.is_zero()).then(|| p.to_structured()))
            })
            .collect::<Vec<_>>(),
    );
    let total = items.iter().fold(AlgebraElement::zero(ctx), |acc, (_, e)| &acc + e);
    let completeness = CheckResult::collect(
        "complete",
        "sum_T E_T = 1",
        [("all tableaux".to_string(), residual(&total, &AlgebraElement::one(ctx)))],
    );
    let class_sums: Vec<Vec<AlgebraElement>> = (1..=cfg.n())
        .map(|k| {
            (0..group.num_classes())
                .map(|a| AlgebraElement::class_sum(ctx, k, a).expect("valid slot and class"))
                .collect()
        })
        .collect();
    let eigen_g = CheckResult::collect(
        "eigen-g",
        "g_k E_T = E_T g_k = xi_{p(T|k)} E_T",
        items
            .par_iter()
            .flat_map_iter(|(t, e)| {
                let class_sums = &class_sums;
                (1..=cfg.n()).flat_map(move |k| {
                    (0..group.num_classes()).map(move |a| {
                        let g = &class_sums[k - 1][a];
                        let want = e.scale(&group.spectral.xi[t.position(k) - 1][a]);
                        let fail = residual(&(g * e), &want).or_else(|| residual(&(e * g), &want));
                        (format!("{}, k = {k}, class {a}", at(t)), fail)
                    })
                })
            })
            .collect::<Vec<_>>(),
    );
    let jm: Vec<AlgebraElement> =
        (1..=cfg.n()).map(|k| AlgebraElement::jucys_murphy(ctx, k).expect("valid index")).collect();
    let eigen_j = CheckResult::collect(
        "eigen-j",
        "j_k E_T = E_T j_k = c^G(T|k) E_T",
        items
            .par_iter()
            .flat_map_iter(|(t, e)| {
                let jm = &jm;
                (1..=cfg.n()).map(move |k| {
                    let want = e.scale(&cfg.g_content(t, k));
                    let j = &jm[k - 1];
                    let fail = residual(&(j * e), &want).or_else(|| residual(&(e * j), &want));
                    (format!("{}, k = {k}", at(t)), fail)
                })
            })
            .collect::<Vec<_>>(),
    );
    vec![idempotency, orthogonality, completeness, eigen_g, eigen_j]
}

/// The full system suite for one configuration.
pub fn verify_idempotent_system(cfg: &FusionConfig, construction: Construction) -> Result<VerificationReport> {
    check_cap(cfg.group().order(), cfg.n())?;
    let mut checks = Vec::new();
    match construction {
        Construction::Both => {
            let fusion = compute_idempotents(cfg, Construction::Fusion)?;
            let jm = compute_idempotents(cfg, Construction::Jm)?;
            let same = CheckResult::collect(
                "constructions",
                "fusion E_T = inductive E_T",
                fusion
                    .iter()
                    .zip(&jm)
                    .map(|((t, a), (_, b))| (at(t), residual(a, b)))
                    .collect::<Vec<_>>(),
            );
            let agree = same.passed();
            checks.push(same);
            if agree {
                checks.extend(check_system(cfg, &fusion));
            } else {
                for (name, items) in [("fusion", &fusion), ("jm", &jm)] {
                    checks.extend(check_system(cfg, items).into_iter().map(|mut c| {
                        c.label = format!("{}/{name}", c.label);
                        c
                    }));
                }
            }
        }
        single => checks.extend(check_system(cfg, &compute_idempotents(cfg, single)?)),
    }
    Ok(VerificationReport {
        suite: "system".into(),
        group: cfg.group().table.name().to_string(),
        n: cfg.n(),
        mode: cfg.mode_label(),
        construction: Some(construction.to_string()),
        seed: None,
        trials: None,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupData;

    #[test]
    fn trivial_group_rank_three() {
        let g = GroupData::from_spec(&"trivial".parse().unwrap()).unwrap();
        let cfg = FusionConfig::full(&g, 3).unwrap();
        let r = verify_idempotent_system(&cfg, Construction::Both).unwrap();
        assert!(r.passed(), "{}", r.to_human());
        assert_eq!(r.check("idempotent").unwrap().instances, 4);
    }

    #[test]
    fn perturbation_is_caught() {
        let g = GroupData::from_spec(&"C2".parse().unwrap()).unwrap();
        let cfg = FusionConfig::full(&g, 2).unwrap();
        let mut items = compute_idempotents(&cfg, Construction::Fusion).unwrap();
        let code = *items[0].1.terms().keys().next().unwrap();
        items[0].1 = perturb(&items[0].1, code, &Cyclotomic::one());
        let checks = check_system(&cfg, &items);
        let idem = &checks[0];
        assert!(!idem.passed());
        let ce = idem.counterexample.as_ref().unwrap();
        let replay = AlgebraElement::parse_structured(cfg.ctx(), &ce.element).unwrap();
        assert_ne!(&replay * &replay, replay);
    }

    #[test]
    fn construction_names() {
        for c in [Construction::Fusion, Construction::Jm, Construction::Both] {
            assert_eq!(c.to_string().parse::<Construction>().unwrap(), c);
        }
        assert!("neither".parse::<Construction>().is_err());
    }
}
