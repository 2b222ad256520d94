//! Idempotents of `G wr S_n` indexed by standard multitableaux.
//!
//! [`fusion_idempotent`] evaluates the product of baxterized generators and
//! central-element polynomials one spectral parameter at a time.
//! [`jm_idempotent`] builds the same element from eigenvalue projectors of
//! Jucys-Murphy elements and class sums.

use std::sync::Arc;

use crate::algebra::{AlgebraElement, RatAlgebraElement, WreathGroup};
use crate::error::{Error, Result};
use crate::groups::{CentralFamily, FamilyMember, FamilyMode, GroupData};
use crate::scalar::{Cyclotomic, Rational};
use crate::shapes::{boundary_nodes, fg_product, hook_product, MNode, StandardMultiTableau};

/// A group, a rank `n` and the central elements used to separate irreducibles.
#[derive(Clone, Debug)]
pub struct FusionConfig {
    family: CentralFamily,
    ctx: Arc<WreathGroup>,
}

impl FusionConfig {
    /// Every class sum with more than one eigenvalue.
    pub fn full(group: &Arc<GroupData>, n: usize) -> Result<Self> {
        Self::from_family(CentralFamily::all_class_sums(group), n)
    }

    /// Class sums of a subset of classes (0-based indices).
    pub fn with_classes(group: &Arc<GroupData>, n: usize, classes: &[usize]) -> Result<Self> {
        Self::from_family(CentralFamily::class_sums(group, classes)?, n)
    }

    /// Abelian groups: the given generators, or the built-in ones.
    pub fn abelian(group: &Arc<GroupData>, n: usize, generators: Option<&[usize]>) -> Result<Self> {
        let family = match generators {
            Some(g) => CentralFamily::generators(group, g)?,
            None => CentralFamily::default_generators(group)?,
        };
        Self::from_family(family, n)
    }

    pub fn from_family(family: CentralFamily, n: usize) -> Result<Self> {
        let ctx = WreathGroup::new(family.group.clone(), n)?;
        Ok(FusionConfig { family, ctx })
    }

    /// Same group and family at another rank.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::from_family(self.family.clone(), n)
    }

    pub fn group(&self) -> &Arc<GroupData> {
        &self.family.group
    }

    pub fn family(&self) -> &CentralFamily {
        &self.family
    }

    pub fn ctx(&self) -> &Arc<WreathGroup> {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn is_abelian_mode(&self) -> bool {
        matches!(self.family.mode, FamilyMode::Generators(_))
    }

    /// `classes 1,2` or `generators t`, as shown in reports.
    pub fn mode_label(&self) -> String {
        let t = &self.group().table;
        match &self.family.mode {
            FamilyMode::ClassSums(c) => {
                if c.is_empty() {
                    return "classes none".into();
                }
                let c: Vec<String> = c.iter().map(ToString::to_string).collect();
                format!("classes {}", c.join(","))
            }
            FamilyMode::Generators(g) => {
                let g: Vec<&str> = g.iter().map(|&x| t.label(x)).collect();
                format!("generators {}", g.join(","))
            }
        }
    }

    /// Number of components of the multipartitions (irreducibles of `G`).
    pub fn m(&self) -> usize {
        self.group().num_classes()
    }

    fn check(&self, t: &StandardMultiTableau) -> Result<()> {
        if t.shape().m() != self.m() {
            return Err(Error::Mismatch(format!(
                "tableau has {} components, {} has {} irreducibles",
                t.shape().m(),
                self.group().table.name(),
                self.m()
            )));
        }
        if t.size() != self.n() {
            return Err(Error::Mismatch(format!("tableau of size {} in rank {}", t.size(), self.n())));
        }
        Ok(())
    }

    /// `c^G` of entry `i`.
    pub fn g_content(&self, t: &StandardMultiTableau, i: usize) -> Cyclotomic {
        node_g_content(self.group(), &t.node(i))
    }
}

fn node_g_content(group: &GroupData, node: &MNode) -> Cyclotomic {
    let d = group.degrees()[node.component - 1];
    Cyclotomic::from_rational(Rational::new(node.content().into(), d.into()))
}

/// `s_i(c, c') = s_i + e_{i,i+1} / (c - c')` at scalar parameters.
pub fn baxterized_s(ctx: &Arc<WreathGroup>, i: usize, c: &Cyclotomic, c2: &Cyclotomic) -> Result<AlgebraElement> {
    let diff = c - c2;
    if diff.is_zero() {
        return Err(Error::Pole { at: c.clone() });
    }
    let e = AlgebraElement::e(ctx, i, i + 1)?;
    Ok(&AlgebraElement::s(ctx, i)? + &e.scale(&diff.inv()?))
}

/// `s_i(u, c)` with `u` the active variable.
pub fn baxterized_s_active(ctx: &Arc<WreathGroup>, i: usize, c: &Cyclotomic) -> Result<RatAlgebraElement> {
    let s = AlgebraElement::s(ctx, i)?;
    let e = AlgebraElement::e(ctx, i, i + 1)?;
    Ok(RatAlgebraElement::linear_over(&s, &e, c))
}

/// `x_slot(v) = sum_i A_{i+1}(v) x_slot^i` for one family member.
pub fn member_poly(ctx: &Arc<WreathGroup>, slot: usize, member: &FamilyMember, v: &Cyclotomic) -> Result<AlgebraElement> {
    let x = AlgebraElement::in_slot(ctx, slot, &member.element)?;
    let mut power = AlgebraElement::one(ctx);
    let mut out = AlgebraElement::zero(ctx);
    for (i, a) in member.a_polys.iter().enumerate() {
        if i > 0 {
            power = &power * &x;
        }
        out = &out + &power.scale(&a.eval(v));
    }
    Ok(out)
}

/// Slot-`k` factor of the gamma product, evaluated at the eigenvalues of
/// component `p` (1-based).
fn gamma_slot(cfg: &FusionConfig, k: usize, p: usize) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::one(cfg.ctx());
    for member in &cfg.family.members {
        out = &out * &member_poly(cfg.ctx(), k, member, &member.xi[p - 1])?;
    }
    Ok(out)
}

/// `prod_i prod_members x_i(xi_{p_i})`.
pub fn gamma_eval(t: &StandardMultiTableau, cfg: &FusionConfig) -> Result<AlgebraElement> {
    cfg.check(t)?;
    let mut out = AlgebraElement::one(cfg.ctx());
    for i in 1..=t.size() {
        out = &out * &gamma_slot(cfg, i, t.position(i))?;
    }
    Ok(out)
}

/// `F^G_lambda * F_lambda`, the normalization of the fusion product.
pub fn normalizer(t: &StandardMultiTableau, cfg: &FusionConfig) -> Cyclotomic {
    fg_product(t.shape(), cfg.family()).scale(&hook_product(t.shape()))
}

/// `s_1 s_2 .. s_{k-1}`
fn shift_perm(ctx: &Arc<WreathGroup>, k: usize) -> Result<AlgebraElement> {
    (1..k).try_fold(AlgebraElement::one(ctx), |acc, i| Ok(&acc * &AlgebraElement::s(ctx, i)?))
}

/// The idempotent by consecutive evaluation of the fusion product.
pub fn fusion_idempotent(t: &StandardMultiTableau, cfg: &FusionConfig) -> Result<AlgebraElement> {
    let unnormalized = fusion_product(t, cfg)?;
    Ok(unnormalized.scale(&normalizer(t, cfg).inv()?))
}

/// The fusion product before division by `F^G_lambda F_lambda`.
pub fn fusion_product(t: &StandardMultiTableau, cfg: &FusionConfig) -> Result<AlgebraElement> {
    cfg.check(t)?;
    let ctx = cfg.ctx();
    let contents: Vec<Cyclotomic> = (1..=t.size()).map(|i| cfg.g_content(t, i)).collect();
    let mut r = AlgebraElement::one(ctx);
    for k in 1..=t.size() {
        let x = &(&shift_perm(ctx, k)? * &gamma_slot(cfg, k, t.position(k))?) * &r;
        let mut acc = RatAlgebraElement::constant(x);
        for (i, c) in contents.iter().enumerate().take(k - 1) {
            acc = baxterized_s_active(ctx, i + 1, c)?.checked_mul(&acc)?;
        }
        r = acc.eval(&contents[k - 1]).map_err(|e| match e {
            Error::Pole { at } => Error::FusionPole { step: k, at },
            other => other,
        })?;
    }
    Ok(r)
}

/// The idempotent as a product of eigenvalue projectors, entry by entry.
pub fn jm_idempotent(t: &StandardMultiTableau, cfg: &FusionConfig) -> Result<AlgebraElement> {
    cfg.check(t)?;
    let ctx = cfg.ctx();
    let group = cfg.group();
    let mut e = AlgebraElement::one(ctx);
    let mut prefix = StandardMultiTableau::empty(cfg.m());
    for k in 1..=t.size() {
        let node = t.node(k);
        let addable = boundary_nodes(prefix.shape()).1;
        let ck = node_g_content(group, &node);
        let j = AlgebraElement::jucys_murphy(ctx, k)?;
        for kappa in &addable {
            let c = node_g_content(group, kappa);
            if c != ck {
                let f = (&ck - &c).inv()?;
                e = &e * &j.add_scalar(&-&c).scale(&f);
            }
        }
        for member in &cfg.family.members {
            let x = AlgebraElement::in_slot(ctx, k, &member.element)?;
            let own = &member.xi[node.component - 1];
            for kappa in &addable {
                let xi = &member.xi[kappa.component - 1];
                if xi != own {
                    let f = (own - xi).inv()?;
                    e = &e * &x.add_scalar(&-xi).scale(&f);
                }
            }
        }
        prefix = prefix.extend(node);
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::shapes::standard_tableaux;

    fn group(s: &str) -> Arc<GroupData> {
        GroupData::from_spec(&s.parse().unwrap()).unwrap()
    }

    fn tab(s: &str, m: usize) -> StandardMultiTableau {
        StandardMultiTableau::parse(s, m).unwrap()
    }

    #[test]
    fn trivial_group_rank_one() {
        let cfg = FusionConfig::full(&group("trivial"), 1).unwrap();
        let t = tab("1:(1,1,1)", 1);
        assert_eq!(fusion_idempotent(&t, &cfg).unwrap(), AlgebraElement::one(cfg.ctx()));
        assert_eq!(gamma_eval(&t, &cfg).unwrap(), AlgebraElement::one(cfg.ctx()));
    }

    #[test]
    fn trivial_group_is_classical_baxterization() {
        let cfg = FusionConfig::full(&group("trivial"), 2).unwrap();
        let ctx = cfg.ctx();
        let c = Cyclotomic::from_int(3);
        let c2 = Cyclotomic::from_int(1);
        let b = baxterized_s(ctx, 1, &c, &c2).unwrap();
        let want = AlgebraElement::s(ctx, 1).unwrap().add_scalar(&Cyclotomic::from_rational(rat(1, 2)));
        assert_eq!(b, want);
        assert!(matches!(baxterized_s(ctx, 1, &c, &c), Err(Error::Pole { .. })));
    }

    #[test]
    fn both_constructions_agree_on_small_cases() {
        for (g, n) in [("C2", 2), ("S3", 2), ("C3", 2), ("trivial", 3)] {
            let data = group(g);
            let cfg = FusionConfig::full(&data, n).unwrap();
            for shape in crate::shapes::multipartitions(cfg.m(), n) {
                for t in standard_tableaux(&shape) {
                    let f = fusion_idempotent(&t, &cfg).unwrap();
                    assert_eq!(f, jm_idempotent(&t, &cfg).unwrap(), "{g} {t}");
                    assert_eq!(&f * &f, f, "{g} {t}");
                }
            }
        }
    }

    #[test]
    fn rejects_mismatched_tableau() {
        let cfg = FusionConfig::full(&group("S3"), 2).unwrap();
        assert!(matches!(fusion_idempotent(&tab("1:(1,1,1)", 3), &cfg), Err(Error::Mismatch(_))));
        assert!(matches!(jm_idempotent(&tab("1:(1,1,1) 2:(1,1,2)", 2), &cfg), Err(Error::Mismatch(_))));
    }
}
