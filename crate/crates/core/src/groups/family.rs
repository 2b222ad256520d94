use std::sync::Arc;

use super::{a_polynomials, dedup_values, GroupData};
use crate::error::{Error, Result};
use crate::scalar::{rat, Cyclotomic, Poly};

/// How the central elements used for fusion were chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyMode {
    /// Class sums of the listed classes.
    ClassSums(Vec<usize>),
    /// Generators of an abelian group.
    Generators(Vec<usize>),
}

/// One element `x` of the group algebra of `G` acting on every irreducible
/// `W_nu` as the scalar `xi[nu]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyMember {
    pub label: String,
    /// Support of `x` in the group algebra of `G`.
    pub element: Vec<(usize, Cyclotomic)>,
    pub xi: Vec<Cyclotomic>,
    /// Distinct eigenvalues in order of first appearance.
    pub values: Vec<Cyclotomic>,
    pub char_poly: Poly,
    pub a_polys: Vec<Poly>,
}

impl FamilyMember {
    fn new(label: String, element: Vec<(usize, Cyclotomic)>, xi: Vec<Cyclotomic>) -> Self {
        let values = dedup_values(xi.iter().cloned());
        let char_poly = Poly::from_roots(&values);
        let a_polys = a_polynomials(&char_poly);
        FamilyMember { label, element, xi, values, char_poly, a_polys }
    }

    /// Index of `xi[nu]` within `values`.
    pub fn value_index(&self, nu: usize) -> usize {
        self.values.iter().position(|v| *v == self.xi[nu]).unwrap()
    }

    /// `prod_{xi' != xi} (xi - xi')`.
    pub fn separation(&self, xi: &Cyclotomic) -> Cyclotomic {
        self.values
            .iter()
            .filter(|v| *v != xi)
            .fold(Cyclotomic::one(), |acc, v| &acc * &(xi - v))
    }
}

/// The central elements whose joint eigenvalues separate the irreducibles of `G`.
#[derive(Clone, Debug)]
pub struct CentralFamily {
    pub group: Arc<GroupData>,
    pub mode: FamilyMode,
    pub members: Vec<FamilyMember>,
}

impl CentralFamily {
    /// Class sums of every class with more than one eigenvalue.
    pub fn all_class_sums(group: &Arc<GroupData>) -> Self {
        let classes: Vec<usize> = (0..group.num_classes())
            .filter(|&a| group.spectral.values[a].len() > 1)
            .collect();
        Self::build_class_sums(group, classes)
    }

    /// Class sums of a user-chosen subset, which must still separate all irreducibles.
    pub fn class_sums(group: &Arc<GroupData>, subset: &[usize]) -> Result<Self> {
        let m = group.num_classes();
        if let Some(&a) = subset.iter().find(|&&a| a >= m) {
            return Err(Error::OutOfRange(format!("class {a} (group has {m} classes)")));
        }
        let mut classes = subset.to_vec();
        classes.sort_unstable();
        classes.dedup();
        classes.retain(|&a| group.spectral.values[a].len() > 1);
        let xi = &group.spectral.xi;
        for nu in 0..m {
            for mu in 0..nu {
                if classes.iter().all(|&a| xi[nu][a] == xi[mu][a]) {
                    return Err(Error::InvalidConfig(format!(
                        "classes {subset:?} do not separate irreducibles {mu} and {nu}"
                    )));
                }
            }
        }
        Ok(Self::build_class_sums(group, classes))
    }

    fn build_class_sums(group: &Arc<GroupData>, classes: Vec<usize>) -> Self {
        let members = classes
            .iter()
            .map(|&a| {
                let support = &group.classes.classes[a];
                let w = Cyclotomic::from_rational(rat(1, support.len() as i64));
                let element = support.iter().map(|&x| (x, w.clone())).collect();
                let xi = (0..group.num_classes()).map(|nu| group.spectral.xi[nu][a].clone()).collect();
                FamilyMember::new(format!("C{a}"), element, xi)
            })
            .collect();
        CentralFamily { group: group.clone(), mode: FamilyMode::ClassSums(classes), members }
    }

    /// Generators of an abelian group, each acting on `W_nu` by `chi_nu(t)`.
    pub fn generators(group: &Arc<GroupData>, gens: &[usize]) -> Result<Self> {
        let t = &group.table;
        if !t.is_abelian() {
            return Err(Error::NotAbelian(t.name().to_string()));
        }
        if let Some(&g) = gens.iter().find(|&&g| g >= t.order()) {
            return Err(Error::OutOfRange(format!("generator {g} (group order {})", t.order())));
        }
        if t.closure(gens).len() != t.order() {
            return Err(Error::InvalidConfig(format!("elements {gens:?} do not generate {}", t.name())));
        }
        let members = gens
            .iter()
            .filter(|&&g| g != t.identity())
            .map(|&g| {
                let alpha = group.classes.class_of[g];
                let xi = (0..group.num_classes())
                    .map(|nu| group.characters.values[nu][alpha].clone())
                    .collect();
                FamilyMember::new(format!("t[{}]", t.label(g)), vec![(g, Cyclotomic::one())], xi)
            })
            .collect();
        Ok(CentralFamily { group: group.clone(), mode: FamilyMode::Generators(gens.to_vec()), members })
    }

    pub fn default_generators(group: &Arc<GroupData>) -> Result<Self> {
        Self::generators(group, &group.table.default_generators())
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `prod_alpha prod_{xi != xi_nu} (xi_nu - xi)`, the per-node factor of `F^G`.
    pub fn node_factor(&self, nu: usize) -> Cyclotomic {
        self.members
            .iter()
            .fold(Cyclotomic::one(), |acc, m| &acc * &m.separation(&m.xi[nu]))
    }
}
