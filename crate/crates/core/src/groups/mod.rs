//! Finite groups, conjugacy classes, character tables and the spectral data
//! of central elements.

mod builtin;
mod family;
mod file;
mod table;

use std::sync::Arc;

use num_integer::Integer;
use num_traits::ToPrimitive;

pub use builtin::{build_group, direct_product, GroupSpec, MAX_BUILTIN_ORDER};
pub use family::{CentralFamily, FamilyMember, FamilyMode};
pub use file::{load_group_file, parse_group_file, write_group_file, GroupFile};
pub use table::{CharacterSource, GroupTable};

use crate::error::{Error, Result};
use crate::scalar::{Cyclotomic, Poly};

/// Conjugacy classes: identity class first, the rest ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyData {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl ConjugacyData {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

pub fn conjugacy_classes(g: &GroupTable) -> ConjugacyData {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut reps = vec![g.identity()];
    reps.extend((0..n).filter(|&x| x != g.identity()));
    for x in reps {
        if class_of[x] != usize::MAX {
            continue;
        }
        let mut orbit: Vec<usize> = (0..n).map(|h| g.mul(g.mul(h, x), g.inv(h))).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &y in &orbit {
            class_of[y] = classes.len();
        }
        classes.push(orbit);
    }
    ConjugacyData { classes, class_of }
}

/// Irreducible characters on classes: `values[nu][alpha]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    pub values: Vec<Vec<Cyclotomic>>,
    pub degrees: Vec<u32>,
    /// Smallest cyclotomic conductor containing every entry.
    pub conductor: u32,
}

impl CharacterTable {
    pub fn num_irreps(&self) -> usize {
        self.values.len()
    }
}

/// Read the group's character data onto classes and validate it exactly.
pub fn character_table(g: &GroupTable, cc: &ConjugacyData) -> Result<CharacterTable> {
    let bad = |msg: String| Error::CharacterTable(msg);
    let m = cc.len();
    let raw: Vec<Vec<Cyclotomic>> = match g.characters() {
        None => return Err(Error::UnsupportedGroup(format!("no character table for {}", g.name()))),
        Some(CharacterSource::PerClass(rows)) => rows.clone(),
        Some(CharacterSource::PerElement(rows)) => {
            let mut out = Vec::with_capacity(rows.len());
            for (nu, row) in rows.iter().enumerate() {
                if row.len() != g.order() {
                    return Err(bad(format!("character {nu} has {} values", row.len())));
                }
                let per_class: Vec<Cyclotomic> =
                    cc.classes.iter().map(|c| row[c[0]].clone()).collect();
                for (x, v) in row.iter().enumerate() {
                    if *v != per_class[cc.class_of[x]] {
                        return Err(bad(format!("character {nu} is not a class function")));
                    }
                }
                out.push(per_class);
            }
            out
        }
    };
    if raw.len() != m || raw.iter().any(|r| r.len() != m) {
        return Err(bad(format!("expected a {m}x{m} table")));
    }
    let conductor = raw
        .iter()
        .flatten()
        .fold(1u32, |acc, v| acc.lcm(&v.minimal_conductor()));
    let values: Vec<Vec<Cyclotomic>> = raw
        .iter()
        .map(|row| row.iter().map(|v| into_field(v, conductor)).collect())
        .collect();
    let mut degrees = Vec::with_capacity(m);
    for (nu, row) in values.iter().enumerate() {
        let d = row[0]
            .to_rational()
            .filter(|r| r.is_integer())
            .and_then(|r| r.to_integer().to_u32())
            .filter(|&d| d > 0)
            .ok_or_else(|| bad(format!("degree of character {nu} is not a positive integer")))?;
        degrees.push(d);
    }

    let order = Cyclotomic::from_int(g.order() as i64);
    let sizes = cc.sizes();
    for nu in 0..m {
        for mu in 0..m {
            let s = (0..m).fold(Cyclotomic::zero(), |acc, a| {
                let term = &values[nu][a] * &values[mu][a].conjugate();
                &acc + &term.scale(&crate::scalar::rat(sizes[a] as i64, 1))
            });
            let expected = if nu == mu { order.clone() } else { Cyclotomic::zero() };
            if s != expected {
                return Err(bad(format!("row orthogonality fails for characters {nu}, {mu}")));
            }
        }
    }
    for a in 0..m {
        for b in 0..m {
            let s = (0..m).fold(Cyclotomic::zero(), |acc, nu| {
                &acc + &(&values[nu][a] * &values[nu][b].conjugate())
            });
            let expected = if a == b {
                Cyclotomic::ratio(g.order() as i64, sizes[a] as i64)?
            } else {
                Cyclotomic::zero()
            };
            if s != expected {
                return Err(bad(format!("column orthogonality fails for classes {a}, {b}")));
            }
        }
    }
    Ok(CharacterTable { values, degrees, conductor })
}

/// Express `v` at conductor `n`, which must be a multiple of its minimal conductor.
fn into_field(v: &Cyclotomic, n: u32) -> Cyclotomic {
    let up = v.conductor().lcm(&n);
    v.promote(up)
        .ok()
        .and_then(|w| w.demote(n))
        .expect("value lies in the field")
}

/// Eigenvalues of class sums on irreducibles together with their value sets.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData {
    /// `xi[nu][alpha] = chi_nu(C_alpha) / d_nu`.
    pub xi: Vec<Vec<Cyclotomic>>,
    /// Distinct values of `xi[.][alpha]` in order of first appearance.
    pub values: Vec<Vec<Cyclotomic>>,
    /// `prod_{xi in S} (X - xi)` per class.
    pub char_polys: Vec<Poly>,
    /// Coefficient polynomials in `v` of the polynomial form of `g(v)`, per class.
    pub a_polys: Vec<Vec<Poly>>,
}

/// Distinct values in order of first appearance.
pub fn dedup_values(xs: impl IntoIterator<Item = Cyclotomic>) -> Vec<Cyclotomic> {
    let mut out: Vec<Cyclotomic> = Vec::new();
    for x in xs {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// For `prod_{xi in S}(X - xi) = sum_i a_i X^i` of degree `k`, returns
/// `A_1(v) .. A_k(v)` with `A_i(v) = a_i + a_{i+1} v + .. + a_k v^{k-i}`.
pub fn a_polynomials(char_poly: &Poly) -> Vec<Poly> {
    let k = char_poly.degree().unwrap_or(0);
    (1..=k)
        .map(|i| Poly::new((i..=k).map(|j| char_poly.coeff(j)).collect()))
        .collect()
}

pub fn spectral_data(table: &CharacterTable) -> SpectralData {
    let m = table.values.len();
    let xi: Vec<Vec<Cyclotomic>> = table
        .values
        .iter()
        .zip(&table.degrees)
        .map(|(row, &d)| {
            let inv_d = crate::scalar::rat(1, d as i64);
            row.iter().map(|v| v.scale(&inv_d)).collect()
        })
        .collect();
    let values: Vec<Vec<Cyclotomic>> =
        (0..m).map(|a| dedup_values((0..m).map(|nu| xi[nu][a].clone()))).collect();
    let char_polys: Vec<Poly> = values.iter().map(Poly::from_roots).collect();
    let a_polys = char_polys.iter().map(a_polynomials).collect();
    SpectralData { xi, values, char_polys, a_polys }
}

/// A group with its classes, characters and spectral data.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub table: GroupTable,
    pub classes: ConjugacyData,
    pub characters: CharacterTable,
    pub spectral: SpectralData,
}

impl GroupData {
    pub fn new(table: GroupTable) -> Result<Arc<Self>> {
        let classes = conjugacy_classes(&table);
        let characters = character_table(&table, &classes)?;
        let spectral = spectral_data(&characters);
        Ok(Arc::new(GroupData { table, classes, characters, spectral }))
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Arc<Self>> {
        Self::new(build_group(spec)?)
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.characters.degrees
    }

    pub fn conductor(&self) -> u32 {
        self.characters.conductor
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn data(s: &str) -> Arc<GroupData> {
        GroupData::from_spec(&s.parse().unwrap()).unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<Cyclotomic> {
        xs.iter().map(|&x| Cyclotomic::from_int(x)).collect()
    }

    #[test]
    fn class_structure() {
        let s3 = data("S3");
        assert_eq!(s3.classes.sizes(), vec![1, 3, 2]);
        assert_eq!(s3.classes.classes[1], vec![1, 2, 5]);
        assert_eq!(data("C4").classes.sizes(), vec![1; 4]);
        assert_eq!(data("D4").num_classes(), 5);
        assert_eq!(data("S4").classes.sizes(), vec![1, 6, 8, 3, 6]);
    }

    #[test]
    fn small_tables() {
        let c2 = data("C2");
        assert_eq!(c2.characters.values, vec![ints(&[1, 1]), ints(&[1, -1])]);
        let s3 = data("S3");
        assert_eq!(s3.degrees(), &[1, 1, 2]);
        assert_eq!(s3.conductor(), 1);
        let c3 = data("C3");
        assert_eq!(c3.conductor(), 3);
        assert_eq!(c3.characters.values[1][2], Cyclotomic::root_of_unity(3, 2).unwrap());
        assert_eq!(data("C6").conductor(), 3);
    }

    #[test]
    fn every_builtin_validates() {
        for s in ["trivial", "C2", "C5", "C12", "S1", "S2", "S3", "S4", "D1", "D3", "D4", "D5", "D6", "D12", "C2xC2", "C2xS3", "C3xC3", "C2xD4"] {
            let g = data(s);
            let xi = &g.spectral.xi;
            for nu in 0..xi.len() {
                for mu in 0..nu {
                    assert!(xi[nu] != xi[mu], "{s}: irreps {nu} and {mu} not separated");
                }
            }
        }
    }

    #[test]
    fn s3_spectral_values() {
        let s = &data("S3").spectral;
        assert_eq!(s.values[0], ints(&[1]));
        assert_eq!(s.values[1], ints(&[1, -1, 0]));
        assert_eq!(s.values[2], vec![Cyclotomic::one(), Cyclotomic::from_rational(rat(-1, 2))]);
        assert_eq!(s.a_polys[0], vec![Poly::one()]);
        // g(v) = g^2 + v g + v^2 - 1 for the transposition class.
        let a = &s.a_polys[1];
        assert_eq!(a[0], Poly::new(ints(&[-1, 0, 1])));
        assert_eq!(a[1], Poly::new(ints(&[0, 1])));
        assert_eq!(a[2], Poly::one());
    }

    #[test]
    fn missing_characters_unsupported() {
        let t = GroupTable::from_table("x", 2, vec![0, 1, 1, 0]).unwrap();
        assert!(matches!(GroupData::new(t), Err(Error::UnsupportedGroup(_))));
    }

    #[test]
    fn bad_characters_rejected() {
        let mut t = GroupTable::from_table("x", 2, vec![0, 1, 1, 0]).unwrap();
        t.characters = Some(CharacterSource::PerClass(vec![ints(&[1, 1]), ints(&[1, 1])]));
        assert!(matches!(GroupData::new(t.clone()), Err(Error::CharacterTable(_))));
        t.characters = Some(CharacterSource::PerClass(vec![ints(&[1, 1]), ints(&[-1, 1])]));
        assert!(matches!(GroupData::new(t), Err(Error::CharacterTable(_))));
    }
}
