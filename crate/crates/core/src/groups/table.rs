use num_integer::Integer;

use crate::error::{Error, Result};
use crate::scalar::Cyclotomic;

/// Where a group's irreducible characters come from.
#[derive(Clone, Debug, PartialEq)]
pub enum CharacterSource {
    /// `values[nu][g]` for every element `g`.
    PerElement(Vec<Vec<Cyclotomic>>),
    /// `values[nu][alpha]` in canonical class order.
    PerClass(Vec<Vec<Cyclotomic>>),
}

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupTable {
    name: String,
    order: usize,
    mult: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
    pub(crate) characters: Option<CharacterSource>,
    /// Canonical generators of a cyclic decomposition, for abelian groups.
    pub(crate) generators: Option<Vec<usize>>,
}

impl GroupTable {
    /// Validate a row-major table: entries in range, Latin square, identity,
    /// associativity. Inverses are derived.
    pub fn from_table(name: impl Into<String>, order: usize, mult: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroup("order must be positive".into()));
        }
        if mult.len() != order * order {
            return Err(Error::InvalidGroup(format!(
                "table has {} entries, expected {}",
                mult.len(),
                order * order
            )));
        }
        if let Some(&bad) = mult.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidGroup(format!("entry {bad} out of range")));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mult[e * order + x] == x && mult[x * order + e] == x))
            .ok_or(Error::MissingIdentity)?;
        for r in 0..order {
            let mut seen_row = vec![false; order];
            let mut seen_col = vec![false; order];
            for c in 0..order {
                seen_row[mult[r * order + c]] = true;
                seen_col[mult[c * order + r]] = true;
            }
            if seen_row.contains(&false) || seen_col.contains(&false) {
                return Err(Error::InvalidGroup(format!("row or column {r} is not a permutation")));
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = mult[a * order + b];
                for c in 0..order {
                    if mult[ab * order + c] != mult[a * order + mult[b * order + c]] {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let inverse = (0..order)
            .map(|a| (0..order).find(|&b| mult[a * order + b] == identity).unwrap())
            .collect();
        Ok(GroupTable {
            name: name.into(),
            order,
            mult,
            identity,
            inverse,
            labels: (0..order).map(|i| format!("g{i}")).collect(),
            characters: None,
            generators: None,
        })
    }

    pub(crate) fn with_labels(mut self, labels: Vec<String>) -> Self {
        debug_assert_eq!(labels.len(), self.order);
        self.labels = labels;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn mult_table(&self) -> &[usize] {
        &self.mult
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, a| acc.lcm(&self.element_order(a)))
    }

    /// Elements of the subgroup generated by `gens`, ascending.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[self.identity] = true;
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    frontier.push(y);
                }
            }
        }
        (0..self.order).filter(|&x| inside[x]).collect()
    }

    /// Generators for abelian-mode fusion: the built-in cyclic decomposition
    /// when known, otherwise a greedy generating set in index order.
    pub fn default_generators(&self) -> Vec<usize> {
        if let Some(g) = &self.generators {
            return g.clone();
        }
        let mut gens = Vec::new();
        let mut span = self.closure(&gens);
        for x in 0..self.order {
            if span.len() == self.order {
                break;
            }
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    pub fn characters(&self) -> Option<&CharacterSource> {
        self.characters.as_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_table(k: usize) -> Vec<usize> {
        (0..k * k).map(|i| (i / k + i % k) % k).collect()
    }

    #[test]
    fn validates_cyclic_table() {
        let g = GroupTable::from_table("C4", 4, cyclic_table(4)).unwrap();
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(1), 3);
        assert_eq!(g.element_order(2), 2);
        assert_eq!(g.exponent(), 4);
        assert!(g.is_abelian());
        assert_eq!(g.default_generators(), vec![1]);
    }

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(
            GroupTable::from_table("x", 2, vec![0, 0, 1, 1]).unwrap_err(),
            Error::MissingIdentity
        );
        assert!(matches!(
            GroupTable::from_table("x", 2, vec![0, 1, 1]).unwrap_err(),
            Error::InvalidGroup(_)
        ));
        assert!(matches!(
            GroupTable::from_table("x", 2, vec![0, 1, 1, 1]).unwrap_err(),
            Error::InvalidGroup(_)
        ));
        // A Latin square with identity 0 that is not associative.
        let quasi = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        assert!(matches!(
            GroupTable::from_table("loop", 5, quasi).unwrap_err(),
            Error::NotAssociative(..)
        ));
    }
}
