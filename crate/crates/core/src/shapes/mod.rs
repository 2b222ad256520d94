//! Multipartitions, standard multitableaux and their numerical invariants.

mod tableau;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::groups::CentralFamily;
use crate::scalar::{rat, Cyclotomic, Poly, RatFun, Rational};

pub use tableau::{standard_tableaux, StandardMultiTableau};

/// A box of a multipartition; all coordinates are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MNode {
    pub component: usize,
    pub row: usize,
    pub col: usize,
}

impl MNode {
    pub fn new(component: usize, row: usize, col: usize) -> Self {
        MNode { component, row, col }
    }

    /// Classical content `col - row`.
    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

impl fmt::Display for MNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.component, self.row, self.col)
    }
}

/// An m-tuple of partitions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiPartition {
    components: Vec<Vec<usize>>,
}

impl MultiPartition {
    pub fn new(components: Vec<Vec<usize>>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Parse("a multipartition needs at least one component".into()));
        }
        for (k, part) in components.iter().enumerate() {
            if part.contains(&0) || part.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::Parse(format!(
                    "component {} is not a partition: {part:?}",
                    k + 1
                )));
            }
        }
        Ok(MultiPartition { components })
    }

    pub fn empty(m: usize) -> Self {
        MultiPartition { components: vec![Vec::new(); m] }
    }

    pub fn m(&self) -> usize {
        self.components.len()
    }

    pub fn size(&self) -> usize {
        self.components.iter().flatten().sum()
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn contains(&self, node: &MNode) -> bool {
        node.component >= 1
            && node.component <= self.m()
            && node.row >= 1
            && node.col >= 1
            && self.components[node.component - 1]
                .get(node.row - 1)
                .is_some_and(|&len| node.col <= len)
    }

    /// All nodes, component-major then row then column.
    pub fn nodes(&self) -> Vec<MNode> {
        let mut out = Vec::with_capacity(self.size());
        for (k, part) in self.components.iter().enumerate() {
            for (r, &len) in part.iter().enumerate() {
                out.extend((1..=len).map(|c| MNode::new(k + 1, r + 1, c)));
            }
        }
        out
    }

    /// Hook length of `node` within its component.
    pub fn hook(&self, node: &MNode) -> usize {
        let part = &self.components[node.component - 1];
        let arm = part[node.row - 1] - node.col;
        let leg = part[node.row..].iter().take_while(|&&l| l >= node.col).count();
        arm + leg + 1
    }

    /// Shape with `node` deleted; `node` must be removable.
    pub fn without(&self, node: &MNode) -> MultiPartition {
        let mut comps = self.components.clone();
        let part = &mut comps[node.component - 1];
        part[node.row - 1] -= 1;
        if part[node.row - 1] == 0 {
            part.pop();
        }
        MultiPartition { components: comps }
    }

    /// Shape with `node` added; `node` must be addable.
    pub fn with(&self, node: &MNode) -> MultiPartition {
        let mut comps = self.components.clone();
        let part = &mut comps[node.component - 1];
        if node.row > part.len() {
            part.push(1);
        } else {
            part[node.row - 1] += 1;
        }
        MultiPartition { components: comps }
    }

    /// Human form such as `(□□, ∅, □)` with rows separated by ` / `.
    pub fn diagram(&self) -> String {
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|p| {
                if p.is_empty() {
                    "∅".to_string()
                } else {
                    p.iter().map(|&l| "□".repeat(l)).collect::<Vec<_>>().join(" / ")
                }
            })
            .collect();
        format!("({})", comps.join(", "))
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|p| {
                let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
                format!("[{}]", parts.join(","))
            })
            .collect();
        f.write_str(&comps.join(","))
    }
}

impl FromStr for MultiPartition {
    type Err = Error;

    /// `[2,1],[],[1]`
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("shape {s:?}: {why}"));
        let mut comps = Vec::new();
        let mut rest = s.trim();
        loop {
            let inner = rest.strip_prefix('[').ok_or_else(|| bad("expected `[`"))?;
            let close = inner.find(']').ok_or_else(|| bad("missing `]`"))?;
            let body = inner[..close].trim();
            let part = if body.is_empty() {
                Vec::new()
            } else {
                body.split(',')
                    .map(|x| x.trim().parse::<usize>().map_err(|_| bad("row lengths must be integers")))
                    .collect::<Result<Vec<_>>>()?
            };
            comps.push(part);
            rest = inner[close + 1..].trim_start();
            if rest.is_empty() {
                break;
            }
            rest = rest.strip_prefix(',').ok_or_else(|| bad("expected `,` between components"))?.trim_start();
        }
        MultiPartition::new(comps).map_err(|e| match e {
            Error::Parse(msg) => bad(&msg),
            e => e,
        })
    }
}

/// Partitions of `n` in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for first in (1..=n.min(max)).rev() {
            prefix.push(first);
            rec(n - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All m-partitions of `n`: the first component's size descending, then each
/// component's partitions in reverse lexicographic order.
pub fn multipartitions(m: usize, n: usize) -> Vec<MultiPartition> {
    fn rec(m: usize, n: usize, prefix: &mut Vec<Vec<usize>>, out: &mut Vec<MultiPartition>) {
        if prefix.len() + 1 == m {
            for p in partitions(n) {
                prefix.push(p);
                out.push(MultiPartition { components: prefix.clone() });
                prefix.pop();
            }
            return;
        }
        for size in (0..=n).rev() {
            for p in partitions(size) {
                prefix.push(p);
                rec(m, n - size, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if m >= 1 {
        rec(m, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Removable and addable nodes, each ordered by component then row.
pub fn boundary_nodes(shape: &MultiPartition) -> (Vec<MNode>, Vec<MNode>) {
    let mut removable = Vec::new();
    let mut addable = Vec::new();
    for (k, part) in shape.components.iter().enumerate() {
        for r in 0..=part.len() {
            let len = part.get(r).copied().unwrap_or(0);
            let above = if r == 0 { usize::MAX } else { part[r - 1] };
            if len > 0 && part.get(r + 1).copied().unwrap_or(0) < len {
                removable.push(MNode::new(k + 1, r + 1, len));
            }
            if above > len {
                addable.push(MNode::new(k + 1, r + 1, len + 1));
            }
        }
    }
    (removable, addable)
}

/// Product of all hook lengths.
pub fn hook_product(shape: &MultiPartition) -> Rational {
    let prod = shape
        .nodes()
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, node| acc * shape.hook(node));
    Rational::from_integer(prod)
}

/// Product over nodes of the separation factors of the family at the node's
/// position.
pub fn fg_product(shape: &MultiPartition, family: &CentralFamily) -> Cyclotomic {
    shape
        .nodes()
        .iter()
        .fold(Cyclotomic::one(), |acc, node| &acc * &family.node_factor(node.component - 1))
}

/// Content, position and G-content of one entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeStats {
    pub content: i64,
    pub position: usize,
    pub g_content: Rational,
}

pub fn node_stats(t: &StandardMultiTableau, i: usize, degrees: &[u32]) -> Result<NodeStats> {
    if i == 0 || i > t.size() {
        return Err(Error::OutOfRange(format!("entry {i} of a tableau of size {}", t.size())));
    }
    let node = t.node(i);
    let d = *degrees
        .get(node.component - 1)
        .ok_or_else(|| Error::Mismatch(format!("no degree for component {}", node.component)))?;
    Ok(NodeStats {
        content: node.content(),
        position: node.component,
        g_content: rat(node.content(), d as i64),
    })
}

/// `F_T(u) = ((u - c_N)/u) prod_{i<N} (u - c_i)^2 / ((u - c_i)^2 - delta(p_i, p_N))`.
pub fn ft_function(t: &StandardMultiTableau) -> RatFun {
    let n = t.size();
    if n == 0 {
        return RatFun::one();
    }
    let last = t.node(n);
    let lin = |c: i64| Poly::x_minus(&Cyclotomic::from_int(c));
    let mut num = lin(last.content());
    let mut den = Poly::x();
    for i in 1..n {
        let node = t.node(i);
        let sq = &lin(node.content()) * &lin(node.content());
        let shifted = if node.component == last.component {
            &sq - &Poly::one()
        } else {
            sq.clone()
        };
        num = &num * &sq;
        den = &den * &shifted;
    }
    RatFun::reduce(num, den).expect("nonzero denominator")
}

/// `prod_alpha prod_{xi != xi_{p_N}} 1 / (v_alpha - xi)` for one value of `v`
/// per family member.
pub fn fgt_eval(t: &StandardMultiTableau, family: &CentralFamily, v: &[Cyclotomic]) -> Result<Cyclotomic> {
    if v.len() != family.len() {
        return Err(Error::Mismatch(format!("{} values for {} members", v.len(), family.len())));
    }
    if t.size() == 0 {
        return Ok(Cyclotomic::one());
    }
    let last = t.node(t.size());
    let mut out = Cyclotomic::one();
    for (member, at) in family.members.iter().zip(v) {
        let own = &member.xi[last.component - 1];
        let den = Poly::from_roots(member.values.iter().filter(|x| *x != own));
        let f = RatFun::reduce(Poly::one(), den)?;
        out = &out * &f.eval(at)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> MultiPartition {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(multipartitions(1, 3).len(), 3);
        assert_eq!(multipartitions(3, 1).len(), 3);
        let two: Vec<String> = multipartitions(2, 2).iter().map(ToString::to_string).collect();
        assert_eq!(two, ["[2],[]", "[1,1],[]", "[1],[1]", "[],[2]", "[],[1,1]"]);
        assert_eq!(multipartitions(2, 0), vec![MultiPartition::empty(2)]);
        assert_eq!(partitions(4).len(), 5);
    }

    #[test]
    fn shape_syntax() {
        let s = mp("[2,1],[],[1]");
        assert_eq!(s.components(), &[vec![2, 1], vec![], vec![1]]);
        assert_eq!(s.to_string(), "[2,1],[],[1]");
        assert_eq!(mp(" [ 2 , 1 ] , [ ] ").to_string(), "[2,1],[]");
        assert!("[1,2]".parse::<MultiPartition>().is_err());
        assert!("[1],".parse::<MultiPartition>().is_err());
        assert!("[a]".parse::<MultiPartition>().is_err());
        assert!("[0]".parse::<MultiPartition>().is_err());
        assert_eq!(mp("[2],[],[1]").diagram(), "(□□, ∅, □)");
    }

    #[test]
    fn boundary_example() {
        let (rem, add) = boundary_nodes(&mp("[2],[],[1]"));
        assert_eq!(rem, vec![MNode::new(1, 1, 2), MNode::new(3, 1, 1)]);
        assert_eq!(
            add,
            vec![
                MNode::new(1, 1, 3),
                MNode::new(1, 2, 1),
                MNode::new(2, 1, 1),
                MNode::new(3, 1, 2),
                MNode::new(3, 2, 1)
            ]
        );
        let (rem, add) = boundary_nodes(&MultiPartition::empty(3));
        assert!(rem.is_empty());
        assert_eq!(add, (1..=3).map(|k| MNode::new(k, 1, 1)).collect::<Vec<_>>());
    }

    #[test]
    fn hooks() {
        assert_eq!(hook_product(&mp("[2],[],[1]")), rat(2, 1));
        assert_eq!(hook_product(&mp("[1],[],[]")), rat(1, 1));
        assert_eq!(hook_product(&mp("[2,1]")), rat(3, 1));
        assert_eq!(hook_product(&mp("[3,2],[1]")), rat(24, 1));
    }

    #[test]
    fn ft_row_of_two() {
        let t = StandardMultiTableau::parse("1:(1,1,1) 2:(1,1,2)", 1).unwrap();
        let f = ft_function(&t);
        let u = RatFun::var();
        let expected = u.checked_div(&(&u + &RatFun::one())).unwrap();
        assert_eq!(f, expected);
        assert_eq!(f.eval(&Cyclotomic::one()).unwrap(), Cyclotomic::ratio(1, 2).unwrap());
        let single = StandardMultiTableau::parse("1:(2,1,1)", 2).unwrap();
        assert_eq!(ft_function(&single), RatFun::one());
    }
}
