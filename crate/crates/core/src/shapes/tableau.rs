use std::fmt;

use super::{boundary_nodes, MNode, MultiPartition};
use crate::error::{Error, Result};

/// A filling of a multipartition by `1..=n` increasing along rows and columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardMultiTableau {
    shape: MultiPartition,
    /// `entries[i - 1]` holds the node containing `i`.
    entries: Vec<MNode>,
}

impl StandardMultiTableau {
    pub fn new(shape: MultiPartition, entries: Vec<MNode>) -> Result<Self> {
        let bad = |why: String| Error::Parse(format!("tableau: {why}"));
        if entries.len() != shape.size() {
            return Err(bad(format!("{} entries for a shape of size {}", entries.len(), shape.size())));
        }
        let mut sorted = entries.clone();
        sorted.sort_unstable();
        if sorted != shape.nodes() {
            return Err(bad(format!("entries do not fill the shape {shape}")));
        }
        let label = |node: MNode| entries.iter().position(|&e| e == node);
        for (i, e) in entries.iter().enumerate() {
            let left = MNode { col: e.col.wrapping_sub(1), ..*e };
            let up = MNode { row: e.row.wrapping_sub(1), ..*e };
            for nb in [left, up] {
                if let Some(j) = label(nb) {
                    if j > i {
                        return Err(bad(format!("entry {} sits before {}", j + 1, i + 1)));
                    }
                }
            }
        }
        Ok(StandardMultiTableau { shape, entries })
    }

    /// Read `1:(1,1,1) 2:(3,1,1) 3:(1,1,2)`, each node given as
    /// `(component,row,col)`, into a tableau with `m` components.
    pub fn parse(s: &str, m: usize) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("tableau {s:?}: {why}"));
        let mut pairs: Vec<(usize, MNode)> = Vec::new();
        for item in s.split_whitespace() {
            let (idx, node) = item.split_once(':').ok_or_else(|| bad("expected `i:(k,r,c)`"))?;
            let idx: usize = idx.parse().map_err(|_| bad("bad entry number"))?;
            let coords: Vec<usize> = node
                .strip_prefix('(')
                .and_then(|x| x.strip_suffix(')'))
                .ok_or_else(|| bad("node must be parenthesized"))?
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad("node coordinates must be integers"))?;
            let [k, r, c] = coords[..] else {
                return Err(bad("nodes have three coordinates"));
            };
            if k == 0 || k > m || r == 0 || c == 0 {
                return Err(bad("coordinate out of range"));
            }
            pairs.push((idx, MNode::new(k, r, c)));
        }
        pairs.sort_by_key(|p| p.0);
        if pairs.iter().enumerate().any(|(i, p)| p.0 != i + 1) {
            return Err(bad("entries must be exactly 1..n"));
        }
        let entries: Vec<MNode> = pairs.into_iter().map(|p| p.1).collect();
        let mut comps = vec![Vec::<usize>::new(); m];
        for e in &entries {
            let part = &mut comps[e.component - 1];
            if part.len() < e.row {
                part.resize(e.row, 0);
            }
            part[e.row - 1] = part[e.row - 1].max(e.col);
        }
        let shape = MultiPartition::new(comps).map_err(|_| bad("entries do not form a shape"))?;
        Self::new(shape, entries)
    }

    pub fn shape(&self) -> &MultiPartition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[MNode] {
        &self.entries
    }

    /// Node holding entry `i` (1-based).
    pub fn node(&self, i: usize) -> MNode {
        self.entries[i - 1]
    }

    pub fn content(&self, i: usize) -> i64 {
        self.node(i).content()
    }

    /// Component of entry `i`, 1-based.
    pub fn position(&self, i: usize) -> usize {
        self.node(i).component
    }

    /// Tableau with the largest entry removed.
    pub fn restrict(&self) -> StandardMultiTableau {
        let last = *self.entries.last().expect("nonempty tableau");
        StandardMultiTableau {
            shape: self.shape.without(&last),
            entries: self.entries[..self.entries.len() - 1].to_vec(),
        }
    }

    /// Tableau with `n + 1` placed at an addable node.
    pub fn extend(&self, node: MNode) -> StandardMultiTableau {
        let mut entries = self.entries.clone();
        entries.push(node);
        StandardMultiTableau { shape: self.shape.with(&node), entries }
    }

    /// Machine form `1:(k,r,c) 2:(k,r,c) ...`.
    pub fn positions(&self) -> String {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, e)| format!("{}:{e}", i + 1))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn empty(m: usize) -> Self {
        StandardMultiTableau { shape: MultiPartition::empty(m), entries: Vec::new() }
    }
}

/// `(1 3 | ∅ | 2)`, rows within a component separated by ` / `.
impl fmt::Display for StandardMultiTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .shape
            .components()
            .iter()
            .enumerate()
            .map(|(k, part)| {
                if part.is_empty() {
                    return "∅".to_string();
                }
                part.iter()
                    .enumerate()
                    .map(|(r, &len)| {
                        (1..=len)
                            .map(|c| {
                                let node = MNode::new(k + 1, r + 1, c);
                                let i = self.entries.iter().position(|&e| e == node).unwrap();
                                (i + 1).to_string()
                            })
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect::<Vec<_>>()
                    .join(" / ")
            })
            .collect();
        write!(f, "({})", comps.join(" | "))
    }
}

/// All standard tableaux of a shape, ordered by the node sequence of `1..n`.
pub fn standard_tableaux(shape: &MultiPartition) -> Vec<StandardMultiTableau> {
    fn rec(shape: &MultiPartition, suffix: &mut Vec<MNode>, out: &mut Vec<Vec<MNode>>) {
        if shape.size() == 0 {
            out.push(suffix.iter().rev().copied().collect());
            return;
        }
        for node in boundary_nodes(shape).0 {
            suffix.push(node);
            rec(&shape.without(&node), suffix, out);
            suffix.pop();
        }
    }
    let mut fillings = Vec::new();
    rec(shape, &mut Vec::new(), &mut fillings);
    fillings.sort();
    fillings
        .into_iter()
        .map(|entries| StandardMultiTableau { shape: shape.clone(), entries })
        .collect()
}
