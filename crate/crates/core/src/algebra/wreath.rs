use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::GroupData;

/// Lookup tables are built only below this many entries.
const TABLE_LIMIT: usize = 1 << 22;

/// Hard ceiling on `|G|^n * n!` for the integer encoding.
const MAX_ELEMENTS: u128 = 1 << 40;

/// An element `(a, sigma)` of `G wr S_n`; `colors[i]` is the `G`-index at slot
/// `i` and `perm[i]` is `sigma(i)`, both 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    pub colors: Vec<usize>,
    pub perm: Vec<usize>,
}

/// The wreath product `G wr S_n` with an integer encoding of its elements:
/// `code = sum_i a_i |G|^i + |G|^n * rank(sigma)` with lexicographic ranks.
pub struct WreathGroup {
    group: Arc<GroupData>,
    n: usize,
    base: usize,
    gn: usize,
    nperm: usize,
    identity_colors: usize,
    perms: Vec<Vec<u8>>,
    perm_mul: Option<Vec<u32>>,
    perm_inv: Vec<u32>,
    /// `perm_act[rank * gn + a]` is the code of `sigma(a)`.
    perm_act: Option<Vec<u32>>,
    /// `gn_mul[a * gn + b]` is the slotwise product.
    gn_mul: Option<Vec<u32>>,
}

impl fmt::Debug for WreathGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WreathGroup({} wr S{})", self.group.table.name(), self.n)
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn all_perms(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// Lexicographic rank of a permutation of `0..n`.
pub fn perm_rank(p: &[usize]) -> usize {
    let n = p.len();
    let mut rank = 0usize;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

impl WreathGroup {
    pub fn new(group: Arc<GroupData>, n: usize) -> Result<Arc<Self>> {
        let base = group.order();
        let total = (base as u128).checked_pow(n as u32).map(|g| g * factorial(n));
        match total {
            Some(t) if t <= MAX_ELEMENTS && n <= 12 => {}
            _ => {
                return Err(Error::SizeCap {
                    estimate: total.unwrap_or(u128::MAX),
                    cap: MAX_ELEMENTS,
                })
            }
        }
        let gn = base.pow(n as u32);
        let perms = all_perms(n);
        let nperm = perms.len();
        let e = group.table.identity();
        let identity_colors = (0..n).map(|i| e * base.pow(i as u32)).sum();

        let compose = |a: &[u8], b: &[u8]| -> Vec<usize> { b.iter().map(|&x| a[x as usize] as usize).collect() };
        let perm_inv = perms
            .iter()
            .map(|p| {
                let mut inv = vec![0usize; n];
                for (i, &x) in p.iter().enumerate() {
                    inv[x as usize] = i;
                }
                perm_rank(&inv) as u32
            })
            .collect();
        let perm_mul = (nperm * nperm <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(nperm * nperm);
            for a in &perms {
                for b in &perms {
                    t.push(perm_rank(&compose(a, b)) as u32);
                }
            }
            t
        });
        let mut w = WreathGroup {
            group,
            n,
            base,
            gn,
            nperm,
            identity_colors,
            perms,
            perm_mul,
            perm_inv,
            perm_act: None,
            gn_mul: None,
        };
        if nperm * gn <= TABLE_LIMIT {
            let mut t = Vec::with_capacity(nperm * gn);
            for r in 0..nperm {
                for a in 0..gn {
                    t.push(w.act_slow(r, a) as u32);
                }
            }
            w.perm_act = Some(t);
        }
        if gn * gn <= TABLE_LIMIT {
            let mut t = Vec::with_capacity(gn * gn);
            for a in 0..gn {
                for b in 0..gn {
                    t.push(w.colors_mul_slow(a, b) as u32);
                }
            }
            w.gn_mul = Some(t);
        }
        Ok(Arc::new(w))
    }

    pub fn group(&self) -> &Arc<GroupData> {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `|G|^n * n!`
    pub fn size(&self) -> usize {
        self.gn * self.nperm
    }

    pub fn identity_code(&self) -> u64 {
        self.identity_colors as u64
    }

    pub fn same_as(&self, other: &WreathGroup) -> bool {
        std::ptr::eq(self, other) || (self.n == other.n && self.group.table == other.group.table)
    }

    fn act_slow(&self, rank: usize, a: usize) -> usize {
        let p = &self.perms[rank];
        let mut out = 0;
        let mut rest = a;
        for &target in p.iter() {
            out += (rest % self.base) * self.base.pow(target as u32);
            rest /= self.base;
        }
        out
    }

    fn colors_mul_slow(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut w = 1;
        for _ in 0..self.n {
            out += self.group.table.mul(a % self.base, b % self.base) * w;
            a /= self.base;
            b /= self.base;
            w *= self.base;
        }
        out
    }

    #[inline]
    pub(crate) fn split(&self, code: u64) -> (usize, usize) {
        ((code % self.gn as u64) as usize, (code / self.gn as u64) as usize)
    }

    #[inline]
    pub(crate) fn join(&self, colors: usize, rank: usize) -> u64 {
        colors as u64 + self.gn as u64 * rank as u64
    }

    #[inline]
    pub(crate) fn act(&self, rank: usize, a: usize) -> usize {
        match &self.perm_act {
            Some(t) => t[rank * self.gn + a] as usize,
            None => self.act_slow(rank, a),
        }
    }

    #[inline]
    pub(crate) fn colors_mul(&self, a: usize, b: usize) -> usize {
        match &self.gn_mul {
            Some(t) => t[a * self.gn + b] as usize,
            None => self.colors_mul_slow(a, b),
        }
    }

    #[inline]
    pub(crate) fn rank_mul(&self, r: usize, s: usize) -> usize {
        match &self.perm_mul {
            Some(t) => t[r * self.nperm + s] as usize,
            None => {
                let (a, b) = (&self.perms[r], &self.perms[s]);
                perm_rank(&b.iter().map(|&x| a[x as usize] as usize).collect::<Vec<_>>())
            }
        }
    }

    /// `(a, sigma)(a', sigma') = (a sigma(a'), sigma sigma')`.
    #[inline]
    pub fn mul_codes(&self, x: u64, y: u64) -> u64 {
        let (a, r) = self.split(x);
        let (b, s) = self.split(y);
        self.join(self.colors_mul(a, self.act(r, b)), self.rank_mul(r, s))
    }

    pub fn inv_code(&self, x: u64) -> u64 {
        let (a, r) = self.split(x);
        let ri = self.perm_inv[r] as usize;
        // (a, s)^{-1} = (s^{-1}(a^{-1}), s^{-1})
        let a_inv = self.encode_colors(&self.decode_colors(a).iter().map(|&g| self.group.table.inv(g)).collect::<Vec<_>>());
        self.join(self.act(ri, a_inv), ri)
    }

    pub fn encode_colors(&self, colors: &[usize]) -> usize {
        colors.iter().rev().fold(0, |acc, &c| acc * self.base + c)
    }

    pub fn decode_colors(&self, mut a: usize) -> Vec<usize> {
        (0..self.n)
            .map(|_| {
                let c = a % self.base;
                a /= self.base;
                c
            })
            .collect()
    }

    pub fn encode(&self, x: &WreathElement) -> Result<u64> {
        let ok_perm = {
            let mut seen = vec![false; self.n];
            x.perm.len() == self.n
                && x.perm.iter().all(|&p| p < self.n && !std::mem::replace(&mut seen[p], true))
        };
        if x.colors.len() != self.n || !ok_perm || x.colors.iter().any(|&c| c >= self.base) {
            return Err(Error::Mismatch(format!("{x:?} is not an element of {self:?}")));
        }
        Ok(self.join(self.encode_colors(&x.colors), perm_rank(&x.perm)))
    }

    pub fn decode(&self, code: u64) -> WreathElement {
        let (a, r) = self.split(code);
        WreathElement {
            colors: self.decode_colors(a),
            perm: self.perms[r].iter().map(|&x| x as usize).collect(),
        }
    }

    pub fn contains_code(&self, code: u64) -> bool {
        code < self.size() as u64
    }

    /// Code of the permutation `(1, sigma)`, `perm` 0-based.
    pub fn perm_code(&self, perm: &[usize]) -> u64 {
        self.join(self.identity_colors, perm_rank(perm))
    }

    /// Code of `g` placed at 1-based `slot` with identity elsewhere.
    pub fn slot_code(&self, slot: usize, g: usize) -> u64 {
        let e = self.group.table.identity();
        let w = self.base.pow(slot as u32 - 1);
        (self.identity_colors - e * w + g * w) as u64
    }

    /// Human form `[c_1; ..; c_n | sigma(1) .. sigma(n)]`, or `1` for the identity.
    pub fn label(&self, code: u64) -> String {
        if code == self.identity_code() {
            return "1".into();
        }
        let x = self.decode(code);
        let colors: Vec<&str> = x.colors.iter().map(|&c| self.group.table.label(c)).collect();
        let perm: Vec<String> = x.perm.iter().map(|p| (p + 1).to_string()).collect();
        format!("[{} | {}]", colors.join("; "), perm.join(" "))
    }
}
