use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::kernel::convolve;
use super::WreathGroup;
use crate::error::{Error, Result};
use crate::scalar::{rat, Cyclotomic};

/// Sparse element of the group algebra of `G wr S_n`. No stored zeros.
#[derive(Clone)]
pub struct AlgebraElement {
    ctx: Arc<WreathGroup>,
    terms: BTreeMap<u64, Cyclotomic>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_as(&other.ctx) && self.terms == other.terms
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({:?}, {})", self.ctx, self)
    }
}

impl AlgebraElement {
    pub fn zero(ctx: &Arc<WreathGroup>) -> Self {
        AlgebraElement { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Arc<WreathGroup>) -> Self {
        Self::basis(ctx, ctx.identity_code())
    }

    pub fn basis(ctx: &Arc<WreathGroup>, code: u64) -> Self {
        Self::term(ctx, code, Cyclotomic::one())
    }

    pub fn term(ctx: &Arc<WreathGroup>, code: u64, c: Cyclotomic) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(code, c);
        }
        AlgebraElement { ctx: ctx.clone(), terms }
    }

    pub fn scalar(ctx: &Arc<WreathGroup>, c: Cyclotomic) -> Self {
        Self::term(ctx, ctx.identity_code(), c)
    }

    pub fn from_terms(ctx: &Arc<WreathGroup>, terms: impl IntoIterator<Item = (u64, Cyclotomic)>) -> Result<Self> {
        let mut out = Self::zero(ctx);
        for (code, c) in terms {
            if !ctx.contains_code(code) {
                return Err(Error::OutOfRange(format!("element code {code}")));
            }
            out.add_term(code, &c);
        }
        Ok(out)
    }

    pub fn ctx(&self) -> &Arc<WreathGroup> {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<u64, Cyclotomic> {
        &self.terms
    }

    pub fn coeff(&self, code: u64) -> Cyclotomic {
        self.terms.get(&code).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, code: u64, c: &Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&code) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.terms.remove(&code);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(code, c.clone());
            }
        }
    }

    /// Replace one coefficient; zero removes the term.
    pub fn set_coeff(&mut self, code: u64, c: Cyclotomic) {
        if c.is_zero() {
            self.terms.remove(&code);
        } else {
            self.terms.insert(code, c);
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        AlgebraElement {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx.same_as(&other.ctx) {
            Ok(())
        } else {
            Err(Error::Mismatch(format!("{:?} vs {:?}", self.ctx, other.ctx)))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        for (&k, v) in &small.terms {
            out.add_term(k, v);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(AlgebraElement { ctx: self.ctx.clone(), terms: convolve(&self.ctx, &self.terms, &other.terms) })
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.ctx), |acc, _| &acc * self)
    }

    /// `self + c`
    pub fn add_scalar(&self, c: &Cyclotomic) -> Self {
        let mut out = self.clone();
        out.add_term(self.ctx.identity_code(), c);
        out
    }

    /// `x y - y x`
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// The same element viewed in a larger wreath product (extra slots fixed).
    pub fn embed(&self, target: &Arc<WreathGroup>) -> Result<Self> {
        let src = &self.ctx;
        if target.n() < src.n() || target.group().table != src.group().table {
            return Err(Error::Mismatch(format!("cannot embed {src:?} into {target:?}")));
        }
        let e = src.group().table.identity();
        let mut out = Self::zero(target);
        for (&code, c) in &self.terms {
            let mut x = src.decode(code);
            x.colors.resize(target.n(), e);
            x.perm.extend(src.n()..target.n());
            out.add_term(target.encode(&x)?, c);
        }
        Ok(out)
    }

    /// One `<code>: <scalar>` line per term, ascending codes.
    pub fn to_structured(&self) -> String {
        let mut s = String::new();
        for (code, c) in &self.terms {
            s.push_str(&format!("{code}: {c}\n"));
        }
        s
    }

    pub fn parse_structured(ctx: &Arc<WreathGroup>, text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (code, scalar) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("term line {line:?}")))?;
            let code: u64 = code.trim().parse().map_err(|_| Error::Parse(format!("element code in {line:?}")))?;
            terms.push((code, scalar.trim().parse::<Cyclotomic>()?));
        }
        Self::from_terms(ctx, terms)
    }

    // Distinguished elements; every index below is 1-based.

    fn slot_check(self_ctx: &Arc<WreathGroup>, i: usize) -> Result<()> {
        if i == 0 || i > self_ctx.n() {
            return Err(Error::OutOfRange(format!("slot {i} of {}", self_ctx.n())));
        }
        Ok(())
    }

    /// `s_i = (1, (i, i+1))`.
    pub fn s(ctx: &Arc<WreathGroup>, i: usize) -> Result<Self> {
        if i == 0 || i >= ctx.n() {
            return Err(Error::OutOfRange(format!("s_{i} with n = {}", ctx.n())));
        }
        let mut p: Vec<usize> = (0..ctx.n()).collect();
        p.swap(i - 1, i);
        Ok(Self::basis(ctx, ctx.perm_code(&p)))
    }

    /// `(1, sigma)` for a 0-based permutation.
    pub fn permutation(ctx: &Arc<WreathGroup>, perm: &[usize]) -> Result<Self> {
        let x = super::WreathElement { colors: vec![ctx.group().table.identity(); ctx.n()], perm: perm.to_vec() };
        Ok(Self::basis(ctx, ctx.encode(&x)?))
    }

    /// Group element `g` placed in slot `j`.
    pub fn g(ctx: &Arc<WreathGroup>, j: usize, g: usize) -> Result<Self> {
        Self::slot_check(ctx, j)?;
        if g >= ctx.group().order() {
            return Err(Error::OutOfRange(format!("group element {g}")));
        }
        Ok(Self::basis(ctx, ctx.slot_code(j, g)))
    }

    /// Image of an element of the group algebra of `G` in slot `j`.
    pub fn in_slot(ctx: &Arc<WreathGroup>, j: usize, x: &[(usize, Cyclotomic)]) -> Result<Self> {
        Self::slot_check(ctx, j)?;
        let mut out = Self::zero(ctx);
        for (g, c) in x {
            if *g >= ctx.group().order() {
                return Err(Error::OutOfRange(format!("group element {g}")));
            }
            out.add_term(ctx.slot_code(j, *g), c);
        }
        Ok(out)
    }

    /// Normalized class sum of class `alpha` in slot `j`.
    pub fn class_sum(ctx: &Arc<WreathGroup>, j: usize, alpha: usize) -> Result<Self> {
        let classes = &ctx.group().classes.classes;
        let class = classes
            .get(alpha)
            .ok_or_else(|| Error::OutOfRange(format!("class {alpha}")))?;
        let w = Cyclotomic::from_rational(rat(1, class.len() as i64));
        let x: Vec<_> = class.iter().map(|&g| (g, w.clone())).collect();
        Self::in_slot(ctx, j, &x)
    }

    /// `e_{i,j} = (1/|G|) sum_g g_i (g^{-1})_j`, with `e_{i,i} = 1`.
    pub fn e(ctx: &Arc<WreathGroup>, i: usize, j: usize) -> Result<Self> {
        Self::slot_check(ctx, i)?;
        Self::slot_check(ctx, j)?;
        if i == j {
            return Ok(Self::one(ctx));
        }
        let t = &ctx.group().table;
        let w = Cyclotomic::from_rational(rat(1, t.order() as i64));
        let mut x = super::WreathElement { colors: vec![t.identity(); ctx.n()], perm: (0..ctx.n()).collect() };
        let mut out = Self::zero(ctx);
        for g in 0..t.order() {
            x.colors[i - 1] = g;
            x.colors[j - 1] = t.inv(g);
            out.add_term(ctx.encode(&x)?, &w);
        }
        Ok(out)
    }

    /// Jucys-Murphy elements: `j_1 = 0`, `j_{k+1} = s_k j_k s_k + e_{k,k+1} s_k`.
    pub fn jucys_murphy(ctx: &Arc<WreathGroup>, k: usize) -> Result<Self> {
        Self::slot_check(ctx, k)?;
        let mut j = Self::zero(ctx);
        for step in 1..k {
            let s = Self::s(ctx, step)?;
            j = &(&(&s * &j) * &s) + &(&Self::e(ctx, step, step + 1)? * &s);
        }
        Ok(j)
    }

    /// Readable form `c*[g_1; ..; g_n | sigma]` summed, `1` for the identity element.
    pub fn to_human(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&code, c)| {
                let label = self.ctx.label(code);
                let coef = if c.is_rational() { c.to_string() } else { format!("({c})") };
                match (c.is_one(), code == self.ctx.identity_code()) {
                    (true, _) => label,
                    (false, true) => coef,
                    (false, false) => format!("{coef}*{label}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_human())
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_add(rhs).expect("operands from the same wreath product")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self + &(-rhs)
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_mul(rhs).expect("operands from the same wreath product")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(&k, v)| (k, -v)).collect() }
    }
}
