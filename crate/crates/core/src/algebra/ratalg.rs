use std::fmt;
use std::sync::Arc;

use super::{AlgebraElement, WreathGroup};
use crate::error::{Error, Result};
use crate::scalar::{Cyclotomic, Poly, RatFun};

/// Algebra-valued rational function of one variable `u`, stored as
/// `(sum_k num[k] u^k) / den` with a monic scalar denominator.
#[derive(Clone, Debug)]
pub struct RatAlgebraElement {
    ctx: Arc<WreathGroup>,
    num: Vec<AlgebraElement>,
    den: Poly,
}

impl RatAlgebraElement {
    pub fn constant(x: AlgebraElement) -> Self {
        let ctx = x.ctx().clone();
        let mut out = RatAlgebraElement { ctx, num: vec![x], den: Poly::one() };
        out.trim();
        out
    }

    /// `(sum_k num[k] u^k) / den`; `den` must be nonzero.
    pub fn new(ctx: &Arc<WreathGroup>, num: Vec<AlgebraElement>, den: Poly) -> Result<Self> {
        let lead = den.leading().ok_or(Error::ZeroDenominator)?.inv()?;
        if num.iter().any(|x| !x.ctx().same_as(ctx)) {
            return Err(Error::Mismatch("numerator outside the wreath product".into()));
        }
        let mut out = RatAlgebraElement {
            ctx: ctx.clone(),
            num: num.iter().map(|x| x.scale(&lead)).collect(),
            den: den.scale(&lead),
        };
        out.trim();
        Ok(out)
    }

    /// `((u - c) x + y) / (u - c)`, the shape of a baxterized generator.
    pub fn linear_over(x: &AlgebraElement, y: &AlgebraElement, c: &Cyclotomic) -> Self {
        let low = &y.clone() - &x.scale(c);
        RatAlgebraElement { ctx: x.ctx().clone(), num: vec![low, x.clone()], den: Poly::x_minus(c) }
    }

    fn trim(&mut self) {
        while self.num.last().is_some_and(AlgebraElement::is_zero) {
            self.num.pop();
        }
    }

    pub fn ctx(&self) -> &Arc<WreathGroup> {
        &self.ctx
    }

    pub fn numerator(&self) -> &[AlgebraElement] {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if !self.ctx.same_as(&other.ctx) {
            return Err(Error::Mismatch("rational elements over different wreath products".into()));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::constant(AlgebraElement::zero(&self.ctx)));
        }
        let mut num = vec![AlgebraElement::zero(&self.ctx); self.num.len() + other.num.len() - 1];
        for (i, x) in self.num.iter().enumerate() {
            for (j, y) in other.num.iter().enumerate() {
                num[i + j] = &num[i + j] + &x.checked_mul(y)?;
            }
        }
        let mut out = RatAlgebraElement { ctx: self.ctx.clone(), num, den: &self.den * &other.den };
        out.trim();
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if !self.ctx.same_as(&other.ctx) {
            return Err(Error::Mismatch("rational elements over different wreath products".into()));
        }
        let lift = |num: &[AlgebraElement], by: &Poly| -> Vec<AlgebraElement> {
            let mut out = vec![AlgebraElement::zero(&self.ctx); num.len() + by.coeffs().len()];
            for (i, x) in num.iter().enumerate() {
                for (j, c) in by.coeffs().iter().enumerate() {
                    out[i + j] = &out[i + j] + &x.scale(c);
                }
            }
            out
        };
        let mut a = lift(&self.num, &other.den);
        let mut b = lift(&other.num, &self.den);
        let len = a.len().max(b.len());
        a.resize(len, AlgebraElement::zero(&self.ctx));
        b.resize(len, AlgebraElement::zero(&self.ctx));
        let num = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let mut out = RatAlgebraElement { ctx: self.ctx.clone(), num, den: &self.den * &other.den };
        out.trim();
        Ok(out)
    }

    /// Value at `u = at`. Common factors `(u - at)` are cancelled first; a
    /// factor that does not cancel gives [`Error::Pole`].
    pub fn eval(&self, at: &Cyclotomic) -> Result<AlgebraElement> {
        let r = self.den.root_multiplicity(at);
        let mut num = self.num.clone();
        for _ in 0..r {
            if num.is_empty() {
                break;
            }
            let (q, rem) = divide_linear(&self.ctx, &num, at);
            if !rem.is_zero() {
                return Err(Error::Pole { at: at.clone() });
            }
            num = q;
        }
        let mut den = self.den.clone();
        for _ in 0..r {
            den = den.div_rem(&Poly::x_minus(at))?.0;
        }
        let d = den.eval(at).inv()?;
        let mut value = AlgebraElement::zero(&self.ctx);
        for x in num.iter().rev() {
            value = &value.scale(at) + x;
        }
        Ok(value.scale(&d))
    }

    /// Coefficient of one group element as a reduced scalar rational function.
    pub fn coefficient(&self, code: u64) -> Result<RatFun> {
        let p = Poly::new(self.num.iter().map(|x| x.coeff(code)).collect());
        RatFun::reduce(p, self.den.clone())
    }

    /// Codes carrying a nonzero numerator coefficient.
    pub fn support(&self) -> Vec<u64> {
        let mut codes: Vec<u64> = self.num.iter().flat_map(|x| x.terms().keys().copied()).collect();
        codes.sort_unstable();
        codes.dedup();
        codes
    }

    /// Equality as rational functions, by cross-multiplication.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        if !self.ctx.same_as(&other.ctx) {
            return Err(Error::Mismatch("rational elements over different wreath products".into()));
        }
        let lhs = self.num_times(&other.den);
        let rhs = other.num_times(&self.den);
        Ok(lhs == rhs)
    }

    fn num_times(&self, p: &Poly) -> Vec<AlgebraElement> {
        let mut out = vec![AlgebraElement::zero(&self.ctx); self.num.len() + p.coeffs().len()];
        for (i, x) in self.num.iter().enumerate() {
            for (j, c) in p.coeffs().iter().enumerate() {
                out[i + j] = &out[i + j] + &x.scale(c);
            }
        }
        while out.last().is_some_and(AlgebraElement::is_zero) {
            out.pop();
        }
        out
    }
}

/// Synthetic division of an algebra-valued polynomial by `u - at`.
fn divide_linear(ctx: &Arc<WreathGroup>, num: &[AlgebraElement], at: &Cyclotomic) -> (Vec<AlgebraElement>, AlgebraElement) {
    let mut q = vec![AlgebraElement::zero(ctx); num.len() - 1];
    let mut carry = AlgebraElement::zero(ctx);
    for k in (0..num.len()).rev() {
        let cur = &num[k] + &carry.scale(at);
        if k == 0 {
            return (q, cur);
        }
        q[k - 1] = cur.clone();
        carry = cur;
    }
    unreachable!()
}

impl fmt::Display for RatAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| match k {
                0 => format!("({x})"),
                1 => format!("({x})*u"),
                _ => format!("({x})*u^{k}"),
            })
            .collect();
        let top = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        write!(f, "[{top}] / ({})", self.den.fmt_var("u"))
    }
}
