use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Cyclotomic, Poly};
use crate::error::{Error, Result};

/// Univariate rational function `num / den`, kept with `gcd(num, den) = 1`
/// and `den` monic. Equality is therefore structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Canonical form of `num / den`: common factors cancelled, denominator monic.
    pub fn reduce(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let lc_inv = den.leading().unwrap().inv()?;
        Ok(RatFun { num: num.scale(&lc_inv), den: den.scale(&lc_inv) })
    }

    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::constant(Cyclotomic::one())
    }

    pub fn constant(c: Cyclotomic) -> Self {
        RatFun { num: Poly::constant(c), den: Poly::one() }
    }

    /// The active variable `u`.
    pub fn var() -> Self {
        RatFun { num: Poly::x(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<Cyclotomic> {
        (self.den.degree() == Some(0) && self.num.degree().unwrap_or(0) == 0)
            .then(|| self.num.coeff(0))
    }

    /// Substitute `u = at`. Removable singularities are already gone because
    /// the form is reduced; a vanishing denominator is a genuine pole.
    pub fn eval(&self, at: &Cyclotomic) -> Result<Cyclotomic> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::Pole { at: at.clone() });
        }
        Ok(&self.num.eval(at) * &d.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::reduce(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFun) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.den == rhs.den {
            return RatFun::reduce(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFun::reduce(num, &self.den * &rhs.den).unwrap()
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        RatFun::reduce(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl From<Cyclotomic> for RatFun {
    fn from(c: Cyclotomic) -> Self {
        RatFun::constant(c)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num.fmt_var("u"))
        } else {
            write!(f, "({}) / ({})", self.num.fmt_var("u"), self.den.fmt_var("u"))
        }
    }
}
