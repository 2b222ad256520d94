//! Exact scalars: rationals, elements of cyclotomic fields, univariate
//! polynomials and rational functions over them.

mod cyclotomic;
mod poly;
mod ratfun;

pub use cyclotomic::{canonical_conductor, cyclotomic_polynomial, euler_phi, Cyclotomic};
pub use poly::Poly;
pub use ratfun::RatFun;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    assert!(q != 0, "rat: zero denominator");
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Constructor selector for [`make_scalar`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarSpec {
    Integer(BigInt),
    Ratio(BigInt, BigInt),
    /// `zeta_n^k`
    RootOfUnity { n: u32, k: i64 },
}

pub fn make_scalar(spec: ScalarSpec) -> Result<Cyclotomic> {
    match spec {
        ScalarSpec::Integer(i) => Ok(Cyclotomic::from_rational(Rational::from_integer(i))),
        ScalarSpec::Ratio(p, q) => {
            if q.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            Ok(Cyclotomic::from_rational(Rational::new(p, q)))
        }
        ScalarSpec::RootOfUnity { n, k } => Cyclotomic::root_of_unity(n, k),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

/// Field arithmetic by operator tag. Binary operators require `b`.
pub fn arith(op: ArithOp, a: &Cyclotomic, b: Option<&Cyclotomic>) -> Result<Cyclotomic> {
    let rhs = || b.ok_or_else(|| Error::Mismatch(format!("{op:?} needs two operands")));
    match op {
        ArithOp::Add => Ok(a + rhs()?),
        ArithOp::Sub => Ok(a - rhs()?),
        ArithOp::Mul => Ok(a * rhs()?),
        ArithOp::Div => a.checked_div(rhs()?),
        ArithOp::Neg => Ok(-a),
        ArithOp::Inv => a.inv(),
    }
}
