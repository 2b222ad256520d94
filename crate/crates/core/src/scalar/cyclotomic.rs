use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

/// `Q(zeta_{2m}) = Q(zeta_m)` for odd `m`, so conductors congruent to 2 mod 4
/// are halved.
pub fn canonical_conductor(n: u32) -> u32 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

fn phi_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Integer coefficients of the n-th cyclotomic polynomial, ascending, monic.
///
/// Computed as `(x^n - 1) / prod_{d | n, d < n} Phi_d(x)` and memoized.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1);
    if let Some(p) = phi_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    let p = Arc::new(num);
    phi_cache().write().unwrap().insert(n, p.clone());
    p
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Element of `Q(zeta_N)` in the power basis `1, zeta, ..., zeta^{phi(N)-1}`.
///
/// The conductor is always canonical (never 2 mod 4) and the coefficient
/// vector always has length `phi(N)`. Values with different conductors compare
/// equal when they agree after promotion to the lcm conductor.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![r] }
    }

    pub fn from_int(i: i64) -> Self {
        Self::from_rational(Rational::from_integer(i.into()))
    }

    pub fn ratio(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::from_rational(super::rat(p, q)))
    }

    /// `zeta_n^k`, reduced modulo the n-th cyclotomic polynomial.
    pub fn root_of_unity(n: u32, k: i64) -> Result<Self> {
        Self::from_power_sum(n, &[(k, Rational::one())])
    }

    /// `sum c * zeta_n^e` over the given `(e, c)` pairs.
    pub fn from_power_sum(n: u32, terms: &[(i64, Rational)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroConductor);
        }
        let m = canonical_conductor(n);
        let mut dense = vec![Rational::zero(); m as usize];
        for (e, c) in terms {
            let (neg, exp) = if m != n {
                // zeta_{2m} = -zeta_m^{(m+1)/2}
                let neg = e.rem_euclid(2) == 1;
                let exp = (e.rem_euclid(2 * m as i64) * ((m as i64 + 1) / 2)).rem_euclid(m as i64);
                (neg, exp)
            } else {
                (false, e.rem_euclid(m as i64))
            };
            let slot = &mut dense[exp as usize];
            if neg {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        Ok(Self::from_dense(m, dense))
    }

    /// Reduce a dense vector of powers `zeta^0..zeta^{len-1}` at canonical conductor `n`.
    pub(crate) fn from_dense(n: u32, mut v: Vec<Rational>) -> Self {
        debug_assert_eq!(n, canonical_conductor(n));
        let d = euler_phi(n);
        if v.len() > n as usize {
            let tail = v.split_off(n as usize);
            for (i, c) in tail.into_iter().enumerate() {
                v[i % n as usize] += c;
            }
        }
        if v.len() > d {
            let phi = cyclotomic_polynomial(n);
            for k in (d..v.len()).rev() {
                let c = std::mem::take(&mut v[k]);
                if c.is_zero() {
                    continue;
                }
                for (j, &pj) in phi.iter().take(d).enumerate() {
                    if pj != 0 {
                        v[k - d + j] -= &c * Rational::from_integer(pj.into());
                    }
                }
            }
            v.truncate(d);
        }
        v.resize(d, Rational::zero());
        Cyclotomic { conductor: n, coeffs: v }
    }

    /// Build from exactly `phi(n)` power-basis coefficients.
    pub fn from_coeffs(n: u32, coeffs: Vec<Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroConductor);
        }
        if canonical_conductor(n) != n {
            let terms: Vec<_> = coeffs.into_iter().enumerate().map(|(i, c)| (i as i64, c)).collect();
            return Self::from_power_sum(n, &terms);
        }
        Ok(Self::from_dense(n, coeffs))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Re-express in `Q(zeta_target)`; `target` must be a multiple of the conductor.
    pub fn promote(&self, target: u32) -> Result<Self> {
        let target = canonical_conductor(target);
        if target == 0 || !target.is_multiple_of(self.conductor) {
            return Err(Error::Mismatch(format!(
                "cannot promote conductor {} to {}",
                self.conductor, target
            )));
        }
        if target == self.conductor {
            return Ok(self.clone());
        }
        let step = (target / self.conductor) as usize;
        let mut dense = vec![Rational::zero(); target as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            dense[i * step] = c.clone();
        }
        Ok(Self::from_dense(target, dense))
    }

    /// Recognize this value as an element of `Q(zeta_n)` if it lies there.
    pub fn demote(&self, n: u32) -> Option<Self> {
        let n = canonical_conductor(n);
        if n == 0 || !self.conductor.is_multiple_of(n) {
            return None;
        }
        if n == self.conductor {
            return Some(self.clone());
        }
        let dn = euler_phi(n);
        let columns: Vec<Vec<Rational>> = (0..dn)
            .map(|i| {
                let basis = Self::root_of_unity(n, i as i64).unwrap();
                basis.promote(self.conductor).unwrap().coeffs
            })
            .collect();
        let rows = self.coeffs.len();
        let matrix: Vec<Vec<Rational>> = (0..rows)
            .map(|r| columns.iter().map(|col| col[r].clone()).collect())
            .collect();
        let sol = solve_exact(matrix, self.coeffs.clone())?;
        Some(Cyclotomic { conductor: n, coeffs: sol })
    }

    /// Smallest canonical conductor whose field contains this value.
    pub fn minimal_conductor(&self) -> u32 {
        (1..=self.conductor)
            .filter(|d| self.conductor.is_multiple_of(*d) && canonical_conductor(*d) == *d)
            .find(|&d| self.demote(d).is_some())
            .unwrap_or(self.conductor)
    }

    /// The automorphism `zeta -> zeta^{-1}` (complex conjugation).
    pub fn conjugate(&self) -> Self {
        if self.conductor == 1 {
            return self.clone();
        }
        let terms: Vec<_> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (-(i as i64), c.clone()))
            .collect();
        Self::from_power_sum(self.conductor, &terms).unwrap()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        let d = self.coeffs.len();
        // Column j of the multiplication-by-self matrix is self * zeta^j.
        let columns: Vec<Vec<Rational>> = (0..d)
            .map(|j| {
                let zj = Self::root_of_unity(self.conductor, j as i64).unwrap();
                (self * &zj).coeffs
            })
            .collect();
        let matrix: Vec<Vec<Rational>> =
            (0..d).map(|r| columns.iter().map(|col| col[r].clone()).collect()).collect();
        let mut rhs = vec![Rational::zero(); d];
        rhs[0] = Rational::one();
        let sol = solve_exact(matrix, rhs).ok_or(Error::DivisionByZero)?;
        Ok(Cyclotomic { conductor: self.conductor, coeffs: sol })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    fn aligned<'a>(a: &'a Self, b: &'a Self) -> (Cow<'a, Self>, Cow<'a, Self>) {
        if a.conductor == b.conductor {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let l = a.conductor.lcm(&b.conductor);
        (
            Cow::Owned(a.promote(l).unwrap()),
            Cow::Owned(b.promote(l).unwrap()),
        )
    }
}

/// Solve `matrix * x = rhs` exactly. The matrix may have more rows than
/// columns; returns `None` if the system is inconsistent or singular.
fn solve_exact(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..cols {
        let p = (pivot_row..rows).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot_row, p);
        b.swap(pivot_row, p);
        let inv = a[pivot_row][col].recip();
        for c in col..cols {
            a[pivot_row][c] *= &inv;
        }
        b[pivot_row] *= &inv;
        for r in 0..rows {
            if r != pivot_row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..cols {
                    let t = &f * &a[pivot_row][c];
                    a[r][c] -= t;
                }
                let t = &f * &b[pivot_row];
                b[r] -= t;
            }
        }
        pivot_row += 1;
    }
    if b[pivot_row..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    b.truncate(cols);
    Some(b)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::aligned(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::aligned(self, rhs);
        Cyclotomic {
            conductor: a.conductor,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::aligned(self, rhs);
        Cyclotomic {
            conductor: a.conductor,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor == 1 && rhs.conductor == 1 {
            return Cyclotomic::from_rational(&self.coeffs[0] * &rhs.coeffs[0]);
        }
        if self.conductor == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.conductor == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let (a, b) = Cyclotomic::aligned(self, rhs);
        let d = a.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Cyclotomic::from_dense(a.conductor, prod)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic { (&self).$m(&rhs) }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for Cyclotomic {
    fn from(i: i64) -> Self {
        Self::from_int(i)
    }
}

/// Rationals print as `p/q` (or `p`); other values as
/// `c0 + c1*z + c2*z^2; N=<conductor>` listing nonzero terms only.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, "; N={}", self.conductor)
    }
}

impl FromStr for Cyclotomic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("scalar {s:?}: {why}"));
        let (body, n) = match s.split_once(';') {
            Some((body, tail)) => {
                let tail = tail.trim();
                let n = tail
                    .strip_prefix("N=")
                    .and_then(|k| k.trim().parse::<u32>().ok())
                    .ok_or_else(|| bad("expected `N=<conductor>` after `;`"))?;
                (body, n)
            }
            None => (s, 1),
        };
        if n == 0 {
            return Err(Error::ZeroConductor);
        }
        let mut terms = Vec::new();
        for term in body.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let (coef, power) = match term.find('z') {
                None => (term, 0i64),
                Some(pos) => {
                    let head = term[..pos].trim_end();
                    let coef = match head {
                        "" => "1",
                        "-" => "-1",
                        h => h.strip_suffix('*').ok_or_else(|| bad("expected `*` before z"))?.trim(),
                    };
                    let tail = &term[pos + 1..];
                    let power = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .and_then(|e| e.parse::<i64>().ok())
                            .ok_or_else(|| bad("bad exponent"))?
                    };
                    (coef, power)
                }
            };
            if n == 1 && power != 0 {
                return Err(bad("z requires a conductor"));
            }
            let c: Rational = coef.parse().map_err(|_| bad("bad rational coefficient"))?;
            terms.push((power, c));
        }
        Self::from_power_sum(n, &terms)
    }
}
