//! Sparse convolution over exact cyclotomic coefficients.
//!
//! Both operands are brought to one conductor `L` and to integer numerators
//! over a common denominator. Products are accumulated as unreduced
//! polynomials in `zeta_L` (in `i128` when a bit-length bound allows it,
//! otherwise in `BigInt`) and reduced modulo `Phi_L` once per output term.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::WreathGroup;
use crate::scalar::{cyclotomic_polynomial, euler_phi, Cyclotomic, Rational};

/// One operand in integer form: `value = nums / den` coefficientwise.
struct IntForm<T> {
    codes: Vec<u64>,
    nums: Vec<Vec<T>>,
    den: BigInt,
}

fn common_conductor<'a>(xs: impl Iterator<Item = &'a Cyclotomic>) -> u32 {
    xs.fold(1u32, |acc, c| acc.lcm(&c.conductor()))
}

fn to_big_form(terms: &BTreeMap<u64, Cyclotomic>, conductor: u32) -> IntForm<BigInt> {
    let promoted: Vec<Cyclotomic> =
        terms.values().map(|c| c.promote(conductor).expect("conductor divides lcm")).collect();
    let den = promoted
        .iter()
        .flat_map(|c| c.coeffs().iter())
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let nums = promoted
        .iter()
        .map(|c| c.coeffs().iter().map(|r| r.numer() * (&den / r.denom())).collect())
        .collect();
    IntForm { codes: terms.keys().copied().collect(), nums, den }
}

fn max_bits(form: &IntForm<BigInt>) -> u64 {
    form.nums.iter().flatten().map(|x| x.bits()).max().unwrap_or(0)
}

fn narrow(form: IntForm<BigInt>) -> IntForm<i128> {
    IntForm {
        codes: form.codes,
        nums: form
            .nums
            .into_iter()
            .map(|v| v.into_iter().map(|x| x.to_i128().unwrap()).collect())
            .collect(),
        den: form.den,
    }
}

fn bits_of(x: u64) -> u64 {
    64 - x.leading_zeros() as u64
}

/// Product of two sparse elements of the group algebra of `ctx`.
pub(crate) fn convolve(
    ctx: &WreathGroup,
    a: &BTreeMap<u64, Cyclotomic>,
    b: &BTreeMap<u64, Cyclotomic>,
) -> BTreeMap<u64, Cyclotomic> {
    if a.is_empty() || b.is_empty() {
        return BTreeMap::new();
    }
    let conductor = common_conductor(a.values().chain(b.values()));
    let phi = euler_phi(conductor);
    let fa = to_big_form(a, conductor);
    let fb = to_big_form(b, conductor);
    let fan_in = a.len().min(b.len()) as u64;
    let bound = max_bits(&fa) + max_bits(&fb) + bits_of(phi as u64) + bits_of(fan_in) + 1;
    let den = &fa.den * &fb.den;
    if bound <= 120 {
        let acc = accumulate(ctx, &narrow(fa), &narrow(fb), phi);
        finish_small(acc, conductor, phi, &den)
    } else {
        let acc = accumulate(ctx, &fa, &fb, phi);
        finish_big(acc, conductor, phi, &den)
    }
}

trait Acc: Clone + Zero + for<'a> std::ops::AddAssign<&'a Self> {
    fn mul_ref(a: &Self, b: &Self) -> Self;
}

impl Acc for i128 {
    #[inline]
    fn mul_ref(a: &Self, b: &Self) -> Self {
        a * b
    }
}

impl Acc for BigInt {
    #[inline]
    fn mul_ref(a: &Self, b: &Self) -> Self {
        a * b
    }
}

fn accumulate<T: Acc>(ctx: &WreathGroup, a: &IntForm<T>, b: &IntForm<T>, phi: usize) -> Vec<(u64, Vec<T>)> {
    let width = 2 * phi - 1;
    let b_parts: Vec<(usize, usize)> = b.codes.iter().map(|&y| ctx.split(y)).collect();
    let add_into = |slot: &mut [T], x: &[T], y: &[T]| {
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    slot[i + j] += &T::mul_ref(xi, yj);
                }
            }
        }
    };
    let size = ctx.size();
    let pairs = a.codes.len() * b.codes.len();
    if size * width <= (1 << 24) && pairs * 4 >= size {
        let mut dense = vec![T::zero(); size * width];
        let mut touched = vec![false; size];
        let mut order = Vec::new();
        for (x, xn) in a.codes.iter().zip(&a.nums) {
            let (ac, r) = ctx.split(*x);
            for (&(bc, s), yn) in b_parts.iter().zip(&b.nums) {
                let z = ctx.join(ctx.colors_mul(ac, ctx.act(r, bc)), ctx.rank_mul(r, s)) as usize;
                if !touched[z] {
                    touched[z] = true;
                    order.push(z);
                }
                add_into(&mut dense[z * width..(z + 1) * width], xn, yn);
            }
        }
        order.sort_unstable();
        order
            .into_iter()
            .map(|z| (z as u64, dense[z * width..(z + 1) * width].to_vec()))
            .collect()
    } else {
        let mut map: HashMap<u64, Vec<T>> = HashMap::new();
        for (x, xn) in a.codes.iter().zip(&a.nums) {
            let (ac, r) = ctx.split(*x);
            for (&(bc, s), yn) in b_parts.iter().zip(&b.nums) {
                let z = ctx.join(ctx.colors_mul(ac, ctx.act(r, bc)), ctx.rank_mul(r, s));
                let slot = map.entry(z).or_insert_with(|| vec![T::zero(); width]);
                add_into(slot, xn, yn);
            }
        }
        let mut out: Vec<_> = map.into_iter().collect();
        out.sort_unstable_by_key(|p| p.0);
        out
    }
}

/// Reduce modulo the monic `Phi_L` in place; `None` on `i128` overflow.
fn reduce_small(v: &mut [i128], phi_poly: &[i64], phi: usize) -> Option<()> {
    for k in (phi..v.len()).rev() {
        let c = v[k];
        if c == 0 {
            continue;
        }
        v[k] = 0;
        for (j, &pj) in phi_poly.iter().take(phi).enumerate() {
            if pj != 0 {
                v[k - phi + j] = v[k - phi + j].checked_sub(c.checked_mul(pj as i128)?)?;
            }
        }
    }
    Some(())
}

fn reduce_big(v: &mut [BigInt], phi_poly: &[i64], phi: usize) {
    for k in (phi..v.len()).rev() {
        let c = std::mem::take(&mut v[k]);
        if c.is_zero() {
            continue;
        }
        for (j, &pj) in phi_poly.iter().take(phi).enumerate() {
            if pj != 0 {
                v[k - phi + j] -= &c * pj;
            }
        }
    }
}

fn build(conductor: u32, phi: usize, v: Vec<BigInt>, den: &BigInt) -> Option<Cyclotomic> {
    if v[..phi].iter().all(Zero::is_zero) {
        return None;
    }
    let coeffs = v
        .into_iter()
        .take(phi)
        .map(|x| Rational::new(x, den.clone()))
        .collect();
    Some(Cyclotomic::from_coeffs(conductor, coeffs).expect("canonical conductor"))
}

fn finish_small(acc: Vec<(u64, Vec<i128>)>, conductor: u32, phi: usize, den: &BigInt) -> BTreeMap<u64, Cyclotomic> {
    let phi_poly = cyclotomic_polynomial(conductor);
    let mut out = BTreeMap::new();
    for (z, v) in acc {
        let mut w = v.clone();
        let big = if reduce_small(&mut w, &phi_poly, phi).is_some() {
            w.into_iter().map(BigInt::from).collect()
        } else {
            let mut b: Vec<BigInt> = v.into_iter().map(BigInt::from).collect();
            reduce_big(&mut b, &phi_poly, phi);
            b
        };
        if let Some(c) = build(conductor, phi, big, den) {
            out.insert(z, c);
        }
    }
    out
}

fn finish_big(acc: Vec<(u64, Vec<BigInt>)>, conductor: u32, phi: usize, den: &BigInt) -> BTreeMap<u64, Cyclotomic> {
    let phi_poly = cyclotomic_polynomial(conductor);
    let mut out = BTreeMap::new();
    for (z, mut v) in acc {
        reduce_big(&mut v, &phi_poly, phi);
        if let Some(c) = build(conductor, phi, v, den) {
            out.insert(z, c);
        }
    }
    out
}

/// Reference product by direct term-by-term multiplication.
#[cfg(test)]
pub(crate) fn convolve_naive(
    ctx: &WreathGroup,
    a: &BTreeMap<u64, Cyclotomic>,
    b: &BTreeMap<u64, Cyclotomic>,
) -> BTreeMap<u64, Cyclotomic> {
    let mut out: BTreeMap<u64, Cyclotomic> = BTreeMap::new();
    for (&x, cx) in a {
        for (&y, cy) in b {
            let z = ctx.mul_codes(x, y);
            let entry = out.entry(z).or_insert_with(Cyclotomic::zero);
            *entry = &*entry + &(cx * cy);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}
