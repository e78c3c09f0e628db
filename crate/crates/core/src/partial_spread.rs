//! Bounds for partial spreads A_q(v, 2k; k): collections of k-subspaces
//! meeting pairwise only in zero.
//!
//! Radicals are floored and ceiled exactly. With `f = isqrt(D)` and `D` not a
//! square, `sqrt(D)` lies strictly inside `(f, f+1)`, so halved expressions
//! like `(a - sqrt(D))/2` reduce to a parity case split on integers.

use crate::combinatorics::{isqrt, q_binomial, qpow};
use crate::error::{Error, Result};
use crate::params::BoundValue;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `v = t*k + r` with `0 <= r < k`.
fn split(v: u32, k: u32) -> (u32, u32) {
    (v / k, v % k)
}

/// `[r 1]_q`, the number of points of PG(r-1, q).
fn points(q: u64, r: u32) -> BigUint {
    q_binomial(r as u64, 1, q)
}

fn big(x: &BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, x.clone())
}

/// floor((sqrt(D) - c) / 2) for D >= 0.
fn floor_half_sqrt_minus(d: &BigUint, c: &BigInt) -> BigInt {
    // sqrt(D) - c lies in [f - c, f - c + 1), and halving never crosses an
    // integer inside that range, so the floor only depends on f
    let (f, _) = isqrt(d);
    (big(&f) - c).div_floor(&BigInt::from(2))
}

/// ceil((n - sqrt(D)) / 2) for D >= 0.
fn ceil_half_minus_sqrt(n: &BigInt, d: &BigUint) -> BigInt {
    let (f, exact) = isqrt(d);
    if exact {
        return (n - big(&f)).div_ceil(&BigInt::from(2));
    }
    // n - sqrt(D) lies in (a, a+1) with a = n - f - 1; halving gives an open
    // interval of length 1/2 whose ceiling is floor(a/2) + 1 for either parity
    let a: BigInt = n - big(&f) - 1;
    a.div_floor(&BigInt::from(2)) + 1
}

pub fn spread_exists(_q: u64, v: u32, k: u32) -> bool {
    k >= 1 && v.is_multiple_of(k)
}

/// floor((q^v - 1) / (q^k - 1)), the point-counting bound.
pub fn trivial_ps_upper(q: u64, v: u32, k: u32) -> Result<BigUint> {
    if k == 0 || k > v {
        return Err(Error::Params(format!("need 1 <= k <= v, got k={k} v={v}")));
    }
    Ok((qpow(q, v as u64) - 1u32) / (qpow(q, k as u64) - 1u32))
}

/// Size of the multicomponent partial spread, `(q^v - q^{k+r} + q^k - 1)/(q^k - 1)`.
pub fn beutelspacher_lower(q: u64, v: u32, k: u32) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::Params("k must be positive".into()));
    }
    let (t, r) = split(v, k);
    if r == 0 {
        return Err(Error::Params(format!("k = {k} divides v = {v}; use the spread size")));
    }
    if t < 2 {
        return Err(Error::Params(format!("need v >= 2k, got v={v} k={k}")));
    }
    Ok(multicomponent(q, v, k, r))
}

fn multicomponent(q: u64, v: u32, k: u32, r: u32) -> BigUint {
    let qk = qpow(q, k as u64);
    (qpow(q, v as u64) + &qk - qpow(q, (k + r) as u64) - 1u32) / (qk - 1u32)
}

/// `q^r (q^{kt} - 1)/(q^k - 1) - floor(theta) - 1` with
/// `2 theta = sqrt(1 + 4 q^k (q^k - q^r)) - (2q^k - 2q^r + 1)`.
pub fn drake_freeman_upper(q: u64, v: u32, k: u32) -> Result<BigUint> {
    if k == 0 || k > v {
        return Err(Error::Params(format!("need 1 <= k <= v, got k={k} v={v}")));
    }
    let (t, r) = split(v, k);
    if r == 0 {
        return Err(Error::Params(format!("k = {k} divides v = {v}")));
    }
    let (qk, qr) = (qpow(q, k as u64), qpow(q, r as u64));
    let disc = BigUint::one() + 4u32 * &qk * (&qk - &qr);
    let c = big(&(2u32 * (&qk - &qr) + 1u32));
    let theta = floor_half_sqrt_minus(&disc, &c);
    let head = big(&(&qr * (qpow(q, (k * t) as u64) - 1u32) / (&qk - 1u32)));
    let bound: BigInt = head - theta - 1;
    Ok(bound.to_biguint().unwrap_or_default())
}

/// Exact value when `k > [r 1]_q`; `None` when the condition fails.
pub fn nastase_sissokho_exact(q: u64, v: u32, k: u32) -> Option<BigUint> {
    if k == 0 || k > v {
        return None;
    }
    let (_, r) = split(v, k);
    if r == 0 || BigUint::from(k) <= points(q, r) {
        return None;
    }
    Some(multicomponent(q, v, k, r))
}

/// `l q^k + 1 + z(q-1)` minimized over admissible `(z, u)` with
/// `k = [r 1]_q + 1 - z + u`, `0 <= z <= [r 1]_q / 2`, `u >= 0`.
pub fn divisible_z_upper(q: u64, v: u32, k: u32) -> Option<BigUint> {
    if k == 0 {
        return None;
    }
    let (t, r) = split(v, k);
    if r == 0 || t < 2 || k <= r {
        return None;
    }
    let theta = points(q, r);
    let kk = BigUint::from(k);
    // u >= 0 forces z >= theta + 1 - k; the upper end is theta / 2, so at
    // most k values of z are admissible
    let z_min = if theta.clone() + 1u32 > kk { theta.clone() + 1u32 - &kk } else { BigUint::zero() };
    let z_max = &theta / 2u32;
    let l = (qpow(q, (v - k) as u64) - qpow(q, r as u64)) / (qpow(q, k as u64) - 1u32);
    let base = l * qpow(q, k as u64) + 1u32;
    let mut best: Option<BigUint> = None;
    let mut z = z_min;
    while z <= z_max {
        let val = &base + &z * (q - 1);
        if best.as_ref().is_none_or(|b| val < *b) {
            best = Some(val);
        }
        z += 1u32;
    }
    best
}

/// `l q^k + ceil(lambda - 1/2 - sqrt(1 + 4 lambda (lambda - (z+y-1)(q-1) - 1))/2)`
/// with `lambda = q^y`, minimized over `max{r,2} <= y <= k`, where
/// `z = [r 1]_q + 1 - k >= 0` is forced by k.
pub fn divisible_lambda_upper(q: u64, v: u32, k: u32) -> Option<BigUint> {
    if k == 0 {
        return None;
    }
    let (t, r) = split(v, k);
    if r == 0 || t < 2 || k <= r {
        return None;
    }
    let theta = points(q, r);
    if theta.clone() + 1u32 < BigUint::from(k) {
        return None;
    }
    let z = big(&(theta + 1u32 - k));
    let l = (qpow(q, (v - k) as u64) - qpow(q, r as u64)) / (qpow(q, k as u64) - 1u32);
    let head = big(&(l * qpow(q, k as u64)));
    let qm1 = BigInt::from(q - 1);
    let mut best: Option<BigInt> = None;
    for y in r.max(2)..=k {
        let lambda = big(&qpow(q, y as u64));
        let inner: BigInt = &lambda - (&z + BigInt::from(y) - 1i32) * &qm1 - 1;
        let disc: BigInt = BigInt::one() + 4 * &lambda * inner;
        if disc.is_negative() {
            continue;
        }
        let term = ceil_half_minus_sqrt(&(2 * &lambda - 1), &disc.to_biguint().unwrap());
        let val = &head + term;
        if best.as_ref().is_none_or(|b| val < *b) {
            best = Some(val);
        }
    }
    best.and_then(|b| b.to_biguint())
}

/// Best implemented upper bound on A_q(v, 2k; k).
pub fn ps_best_upper(q: u64, v: u32, k: u32) -> BoundValue {
    if let Some(b) = degenerate(q, v, k) {
        return b;
    }
    if spread_exists(q, v, k) {
        return BoundValue::new("spread", trivial_ps_upper(q, v, k).unwrap());
    }
    let mut cands = vec![BoundValue::new("partial-spread-counting", trivial_ps_upper(q, v, k).unwrap())];
    if let Ok(x) = drake_freeman_upper(q, v, k) {
        cands.push(BoundValue::new("drake-freeman", x));
    }
    if let Some(x) = nastase_sissokho_exact(q, v, k) {
        cands.push(BoundValue::new("nastase-sissokho", x));
    }
    if let Some(x) = divisible_z_upper(q, v, k) {
        cands.push(BoundValue::new("divisible-z", x));
    }
    if let Some(x) = divisible_lambda_upper(q, v, k) {
        cands.push(BoundValue::new("divisible-lambda", x));
    }
    let mut best = cands.remove(0);
    for c in cands {
        if c.value < best.value {
            best = c;
        }
    }
    best
}

/// Best implemented lower bound on A_q(v, 2k; k).
pub fn ps_best_lower(q: u64, v: u32, k: u32) -> BoundValue {
    if let Some(b) = degenerate(q, v, k) {
        return b;
    }
    if spread_exists(q, v, k) {
        return BoundValue::new("spread", trivial_ps_upper(q, v, k).unwrap());
    }
    match beutelspacher_lower(q, v, k) {
        Ok(x) => BoundValue::new("multicomponent", x),
        Err(_) => BoundValue::new("single-codeword", BigUint::one()),
    }
}

/// k = 0, k > v, or v < 2k, where at most one codeword fits.
fn degenerate(_q: u64, v: u32, k: u32) -> Option<BoundValue> {
    if k > v {
        return Some(BoundValue::new("empty-grassmannian", BigUint::zero()));
    }
    (k == 0 || v < 2 * k).then(|| BoundValue::new("single-codeword", BigUint::one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn spread_existence() {
        assert!(spread_exists(2, 6, 2));
        assert!(!spread_exists(2, 7, 2));
        assert!(spread_exists(3, 12, 4));
    }

    #[test]
    fn counting_bound() {
        assert_eq!(trivial_ps_upper(2, 6, 2).unwrap(), b(21));
        assert_eq!(trivial_ps_upper(2, 7, 3).unwrap(), b(18));
        assert_eq!(trivial_ps_upper(2, 8, 3).unwrap(), b(36));
    }

    #[test]
    fn multicomponent_sizes() {
        assert_eq!(beutelspacher_lower(2, 7, 3).unwrap(), b(17));
        assert_eq!(beutelspacher_lower(2, 8, 3).unwrap(), b(33));
        assert_eq!(beutelspacher_lower(2, 5, 2).unwrap(), b(9));
        assert!(beutelspacher_lower(2, 6, 3).is_err());
        assert!(beutelspacher_lower(2, 4, 3).is_err());
    }

    #[test]
    fn drake_freeman_values() {
        assert_eq!(drake_freeman_upper(2, 8, 3).unwrap(), b(34));
        assert_eq!(drake_freeman_upper(2, 7, 3).unwrap(), b(17));
        assert_eq!(drake_freeman_upper(2, 5, 2).unwrap(), b(9));
        assert!(drake_freeman_upper(2, 6, 3).is_err());
    }

    #[test]
    fn nastase_sissokho_values() {
        assert_eq!(nastase_sissokho_exact(2, 7, 3), Some(b(17)));
        assert_eq!(nastase_sissokho_exact(2, 8, 3), None);
        assert_eq!(nastase_sissokho_exact(2, 9, 4), Some(b(33)));
    }

    #[test]
    fn divisible_bounds() {
        assert_eq!(divisible_z_upper(2, 8, 3), Some(b(34)));
        assert_eq!(divisible_z_upper(2, 11, 5), Some(b(65)));
        assert_eq!(divisible_z_upper(2, 7, 3), Some(b(17)));
        assert_eq!(divisible_lambda_upper(2, 8, 3), Some(b(34)));
        // (2,13,5): r = 3, [3 1]_2 = 7, z = 3, y in 3..=5
        let v = divisible_lambda_upper(2, 13, 5).unwrap();
        assert!(v >= beutelspacher_lower(2, 13, 5).unwrap());
        assert!(v <= trivial_ps_upper(2, 13, 5).unwrap());
    }

    #[test]
    fn exact_radical_helpers() {
        // sqrt(17) in (4,5): ceil((7 - sqrt 17)/2) = ceil(1.438..) = 2
        assert_eq!(ceil_half_minus_sqrt(&BigInt::from(7), &b(17)), BigInt::from(2));
        // perfect square: ceil((2*lambda - 1 - 1)/2) = lambda - 1
        assert_eq!(ceil_half_minus_sqrt(&BigInt::from(15), &b(1)), BigInt::from(7));
        assert_eq!(ceil_half_minus_sqrt(&BigInt::from(8), &b(9)), BigInt::from(3));
        // sqrt(129) - 9 in (2, 3) -> floor of half is 1
        assert_eq!(floor_half_sqrt_minus(&b(129), &BigInt::from(9)), BigInt::from(1));
        assert_eq!(floor_half_sqrt_minus(&b(121), &BigInt::from(8)), BigInt::from(1));
        assert_eq!(floor_half_sqrt_minus(&b(121), &BigInt::from(12)), BigInt::from(-1));
    }

    #[test]
    fn best_values() {
        assert_eq!(ps_best_upper(2, 6, 2).value, b(21));
        assert_eq!(ps_best_lower(2, 6, 2).value, b(21));
        let u = ps_best_upper(2, 8, 3);
        assert_eq!((u.value, u.name.as_str()), (b(34), "drake-freeman"));
        assert_eq!(ps_best_lower(2, 8, 3).value, b(33));
        assert_eq!(ps_best_upper(2, 7, 3).value, b(17));
        assert_eq!(ps_best_lower(2, 7, 3).value, b(17));
        assert_eq!(ps_best_upper(2, 5, 3).value, b(1));
    }
}
