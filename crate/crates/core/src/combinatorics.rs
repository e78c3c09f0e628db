//! Exact counting: Gaussian binomials, intersection counts, lifted MRD sizes,
//! integer square roots and enclosures of q-Pochhammer products.

use crate::error::{Error, Result};
use crate::interval::Interval;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn qpow(q: u64, e: u64) -> BigUint {
    num_traits::pow(BigUint::from(q), e as usize)
}

/// Gaussian binomial `[v k]_q`; zero unless `0 <= k <= v`, and the ordinary
/// binomial for `q = 1`.
pub fn q_binomial(v: u64, k: i64, q: u64) -> BigUint {
    if k < 0 || k as u64 > v {
        return BigUint::zero();
    }
    let k = (k as u64).min(v - k as u64);
    let mut acc = BigUint::one();
    for i in 1..=k {
        // each partial product is itself a Gaussian binomial, so the
        // division is exact
        if q == 1 {
            acc = acc * BigUint::from(v - k + i) / BigUint::from(i);
        } else {
            acc = acc * (qpow(q, v - k + i) - 1u32) / (qpow(q, i) - 1u32);
        }
    }
    acc
}

/// Number of k-subspaces U of GF(q)^v with dim(U ∩ W) >= k - t for a fixed
/// m-dimensional W.
pub fn count_close_subspaces(q: u64, v: u64, k: u64, m: u64, t: u64) -> Result<BigUint> {
    if t > k || k > v || m > v || m + t < k {
        return Err(Error::Params(format!("need 0 <= t <= k <= v and k - t <= m <= v, got v={v} k={k} m={m} t={t}")));
    }
    let mut total = BigUint::zero();
    for i in 0..=t {
        let a = q_binomial(m, k as i64 - i as i64, q);
        let b = q_binomial(v - m, i as i64, q);
        if a.is_zero() || b.is_zero() {
            continue;
        }
        // m + i - k >= 0 whenever [m choose k-i] is nonzero
        total += qpow(q, (m + i - k) * i) * a * b;
    }
    Ok(total)
}

/// Size of a lifted MRD code of k-subspaces of GF(q)^v with subspace
/// distance d.
pub fn lifted_mrd_size(q: u64, k: u64, v: u64, d: u64) -> Result<BigUint> {
    if d % 2 == 1 || d == 0 {
        return Err(Error::Params(format!("subspace distance must be even and positive, got {d}")));
    }
    if k > v {
        return Err(Error::Params(format!("k = {k} exceeds v = {v}")));
    }
    let (lo, hi) = (k.min(v - k), k.max(v - k));
    if d > 2 * lo {
        return Ok(BigUint::one());
    }
    Ok(qpow(q, hi * (lo - d / 2 + 1)))
}

/// Floor of the square root and whether `n` is a perfect square.
pub fn isqrt(n: &BigUint) -> (BigUint, bool) {
    let r = n.sqrt();
    let exact = &r * &r == *n;
    (r, exact)
}

/// Length of a q-Pochhammer product `(1/q;1/q)_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochLen {
    Finite(u64),
    Infinite,
}

/// Exact value of `prod_{i=1..n} (1 - q^-i)`.
pub fn q_pochhammer_exact(q: u64, n: u64) -> BigRational {
    let mut acc = BigRational::one();
    for i in 1..=n {
        let den = BigInt::from(qpow(q, i));
        acc *= BigRational::new(&den - 1, den);
    }
    acc
}

/// Enclosure of `(1/q;1/q)_n` of width at most `10^-digits`. Finite products
/// are exact; the infinite product is truncated once the certified tail
/// factor, which lies in `[1 - q^-N/(q-1), 1]`, is narrow enough.
pub fn q_pochhammer(q: u64, n: PochLen, digits: u32) -> Result<Interval> {
    if q < 2 {
        return Err(Error::Params("q-Pochhammer needs q >= 2".into()));
    }
    match n {
        PochLen::Finite(n) => Ok(Interval::point(q_pochhammer_exact(q, n))),
        PochLen::Infinite => {
            let tol = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits));
            let mut head = BigRational::one();
            let mut n = 0u64;
            loop {
                // tail bound sum_{i>n} q^-i = q^-n / (q-1)
                let tail = BigRational::new(BigInt::one(), BigInt::from(qpow(q, n) * (q - 1)));
                if &head * &tail <= tol {
                    let lo = &head * (BigRational::one() - &tail);
                    return Ok(Interval::new(lo, head));
                }
                n += 1;
                let den = BigInt::from(qpow(q, n));
                head *= BigRational::new(&den - 1, den);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(q_binomial(6, 4, 2), big(651));
        assert_eq!(q_binomial(7, 3, 2), big(11811));
        assert_eq!(q_binomial(8, 4, 2), big(200787));
        assert_eq!(q_binomial(4, 2, 2), big(35));
        assert_eq!(q_binomial(4, 2, 3), big(130));
        assert_eq!(q_binomial(5, -1, 2), big(0));
        assert_eq!(q_binomial(3, 4, 2), big(0));
        assert_eq!(q_binomial(0, 0, 7), big(1));
        assert_eq!(q_binomial(10, 3, 1), big(120));
    }

    #[test]
    fn close_subspace_counts() {
        assert_eq!(count_close_subspaces(2, 4, 2, 4, 0).unwrap(), big(35));
        assert_eq!(count_close_subspaces(2, 4, 2, 2, 1).unwrap(), big(19));
        assert_eq!(count_close_subspaces(2, 4, 2, 2, 0).unwrap(), big(1));
        assert_eq!(count_close_subspaces(2, 8, 4, 4, 1).unwrap(), big(451));
        assert!(count_close_subspaces(2, 4, 2, 0, 1).is_err());
    }

    #[test]
    fn lifted_mrd_sizes() {
        assert_eq!(lifted_mrd_size(2, 3, 7, 4).unwrap(), big(256));
        assert_eq!(lifted_mrd_size(2, 3, 7, 6).unwrap(), big(16));
        assert_eq!(lifted_mrd_size(2, 3, 4, 4).unwrap(), big(1));
        assert!(lifted_mrd_size(2, 3, 7, 3).is_err());
    }

    #[test]
    fn integer_square_roots() {
        assert_eq!(isqrt(&big(0)), (big(0), true));
        assert_eq!(isqrt(&big(129)), (big(11), false));
        assert_eq!(isqrt(&big(4096)), (big(64), true));
    }

    #[test]
    fn pochhammer_values() {
        let one = q_pochhammer(2, PochLen::Finite(0), 10).unwrap();
        assert!(one.is_point() && one.lo() == &BigRational::one());
        let p2 = q_pochhammer(2, PochLen::Finite(2), 10).unwrap();
        assert_eq!(p2.lo(), &BigRational::new(3.into(), 8.into()));
        let inf = q_pochhammer(2, PochLen::Infinite, 8).unwrap();
        assert!(inf.contains_f64(0.288_788_095_086_602_4));
        assert!(inf.width() <= BigRational::new(1.into(), 100_000_000.into()));
    }
}
