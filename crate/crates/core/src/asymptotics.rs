//! Ratios between constructions and upper bounds as v grows, as exact
//! rationals or certified enclosures.

use crate::bounds::Bounds;
use crate::combinatorics::{lifted_mrd_size, q_binomial, q_pochhammer, q_pochhammer_exact, qpow, PochLen};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::params::Params;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

fn rat(n: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn check_kd(k: u32, d: u32) -> Result<()> {
    if d < 2 || d % 2 == 1 || d / 2 > k {
        return Err(Error::Params(format!("need even d with 2 <= d <= 2k, got d={d} k={k}")));
    }
    Ok(())
}

/// Lifted MRD size over the Singleton bound for `k <= v - k`.
pub fn lmrd_singleton_ratio(q: u64, v: u32, k: u32, d: u32) -> Result<BigRational> {
    check_kd(k, d)?;
    if 2 * k > v {
        return Err(Error::Params(format!("need v >= 2k, got v={v} k={k}")));
    }
    let m = lifted_mrd_size(q, k as u64, v as u64, d as u64)?;
    let s = q_binomial((v + 1 - d / 2) as u64, (v - k) as i64, q);
    Ok(BigRational::new(m.into(), s.into()))
}

/// Limit of [`lmrd_singleton_ratio`] as `v -> inf`: `(1/q;1/q)_{k-d/2+1}`.
pub fn lmrd_singleton_ratio_limit(q: u64, k: u32, d: u32) -> Result<Interval> {
    check_kd(k, d)?;
    q_pochhammer(q, PochLen::Finite((k - d / 2 + 1) as u64), 0)
}

/// Lifted MRD size over the unrounded Anticode bound for `k <= v - k`.
pub fn lmrd_anticode_ratio(q: u64, v: u32, k: u32, d: u32) -> Result<BigRational> {
    check_kd(k, d)?;
    if 2 * k > v {
        return Err(Error::Params(format!("need v >= 2k, got v={v} k={k}")));
    }
    let m = lifted_mrd_size(q, k as u64, v as u64, d as u64)?;
    let anti = BigRational::new(
        q_binomial(v as u64, k as i64, q).into(),
        q_binomial((v - k + d / 2 - 1) as u64, (d / 2 - 1) as i64, q).into(),
    );
    Ok(rat(m) / anti)
}

/// Limit of [`lmrd_anticode_ratio`]: `(1/q;1/q)_k / (1/q;1/q)_{d/2-1}`.
pub fn lmrd_anticode_ratio_limit(q: u64, k: u32, d: u32) -> Result<Interval> {
    check_kd(k, d)?;
    Ok(Interval::point(q_pochhammer_exact(q, k as u64) / q_pochhammer_exact(q, (d / 2 - 1) as u64)))
}

/// Infimum of [`lmrd_anticode_ratio_limit`] over all k, d:
/// `(1/q;1/q)_inf / (1 - 1/q)`.
pub fn lmrd_anticode_ratio_infimum(q: u64, digits: u32) -> Result<Interval> {
    let inf = q_pochhammer(q, PochLen::Infinite, digits + 2)?;
    let first = Interval::point(q_pochhammer_exact(q, 1));
    Ok(inf.div_nonneg(&first))
}

/// Enclosure of `lim_l a(v0 + l s) / Anticode(v0 + l s)` for the progression
/// lower bound, given `a(v0)` and an enclosure `[lo, hi]` of `a(s + k - d/2)`.
pub fn linkage_anticode_limit(
    q: u64,
    d: u32,
    k: u32,
    v0: u32,
    s: u32,
    a_v0: &BigUint,
    a_s: (&BigUint, &BigUint),
) -> Result<Interval> {
    check_kd(k, d)?;
    if k > v0 || 2 * s < d || a_s.0 > a_s.1 {
        return Err(Error::Params(format!("need k <= v0, 2s >= d, lo <= hi; got k={k} v0={v0} s={s}")));
    }
    let e = k - d / 2 + 1;
    let growth = rat(qpow(q, (s * e) as u64) - 1u32);
    let scale = rat(qpow(q, ((v0 - k) * e) as u64));
    let prod = (d / 2..=k).fold(BigRational::one(), |acc, i| {
        let den = BigInt::from(qpow(q, i as u64));
        acc * BigRational::new(&den - 1, den)
    });
    let at = |a: &BigUint| (rat(a_v0.clone()) + rat(a.clone()) / &growth) / &scale * &prod;
    Ok(Interval::new(at(a_s.0), at(a_s.1)))
}

/// `q^{2v-6} + [v-3 2]_q`, the MRD bound for d = 4, k = 3.
pub fn mrd_bound_4_3(q: u64, v: u32) -> BigUint {
    qpow(q, (2 * v - 6) as u64) + q_binomial((v - 3) as u64, 2, q)
}

/// Best lower bound on A_q(v,4;3) divided by the MRD bound, exactly.
pub fn better_than_mrd_ratio(engine: &mut Bounds, q: u64, v: u32) -> Result<BigRational> {
    if v < 6 {
        return Err(Error::Params(format!("need v >= 6, got {v}")));
    }
    let lower = engine.best_lower(Params::new(q, v, 4, 3)?).value;
    Ok(BigRational::new(lower.into(), mrd_bound_4_3(q, v).into()))
}

/// Limit of `mrd_bound_4_3(q, v) / q^{2v-10}`: `q^4 + 1/(1/q;1/q)_2`.
pub fn mrd_bound_envelope(q: u64) -> BigRational {
    rat(qpow(q, 4)) + BigRational::one() / q_pochhammer_exact(q, 2)
}

/// Best lower bound on A_q(v,4;3) over `q^{2v-10} (q^4 + 1/(1/q;1/q)_2)`.
/// This is a lower bound for the ratio at every `v + 3l`, since the MRD
/// bound ratio increases towards the envelope.
pub fn better_than_mrd_envelope_ratio(engine: &mut Bounds, q: u64, v: u32) -> Result<BigRational> {
    if v < 6 {
        return Err(Error::Params(format!("need v >= 6, got {v}")));
    }
    let lower = engine.best_lower(Params::new(q, v, 4, 3)?).value;
    Ok(rat(lower) / (rat(qpow(q, (2 * v - 10) as u64)) * mrd_bound_envelope(q)))
}

/// `1 + 1/q^3 - (q+1)/(q^2 (q^4-q^3-q^2+q+1))`, the limiting ratio
/// guaranteed by `A_q(v,4;3) >= q^{2v-10}(q^4+q+1)`.
pub fn better_than_mrd_limit_bound(q: u64) -> BigRational {
    let qi = BigInt::from(q);
    let q2 = &qi * &qi;
    let q3 = &q2 * &qi;
    let q4 = &q3 * &qi;
    let poly = &q4 - &q3 - &q2 + &qi + 1;
    BigRational::one() + BigRational::new(1.into(), q3) - BigRational::new(&qi + 1, q2 * poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn singleton_limits() {
        assert_eq!(lmrd_singleton_ratio_limit(2, 2, 4).unwrap().lo(), &r(1, 2));
        assert_eq!(lmrd_singleton_ratio_limit(3, 3, 4).unwrap().lo(), &r(16, 27));
    }

    #[test]
    fn anticode_limits() {
        assert_eq!(lmrd_anticode_ratio_limit(2, 3, 4).unwrap().lo(), &r(21, 32));
        let inf = lmrd_anticode_ratio_infimum(2, 8).unwrap();
        assert!(inf.lo() > &r(577576, 1_000_000));
    }

    #[test]
    fn limit_bound_identity() {
        for q in [2u64, 3, 4, 5, 7] {
            let lhs = BigRational::from_integer(BigInt::from(q.pow(4) + q + 1)) / mrd_bound_envelope(q);
            assert_eq!(lhs, better_than_mrd_limit_bound(q));
        }
    }

    #[test]
    fn degenerate_progression() {
        let zero = BigUint::from(0u32);
        let a = BigUint::from(333u32);
        let i = linkage_anticode_limit(2, 4, 3, 7, 3, &a, (&zero, &zero)).unwrap();
        assert!(i.is_point());
        assert_eq!(i.lo(), &(r(333, 1) * r(21, 32) / r(256, 1)));
    }
}
