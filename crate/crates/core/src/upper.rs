//! Upper bounds on A_q(v, d; k) for general d. Functions that need inner
//! A-values take them as a lookup closure `(v, d, k) -> upper value`.

use crate::combinatorics::{count_close_subspaces, q_binomial, qpow};
use crate::error::{Error, Result};
use crate::params::BoundValue;
use crate::partial_spread::ps_best_upper;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Inner A-value lookup used by recursive bounds.
pub type Lookup<'a> = dyn FnMut(u32, u32, u32) -> BigUint + 'a;

fn gauss(q: u64, v: u32, k: u32) -> BigUint {
    q_binomial(v as u64, k as i64, q)
}

fn check(v: u32, d: u32, k: u32) -> Result<()> {
    if d % 2 == 1 || d == 0 || k > v {
        return Err(Error::Params(format!("bad parameters v={v} d={d} k={k}")));
    }
    Ok(())
}

fn floor_ratio(num: BigUint, den: BigUint) -> BigUint {
    num / den
}

pub fn sphere_packing_upper(q: u64, v: u32, d: u32, k: u32) -> Result<BoundValue> {
    check(v, d, k)?;
    let radius = (d / 2 - 1) / 2;
    let ball: BigUint = (0..=radius).map(|i| qpow(q, (i * i) as u64) * gauss(q, k, i) * gauss(q, v - k, i)).sum();
    Ok(BoundValue::new("sphere-packing", floor_ratio(gauss(q, v, k), ball)))
}

pub fn singleton_upper(q: u64, v: u32, d: u32, k: u32) -> Result<BoundValue> {
    check(v, d, k)?;
    let top = (v + 1).saturating_sub(d / 2);
    Ok(BoundValue::new("singleton", gauss(q, top, k.max(v - k))))
}

pub fn anticode_upper(q: u64, v: u32, d: u32, k: u32) -> Result<BoundValue> {
    check(v, d, k)?;
    let den = gauss(q, k.max(v - k) + d / 2 - 1, d / 2 - 1);
    Ok(BoundValue::new("anticode", floor_ratio(gauss(q, v, k), den)))
}

/// Present only when `(q^k - 1)^2 > (q^v - 1)(q^{k-d/2} - 1)`, which happens
/// exactly for `d = 2 min{k, v-k}`.
pub fn johnson_i_upper(q: u64, v: u32, d: u32, k: u32) -> Option<BoundValue> {
    if check(v, d, k).is_err() || k == 0 || d / 2 > k {
        return None;
    }
    let qk1 = qpow(q, k as u64) - 1u32;
    let qv1 = qpow(q, v as u64) - 1u32;
    let qkd1 = qpow(q, (k - d / 2) as u64) - 1u32;
    let lhs = &qk1 * &qk1;
    let rhs = &qv1 * &qkd1;
    if lhs <= rhs {
        return None;
    }
    let num = (qpow(q, k as u64) - qpow(q, (k - d / 2) as u64)) * qv1;
    Some(BoundValue::new("johnson-I", num / (lhs - rhs)))
}

/// One step of the second Johnson bound from upper values of
/// A(v-1, d; k-1) and A(v-1, d; k).
pub fn johnson_ii_step(q: u64, v: u32, k: u32, a_km1: &BigUint, a_k: &BigUint) -> Result<BoundValue> {
    if k == 0 || k >= v {
        return Err(Error::Params(format!("need 1 <= k < v, got k={k} v={v}")));
    }
    let qv1 = qpow(q, v as u64) - 1u32;
    let first = &qv1 * a_km1 / (qpow(q, k as u64) - 1u32);
    let second = &qv1 * a_k / (qpow(q, (v - k) as u64) - 1u32);
    Ok(if first <= second {
        BoundValue::new("johnson-II", first).via("dimension step")
    } else {
        BoundValue::new("johnson-II", second).via("codimension step")
    })
}

/// Nested dimension steps of the second Johnson bound, bottoming out at the
/// partial spread A(v-k+d/2, d; d/2).
pub fn johnson_iterated_upper(q: u64, v: u32, d: u32, k: u32) -> Result<BoundValue> {
    check(v, d, k)?;
    let k = k.min(v - k);
    if d / 2 > k {
        return Ok(BoundValue::new("johnson-II-iterated", BigUint::one()));
    }
    let r = d / 2;
    let base = ps_best_upper(q, v - k + r, r);
    let mut val = base.value.clone();
    for j in r + 1..=k {
        val = (qpow(q, (v - k + j) as u64) - 1u32) * val / (qpow(q, j as u64) - 1u32);
    }
    Ok(BoundValue::new("johnson-II-iterated", val).via(format!(
        "base A_{q}({},{d};{r}) <= {} ({})",
        v - k + r,
        base.value,
        base.name
    )))
}

/// The intersection-counting bound with parameters `(t, m)`; `None` when the
/// parameters are out of range.
pub fn ahlswede_upper(q: u64, v: u32, d: u32, k: u32, t: u32, m: u32, lookup: &mut Lookup<'_>) -> Option<BoundValue> {
    let r = d / 2;
    if check(v, d, k).is_err() || t >= r || r > k || m + t < k || m > v || t > v - m {
        return None;
    }
    let inner = lookup(m, d - 2 * t, k - t);
    let den = count_close_subspaces(q, v as u64, k as u64, m as u64, t as u64).ok()?;
    if den.is_zero() {
        return None;
    }
    let val = gauss(q, v, k) * &inner / den;
    Some(BoundValue::new("ahlswede", val).via(format!("t={t}, m={m}, inner {inner}")))
}

/// Minimum of [`ahlswede_upper`] over all legal `(t, m)` except the trivial
/// `t = 0, m = v`.
pub fn ahlswede_best(q: u64, v: u32, d: u32, k: u32, lookup: &mut Lookup<'_>) -> Option<BoundValue> {
    let r = d / 2;
    let mut best: Option<BoundValue> = None;
    for t in 0..r.min(k + 1) {
        for m in k.saturating_sub(t)..=v - t {
            if t == 0 && m == v {
                continue;
            }
            if let Some(b) = ahlswede_upper(q, v, d, k, t, m, lookup) {
                if best.as_ref().is_none_or(|x| b.value < x.value) {
                    best = Some(b);
                }
            }
        }
    }
    best
}

/// Upper bound for codes containing a lifted MRD code; `None` outside the
/// two covered cases.
pub fn mrd_containing_upper(q: u64, v: u32, d: u32, k: u32, lookup: &mut Lookup<'_>) -> Option<BoundValue> {
    if check(v, d, k).is_err() || v < 2 * k {
        return None;
    }
    if k >= 3 && d == 2 * (k - 1) {
        let inner = lookup(v - k, 2 * (k - 2), k - 1);
        let val = qpow(q, 2 * (v - k) as u64) + &inner;
        return Some(BoundValue::new("lmrd-containing", val).via(format!("inner {inner}")));
    }
    if d == k && k.is_multiple_of(2) {
        let h = k / 2;
        let inner = lookup(v - k, k, k);
        let frac = BigRational::new(
            BigInt::from(gauss(q, v - k, h) * (qpow(q, v as u64) - qpow(q, (v - k) as u64))),
            BigInt::from(qpow(q, k as u64) - qpow(q, h as u64)),
        );
        let total = frac + BigRational::from_integer(BigInt::from(qpow(q, ((v - k) * (h + 1)) as u64) + &inner));
        let val = total.floor().to_integer().to_biguint()?;
        return Some(BoundValue::new("lmrd-containing", val).via(format!("inner {inner}")));
    }
    None
}

/// Computer-derived values for individual parameter sets, as
/// `(q, v, d, k, value, tag)` with k normalized.
pub const UPPER_CONSTANTS: &[(u64, u32, u32, u32, u64, &str)] =
    &[(2, 6, 4, 3, 77, "known-exact"), (2, 8, 6, 4, 272, "computer-bound")];

pub fn upper_constant(q: u64, v: u32, d: u32, k: u32) -> Option<BoundValue> {
    let k = k.min(v - k);
    UPPER_CONSTANTS
        .iter()
        .find(|c| (c.0, c.1, c.2, c.3) == (q, v, d, k))
        .map(|c| BoundValue::new(c.5, BigUint::from(c.4)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn sphere_singleton_anticode() {
        assert_eq!(sphere_packing_upper(2, 8, 6, 4).unwrap().value, b(445));
        assert_eq!(sphere_packing_upper(2, 8, 4, 4).unwrap().value, b(200787));
        assert_eq!(singleton_upper(2, 8, 6, 4).unwrap().value, b(651));
        assert_eq!(singleton_upper(2, 8, 4, 4).unwrap().value, b(11811));
        assert_eq!(anticode_upper(2, 6, 4, 3).unwrap().value, b(93));
        assert_eq!(sphere_packing_upper(2, 6, 2, 3).unwrap().value, b(1395));
        assert_eq!(singleton_upper(2, 6, 2, 3).unwrap().value, b(1395));
        assert_eq!(anticode_upper(2, 6, 2, 3).unwrap().value, b(1395));
    }

    #[test]
    fn johnson_i() {
        assert_eq!(johnson_i_upper(2, 7, 6, 3).unwrap().value, b(18));
        assert!(johnson_i_upper(2, 8, 4, 3).is_none());
        assert_eq!(johnson_i_upper(2, 6, 4, 4).unwrap().value, b(21));
    }

    #[test]
    fn johnson_ii() {
        let big = b(u64::MAX);
        assert_eq!(johnson_ii_step(2, 7, 3, &b(21), &big).unwrap().value, b(381));
        assert_eq!(johnson_ii_step(2, 9, 3, &b(85), &big).unwrap().value, b(6205));
        assert_eq!(johnson_ii_step(2, 13, 3, &b(1365), &big).unwrap().value, b(1597245));
        assert_eq!(johnson_iterated_upper(2, 8, 4, 3).unwrap().value, b(1493));
        assert_eq!(johnson_iterated_upper(2, 6, 4, 3).unwrap().value, b(81));
        assert_eq!(johnson_iterated_upper(2, 7, 4, 3).unwrap().value, b(381));
        assert_eq!(johnson_iterated_upper(2, 7, 4, 4).unwrap().value, b(381));
        assert_eq!(johnson_iterated_upper(2, 19, 4, 3).unwrap().value, b(6544674621));
    }

    #[test]
    fn mrd_containing() {
        let mut gauss_lookup = |v: u32, d: u32, k: u32| {
            if d <= 2 {
                q_binomial(v as u64, k as i64, 2)
            } else {
                BigUint::one()
            }
        };
        assert_eq!(mrd_containing_upper(2, 6, 4, 3, &mut gauss_lookup).unwrap().value, b(71));
        assert_eq!(mrd_containing_upper(2, 7, 4, 3, &mut gauss_lookup).unwrap().value, b(291));
        assert_eq!(mrd_containing_upper(2, 8, 4, 4, &mut gauss_lookup).unwrap().value, b(4797));
        assert!(mrd_containing_upper(2, 8, 4, 3, &mut gauss_lookup).is_some());
        assert!(mrd_containing_upper(2, 9, 6, 3, &mut gauss_lookup).is_none());
    }

    #[test]
    fn ahlswede_t1_reduces_dimension() {
        // t = 1, m = v - 1 gives A(v-1, d-2; k-1) exactly
        let mut lk = |_v: u32, _d: u32, _k: u32| b(41);
        let x = ahlswede_upper(2, 9, 6, 3, 1, 8, &mut lk).unwrap();
        assert_eq!(x.value, b(41));
    }
}
