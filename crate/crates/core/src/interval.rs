//! Closed intervals with exact rational endpoints, plus decimal rendering.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    /// Panics if `lo > hi`.
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }
    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        BigRational::from_float(x).is_some_and(|r| self.contains(&r))
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Product of two intervals with non-negative endpoints.
    pub fn mul_nonneg(&self, other: &Interval) -> Interval {
        debug_assert!(!self.lo.is_negative() && !other.lo.is_negative());
        Interval::new(&self.lo * &other.lo, &self.hi * &other.hi)
    }

    /// Quotient of non-negative intervals; `other` must exclude zero.
    pub fn div_nonneg(&self, other: &Interval) -> Interval {
        debug_assert!(other.lo > BigRational::zero());
        Interval::new(&self.lo / &other.hi, &self.hi / &other.lo)
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(10) as u32;
        // outward rounding so the printed interval still encloses the value
        write!(f, "[{}, {}]", decimal_directed(&self.lo, digits, false), decimal_directed(&self.hi, digits, true))
    }
}

/// `x` rounded to `digits` decimals, ties to even.
pub fn round_half_even(x: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = x * BigRational::from_integer(scale);
    let floor = scaled.floor().to_integer();
    let frac = &scaled - BigRational::from_integer(floor.clone());
    let half = BigRational::new(1.into(), 2.into());
    let n = if frac > half || (frac == half && floor.is_odd()) { floor + 1 } else { floor };
    render_scaled(&n, digits)
}

fn decimal_directed(x: &BigRational, digits: u32, up: bool) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = x * BigRational::from_integer(scale);
    let n = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    render_scaled(&n, digits)
}

fn render_scaled(n: &BigInt, digits: u32) -> String {
    let neg = n.sign() == Sign::Minus;
    let s = n.abs().to_string();
    let d = digits as usize;
    let body = if d == 0 {
        s
    } else if s.len() <= d {
        format!("0.{}{}", "0".repeat(d - s.len()), s)
    } else {
        format!("{}.{}", &s[..s.len() - d], &s[s.len() - d..])
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rounding_half_even() {
        assert_eq!(round_half_even(&r(77, 64), 6), "1.203125");
        assert_eq!(round_half_even(&r(1, 8), 2), "0.12");
        assert_eq!(round_half_even(&r(3, 8), 2), "0.38");
        assert_eq!(round_half_even(&r(-1, 3), 3), "-0.333");
        assert_eq!(round_half_even(&r(5, 2), 0), "2");
        assert_eq!(round_half_even(&r(1, 1), 1), "1.0");
    }

    #[test]
    fn display_rounds_outward() {
        let i = Interval::new(r(1, 3), r(2, 3));
        assert_eq!(format!("{i:.3}"), "[0.333, 0.667]");
    }

    #[test]
    fn arithmetic() {
        let a = Interval::new(r(1, 2), r(1, 1));
        let b = Interval::new(r(2, 1), r(4, 1));
        assert_eq!(a.mul_nonneg(&b), Interval::new(r(1, 1), r(4, 1)));
        assert_eq!(a.div_nonneg(&b), Interval::new(r(1, 8), r(1, 2)));
        assert!(a.contains_f64(0.75));
        assert!(!a.contains_f64(1.5));
    }
}
