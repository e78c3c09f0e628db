//! Finite fields GF(p^e) and extension towers GF(q^m) over them.
//!
//! Elements are encoded as integers in `[0, q)`: the coefficient vector of
//! the element (polynomial basis, little-endian) read as a base-p number.
//! The defining modulus is the lexicographically smallest monic irreducible
//! polynomial of the requested degree, comparing coefficients from the
//! constant term upwards. Extension fields use the same rule over their
//! base field, with base-q digits.

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

/// Field orders up to this size get exp/log tables.
const TABLE_LIMIT: u64 = 1 << 16;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Returns `(p, e)` with `n = p^e` when `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut e = 0;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Arithmetic over a coefficient field, used by the polynomial routines.
pub trait FieldOps {
    fn order(&self) -> u64;
    fn add(&self, a: u32, b: u32) -> u32;
    fn sub(&self, a: u32, b: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn inv(&self, a: u32) -> Result<u32>;

    fn neg(&self, a: u32) -> u32 {
        self.sub(0, a)
    }
}

#[derive(Clone, Copy, Debug)]
struct PrimeField {
    p: u32,
}

impl FieldOps for PrimeField {
    fn order(&self) -> u64 {
        self.p as u64
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::NotInvertible(a as u64));
        }
        Ok(pow_mod(a as u64, self.p as u64 - 2, self.p as u64) as u32)
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Polynomial helpers over a coefficient field. Polynomials are
/// coefficient vectors, lowest degree first.
mod poly {
    use super::FieldOps;

    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn mul<F: FieldOps>(f: &F, a: &[u32], b: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo a monic polynomial `m`.
    pub fn rem_monic<F: FieldOps>(f: &F, a: &[u32], m: &[u32]) -> Vec<u32> {
        let dm = m.len() - 1;
        let mut r = a.to_vec();
        trim(&mut r);
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(lead, c));
            }
            trim(&mut r);
        }
        r
    }

    /// Trial division by every monic polynomial of degree at most half.
    pub fn is_irreducible<F: FieldOps>(f: &F, m: &[u32]) -> bool {
        let deg = m.len() - 1;
        let q = f.order();
        for d in 1..=deg / 2 {
            let count = q.pow(d as u32);
            for n in 0..count {
                let mut g = digits(n, q, d);
                g.push(1);
                if rem_monic(f, m, &g).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Little-endian base-q digits of `n`, padded to `len`.
    pub fn digits(mut n: u64, q: u64, len: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            out.push((n % q) as u32);
            n /= q;
        }
        out
    }

    pub fn from_digits(d: &[u32], q: u64) -> u64 {
        d.iter().rev().fold(0u64, |acc, &x| acc * q + x as u64)
    }

    /// Smallest monic irreducible of degree `deg`, comparing coefficient
    /// vectors from the constant term upwards.
    pub fn smallest_irreducible<F: FieldOps>(f: &F, deg: usize) -> Vec<u32> {
        let q = f.order();
        let count = q.pow(deg as u32);
        for n in 0..count {
            // the constant term is the most significant digit of n
            let mut m: Vec<u32> = digits(n, q, deg);
            m.reverse();
            m.push(1);
            if is_irreducible(f, &m) {
                return m;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }
}

#[derive(Clone, Debug)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// GF(p^e) with a fixed modulus.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: Option<LogTables>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// GF(p^e) with the lexicographically smallest monic irreducible modulus.
    pub fn new(p: u64, e: u32) -> Result<Self> {
        Self::check(p, e)?;
        let modulus = poly::smallest_irreducible(&PrimeField { p: p as u32 }, e as usize);
        Ok(Self::build(p as u32, e, modulus))
    }

    /// GF(p^e) with a caller-supplied modulus (coefficients low degree first).
    pub fn with_modulus(p: u64, e: u32, modulus: &[u32]) -> Result<Self> {
        Self::check(p, e)?;
        let ok = modulus.len() == e as usize + 1
            && modulus.last() == Some(&1)
            && modulus.iter().all(|&c| (c as u64) < p)
            && poly::is_irreducible(&PrimeField { p: p as u32 }, modulus);
        if !ok {
            return Err(Error::BadModulus(e));
        }
        Ok(Self::build(p as u32, e, modulus.to_vec()))
    }

    /// GF(q) for a prime power q.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrime(q))?;
        Self::new(p, e)
    }

    fn check(p: u64, e: u32) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::ZeroDegree);
        }
        match p.checked_pow(e) {
            Some(q) if q <= MAX_ORDER => Ok(()),
            _ => Err(Error::FieldTooLarge { p: p as u32, e }),
        }
    }

    fn build(p: u32, e: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(e);
        let mut f = FieldSpec { p, e, q, modulus, tables: None };
        if e > 1 && (q as u64) <= TABLE_LIMIT {
            f.tables = Some(f.make_tables());
        }
        f
    }

    fn make_tables(&self) -> LogTables {
        let q = self.q as u64;
        let factors = prime_factors(q - 1);
        let g = (2..q as u32)
            .find(|&g| factors.iter().all(|&r| self.pow_slow(g, (q - 1) / r) != 1))
            .expect("multiplicative group is cyclic");
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp[i] = x;
            exp[i + n] = x;
            log[x as usize] = i as u32;
            x = self.mul_slow(x, g);
        }
        LogTables { exp, log }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Monic modulus, lowest degree first (length e + 1).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn digits(&self, a: u32) -> Vec<u32> {
        poly::digits(a as u64, self.p as u64, self.e as usize)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let pf = PrimeField { p: self.p };
        let prod = poly::mul(&pf, &self.digits(a), &self.digits(b));
        let r = poly::rem_monic(&pf, &prod, &self.modulus);
        poly::from_digits(&r, self.p as u64) as u32
    }

    fn pow_slow(&self, a: u32, mut n: u64) -> u32 {
        let mut base = a;
        let mut r = 1u32;
        while n > 0 {
            if n & 1 == 1 {
                r = self.mul_slow(r, base);
            }
            base = self.mul_slow(base, base);
            n >>= 1;
        }
        r
    }

    pub fn pow(&self, a: u32, n: u64) -> u32 {
        let mut base = a;
        let mut r = 1u32;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        r
    }

    /// Every element, in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

impl FieldOps for FieldSpec {
    fn order(&self) -> u64 {
        self.q as u64
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (p, mut a, mut b) = (self.p, a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    fn sub(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.e == 1 {
            return (a + self.p - b) % self.p;
        }
        let (p, mut a, mut b) = (self.p, a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((a % p + p - b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.e == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        match &self.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => self.mul_slow(a, b),
        }
    }

    fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 || a >= self.q {
            return Err(Error::NotInvertible(a as u64));
        }
        if let Some(t) = &self.tables {
            let n = self.q - 1;
            return Ok(t.exp[((n - t.log[a as usize]) % n) as usize]);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }
}

/// GF(q^m) built over a base field GF(q). Elements are encoded as base-q
/// integers of their coordinate vector in the polynomial basis
/// `1, x, ..., x^(m-1)`.
#[derive(Clone, Debug)]
pub struct ExtField {
    base: FieldSpec,
    m: u32,
    modulus: Vec<u32>,
}

impl ExtField {
    pub fn new(base: FieldSpec, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let size = (base.q() as u64).checked_pow(m);
        if size.is_none_or(|s| s > u32::MAX as u64) {
            return Err(Error::Params(format!("GF({}^{m}) is too large", base.q())));
        }
        let modulus = poly::smallest_irreducible(&base, m as usize);
        Ok(ExtField { base, m, modulus })
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }
    pub fn degree(&self) -> u32 {
        self.m
    }
    pub fn order(&self) -> u64 {
        (self.base.q() as u64).pow(self.m)
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Coordinates over the base field, lowest basis element first.
    pub fn coords(&self, a: u64) -> Vec<u32> {
        poly::digits(a, self.base.q() as u64, self.m as usize)
    }

    pub fn from_coords(&self, c: &[u32]) -> u64 {
        poly::from_digits(c, self.base.q() as u64)
    }

    /// The basis element `x^i`.
    pub fn basis(&self, i: u32) -> u64 {
        (self.base.q() as u64).pow(i)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let c: Vec<u32> = ca.iter().zip(&cb).map(|(&x, &y)| self.base.add(x, y)).collect();
        self.from_coords(&c)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let c: Vec<u32> = ca.iter().zip(&cb).map(|(&x, &y)| self.base.sub(x, y)).collect();
        self.from_coords(&c)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let prod = poly::mul(&self.base, &self.coords(a), &self.coords(b));
        let r = poly::rem_monic(&self.base, &prod, &self.modulus);
        poly::from_digits(&r, self.base.q() as u64)
    }

    /// Multiply by a base-field scalar.
    pub fn scale(&self, lambda: u32, a: u64) -> u64 {
        let c: Vec<u32> = self.coords(a).into_iter().map(|x| self.base.mul(lambda, x)).collect();
        self.from_coords(&c)
    }

    /// Embed a base-field element as a constant.
    pub fn embed(&self, lambda: u32) -> u64 {
        lambda as u64
    }

    pub fn pow(&self, a: u64, mut n: u128) -> u64 {
        let mut base = a;
        let mut r = 1u64;
        while n > 0 {
            if n & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::NotInvertible(0));
        }
        Ok(self.pow(a, self.order() as u128 - 2))
    }

    /// `a^(q^i)`, the i-th power of the Frobenius automorphism over GF(q).
    pub fn frobenius(&self, a: u64, i: u32) -> u64 {
        if a == 0 {
            return 0;
        }
        let i = i % self.m;
        let mut r = a;
        for _ in 0..i {
            r = self.pow(r, self.base.q() as u128);
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_modulus_is_x() {
        let f = FieldSpec::new(2, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.add(1, 1), 0);
    }

    #[test]
    fn gf4_modulus_and_product() {
        let f = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // x * x = x + 1
        assert_eq!(f.mul(2, 2), 3);
    }

    #[test]
    fn gf9_uses_x2_plus_1() {
        let f = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        assert_eq!(f.inv(2).unwrap(), 2);
        // x^2 = -1 = 2
        assert_eq!(f.mul(3, 3), 2);
    }

    #[test]
    fn gf16_smallest_modulus() {
        let f = FieldSpec::new(2, 4).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 0, 1, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(FieldSpec::new(4, 1), Err(Error::NotPrime(4)));
        assert_eq!(FieldSpec::new(2, 0), Err(Error::ZeroDegree));
        assert!(matches!(FieldSpec::new(2, 21), Err(Error::FieldTooLarge { .. })));
        assert!(FieldSpec::new(2, 20).is_ok());
        assert!(FieldSpec::new(2, 2).unwrap().inv(0).is_err());
        assert_eq!(FieldSpec::with_modulus(2, 2, &[1, 0, 1]), Err(Error::BadModulus(2)));
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let f = FieldSpec::new(3, 3).unwrap();
        assert!(f.tables.is_some());
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul_slow(a, b));
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = FieldSpec::new(2, 17).unwrap();
        assert!(f.tables.is_none());
        for a in [1u32, 2, 12345, 99999, (1 << 17) - 1] {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = FieldSpec::of_order(q).unwrap();
            let els: Vec<u32> = f.elements().collect();
            for &a in &els {
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                    assert_eq!(f.pow(a, q - 1), 1, "order of {a} must divide q-1");
                }
            }
        }
    }

    #[test]
    fn frobenius_examples() {
        let ext = ExtField::new(FieldSpec::new(2, 1).unwrap(), 2).unwrap();
        assert_eq!(ext.frobenius(0, 3), 0);
        assert_eq!(ext.frobenius(1, 5), 1);
        // x^2 = x + 1
        assert_eq!(ext.frobenius(2, 1), 3);
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }
}
