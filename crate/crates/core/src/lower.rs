//! Lower bounds: seed values, lifted MRD codes, the two linkage
//! constructions and closed forms along arithmetic progressions.

use crate::combinatorics::{lifted_mrd_size, qpow};
use crate::error::{Error, Result};
use crate::params::BoundValue;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::path::Path;

/// Known code sizes keyed by `(q, v, d, k)` with k normalized.
#[derive(Clone, Debug, Default)]
pub struct SeedTable {
    entries: BTreeMap<(u64, u32, u32, u32), (BigUint, String)>,
    /// Whether the `A_q(7,4;3) >= q^8+q^5+q^4+q^2-q` family applies.
    family_7_4_3: bool,
}

const BUILTIN: &[(u64, u32, u32, u32, u64, &str)] = &[
    (2, 6, 4, 3, 77, "known-exact"),
    (2, 7, 4, 3, 333, "known-lower"),
    (2, 8, 4, 3, 1326, "known-lower"),
    (2, 9, 4, 3, 5986, "known-lower"),
    (2, 10, 4, 3, 23870, "known-lower"),
    (2, 11, 4, 3, 97526, "known-lower"),
    (2, 12, 4, 3, 385515, "known-lower"),
    (2, 13, 4, 3, 1597245, "known-exact"),
    (2, 8, 6, 3, 34, "known-lower"),
];

fn key(q: u64, v: u32, d: u32, k: u32) -> (u64, u32, u32, u32) {
    (q, v, d, k.min(v.saturating_sub(k)))
}

impl SeedTable {
    /// No seeds at all.
    pub fn empty() -> Self {
        SeedTable::default()
    }

    /// The built-in constants.
    pub fn builtin() -> Self {
        let mut t = SeedTable { family_7_4_3: true, ..Default::default() };
        for &(q, v, d, k, n, tag) in BUILTIN {
            t.insert(q, v, d, k, BigUint::from(n), tag);
        }
        t
    }

    /// Built-ins, overridden by the file named in `CDC_SEEDS` if set.
    pub fn from_env() -> Result<Self> {
        let mut t = Self::builtin();
        if let Some(path) = std::env::var_os("CDC_SEEDS") {
            t.load_file(Path::new(&path))?;
        }
        Ok(t)
    }

    pub fn insert(&mut self, q: u64, v: u32, d: u32, k: u32, value: BigUint, tag: &str) {
        self.entries.insert(key(q, v, d, k), (value, tag.to_string()));
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty() && !self.family_7_4_3
    }

    pub fn load_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse { line: 0, msg: format!("{}: {e}", path.display()) })?;
        self.load_str(&text)
    }

    /// Lines `q v d k value source-tag`; `#` starts a comment. Entries
    /// replace existing ones.
    pub fn load_str(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() < 5 {
                return Err(err(format!("expected `q v d k value [tag]`, got {line:?}")));
            }
            let num = |s: &str| s.parse::<u64>().map_err(|e| err(format!("{s:?}: {e}")));
            let (q, v, d, k) = (num(f[0])?, num(f[1])? as u32, num(f[2])? as u32, num(f[3])? as u32);
            if k > v || d % 2 == 1 {
                return Err(err(format!("invalid parameters {q} {v} {d} {k}")));
            }
            let value: BigUint = f[4].parse().map_err(|e| err(format!("{:?}: {e}", f[4])))?;
            let tag = if f.len() > 5 { f[5..].join(" ") } else { "user".to_string() };
            self.insert(q, v, d, k, value, &tag);
        }
        Ok(())
    }

    pub fn get(&self, q: u64, v: u32, d: u32, k: u32) -> Option<BoundValue> {
        let key = key(q, v, d, k);
        let explicit = self.entries.get(&key).map(|(n, tag)| BoundValue::new("seed", n.clone()).via(tag.clone()));
        let family = (self.family_7_4_3 && (key.1, key.2, key.3) == (7, 4, 3)).then(|| {
            let val = qpow(q, 8) + qpow(q, 5) + qpow(q, 4) + qpow(q, 2) - q;
            BoundValue::new("seed", val).via("q^8+q^5+q^4+q^2-q family")
        });
        match (explicit, family) {
            (Some(a), Some(b)) => Some(if b.value > a.value { b } else { a }),
            (a, b) => a.or(b),
        }
    }
}

pub fn lmrd_lower(q: u64, v: u32, d: u32, k: u32) -> Result<BoundValue> {
    Ok(BoundValue::new("lifted-mrd", lifted_mrd_size(q, k as u64, v as u64, d as u64)?))
}

/// Size of the rank metric factor `q^{max{n,k}(min{n,k}-d/2+1)}`, clamped to
/// 1 when `min{n,k} < d/2`.
fn mrd_count(q: u64, k: u32, n: u32, d: u32) -> BigUint {
    let (lo, hi) = (n.min(k), n.max(k));
    if lo < d / 2 {
        BigUint::one()
    } else {
        qpow(q, (hi * (lo - d / 2 + 1)) as u64)
    }
}

/// `L(v1) * q^{max{v2,k}(min{v2,k}-d/2+1)} + L(v2)` maximized over
/// `v1 + v2 = v` with `v1, v2 >= k`; ties go to the smallest `v1`.
pub fn original_linkage_lower(
    q: u64,
    v: u32,
    d: u32,
    k: u32,
    lookup: &mut dyn FnMut(u32) -> BigUint,
) -> Option<BoundValue> {
    let mut best: Option<BoundValue> = None;
    for v1 in k..=v.saturating_sub(k) {
        let v2 = v - v1;
        let val = lookup(v1) * mrd_count(q, k, v2, d) + lookup(v2);
        if best.as_ref().is_none_or(|b| val > b.value) {
            best = Some(BoundValue::new("linkage", val).via(format!("v1={v1}, v2={v2}")));
        }
    }
    best
}

/// `L(m) * M(q,k,v-m+k,d) + L(v-m+k-d/2)` maximized over `k <= m <= v-d/2`;
/// ties go to the smallest `m`.
pub fn improved_linkage_lower(
    q: u64,
    v: u32,
    d: u32,
    k: u32,
    lookup: &mut dyn FnMut(u32) -> BigUint,
) -> Option<BoundValue> {
    if d == 0 || d % 2 == 1 {
        return None;
    }
    let mut best: Option<BoundValue> = None;
    for m in k..=v.saturating_sub(d / 2) {
        let b = lifted_mrd_size(q, k as u64, (v - m + k) as u64, d as u64).ok()?;
        let val = lookup(m) * b + lookup(v - m + k - d / 2);
        if best.as_ref().is_none_or(|x| val > x.value) {
            best = Some(BoundValue::new("improved-linkage", val).via(format!("m={m}")));
        }
    }
    best
}

/// The two closed-form lower bounds for `a(v0 + l s)` from `a(v0)` and
/// `a(s + k - d/2)`; the second is `None` unless `v0 >= 2k - d/2` and
/// `k >= d/2`.
#[allow(clippy::too_many_arguments)]
pub fn arithmetic_progression_lower(
    q: u64,
    d: u32,
    k: u32,
    v0: u32,
    s: u32,
    l: u32,
    a_v0: &BigUint,
    a_s: &BigUint,
) -> Result<(BoundValue, Option<BoundValue>)> {
    if k > v0 || 2 * s < d || d % 2 == 1 || d == 0 {
        return Err(Error::Params(format!("need k <= v0, 2s >= d, d even; got k={k} v0={v0} s={s} d={d}")));
    }
    let geometric = |base: &BigUint| -> BigUint {
        // [l 1]_base = 1 + base + ... + base^{l-1}
        let mut acc = BigUint::zero();
        let mut p = BigUint::one();
        for _ in 0..l {
            acc += &p;
            p *= base;
        }
        acc
    };
    let b = lifted_mrd_size(q, k as u64, (s + k) as u64, d as u64)?;
    let first = a_v0 * num_traits::pow(b.clone(), l as usize) + a_s * geometric(&b);
    let first = BoundValue::new("progression", first).via(format!("v0={v0}, s={s}, l={l}"));
    let second = (v0 + d / 2 >= 2 * k && k >= d / 2).then(|| {
        let e = k - d / 2 + 1;
        let val = a_s * qpow(q, (e * (v0 - k + d / 2)) as u64) * geometric(&qpow(q, (s * e) as u64)) + a_v0;
        BoundValue::new("progression-alt", val).via(format!("v0={v0}, s={s}, l={l}"))
    });
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn seeds() {
        let t = SeedTable::builtin();
        assert_eq!(t.get(2, 7, 4, 3).unwrap().value, b(333));
        assert_eq!(t.get(2, 7, 4, 4).unwrap().value, b(333));
        assert_eq!(t.get(3, 7, 4, 3).unwrap().value, b(6561 + 243 + 81 + 9 - 3));
        assert!(t.get(2, 14, 4, 3).is_none());
        assert!(SeedTable::empty().get(2, 7, 4, 3).is_none());
    }

    #[test]
    fn seed_file_overrides() {
        let mut t = SeedTable::builtin();
        t.load_str("# comment\n2 7 4 3 340 test-record\n\n3 8 4 3 100\n").unwrap();
        let x = t.get(2, 7, 4, 3).unwrap();
        assert_eq!((x.value, x.via.as_str()), (b(340), "test-record"));
        assert_eq!(t.get(3, 8, 4, 5).unwrap().via, "user");
        assert!(t.load_str("2 7 4\n").is_err());
        assert!(t.load_str("2 7 3 3 5 x\n").is_err());
        match t.load_str("2 7 4 3 5 x\n2 x 4 3 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lmrd_values() {
        assert_eq!(lmrd_lower(2, 7, 4, 3).unwrap().value, b(256));
        assert_eq!(lmrd_lower(2, 6, 4, 3).unwrap().value, b(64));
        assert_eq!(lmrd_lower(2, 4, 4, 3).unwrap().value, b(1));
    }

    #[test]
    fn linkage_examples() {
        // a(3) = a(4) = 1, a(5) = 9 for d = 4, k = 3
        let mut l = |n: u32| match n {
            5 => b(9),
            _ => b(1),
        };
        let x = original_linkage_lower(2, 7, 4, 3, &mut l).unwrap();
        assert_eq!((x.value, x.via.as_str()), (b(257), "v1=3, v2=4"));
        let y = improved_linkage_lower(2, 7, 4, 3, &mut l).unwrap();
        assert_eq!((y.value, y.via.as_str()), (b(265), "m=3"));
    }

    #[test]
    fn progression_example() {
        let (a, b2) = arithmetic_progression_lower(2, 4, 3, 13, 6, 2, &b(1597245), &b(333)).unwrap();
        let p = b(4096);
        assert_eq!(a.value, &p * &p * b(1597245) + b(333) * (&p + 1u32));
        assert_eq!(b2.unwrap().value, b(333) * b(16777216) * (&p + 1u32) + b(1597245));
        let (z, _) = arithmetic_progression_lower(2, 4, 3, 13, 6, 0, &b(1597245), &b(333)).unwrap();
        assert_eq!(z.value, b(1597245));
    }
}
