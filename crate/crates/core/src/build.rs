//! Largest code this crate can write down explicitly for given parameters,
//! combining lifted MRD codes, spreads, greedy search on small Grassmannians
//! and recursive improved linkage.

use crate::combinatorics::{lifted_mrd_size, q_binomial};
use crate::construct::{
    gabidulin, greedy_cdc, improved_linkage_assemble, lift, orthogonal_code, spread_construct, GreedyOrder,
    RankMetricCode, SubspaceCode,
};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{Matrix, Subspace, ENUMERATION_BUDGET};
use num_bigint::BigUint;
use std::collections::HashMap;

/// Largest Grassmannian the builder searches greedily.
pub const GREEDY_LIMIT: u64 = 2_000;
/// Shuffled greedy runs tried in addition to enumeration order.
pub const GREEDY_TRIES: u64 = 8;
/// Largest code the builder will assemble.
pub const MAX_CODEWORDS: u64 = 2_000_000;

/// A code together with a description of how it was obtained.
#[derive(Clone, Debug)]
pub struct Built {
    pub code: SubspaceCode,
    pub how: String,
}

/// Memoized builder for a fixed field and distance.
pub struct Builder {
    field: FieldSpec,
    d: usize,
    memo: HashMap<(usize, usize), Built>,
}

fn single(field: &FieldSpec, v: usize, k: usize) -> SubspaceCode {
    let rep = Matrix::identity(k).hconcat(&Matrix::zeros(k, v - k)).expect("same row count");
    SubspaceCode::new(field.clone(), v, k, None, vec![Subspace::from_rref(rep).expect("rref")])
}

impl Builder {
    pub fn new(field: FieldSpec, d: usize) -> Result<Self> {
        if d < 2 || d % 2 == 1 {
            return Err(Error::Params(format!("distance must be even and at least 2, got {d}")));
        }
        Ok(Builder { field, d, memo: HashMap::new() })
    }

    fn q(&self) -> u64 {
        self.field.q() as u64
    }

    /// Best explicit `(v, N, d; k)` code found.
    pub fn best(&mut self, v: usize, k: usize) -> Result<Built> {
        if k > v {
            return Err(Error::Params(format!("k = {k} exceeds v = {v}")));
        }
        if let Some(b) = self.memo.get(&(v, k)) {
            return Ok(b.clone());
        }
        let built = if 2 * k > v {
            let inner = self.best(v, v - k)?;
            Built { code: orthogonal_code(&inner.code), how: format!("orthogonal of [{}]", inner.how) }
        } else if self.d > 2 * k {
            Built { code: single(&self.field, v, k), how: "single codeword".into() }
        } else {
            self.best_normalized(v, k)?
        };
        self.memo.insert((v, k), built.clone());
        Ok(built)
    }

    fn best_normalized(&mut self, v: usize, k: usize) -> Result<Built> {
        let (q, d) = (self.q(), self.d);
        let budget = BigUint::from(ENUMERATION_BUDGET);
        let mut best: Option<Built> = None;
        let consider = |b: Built, best: &mut Option<Built>| {
            if best.as_ref().is_none_or(|x| b.code.len() > x.code.len()) {
                *best = Some(b);
            }
        };

        let lmrd = lifted_mrd_size(q, k as u64, v as u64, d as u64)?;
        // built only if it wins
        let link = self.plan_linkage(v, k)?;

        if lmrd <= budget && link.as_ref().is_none_or(|(s, _)| lmrd >= *s) {
            let code = lift(&gabidulin(&self.field, k, v - k, d / 2)?)?;
            consider(Built { code, how: "lifted MRD".into() }, &mut best);
        }
        if d == 2 * k && v.is_multiple_of(k) && q_binomial(v as u64, 1, q) <= budget {
            consider(Built { code: spread_construct(&self.field, v, k)?, how: "spread".into() }, &mut best);
        }
        if q_binomial(v as u64, k as i64, q) <= BigUint::from(GREEDY_LIMIT) {
            let orders = std::iter::once(GreedyOrder::Enumeration).chain((0..GREEDY_TRIES).map(GreedyOrder::Shuffled));
            for order in orders {
                let code = greedy_cdc(&self.field, v, d, k, order)?;
                consider(Built { code, how: format!("greedy ({order})") }, &mut best);
            }
        }
        if let Some((size, m)) = link {
            if best.as_ref().is_none_or(|b| size > BigUint::from(b.code.len())) {
                if size > BigUint::from(MAX_CODEWORDS) {
                    return Err(Error::Budget(format!("linkage code of size {size} exceeds {MAX_CODEWORDS}")));
                }
                consider(self.linkage(v, k, m)?, &mut best);
            }
        }
        best.ok_or_else(|| Error::Budget(format!("no construction for v={v} k={k} d={d} fits the budget")))
    }

    /// Best first-block dimension `m` for improved linkage and the resulting
    /// size; `None` when no split exists.
    fn plan_linkage(&mut self, v: usize, k: usize) -> Result<Option<(BigUint, usize)>> {
        let (q, d) = (self.q(), self.d);
        let mut link: Option<(BigUint, usize)> = None;
        if d / 2 > k || v < k + d / 2 {
            return Ok(None);
        }
        for m in k..=v - d / 2 {
            let v2 = v - m + k - d / 2;
            let n1 = self.best(m, k)?.code.len();
            let n2 = self.best(v2, k)?.code.len();
            let size = BigUint::from(n1) * lifted_mrd_size(q, k as u64, (v - m + k) as u64, d as u64)? + n2;
            if link.as_ref().is_none_or(|(s, _)| size > *s) {
                link = Some((size, m));
            }
        }
        Ok(link)
    }

    /// Improved linkage at its best split, with the best known inner codes,
    /// whether or not another construction is larger.
    pub fn improved_linkage(&mut self, v: usize, k: usize) -> Result<Built> {
        if 2 * k > v {
            let inner = self.improved_linkage(v, v - k)?;
            return Ok(Built { code: orthogonal_code(&inner.code), how: format!("orthogonal of [{}]", inner.how) });
        }
        let (size, m) = self.plan_linkage(v, k)?.ok_or_else(|| {
            Error::Params(format!("improved linkage needs d/2 <= k and v >= k + d/2, got v={v} k={k}"))
        })?;
        if size > BigUint::from(MAX_CODEWORDS) {
            return Err(Error::Budget(format!("linkage code of size {size} exceeds {MAX_CODEWORDS}")));
        }
        self.linkage(v, k, m)
    }

    /// The improved linkage code with first block `C(m)`.
    fn linkage(&mut self, v: usize, k: usize, m: usize) -> Result<Built> {
        let d = self.d;
        let v2 = v - m + k - d / 2;
        let c1 = self.best(m, k)?;
        let c2 = self.best(v2, k)?;
        let cols = v - m;
        let r = if d / 2 > k.min(cols) {
            RankMetricCode::zero(self.field.clone(), k, cols)
        } else {
            gabidulin(&self.field, k, cols, d / 2)?
        };
        let code = improved_linkage_assemble(&c1.code, &c2.code, &r, d)?;
        Ok(Built { code, how: format!("improved linkage m={m}: [{}] x rank code + [{}]", c1.how, c2.how) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_265() {
        let mut b = Builder::new(FieldSpec::of_order(2).unwrap(), 4).unwrap();
        let c = b.best(7, 3).unwrap();
        assert_eq!(c.code.len(), 265);
        assert!(c.how.starts_with("improved linkage m=3"), "{}", c.how);
    }

    #[test]
    fn small_cases() {
        let mut b = Builder::new(FieldSpec::of_order(2).unwrap(), 4).unwrap();
        assert_eq!(b.best(6, 2).unwrap().code.len(), 21);
        assert_eq!(b.best(5, 2).unwrap().code.len(), 9);
        assert_eq!(b.best(4, 3).unwrap().code.len(), 1);
        assert!(Builder::new(FieldSpec::of_order(2).unwrap(), 3).is_err());
        assert_eq!(b.improved_linkage(7, 4).unwrap().code.len(), 265);
        assert!(b.improved_linkage(3, 1).is_err());
    }
}
