//! Ground-truth checks for explicit codes and enumeration oracles for the
//! counting formulas.

use crate::construct::SubspaceCode;
use crate::error::Result;
use crate::field::FieldSpec;
use crate::linalg::{subspace_distance, Grassmannian, Matrix, Subspace};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Maximum number of pairwise distance computations.
pub const PAIR_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: usize,
    pub v: usize,
    pub k: usize,
    pub claimed_d: Option<u32>,
    /// Every codeword has dimension k and ambient dimension v.
    pub k_uniform: bool,
    /// Every representative is a full-rank rref matrix.
    pub rref_ok: bool,
    /// First pair of equal codewords, if any.
    pub duplicate: Option<(usize, usize)>,
    /// Exact minimum distance; `None` for fewer than two codewords.
    pub min_distance: Option<u32>,
    /// A pair attaining `min_distance`.
    pub witness: Option<(usize, usize)>,
    pub pairs_checked: u64,
    pub budget_exceeded: bool,
}

impl VerifyReport {
    /// Whether the code has its claimed parameters.
    pub fn ok(&self) -> bool {
        let dist_ok = match (self.claimed_d, self.min_distance) {
            (_, None) => self.n <= 1,
            (None, Some(_)) => false,
            (Some(c), Some(m)) => m >= c,
        };
        self.k_uniform && self.rref_ok && self.duplicate.is_none() && !self.budget_exceeded && dist_ok
    }
}

pub fn verify_code(c: &SubspaceCode) -> VerifyReport {
    verify_code_with_budget(c, PAIR_BUDGET)
}

/// Like [`verify_code`]; when the pair count exceeds `budget` the report
/// covers the first `budget` pairs and sets `budget_exceeded`.
pub fn verify_code_with_budget(c: &SubspaceCode, budget: u64) -> VerifyReport {
    let n = c.codewords.len();
    let k_uniform = c.codewords.iter().all(|u| u.dim() == c.k && u.ambient() == c.v);
    let rref_ok = c.codewords.iter().all(|u| u.rep().is_full_rank_rref());
    let mut seen: HashMap<&Matrix, usize> = HashMap::new();
    let mut duplicate = None;
    for (j, u) in c.codewords.iter().enumerate() {
        if let Some(&i) = seen.get(u.rep()) {
            duplicate = Some((i, j));
            break;
        }
        seen.insert(u.rep(), j);
    }
    let total = (n as u64) * (n.saturating_sub(1) as u64) / 2;
    let mut report = VerifyReport {
        n,
        v: c.v,
        k: c.k,
        claimed_d: c.claimed_d,
        k_uniform,
        rref_ok,
        duplicate,
        min_distance: None,
        witness: None,
        pairs_checked: 0,
        budget_exceeded: total > budget,
    };
    if !k_uniform {
        // distances between codewords of different dimension are refused
        return report;
    }
    let best = min_distance_parallel(&c.field, &c.codewords, budget.min(total));
    report.pairs_checked = budget.min(total);
    if let Some((d, i, j)) = best {
        report.min_distance = Some(d);
        report.witness = Some((i, j));
    }
    report
}

/// Row index `i` starts at pair number `i*n - i(i+1)/2`.
fn row_start(n: u64, i: u64) -> u64 {
    i * n - i * (i + 1) / 2
}

fn min_distance_parallel(field: &FieldSpec, cws: &[Subspace], limit: u64) -> Option<(u32, usize, usize)> {
    let n = cws.len();
    if n < 2 || limit == 0 {
        return None;
    }
    let threads = std::thread::available_parallelism().map_or(1, |t| t.get()).min(n - 1);
    let scan = |rows: std::ops::Range<usize>| {
        let mut best: Option<(u32, usize, usize)> = None;
        for i in rows {
            let start = row_start(n as u64, i as u64);
            if start >= limit {
                break;
            }
            let end = ((limit - start) as usize + i + 1).min(n);
            for j in i + 1..end {
                let d = subspace_distance(field, &cws[i], &cws[j]).expect("uniform shapes") as u32;
                if best.is_none_or(|b| d < b.0) {
                    best = Some((d, i, j));
                }
            }
        }
        best
    };
    if threads == 1 {
        // also the only option where threads cannot be spawned (wasm)
        return scan(0..n - 1);
    }
    let chunk = (n - 1).div_ceil(threads);
    let results: Vec<Option<(u32, usize, usize)>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let rows = t * chunk..((t + 1) * chunk).min(n - 1);
                s.spawn(move || scan(rows))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    // smallest distance, then lexicographically first pair
    results.into_iter().flatten().min()
}

/// Enumeration count of k-subspaces U with dim(U ∩ W) >= k - t, where W is
/// spanned by the first m unit vectors.
pub fn oracle_count_close(field: &FieldSpec, v: usize, k: usize, m: usize, t: usize) -> Result<BigUint> {
    let mut gens = Matrix::zeros(m, v);
    for i in 0..m {
        gens.set(i, i, 1);
    }
    let w = Subspace::from_generators(field, &gens);
    let mut count = 0u64;
    for u in Grassmannian::new(field, v, k)? {
        if u.intersection_dim(field, &w)? + t >= k {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}

/// Number of k-subspaces of GF(q)^v by enumeration.
pub fn oracle_grassmannian_size(field: &FieldSpec, v: usize, k: usize) -> Result<BigUint> {
    Ok(BigUint::from(Grassmannian::new(field, v, k)?.count() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{gabidulin, lift};

    fn gf2() -> FieldSpec {
        FieldSpec::of_order(2).unwrap()
    }

    #[test]
    fn lifted_gabidulin_verifies() {
        let c = lift(&gabidulin(&gf2(), 3, 4, 2).unwrap()).unwrap();
        let r = verify_code(&c);
        assert_eq!((r.n, r.min_distance), (256, Some(4)));
        assert!(r.ok());
    }

    #[test]
    fn single_codeword_is_infinite() {
        let c = SubspaceCode::new(gf2(), 3, 3, None, vec![Subspace::full(3)]);
        let r = verify_code(&c);
        assert_eq!(r.min_distance, None);
        assert!(r.ok());
    }

    #[test]
    fn duplicates_and_overclaims() {
        let f = gf2();
        let mut c = lift(&gabidulin(&f, 2, 2, 2).unwrap()).unwrap();
        let mut bad = c.clone();
        bad.codewords.push(c.codewords[1].clone());
        let r = verify_code(&bad);
        assert_eq!(r.duplicate, Some((1, 4)));
        assert!(!r.ok());
        c.claimed_d = Some(6);
        let r = verify_code(&c);
        assert_eq!(r.min_distance, Some(4));
        assert!(r.witness.is_some() && !r.ok());
    }

    #[test]
    fn budget_flag() {
        let c = lift(&gabidulin(&gf2(), 2, 2, 1).unwrap()).unwrap();
        let r = verify_code_with_budget(&c, 10);
        assert!(r.budget_exceeded && !r.ok());
        assert_eq!(r.pairs_checked, 10);
    }

    #[test]
    fn oracles() {
        let f = gf2();
        assert_eq!(oracle_count_close(&f, 4, 2, 2, 1).unwrap(), BigUint::from(19u32));
        assert_eq!(oracle_count_close(&f, 4, 2, 2, 0).unwrap(), BigUint::from(1u32));
        assert_eq!(oracle_grassmannian_size(&f, 3, 1).unwrap(), BigUint::from(7u32));
        let f3 = FieldSpec::of_order(3).unwrap();
        assert_eq!(oracle_grassmannian_size(&f3, 4, 2).unwrap(), BigUint::from(130u32));
    }
}
