//! Bounds over a grid of parameters: every prime power q in a set,
//! 4 <= v <= v_max, even 4 <= d <= 2k <= v.

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::field::prime_power;
use crate::lower::SeedTable;
use crate::params::{BoundValue, Params};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub params: Params,
    pub best_lower: BoundValue,
    pub best_upper: BoundValue,
    /// Improved linkage reaches the best lower bound.
    pub linkage_attains: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
    /// Cells where the intersection-counting bound is strictly best for
    /// d != 2k.
    pub ahlswede_wins: Vec<Params>,
}

impl Sweep {
    /// Fraction of cells where improved linkage attains the best lower bound.
    pub fn linkage_fraction(&self) -> f64 {
        if self.rows.is_empty() {
            return 0.0;
        }
        self.rows.iter().filter(|r| r.linkage_attains).count() as f64 / self.rows.len() as f64
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("q,v,d,k,best_lower,lower_source,best_upper,upper_source,linkage_attains\n");
        for r in &self.rows {
            let p = r.params;
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                p.q,
                p.v,
                p.d,
                p.k,
                r.best_lower.value,
                r.best_lower.name,
                r.best_upper.value,
                r.best_upper.name,
                r.linkage_attains
            ));
        }
        out
    }
}

fn sweep_q(q: u64, v_max: u32, seeds: SeedTable) -> Result<Vec<(SweepRow, bool)>> {
    let mut engine = Bounds::new(seeds);
    let mut rows = Vec::new();
    for v in 4..=v_max {
        for k in 2..=v / 2 {
            for d in (4..=2 * k).step_by(2) {
                let p = Params::new(q, v, d, k)?;
                let lower = engine.lower_candidates(p);
                let best_lower = engine.best_lower(p);
                let best_upper = engine.best_upper(p);
                let linkage_attains = lower.iter().any(|b| b.name == "improved-linkage" && b.value == best_lower.value);
                let ahlswede = d != 2 * k
                    && best_upper.name == "ahlswede"
                    && engine
                        .upper_candidates(p)
                        .iter()
                        .filter(|b| b.name != "ahlswede")
                        .all(|b| b.value > best_upper.value);
                rows.push((SweepRow { params: p, best_lower, best_upper, linkage_attains }, ahlswede));
            }
        }
    }
    Ok(rows)
}

/// Runs the sweep, one thread per field size; rows come out sorted by
/// `(q, v, d, k)`.
pub fn sweep(qs: &[u64], v_max: u32, seeds: &SeedTable) -> Result<Sweep> {
    if let Some(&q) = qs.iter().find(|&&q| prime_power(q).is_none()) {
        return Err(Error::Params(format!("{q} is not a prime power")));
    }
    let parts: Vec<Result<Vec<(SweepRow, bool)>>> = std::thread::scope(|s| {
        let handles: Vec<_> = qs.iter().map(|&q| s.spawn(move || sweep_q(q, v_max, seeds.clone()))).collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
    });
    let mut all = Vec::new();
    for p in parts {
        all.extend(p?);
    }
    all.sort_by_key(|(r, _)| r.params);
    all.dedup_by_key(|(r, _)| r.params);
    let ahlswede_wins = all.iter().filter(|(_, a)| *a).map(|(r, _)| r.params).collect();
    Ok(Sweep { rows: all.into_iter().map(|(r, _)| r).collect(), ahlswede_wins })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep() {
        let s = sweep(&[2, 3], 8, &SeedTable::builtin()).unwrap();
        assert!(s.rows.windows(2).all(|w| w[0].params < w[1].params));
        assert!(s.rows.iter().all(|r| r.best_lower.value <= r.best_upper.value));
        let f = s.linkage_fraction();
        assert!((0.0..=1.0).contains(&f));
        assert!(s.to_csv().lines().count() == s.rows.len() + 1);
        assert!(sweep(&[6], 8, &SeedTable::builtin()).is_err());
    }
}
