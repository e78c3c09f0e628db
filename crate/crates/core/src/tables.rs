//! Comparison tables for A_q(v, d; k) over a range of v: absolute values,
//! and ratios against the lifted MRD size and against the MRD bound.

use crate::bounds::Bounds;
use crate::combinatorics::lifted_mrd_size;
use crate::error::{Error, Result};
use crate::interval::round_half_even;
use crate::lower::{improved_linkage_lower, original_linkage_lower};
use crate::params::Params;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;

/// Decimals printed for ratio cells.
pub const RATIO_DIGITS: u32 = 6;

const EA_DATA: &str = include_str!("../data/ea.txt");

/// Display-only sizes of A_2(v,4;3) codes from an external construction.
pub fn ea_values() -> BTreeMap<u32, BigUint> {
    EA_DATA
        .lines()
        .filter(|l| !l.trim_start().starts_with('#') && !l.trim().is_empty())
        .filter_map(|l| {
            let mut it = l.split_whitespace();
            Some((it.next()?.parse().ok()?, it.next()?.parse().ok()?))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Int(BigUint),
    Ratio(BigRational),
    Empty,
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Ratio(r) => round_half_even(r, RATIO_DIGITS),
            Cell::Empty => String::new(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cell::Empty => s.serialize_none(),
            c => s.serialize_str(&c.render()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub v: u32,
    pub cells: Vec<Cell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

pub const COLUMNS: [&str; 6] = ["bklb", "mrdb", "bkub", "lold", "lnew", "ea"];

/// Absolute values per row, the raw material for all three tables.
#[derive(Clone, Debug)]
struct RawRow {
    v: u32,
    vals: [Option<BigUint>; 6],
    lmrd: BigUint,
}

fn raw_rows(engine: &mut Bounds, q: u64, d: u32, k: u32, vs: &[u32]) -> Result<Vec<RawRow>> {
    let ea = if (q, d, k) == (2, 4, 3) { ea_values() } else { BTreeMap::new() };
    vs.iter()
        .map(|&v| {
            let p = Params::new(q, v, d, k)?;
            let k = p.normalized().k;
            let mut lk = |m: u32| engine.best_lower(Params::new(q, m, d, k).expect("m >= k")).value;
            let lold = original_linkage_lower(q, v, d, k, &mut lk).map(|b| b.value);
            let lnew = improved_linkage_lower(q, v, d, k, &mut lk).map(|b| b.value);
            let vals = [
                Some(engine.best_lower(p).value),
                engine.lmrd_subclass_upper(p).map(|b| b.value),
                Some(engine.best_upper(p).value),
                lold,
                lnew,
                ea.get(&v).cloned(),
            ];
            let lmrd = lifted_mrd_size(q, k as u64, v as u64, d as u64)?;
            Ok(RawRow { v, vals, lmrd })
        })
        .collect()
}

/// Which of the three comparison tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Absolute,
    OverLmrd,
    OverMrdBound,
}

impl Which {
    pub fn from_index(i: u32) -> Result<Self> {
        match i {
            1 => Ok(Which::Absolute),
            2 => Ok(Which::OverLmrd),
            3 => Ok(Which::OverMrdBound),
            _ => Err(Error::Params(format!("no table {i}; choose 1, 2 or 3"))),
        }
    }
}

/// Builds a table for `A_q(v, d; k)` over `vs`.
pub fn build(engine: &mut Bounds, which: Which, q: u64, d: u32, k: u32, vs: &[u32]) -> Result<Table> {
    let raw = raw_rows(engine, q, d, k, vs)?;
    let ratio = |x: &Option<BigUint>, den: Option<&BigUint>| match (x, den) {
        (Some(x), Some(den)) => Cell::Ratio(BigRational::new(BigInt::from(x.clone()), BigInt::from(den.clone()))),
        _ => Cell::Empty,
    };
    let rows = raw
        .iter()
        .map(|r| {
            let cells = match which {
                Which::Absolute => r.vals.iter().map(|x| x.clone().map_or(Cell::Empty, Cell::Int)).collect(),
                Which::OverLmrd => r.vals.iter().map(|x| ratio(x, Some(&r.lmrd))).collect(),
                Which::OverMrdBound => r.vals.iter().map(|x| ratio(x, r.vals[1].as_ref())).collect(),
            };
            Row { v: r.v, cells }
        })
        .collect();
    let title = match which {
        Which::Absolute => format!("Lower and upper bounds for A_{q}(v,{d};{k})"),
        Which::OverLmrd => format!("Bounds for A_{q}(v,{d};{k}) divided by the lifted MRD code size"),
        Which::OverMrdBound => format!("Bounds for A_{q}(v,{d};{k}) divided by the MRD bound"),
    };
    Ok(Table { title, columns: COLUMNS.iter().map(|s| s.to_string()).collect(), rows })
}

/// The standard tables: q = 2, d = 4, k = 3, v = 6..=19.
pub fn standard(engine: &mut Bounds, which: Which) -> Result<Table> {
    let vs: Vec<u32> = (6..=19).collect();
    build(engine, which, 2, 4, 3, &vs)
}

impl Table {
    pub fn to_text(&self) -> String {
        let mut grid = vec![std::iter::once("v".to_string()).chain(self.columns.iter().cloned()).collect::<Vec<_>>()];
        for r in &self.rows {
            grid.push(std::iter::once(r.v.to_string()).chain(r.cells.iter().map(Cell::render)).collect());
        }
        let widths: Vec<usize> =
            (0..grid[0].len()).map(|c| grid.iter().map(|row| row[c].len()).max().unwrap_or(0)).collect();
        let mut out = format!("{}\n", self.title);
        for row in grid {
            let line: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("v,{}\n", self.columns.join(","));
        for r in &self.rows {
            let cells: Vec<String> = r.cells.iter().map(Cell::render).collect();
            out.push_str(&format!("{},{}\n", r.v, cells.join(",")));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ea_file_parses() {
        let ea = ea_values();
        assert_eq!(ea.len(), 11);
        assert_eq!(ea[&19], BigUint::from(5200895489u64));
    }

    #[test]
    fn small_table_row() {
        let mut e = Bounds::with_builtin_seeds();
        let t = build(&mut e, Which::Absolute, 2, 4, 3, &[6, 7]).unwrap();
        let row: Vec<String> = t.rows[1].cells.iter().map(Cell::render).collect();
        assert_eq!(row, ["333", "291", "381", "257", "265", "301"]);
        let t3 = build(&mut e, Which::OverMrdBound, 2, 4, 3, &[6]).unwrap();
        assert_eq!(t3.rows[0].cells[0].render(), "1.084507");
        assert_eq!(t3.rows[0].cells[5], Cell::Empty);
        assert!(t3.to_csv().starts_with("v,bklb,mrdb,bkub,lold,lnew,ea\n6,1.084507,1.000000,"));
    }
}
