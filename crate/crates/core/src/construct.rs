//! Explicit codes: Gabidulin rank metric codes, lifting, spreads by field
//! reduction, greedy search, orthogonal codes and linkage assembly.

use crate::error::{Error, Result};
use crate::field::{ExtField, FieldSpec};
use crate::linalg::{subspace_distance, Grassmannian, Matrix, Subspace, ENUMERATION_BUDGET};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

/// A set of k×n matrices over GF(q) with a known minimum rank distance.
#[derive(Clone, Debug)]
pub struct RankMetricCode {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    pub codewords: Vec<Matrix>,
    /// `None` for a single codeword.
    pub min_rank_distance: Option<u32>,
}

impl RankMetricCode {
    /// The code consisting of the zero matrix only.
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        RankMetricCode { field, rows, cols, codewords: vec![Matrix::zeros(rows, cols)], min_rank_distance: None }
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }
}

/// A constant dimension code with its claimed minimum distance.
#[derive(Clone, Debug)]
pub struct SubspaceCode {
    pub field: FieldSpec,
    pub v: usize,
    pub k: usize,
    /// `None` means no two codewords, i.e. distance infinity.
    pub claimed_d: Option<u32>,
    pub codewords: Vec<Subspace>,
}

impl SubspaceCode {
    pub fn new(field: FieldSpec, v: usize, k: usize, claimed_d: Option<u32>, codewords: Vec<Subspace>) -> Self {
        SubspaceCode { field, v, k, claimed_d, codewords }
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }
}

fn min_opt(xs: impl IntoIterator<Item = Option<u32>>) -> Option<u32> {
    xs.into_iter().flatten().min()
}

/// q-linearized polynomials of q-degree below `min{k,n} - d + 1`, evaluated
/// at the first `min{k,n}` polynomial basis elements of GF(q^{max{k,n}}).
pub fn gabidulin(field: &FieldSpec, k: usize, n: usize, d: usize) -> Result<RankMetricCode> {
    let (big, small) = (k.max(n), k.min(n));
    if d == 0 || d > small {
        return Err(Error::Params(format!("need 1 <= d <= min(k, n), got d={d} k={k} n={n}")));
    }
    let dim = big * (small - d + 1);
    let q = field.q() as u64;
    let size = q.checked_pow(dim as u32).filter(|&s| s <= ENUMERATION_BUDGET);
    let Some(size) = size else {
        return Err(Error::Budget(format!("{q}^{dim} codewords exceeds {ENUMERATION_BUDGET}")));
    };
    let ext = ExtField::new(field.clone(), big as u32)?;
    let points: Vec<u64> = (0..small as u32).map(|j| ext.basis(j)).collect();
    // GF(q)-basis of the code: coefficient slot i set to basis element b
    let mut gens = Vec::with_capacity(dim);
    for i in 0..(small - d + 1) as u32 {
        for b in 0..big as u32 {
            let a = ext.basis(b);
            let mut m = Matrix::zeros(big, small);
            for (j, &g) in points.iter().enumerate() {
                let val = ext.mul(a, ext.frobenius(g, i));
                for (r, c) in ext.coords(val).into_iter().enumerate() {
                    m.set(r, j, c);
                }
            }
            gens.push(if k >= n { m } else { m.transpose() });
        }
    }
    let mut codewords = Vec::with_capacity(size as usize);
    let mut coef = vec![0u32; dim];
    let mut cur = Matrix::zeros(k, n);
    // enumerate GF(q)-combinations, updating incrementally like an odometer
    loop {
        codewords.push(cur.clone());
        let mut i = 0;
        loop {
            if i == dim {
                return Ok(RankMetricCode {
                    field: field.clone(),
                    rows: k,
                    cols: n,
                    codewords,
                    min_rank_distance: (dim > 0).then_some(d as u32),
                });
            }
            coef[i] = (coef[i] + 1) % q as u32;
            cur = cur.add(field, &gens[i])?;
            if coef[i] != 0 {
                break;
            }
            i += 1;
        }
    }
}

/// `rowspace(I_k | M)` for every codeword `M`.
pub fn lift(r: &RankMetricCode) -> Result<SubspaceCode> {
    let id = Matrix::identity(r.rows);
    let codewords = r.codewords.iter().map(|m| Subspace::from_rref(id.hconcat(m)?)).collect::<Result<Vec<_>>>()?;
    Ok(SubspaceCode::new(r.field.clone(), r.rows + r.cols, r.rows, r.min_rank_distance.map(|d| 2 * d), codewords))
}

/// A spread of k-subspaces of GF(q)^v from the points of PG(v/k - 1, q^k).
pub fn spread_construct(field: &FieldSpec, v: usize, k: usize) -> Result<SubspaceCode> {
    if k == 0 || !v.is_multiple_of(k) {
        return Err(Error::Params(format!("k = {k} must divide v = {v}")));
    }
    let t = v / k;
    let ext = ExtField::new(field.clone(), k as u32)?;
    let qk = ext.order();
    let count = (0..t as u32).try_fold(0u64, |acc, i| qk.checked_pow(i).and_then(|x| acc.checked_add(x)));
    if count.is_none_or(|c| c > ENUMERATION_BUDGET) {
        return Err(Error::Budget(format!("spread of {k}-spaces in dimension {v} is too large")));
    }
    let mut codewords = Vec::new();
    for lead in 0..t {
        let tail = t - lead - 1;
        for idx in 0..qk.pow(tail as u32) {
            let mut point = vec![0u64; t];
            point[lead] = 1;
            let mut x = idx;
            for slot in point.iter_mut().skip(lead + 1) {
                *slot = x % qk;
                x /= qk;
            }
            let mut gens = Matrix::zeros(k, v);
            for j in 0..k {
                let beta = ext.basis(j as u32);
                for (s, &xs) in point.iter().enumerate() {
                    for (c, val) in ext.coords(ext.mul(beta, xs)).into_iter().enumerate() {
                        gens.set(j, s * k + c, val);
                    }
                }
            }
            codewords.push(Subspace::from_generators(field, &gens));
        }
    }
    let d = if t > 1 { Some(2 * k as u32) } else { None };
    Ok(SubspaceCode::new(field.clone(), v, k, d, codewords))
}

/// Order in which [`greedy_cdc`] scans the Grassmannian.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GreedyOrder {
    /// Pivot sets lexicographically, then free entries lexicographically.
    Enumeration,
    Reverse,
    /// Enumeration order shuffled by a ChaCha8 generator with this seed.
    Shuffled(u64),
}

impl fmt::Display for GreedyOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GreedyOrder::Enumeration => write!(f, "enumeration"),
            GreedyOrder::Reverse => write!(f, "reverse"),
            GreedyOrder::Shuffled(s) => write!(f, "shuffle:{s}"),
        }
    }
}

impl FromStr for GreedyOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "enumeration" | "enum" => Ok(GreedyOrder::Enumeration),
            "reverse" => Ok(GreedyOrder::Reverse),
            _ => s.strip_prefix("shuffle:").and_then(|x| x.parse().ok()).map(GreedyOrder::Shuffled).ok_or_else(|| {
                Error::Params(format!("unknown order {s:?}; use enumeration, reverse or shuffle:<seed>"))
            }),
        }
    }
}

/// Scans the Grassmannian in the given order and keeps every subspace at
/// distance at least `d` from all kept ones.
pub fn greedy_cdc(field: &FieldSpec, v: usize, d: usize, k: usize, order: GreedyOrder) -> Result<SubspaceCode> {
    let mut all: Vec<Subspace> = Grassmannian::new(field, v, k)?.collect();
    match order {
        GreedyOrder::Enumeration => {}
        GreedyOrder::Reverse => all.reverse(),
        GreedyOrder::Shuffled(seed) => all.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
    }
    let mut kept: Vec<Subspace> = Vec::new();
    for u in all {
        let mut ok = true;
        for w in &kept {
            if subspace_distance(field, &u, w)? < d {
                ok = false;
                break;
            }
        }
        if ok {
            kept.push(u);
        }
    }
    let claimed = if kept.len() > 1 { Some(d as u32) } else { None };
    Ok(SubspaceCode::new(field.clone(), v, k, claimed, kept))
}

/// Replaces every codeword by its orthogonal complement.
pub fn orthogonal_code(c: &SubspaceCode) -> SubspaceCode {
    let codewords = c.codewords.iter().map(|u| u.orthogonal_complement(&c.field)).collect();
    SubspaceCode::new(c.field.clone(), c.v, c.v - c.k, c.claimed_d, codewords)
}

/// `{(τ(U) | M)} ∪ {(0 | τ(W))}` with a zero block of width `v1 - k + d/2`.
pub fn improved_linkage_assemble(
    c1: &SubspaceCode,
    c2: &SubspaceCode,
    r: &RankMetricCode,
    d: usize,
) -> Result<SubspaceCode> {
    let k = c1.k;
    if c2.k != k || r.rows != k {
        return Err(Error::Shape(format!("dimensions differ: {k}, {}, rank code rows {}", c2.k, r.rows)));
    }
    if d % 2 == 1 || d / 2 > k {
        return Err(Error::Params(format!("linkage distance {d} must be even and at most 2k")));
    }
    if c1.field != c2.field || c1.field != r.field {
        return Err(Error::Shape("codes live over different fields".into()));
    }
    if c2.v + d / 2 < k || r.cols != c2.v + d / 2 - k {
        return Err(Error::Shape(format!(
            "rank code needs {} columns, has {}",
            (c2.v + d / 2).saturating_sub(k),
            r.cols
        )));
    }
    let pad = c1.v + d / 2 - k;
    let v = c1.v + c2.v + d / 2 - k;
    let mut codewords = Vec::with_capacity(c1.len() * r.len() + c2.len());
    for u in &c1.codewords {
        for m in &r.codewords {
            codewords.push(Subspace::from_rref(u.rep().hconcat(m)?)?);
        }
    }
    let zero = Matrix::zeros(k, pad);
    for w in &c2.codewords {
        codewords.push(Subspace::from_rref(zero.hconcat(w.rep())?)?);
    }
    let rank_d = r.min_rank_distance.map(|x| 2 * x);
    let claimed =
        if codewords.len() > 1 { min_opt([c1.claimed_d, c2.claimed_d, rank_d, Some(d as u32)]) } else { None };
    Ok(SubspaceCode::new(c1.field.clone(), v, k, claimed, codewords))
}

/// One block of a multiple linkage: a code, the rank metric code placed to
/// its right (`None` for the first block) and its overlap `delta`.
#[derive(Clone, Debug)]
pub struct LinkageBlock {
    pub code: SubspaceCode,
    pub rank: Option<RankMetricCode>,
    pub delta: usize,
}

/// Iterated [`improved_linkage_assemble`]: block `i+1` is linked onto the
/// code built from blocks `1..=i` with distance `2(k - delta_i)`.
pub fn multiple_linkage_assemble(blocks: &[LinkageBlock]) -> Result<SubspaceCode> {
    let (first, rest) = blocks.split_first().ok_or_else(|| Error::Params("no blocks".into()))?;
    if blocks.last().is_some_and(|b| b.delta != 0) {
        return Err(Error::Params("the last block must have delta = 0".into()));
    }
    let k = first.code.k;
    let mut acc = first.code.clone();
    let mut prev_delta = first.delta;
    for b in rest {
        if prev_delta > k {
            return Err(Error::Params(format!("delta {prev_delta} exceeds k = {k}")));
        }
        let r = b
            .rank
            .as_ref()
            .ok_or_else(|| Error::Params("every block after the first needs a rank metric code".into()))?;
        acc = improved_linkage_assemble(&b.code, &acc, r, 2 * (k - prev_delta))?;
        prev_delta = b.delta;
    }
    Ok(acc)
}
