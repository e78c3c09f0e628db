//! Dense matrices over GF(q), reduced row echelon forms and subspaces.

use crate::combinatorics::q_binomial;
use crate::error::{Error, Result};
use crate::field::{FieldOps, FieldSpec};
use num_bigint::BigUint;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: u32) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::Shape(format!("hconcat of {} and {} rows", self.rows, other.rows)));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Matrix { rows: self.rows, cols, data })
    }

    /// `self` stacked on top of `other`.
    pub fn vconcat(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::Shape(format!("vconcat of {} and {} cols", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn sub(&self, field: &FieldSpec, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| field.sub(a, b))
    }

    pub fn add(&self, field: &FieldSpec, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| field.add(a, b))
    }

    pub fn scale(&self, field: &FieldSpec, lambda: u32) -> Matrix {
        let data = self.data.iter().map(|&x| field.mul(lambda, x)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(u32, u32) -> u32) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("elementwise op on different shapes".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn mul(&self, field: &FieldSpec, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape("matrix product shapes".into()));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for i in 0..self.cols {
                let a = self.get(r, i);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = field.add(out.get(r, c), field.mul(a, other.get(i, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form (zero rows kept at the bottom) and rank.
    pub fn rref(&self, field: &FieldSpec) -> (Matrix, usize) {
        let mut m = self.clone();
        let rank = m.rref_in_place(field);
        (m, rank)
    }

    fn rref_in_place(&mut self, field: &FieldSpec) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pr) = (rank..rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            if pr != rank {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, rank * cols + j);
                }
            }
            let inv = field.inv(self.get(rank, c)).expect("pivot is nonzero");
            if inv != 1 {
                for j in c..cols {
                    let v = field.mul(inv, self.get(rank, j));
                    self.set(rank, j, v);
                }
            }
            for r in 0..rows {
                if r == rank {
                    continue;
                }
                let factor = self.get(r, c);
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let v = field.sub(self.get(r, j), field.mul(factor, self.get(rank, j)));
                    self.set(r, j, v);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn rank(&self, field: &FieldSpec) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut m = self.clone();
        if field.p() == 2 && field.e() == 1 {
            return m.rank_gf2();
        }
        m.rref_in_place(field)
    }

    /// Row reduction over GF(2) with XOR only; agrees with the generic path.
    fn rank_gf2(&mut self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            let Some(pr) = (rank..rows).find(|&r| self.data[r * cols + c] != 0) else {
                continue;
            };
            for j in 0..cols {
                self.data.swap(pr * cols + j, rank * cols + j);
            }
            for r in rank + 1..rows {
                if self.data[r * cols + c] != 0 {
                    for j in c..cols {
                        self.data[r * cols + j] ^= self.data[rank * cols + j];
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Whether the matrix is in reduced row echelon form with no zero rows.
    pub fn is_full_rank_rref(&self) -> bool {
        let mut last: Option<usize> = None;
        for r in 0..self.rows {
            let Some(p) = self.row(r).iter().position(|&x| x != 0) else {
                return false;
            };
            if self.get(r, p) != 1 || last.is_some_and(|l| p <= l) {
                return false;
            }
            if (0..self.rows).any(|o| o != r && self.get(o, p) != 0) {
                return false;
            }
            last = Some(p);
        }
        true
    }

    /// Pivot columns of a matrix already in rref.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.rows).filter_map(|r| self.row(r).iter().position(|&x| x != 0)).collect()
    }
}

/// Binary indicator of the pivot columns of an rref representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PivotVector(pub Vec<bool>);

impl PivotVector {
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn hamming(&self, other: &PivotVector) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }
}

/// A subspace of GF(q)^v, held by its unique full-rank rref representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    rep: Matrix,
}

impl Subspace {
    /// Row space of an arbitrary generator matrix.
    pub fn from_generators(field: &FieldSpec, gens: &Matrix) -> Subspace {
        let (r, rank) = gens.rref(field);
        let data = r.data[..rank * r.cols].to_vec();
        Subspace { rep: Matrix { rows: rank, cols: r.cols, data } }
    }

    /// Wraps a matrix that must already be a full-rank rref representative.
    pub fn from_rref(rep: Matrix) -> Result<Subspace> {
        if !rep.is_full_rank_rref() {
            return Err(Error::Shape("matrix is not a full-rank rref representative".into()));
        }
        Ok(Subspace { rep })
    }

    pub fn zero(v: usize) -> Subspace {
        Subspace { rep: Matrix::zeros(0, v) }
    }

    pub fn full(v: usize) -> Subspace {
        Subspace { rep: Matrix::identity(v) }
    }

    pub fn dim(&self) -> usize {
        self.rep.rows
    }
    pub fn ambient(&self) -> usize {
        self.rep.cols
    }
    pub fn rep(&self) -> &Matrix {
        &self.rep
    }

    pub fn pivot_vector(&self) -> PivotVector {
        let mut bits = vec![false; self.ambient()];
        for p in self.rep.pivots() {
            bits[p] = true;
        }
        PivotVector(bits)
    }

    /// dim(U + W).
    pub fn sum_dim(&self, field: &FieldSpec, other: &Subspace) -> Result<usize> {
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch(self.ambient(), other.ambient()));
        }
        Ok(self.rep.vconcat(&other.rep)?.rank(field))
    }

    /// dim(U ∩ W) by rank-nullity.
    pub fn intersection_dim(&self, field: &FieldSpec, other: &Subspace) -> Result<usize> {
        Ok(self.dim() + other.dim() - self.sum_dim(field, other)?)
    }

    /// Subspace distance dim(U+W) - dim(U∩W), for any dimensions.
    pub fn distance(&self, field: &FieldSpec, other: &Subspace) -> Result<usize> {
        let s = self.sum_dim(field, other)?;
        Ok(2 * s - self.dim() - other.dim())
    }

    /// Orthogonal complement under the standard dot product.
    pub fn orthogonal_complement(&self, field: &FieldSpec) -> Subspace {
        let v = self.ambient();
        let pivots = self.rep.pivots();
        let mut is_pivot = vec![false; v];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut rows = Vec::with_capacity(v - self.dim());
        for f in (0..v).filter(|&c| !is_pivot[c]) {
            let mut x = vec![0u32; v];
            x[f] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = field.neg(self.rep.get(i, f));
            }
            rows.push(x);
        }
        let m = Matrix { rows: rows.len(), cols: v, data: rows.concat() };
        Subspace::from_generators(field, &m)
    }

    /// Image under `x -> x * t` for an invertible v×v matrix `t`.
    pub fn transform(&self, field: &FieldSpec, t: &Matrix) -> Result<Subspace> {
        Ok(Subspace::from_generators(field, &self.rep.mul(field, t)?))
    }
}

/// Subspace distance of two subspaces of equal dimension via the rank of the
/// stacked representatives: `2 * rank([U; W]) - 2k`.
pub fn subspace_distance(field: &FieldSpec, u: &Subspace, w: &Subspace) -> Result<usize> {
    if u.ambient() != w.ambient() {
        return Err(Error::AmbientMismatch(u.ambient(), w.ambient()));
    }
    if u.dim() != w.dim() {
        return u.distance(field, w);
    }
    let r = u.rep.vconcat(&w.rep)?.rank(field);
    Ok(2 * (r - u.dim()))
}

/// Upper limit on the number of subspaces an enumeration may produce.
pub const ENUMERATION_BUDGET: u64 = 10_000_000;

/// Streams every k-dimensional subspace of GF(q)^v exactly once: pivot sets in
/// lexicographic order, then free entries in lexicographic order.
pub struct Grassmannian<'a> {
    field: &'a FieldSpec,
    v: usize,
    k: usize,
    pivots: Option<Vec<usize>>,
    free: Vec<(usize, usize)>,
    counter: Vec<u32>,
    fresh: bool,
}

impl<'a> Grassmannian<'a> {
    pub fn new(field: &'a FieldSpec, v: usize, k: usize) -> Result<Self> {
        if k > v {
            return Err(Error::Params(format!("k = {k} exceeds v = {v}")));
        }
        let size = q_binomial(v as u64, k as i64, field.q() as u64);
        if size > BigUint::from(ENUMERATION_BUDGET) {
            return Err(Error::Budget(format!("Grassmannian of {size} subspaces")));
        }
        let mut g = Grassmannian {
            field,
            v,
            k,
            pivots: Some((0..k).collect()),
            free: Vec::new(),
            counter: Vec::new(),
            fresh: true,
        };
        g.reset_free();
        Ok(g)
    }

    fn reset_free(&mut self) {
        let Some(piv) = &self.pivots else { return };
        let mut is_pivot = vec![false; self.v];
        for &p in piv {
            is_pivot[p] = true;
        }
        self.free = piv
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (p + 1..self.v).filter(|&c| !is_pivot[c]).map(move |c| (r, c)).collect::<Vec<_>>())
            .collect();
        self.counter = vec![0; self.free.len()];
        self.fresh = true;
    }

    fn next_pivots(&mut self) {
        let Some(piv) = &mut self.pivots else { return };
        let (v, k) = (self.v, self.k);
        let mut i = k;
        while i > 0 {
            i -= 1;
            if piv[i] < v - k + i {
                piv[i] += 1;
                for j in i + 1..k {
                    piv[j] = piv[j - 1] + 1;
                }
                self.reset_free();
                return;
            }
        }
        self.pivots = None;
    }

    fn advance_counter(&mut self) -> bool {
        let q = self.field.q();
        for i in (0..self.counter.len()).rev() {
            self.counter[i] += 1;
            if self.counter[i] < q {
                return true;
            }
            self.counter[i] = 0;
        }
        false
    }
}

impl Iterator for Grassmannian<'_> {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            self.pivots.as_ref()?;
            if !self.fresh && !self.advance_counter() {
                self.next_pivots();
                continue;
            }
            self.fresh = false;
            let piv = self.pivots.as_ref()?;
            let mut m = Matrix::zeros(self.k, self.v);
            for (r, &p) in piv.iter().enumerate() {
                m.set(r, p, 1);
            }
            for (&(r, c), &x) in self.free.iter().zip(&self.counter) {
                m.set(r, c, x);
            }
            return Some(Subspace { rep: m });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> FieldSpec {
        FieldSpec::new(2, 1).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = gf2();
        let z = Matrix::zeros(2, 3);
        assert_eq!(z.rref(&f), (z.clone(), 0));
        let id = Matrix::identity(3);
        assert_eq!(id.rref(&f), (id.clone(), 3));
        let x = Matrix::from_rows(&[vec![1, 0, 0], vec![0, 1, 1]]).unwrap();
        assert_eq!(x.rref(&f), (x.clone(), 2));
        assert!(x.is_full_rank_rref());
    }

    #[test]
    fn pivot_vector_examples() {
        let f = gf2();
        let x = Subspace::from_rref(Matrix::from_rows(&[vec![1, 0, 0], vec![0, 1, 1]]).unwrap()).unwrap();
        assert_eq!(x.pivot_vector(), PivotVector(vec![true, true, false]));
        assert_eq!(Subspace::full(4).pivot_vector().weight(), 4);
        let ia = Subspace::from_generators(&f, &Matrix::from_rows(&[vec![1, 0, 1, 1], vec![0, 1, 0, 1]]).unwrap());
        assert_eq!(ia.pivot_vector(), PivotVector(vec![true, true, false, false]));
    }

    #[test]
    fn distance_examples() {
        let f = gf2();
        let a = Subspace::from_generators(&f, &Matrix::from_rows(&[vec![1, 0, 0]]).unwrap());
        let b = Subspace::from_generators(&f, &Matrix::from_rows(&[vec![0, 1, 0]]).unwrap());
        assert_eq!(subspace_distance(&f, &a, &a).unwrap(), 0);
        assert_eq!(subspace_distance(&f, &a, &b).unwrap(), 2);
        assert!(subspace_distance(&f, &a, &Subspace::zero(4)).is_err());
    }

    #[test]
    fn complement_edges() {
        let f = gf2();
        assert_eq!(Subspace::zero(4).orthogonal_complement(&f), Subspace::full(4));
        assert_eq!(Subspace::full(4).orthogonal_complement(&f), Subspace::zero(4));
    }

    #[test]
    fn grassmannian_counts() {
        let f = gf2();
        assert_eq!(Grassmannian::new(&f, 3, 1).unwrap().count(), 7);
        assert_eq!(Grassmannian::new(&f, 4, 2).unwrap().count(), 35);
        assert_eq!(Grassmannian::new(&f, 6, 3).unwrap().count(), 1395);
        assert_eq!(Grassmannian::new(&f, 5, 0).unwrap().count(), 1);
        assert_eq!(Grassmannian::new(&f, 5, 5).unwrap().count(), 1);
        assert!(matches!(Grassmannian::new(&f, 30, 15), Err(Error::Budget(_))));
    }

    #[test]
    fn gf2_rank_matches_generic() {
        let f = gf2();
        let m = Matrix::from_rows(&[vec![1, 1, 0, 1], vec![0, 1, 1, 1], vec![1, 0, 1, 0]]).unwrap();
        let mut generic = m.clone();
        assert_eq!(m.rank(&f), generic.rref_in_place(&f));
        assert_eq!(m.rank(&f), 2);
    }
}
