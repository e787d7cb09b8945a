//! Dense exact linear algebra: vectors, matrices, row reduction, solving,
//! kernels, echelonized subspaces, and lexicographic vector enumeration.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// A column vector with exact entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VectorS {
    field: FieldSpec,
    entries: Vec<Scalar>,
}

/// A dense matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixS {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl VectorS {
    pub fn zeros(field: FieldSpec, dim: usize) -> Self {
        VectorS { field, entries: vec![field.zero(); dim] }
    }

    pub fn from_entries(field: FieldSpec, entries: Vec<Scalar>) -> Self {
        VectorS { field, entries }
    }

    /// Standard basis vector e_i (0-indexed).
    pub fn unit(field: FieldSpec, dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(field, dim);
        v.entries[i] = field.one();
        v
    }

    pub fn from_i64(field: FieldSpec, entries: &[i64]) -> Self {
        VectorS {
            field,
            entries: entries.iter().map(|&v| field.from_i64(v)).collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &VectorS) -> VectorS {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        let f = self.field;
        VectorS {
            field: f,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &VectorS) -> VectorS {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> VectorS {
        let f = self.field;
        VectorS { field: f, entries: self.entries.iter().map(|a| f.neg(a)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> VectorS {
        let f = self.field;
        VectorS { field: f, entries: self.entries.iter().map(|a| f.mul(c, a)).collect() }
    }

    /// self += c * other, in place.
    pub fn add_scaled(&mut self, c: &Scalar, other: &VectorS) {
        let f = self.field;
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a = f.add(a, &f.mul(c, b));
        }
    }
}

impl Index<usize> for VectorS {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }
}

impl IndexMut<usize> for VectorS {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.entries[i]
    }
}

impl fmt::Display for VectorS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl MatrixS {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        MatrixS { field, rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(MatrixS { field, rows: nrows, cols: ncols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| field.from_i64(v)))
            .collect();
        MatrixS { field, rows: nrows, cols: ncols, entries }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> VectorS {
        VectorS {
            field: self.field,
            entries: self.entries[i * self.cols..(i + 1) * self.cols].to_vec(),
        }
    }

    pub fn col(&self, j: usize) -> VectorS {
        VectorS {
            field: self.field,
            entries: (0..self.rows).map(|i| self[(i, j)].clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn mul_vec(&self, v: &VectorS) -> VectorS {
        assert_eq!(self.cols, v.dim(), "matrix-vector dimension mismatch");
        let f = self.field;
        let mut out = VectorS::zeros(f, self.rows);
        for i in 0..self.rows {
            let mut acc = f.zero();
            for j in 0..self.cols {
                acc = f.add(&acc, &f.mul(&self[(i, j)], &v[j]));
            }
            out[i] = acc;
        }
        out
    }

    pub fn mul_mat(&self, other: &MatrixS) -> MatrixS {
        assert_eq!(self.cols, other.rows, "matrix-matrix dimension mismatch");
        let f = self.field;
        let mut out = MatrixS::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = f.mul(&self[(i, k)], &other[(k, j)]);
                    out[(i, j)] = f.add(&out[(i, j)], &t);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &MatrixS) -> MatrixS {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        MatrixS {
            field: f,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &MatrixS) -> MatrixS {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        MatrixS {
            field: f,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn neg(&self) -> MatrixS {
        let f = self.field;
        MatrixS {
            field: f,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| f.neg(a)).collect(),
        }
    }

    /// Reduced row-echelon form, first-nonzero pivoting. Returns the RREF
    /// and the pivot column indices.
    pub fn rref(&self) -> (MatrixS, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pr) = (rank..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(rank, pr);
            let inv = f.inv(&m[(rank, col)]).expect("nonzero pivot");
            for c in 0..m.cols {
                m[(rank, c)] = f.mul(&inv, &m[(rank, c)]);
            }
            for r in 0..m.rows {
                if r == rank || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in 0..m.cols {
                    let t = f.mul(&factor, &m[(rank, c)]);
                    m[(r, c)] = f.sub(&m[(r, c)], &t);
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space {x : Mx = 0}, one vector per free column,
    /// in increasing free-column order.
    pub fn kernel_basis(&self) -> Vec<VectorS> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = VectorS::zeros(f, self.cols);
            v[free] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&r[(row, free)]);
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn transpose(&self) -> MatrixS {
        let mut out = MatrixS::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<MatrixS> {
        if self.rows != self.cols {
            return None;
        }
        let f = self.field;
        let n = self.rows;
        let mut aug = MatrixS::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = f.one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut out = MatrixS::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(out)
    }
}

impl Index<(usize, usize)> for MatrixS {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for MatrixS {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

/// Outcome of an exact linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// One particular solution plus a basis of the homogeneous kernel.
    Solution { particular: VectorS, kernel_basis: Vec<VectorS> },
    NoSolution,
}

/// Solve M x = b exactly. Errors on incompatible dimensions.
pub fn solve_linear(m: &MatrixS, b: &VectorS) -> Result<SolveOutcome> {
    if m.rows() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows but right-hand side has {} entries",
            m.rows(),
            b.dim()
        )));
    }
    let f = m.field();
    let n = m.cols();
    let mut aug = MatrixS::zeros(f, m.rows(), n + 1);
    for i in 0..m.rows() {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let (r, pivots) = aug.rref();
    if pivots.contains(&n) {
        return Ok(SolveOutcome::NoSolution);
    }
    let mut particular = VectorS::zeros(f, n);
    for (row, &pc) in pivots.iter().enumerate() {
        particular[pc] = r[(row, n)].clone();
    }
    Ok(SolveOutcome::Solution { particular, kernel_basis: m.kernel_basis() })
}

/// A subspace of k^n held as a canonical reduced-echelon basis, so equality
/// of subspaces is structural equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient_dim: usize,
    /// RREF rows, zero rows dropped.
    basis: Vec<VectorS>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace { field, ambient_dim, basis: Vec::new() }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Self::from_spanning(field, ambient_dim, (0..ambient_dim).map(|i| VectorS::unit(field, ambient_dim, i)))
    }

    pub fn from_spanning<I: IntoIterator<Item = VectorS>>(
        field: FieldSpec,
        ambient_dim: usize,
        vectors: I,
    ) -> Self {
        let rows: Vec<Vec<Scalar>> = vectors
            .into_iter()
            .map(|v| {
                assert_eq!(v.dim(), ambient_dim, "spanning vector has wrong dimension");
                v.entries().to_vec()
            })
            .collect();
        if rows.is_empty() {
            return Self::zero(field, ambient_dim);
        }
        let m = MatrixS::from_rows(field, rows).expect("consistent rows");
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i)).collect();
        Subspace { field, ambient_dim, basis }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[VectorS] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    pub fn contains(&self, v: &VectorS) -> bool {
        assert_eq!(v.dim(), self.ambient_dim);
        let f = self.field;
        let mut rem = v.clone();
        for b in &self.basis {
            let pivot = b.entries().iter().position(|e| !e.is_zero()).expect("no zero basis rows");
            if !rem[pivot].is_zero() {
                let c = f.neg(&rem[pivot]);
                rem.add_scaled(&c, b);
            }
        }
        rem.is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }
}

/// Lexicographic enumeration of all p^dim vectors over a prime field; the
/// first coordinate is the most significant digit. Restartable anywhere via
/// [`vector_at`], so workers can split the index range.
#[derive(Debug)]
pub struct VectorEnumerator {
    field: FieldSpec,
    dim: usize,
    next: u64,
    count: u64,
}

/// p^params against the cap; overflow saturates and therefore always
/// exceeds it. Returns the candidate count on success.
pub fn budget_check(base: u64, params: u32, cap: u64) -> Result<u64> {
    let count = (base as u128).checked_pow(params).unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(Error::BudgetExceeded { base, params, count, cap });
    }
    Ok(count as u64)
}

/// Total number of vectors, with the budget check applied.
pub fn enumeration_count(dim: usize, field: FieldSpec, cap: u64) -> Result<u64> {
    let p = field
        .modulus()
        .ok_or_else(|| Error::Unsupported("vector enumeration needs a finite field".into()))?;
    budget_check(p, dim as u32, cap)
}

pub fn enumerate_vectors(dim: usize, field: FieldSpec, cap: u64) -> Result<VectorEnumerator> {
    let count = enumeration_count(dim, field, cap)?;
    Ok(VectorEnumerator { field, dim, next: 0, count })
}

/// The index-th vector in the lexicographic order.
pub fn vector_at(dim: usize, field: FieldSpec, index: u64) -> VectorS {
    let p = field.modulus().expect("prime field");
    let mut v = VectorS::zeros(field, dim);
    let mut rem = index;
    for i in (0..dim).rev() {
        v[i] = field.element(rem % p);
        rem /= p;
    }
    debug_assert_eq!(rem, 0, "index out of range");
    v
}

impl Iterator for VectorEnumerator {
    type Item = VectorS;

    fn next(&mut self) -> Option<VectorS> {
        if self.next >= self.count {
            return None;
        }
        let v = vector_at(self.dim, self.field, self.next);
        self.next += 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.count - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for VectorEnumerator {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_field;
    use std::collections::HashSet;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn solve_identity_case() {
        let f = gf(3);
        let m = MatrixS::identity(f, 3);
        let b = VectorS::unit(f, 3, 0);
        match solve_linear(&m, &b).unwrap() {
            SolveOutcome::Solution { particular, kernel_basis } => {
                assert_eq!(particular, b);
                assert!(kernel_basis.is_empty());
            }
            SolveOutcome::NoSolution => panic!("identity must solve"),
        }
    }

    #[test]
    fn solve_zero_map() {
        let f = gf(2);
        let m = MatrixS::zeros(f, 2, 2);
        let b = VectorS::zeros(f, 2);
        match solve_linear(&m, &b).unwrap() {
            SolveOutcome::Solution { particular, kernel_basis } => {
                assert!(particular.is_zero());
                assert_eq!(kernel_basis.len(), 2);
                assert_eq!(kernel_basis[0], VectorS::unit(f, 2, 0));
                assert_eq!(kernel_basis[1], VectorS::unit(f, 2, 1));
            }
            SolveOutcome::NoSolution => panic!("zero system is consistent"),
        }
    }

    #[test]
    fn solve_inconsistent_rational_system() {
        // Row reduction by hand: [[1,2|1],[2,4|3]] -> [[1,2|1],[0,0|1]], inconsistent.
        let q = parse_field("Q").unwrap();
        let m = MatrixS::from_i64(q, &[&[1, 2], &[2, 4]]);
        let b = VectorS::from_i64(q, &[1, 3]);
        assert_eq!(solve_linear(&m, &b).unwrap(), SolveOutcome::NoSolution);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let f = gf(3);
        let m = MatrixS::identity(f, 2);
        let b = VectorS::zeros(f, 3);
        assert!(solve_linear(&m, &b).is_err());
    }

    #[test]
    fn solutions_satisfy_system_exactly() {
        let q = FieldSpec::Rationals;
        let m = MatrixS::from_i64(q, &[&[2, 4, 1], &[0, 3, 7]]);
        let b = VectorS::from_i64(q, &[5, 1]);
        let SolveOutcome::Solution { particular, kernel_basis } = solve_linear(&m, &b).unwrap()
        else {
            panic!("consistent system");
        };
        assert_eq!(m.mul_vec(&particular), b);
        for k in &kernel_basis {
            assert_eq!(m.mul_vec(&particular.add(k)), b);
        }
    }

    #[test]
    fn enumerate_small_fields() {
        let f2 = gf(2);
        let got: Vec<VectorS> = enumerate_vectors(1, f2, 1 << 24).unwrap().collect();
        assert_eq!(got, vec![VectorS::from_i64(f2, &[0]), VectorS::from_i64(f2, &[1])]);

        let got: Vec<VectorS> = enumerate_vectors(2, f2, 1 << 24).unwrap().collect();
        assert_eq!(got.len(), 4);
        let expect: Vec<VectorS> = [[0, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|r| VectorS::from_i64(f2, &[r[0], r[1]]))
            .collect();
        assert_eq!(got, expect);

        // Counting oracle: 27 distinct vectors, lex endpoints pinned.
        let f3 = gf(3);
        let got: Vec<VectorS> = enumerate_vectors(3, f3, 1 << 24).unwrap().collect();
        assert_eq!(got.len(), 27);
        assert_eq!(got[0], VectorS::from_i64(f3, &[0, 0, 0]));
        assert_eq!(got[26], VectorS::from_i64(f3, &[2, 2, 2]));
        let distinct: HashSet<_> = got.iter().cloned().collect();
        assert_eq!(distinct.len(), 27);
    }

    #[test]
    fn enumerate_budget_and_field_errors() {
        let f = gf(2);
        let err = enumerate_vectors(30, f, 1 << 24).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { params: 30, .. }), "{err}");
        assert!(enumerate_vectors(2, FieldSpec::Rationals, 1 << 24).is_err());
    }

    #[test]
    fn enumerate_restartable_by_index() {
        let f = gf(5);
        let all: Vec<VectorS> = enumerate_vectors(3, f, 1 << 24).unwrap().collect();
        for (i, v) in all.iter().enumerate() {
            assert_eq!(&vector_at(3, f, i as u64), v);
        }
    }

    #[test]
    fn subspace_canonical_equality() {
        let f = gf(5);
        let a = Subspace::from_spanning(
            f,
            3,
            vec![VectorS::from_i64(f, &[1, 2, 0]), VectorS::from_i64(f, &[0, 0, 3])],
        );
        let b = Subspace::from_spanning(
            f,
            3,
            vec![
                VectorS::from_i64(f, &[2, 4, 3]),
                VectorS::from_i64(f, &[0, 0, 1]),
                VectorS::from_i64(f, &[3, 6, 0]),
            ],
        );
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&VectorS::from_i64(f, &[4, 3, 1])));
        assert!(!a.contains(&VectorS::from_i64(f, &[1, 0, 0])));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let f = gf(7);
        let m = MatrixS::from_i64(f, &[&[1, 2, 3, 4], &[2, 4, 6, 1]]);
        for k in m.kernel_basis() {
            assert!(m.mul_vec(&k).is_zero());
        }
        assert_eq!(m.kernel_basis().len(), 4 - m.rank());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = gf(7);
        let m = MatrixS::from_i64(f, &[&[1, 2], &[3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul_mat(&inv), MatrixS::identity(f, 2));
        let sing = MatrixS::from_i64(f, &[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
    }
}
