//! Sparse exact matrices and row reduction over the rationals.
//!
//! Generator matrices of the modules handled here are extremely sparse, so
//! rows are stored as sorted `(column, value)` lists with no explicit zeros.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exactnum::Rational;
use crate::par::{self, Strategy};

/// Sorted `(index, value)` pairs, no zero values.
pub type SparseVec = Vec<(usize, Rational)>;

/// `acc += c * v`, keeping `acc` sorted and zero-free.
pub fn axpy(acc: &SparseVec, c: &Rational, v: &SparseVec) -> SparseVec {
    if c.is_zero() {
        return acc.clone();
    }
    let mut out = Vec::with_capacity(acc.len() + v.len());
    let (mut i, mut j) = (0, 0);
    while i < acc.len() || j < v.len() {
        let take_left = j == v.len() || (i < acc.len() && acc[i].0 < v[j].0);
        let take_right = i == acc.len() || (j < v.len() && v[j].0 < acc[i].0);
        if take_left {
            out.push(acc[i].clone());
            i += 1;
        } else if take_right {
            out.push((v[j].0, c * &v[j].1));
            j += 1;
        } else {
            let s = &acc[i].1 + c * &v[j].1;
            if !s.is_zero() {
                out.push((acc[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_scale(v: &SparseVec, c: &Rational) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// Collects unsorted, possibly repeated `(index, value)` pairs into a [`SparseVec`].
pub fn sparse_from_pairs(pairs: impl IntoIterator<Item = (usize, Rational)>) -> SparseVec {
    let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
    for (i, x) in pairs {
        if x.is_zero() {
            continue;
        }
        *map.entry(i).or_insert_with(Rational::zero) += x;
    }
    map.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

pub fn sparse_get(v: &SparseVec, i: usize) -> Rational {
    match v.binary_search_by_key(&i, |(k, _)| *k) {
        Ok(p) => v[p].1.clone(),
        Err(_) => Rational::zero(),
    }
}

pub fn sparse_to_dense(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn dense_to_sparse(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Sparse row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for (i, row) in self.data.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let cells: Vec<String> = row.iter().map(|(j, x)| format!("{j}:{x}")).collect();
            writeln!(f, "  {i}: {}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Rational::one())
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        if !c.is_zero() {
            for (i, row) in m.data.iter_mut().enumerate() {
                row.push((i, c.clone()));
            }
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<SparseVec>) -> Self {
        assert_eq!(data.len(), rows);
        debug_assert!(data.iter().all(|r| r.iter().all(|(j, x)| *j < cols && !x.is_zero())));
        Matrix { rows, cols, data }
    }

    /// Entries may repeat; repeated positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (i, j, x) in entries {
            assert!(i < rows && j < cols, "entry ({i},{j}) outside {rows}x{cols}");
            buckets[i].push((j, x));
        }
        let data = buckets.into_iter().map(sparse_from_pairs).collect();
        Matrix { rows, cols, data }
    }

    pub fn from_dense(dense: &[Vec<Rational>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        let data = dense.iter().map(|r| dense_to_sparse(r)).collect();
        Matrix { rows, cols, data }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.data.iter().map(|r| sparse_to_dense(r, self.cols)).collect()
    }

    /// A single column `n x 1`.
    pub fn column_vector(v: &SparseVec, n: usize) -> Self {
        let mut m = Self::zeros(n, 1);
        for (i, x) in v {
            m.data[*i].push((0, x.clone()));
        }
        m
    }

    /// A single row `1 x n`.
    pub fn row_vector(v: &SparseVec, n: usize) -> Self {
        Matrix { rows: 1, cols: n, data: vec![v.clone()] }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn column(&self, j: usize) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let x = sparse_get(r, j);
                (!x.is_zero()).then_some((i, x))
            })
            .collect()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        sparse_get(&self.data[i], j)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.data.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, x)| (i, *j, x)))
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(i, j, _)| i == j)
    }

    /// `Some(c)` iff the matrix equals `c·Id`.
    pub fn scalar_multiple_of_identity(&self) -> Option<Rational> {
        if !self.is_square() || !self.is_diagonal() {
            return None;
        }
        let c = if self.rows == 0 { Rational::zero() } else { self.get(0, 0) };
        self.diagonal().iter().all(|x| *x == c).then_some(c)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_triplets(self.cols, self.rows, self.entries().map(|(i, j, x)| (j, i, x.clone())))
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| sparse_scale(r, c)).collect() }
    }

    /// Applies a per-entry transform; zero results are dropped.
    pub fn map_entries(&self, f: impl Fn(usize, usize, &Rational) -> Rational) -> Matrix {
        let data = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .filter_map(|(j, x)| {
                        let y = f(i, *j, x);
                        (!y.is_zero()).then_some((*j, y))
                    })
                    .collect()
            })
            .collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.add_scaled(&Rational::one(), other)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add_scaled(&-Rational::one(), other)
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Rational, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| axpy(a, c, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.mul_with(other, Strategy::default())
    }

    /// Row-parallel product.
    pub fn mul_with(&self, other: &Matrix, strategy: Strategy) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul: {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols);
        let strategy = if self.nnz() < 256 { Strategy::Sequential } else { strategy };
        let data = par::map_slice(&self.data, strategy, |row| {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    *acc.entry(*j).or_insert_with(Rational::zero) += a * b;
                }
            }
            acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
        });
        Matrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let dense: BTreeMap<usize, &Rational> = v.iter().map(|(i, x)| (*i, x)).collect();
        let mut out = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut s = Rational::zero();
            for (j, a) in row {
                if let Some(x) = dense.get(j) {
                    s += a * *x;
                }
            }
            if !s.is_zero() {
                out.push((i, s));
            }
        }
        out
    }

    /// Kronecker product with index `(i_a * rows_b + i_b, j_a * cols_b + j_b)`;
    /// entries coming from column `j_a` of `self` are negated when `negate(j_a, j_b)`.
    pub fn kron_signed(&self, other: &Matrix, negate: impl Fn(usize, usize) -> bool + Sync) -> Matrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let data = par::map_range(rows, Strategy::default(), |r| {
            let (ia, ib) = (r / other.rows, r % other.rows);
            let mut row = Vec::with_capacity(self.data[ia].len() * other.data[ib].len());
            for (ja, a) in &self.data[ia] {
                for (jb, b) in &other.data[ib] {
                    let x = a * b;
                    row.push((ja * other.cols + jb, if negate(*ja, *jb) { -x } else { x }));
                }
            }
            row
        });
        Matrix { rows, cols, data }
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        self.kron_signed(other, |_, _| false)
    }

    /// Block diagonal `diag(self, other)`.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut data = self.data.clone();
        for r in &other.data {
            data.push(r.iter().map(|(j, x)| (j + self.cols, x.clone())).collect());
        }
        Matrix { rows: self.rows + other.rows, cols: self.cols + other.cols, data }
    }

    /// Rows `r0..r1`, columns `c0..c1`, re-indexed from zero.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        let data = self.data[r0..r1]
            .iter()
            .map(|r| r.iter().filter(|(j, _)| *j >= c0 && *j < c1).map(|(j, x)| (j - c0, x.clone())).collect())
            .collect();
        Matrix { rows: r1 - r0, cols: c1 - c0, data }
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        // Row-reduce [A | I] column by column.
        let mut rows: Vec<SparseVec> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = r.clone();
                v.push((n + i, Rational::one()));
                v
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&i| rows[i].first().is_some_and(|(j, _)| *j == col))?;
            rows.swap(col, p);
            let inv = Rational::one() / &rows[col][0].1;
            rows[col] = sparse_scale(&rows[col], &inv);
            let pivot = rows[col].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == col {
                    continue;
                }
                let c = sparse_get(row, col);
                if !c.is_zero() {
                    *row = axpy(row, &-c, &pivot);
                }
            }
        }
        let data = rows.into_iter().map(|r| r.into_iter().filter(|(j, _)| *j >= n).map(|(j, x)| (j - n, x)).collect()).collect();
        Some(Matrix { rows: n, cols: n, data })
    }

    pub fn rank(&self) -> usize {
        let mut ech = RowEchelon::new(self.cols);
        for r in &self.data {
            ech.insert(r.clone());
        }
        ech.rank()
    }
}

/// Reduced row echelon form maintained incrementally. Every stored row has
/// a leading one in its pivot column and zeros in all other pivot columns.
#[derive(Debug, Clone, Default)]
pub struct RowEchelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseVec>,
}

impl RowEchelon {
    pub fn new(ncols: usize) -> Self {
        RowEchelon { ncols, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Stored rows in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.pivots.values()
    }

    /// The residue of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (col, x) in v {
            if let Some(p) = self.pivots.get(col) {
                let c = sparse_get(&out, *col);
                if !c.is_zero() {
                    out = axpy(&out, &-c, p);
                }
                debug_assert!(sparse_get(&out, *col).is_zero());
                let _ = x;
            }
        }
        out
    }

    /// Inserts `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(&v);
        self.insert_reduced(r)
    }

    fn insert_reduced(&mut self, r: SparseVec) -> bool {
        let Some((col, lead)) = r.first().cloned() else {
            return false;
        };
        let r = sparse_scale(&r, &(Rational::one() / lead));
        for row in self.pivots.values_mut() {
            let c = sparse_get(row, col);
            if !c.is_zero() {
                *row = axpy(row, &-c, &r);
            }
        }
        self.pivots.insert(col, r);
        true
    }

    /// Coordinates of `v` against the stored rows (keyed by pivot column), or
    /// `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<(usize, Rational)>> {
        let coords: Vec<(usize, Rational)> = v.iter().filter(|(j, _)| self.pivots.contains_key(j)).cloned().collect();
        let mut rem = v.clone();
        for (col, c) in &coords {
            rem = axpy(&rem, &-c.clone(), &self.pivots[col]);
        }
        rem.is_empty().then_some(coords)
    }

    /// Basis of `{x : row · x = 0 for every stored row}`.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        let mut by_free: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for (pc, row) in &self.pivots {
            for (j, x) in row {
                if j != pc {
                    by_free.entry(*j).or_default().push((*pc, -x.clone()));
                }
            }
        }
        (0..self.ncols)
            .filter(|j| !self.pivots.contains_key(j))
            .map(|f| {
                let mut v = by_free.remove(&f).unwrap_or_default();
                v.push((f, Rational::one()));
                v.sort_by_key(|(j, _)| *j);
                v
            })
            .collect()
    }
}

/// Basis of the solution space of the homogeneous system `equations · x = 0`.
pub fn nullspace(equations: &[SparseVec], ncols: usize, strategy: Strategy) -> Vec<SparseVec> {
    let mut ech = RowEchelon::new(ncols);
    const BATCH: usize = 64;
    for chunk in equations.chunks(BATCH) {
        // Reduce the batch against the current pivots, then fold in sequentially.
        let reduced = if strategy.is_parallel() && chunk.len() > 1 {
            par::map_slice(chunk, strategy, |r| ech.reduce(r))
        } else {
            chunk.to_vec()
        };
        for r in reduced {
            ech.insert(r);
        }
    }
    ech.nullspace()
}

/// Solves `a x = b` for a square nonsingular dense system.
pub fn solve_dense(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let inv = Matrix::from_dense(a).inverse()?;
    let x = inv.mul_vec(&dense_to_sparse(b));
    Some(sparse_to_dense(&x, a.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn mul_and_transpose() {
        let a = m(&[&[1, 2], &[0, 1]]);
        let b = m(&[&[3, 0], &[1, 1]]);
        assert_eq!(a.mul(&b), m(&[&[5, 2], &[1, 1]]));
        assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
        assert_eq!(a.mul_with(&b, Strategy::Sequential), a.mul_with(&b, Strategy::Parallel));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[0, 2, 1], &[1, 0, 0], &[3, 1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn nullspace_basic() {
        // x + y + z = 0, y - z = 0
        let eqs = vec![vec![(0, int(1)), (1, int(1)), (2, int(1))], vec![(1, int(1)), (2, int(-1))]];
        let ns = nullspace(&eqs, 3, Strategy::Sequential);
        assert_eq!(ns, vec![vec![(0, int(-2)), (1, int(1)), (2, int(1))]]);
        assert_eq!(ns, nullspace(&eqs, 3, Strategy::Parallel));
    }

    #[test]
    fn echelon_coordinates() {
        let mut e = RowEchelon::new(3);
        assert!(e.insert(vec![(0, int(2)), (1, int(2))]));
        assert!(e.insert(vec![(1, int(1)), (2, int(1))]));
        assert!(!e.insert(vec![(0, int(1)), (2, int(-1))]));
        assert!(e.coordinates(&vec![(0, int(1)), (2, int(-1))]).is_some());
        assert!(e.coordinates(&vec![(2, int(1))]).is_none());
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn kron_and_blocks() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let i = Matrix::identity(2);
        let k = a.kron(&i);
        assert_eq!(k.get(2, 0), int(3));
        assert_eq!(k.get(3, 1), int(3));
        assert_eq!(k.block(0, 2, 0, 2), m(&[&[1, 0], &[0, 1]]));
        let s = a.direct_sum(&i);
        assert_eq!(s.block(2, 4, 2, 4), i);
        assert_eq!(Matrix::scalar(3, &rat(1, 2)).scalar_multiple_of_identity(), Some(rat(1, 2)));
    }
}
