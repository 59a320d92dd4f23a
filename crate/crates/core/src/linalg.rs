//! Exact linear algebra over the rationals.
//!
//! Everything downstream (Hom spaces, syzygies, derivations, covering
//! checks) reduces to rank and kernel computations, so this module is the
//! only place where elimination happens. Two routes are provided:
//!
//! * [`Matrix::rank`] runs fraction-free (Bareiss) elimination on an integer
//!   copy of the matrix, so intermediate entries stay integral.
//! * [`Echelon`] is an incremental, sparse Gauss–Jordan reducer used for
//!   kernels, solving and span membership. Pivots are always the first
//!   nonzero column, which makes every basis it hands out reproducible.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Shorthand for an integral rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`.
pub fn qf(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// A sparse row: `(column, value)` pairs sorted by column, no explicit zeros.
pub type SparseRow = Vec<(usize, Rational)>;

/// `a + factor * b` on sparse rows.
pub fn axpy(a: &[(usize, Rational)], factor: &Rational, b: &[(usize, Rational)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, factor * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + factor * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row echelon form with unit leading coefficients.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Remainder of `row` after elimination against the current pivots.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut pos = 0;
        while pos < row.len() {
            let col = row[pos].0;
            if let Some(prow) = self.rows.get(&col) {
                let factor = -row[pos].1.clone();
                row = axpy(&row, &factor, prow);
            } else {
                pos += 1;
            }
        }
        row
    }

    /// Adds a row; returns `true` when it was independent of the rows so far.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        if row.is_empty() {
            return false;
        }
        let lead = row[0].0;
        let inv = row[0].1.recip();
        for entry in row.iter_mut() {
            entry.1 = &entry.1 * &inv;
        }
        self.rows.insert(lead, row);
        true
    }

    pub fn insert_dense(&mut self, row: &[Rational]) -> bool {
        self.insert(to_sparse(row))
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Fully reduced rows, keyed by pivot column.
    pub fn rref(&self) -> BTreeMap<usize, SparseRow> {
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&pivot, row) in self.rows.iter().rev() {
            let mut row = row.clone();
            let mut pos = 1;
            while pos < row.len() {
                let col = row[pos].0;
                if let Some(prow) = done.get(&col) {
                    let factor = -row[pos].1.clone();
                    row = axpy(&row, &factor, prow);
                } else {
                    pos += 1;
                }
            }
            done.insert(pivot, row);
        }
        done
    }

    /// Basis of the right kernel of the row space: one vector per free
    /// column, with that coordinate equal to 1 and the other free
    /// coordinates 0.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let rref = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if rref.contains_key(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.ncols];
            v[free] = Rational::one();
            for (&pivot, row) in &rref {
                if let Some((_, c)) = row.iter().find(|(col, _)| *col == free) {
                    v[pivot] = -c.clone();
                }
            }
            basis.push(v);
        }
        basis
    }
}

pub fn to_sparse(row: &[Rational]) -> SparseRow {
    row.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

pub fn to_dense(row: &[(usize, Rational)], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (i, v) in row {
        out[*i] = v.clone();
    }
    out
}

/// Kernel basis for a system given as sparse equations over `ncols` unknowns.
pub fn solve_homogeneous(equations: impl IntoIterator<Item = SparseRow>, ncols: usize) -> Vec<Vec<Rational>> {
    let mut ech = Echelon::new(ncols);
    for eq in equations {
        ech.insert(eq);
    }
    ech.nullspace()
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]{}x{}", self.rows, self.cols)
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    /// Builds a matrix from rows. An empty list yields a `0 x cols` matrix
    /// only through [`Matrix::zeros`]; here it is `0 x 0`.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            if r.len() != ncols {
                return Err(LinalgError::DimensionMismatch { expected: ncols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Matrix { rows: nrows, cols: ncols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Self::from_rows(v).expect("ragged integer matrix")
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for r in 0..rows {
                m[(r, c)] = col[r].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = &self[(r, c)];
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape());
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape());
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out[(r, c)] = self[(r0 + r, c0 + c)].clone();
            }
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut out = Self::zeros(self.rows + other.rows, self.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, 0, other);
        out
    }

    /// Rank by fraction-free (Bareiss) elimination on an integer copy.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows).map(|r| integer_row(self.row(r))).collect();
        let (nrows, ncols) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..ncols {
            if rank == nrows {
                break;
            }
            let Some(p) = (rank..nrows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for r in rank + 1..nrows {
                for c in col + 1..ncols {
                    let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                    a[r][c] = v / &prev;
                }
                a[r][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        rank
    }

    pub fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.cols);
        for r in 0..self.rows {
            e.insert_dense(self.row(r));
        }
        e
    }

    /// Right-kernel basis (see [`Echelon::nullspace`] for the normalization).
    pub fn nullspace_basis(&self) -> Vec<Vec<Rational>> {
        self.echelon().nullspace()
    }

    /// One solution of `self * x = b`, or `None` when inconsistent. Free
    /// variables are set to zero.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let mut e = Echelon::new(self.cols + 1);
        for r in 0..self.rows {
            let mut row = to_sparse(self.row(r));
            if !b[r].is_zero() {
                row.push((self.cols, b[r].clone()));
            }
            e.insert(row);
        }
        let rref = e.rref();
        if rref.contains_key(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (&pivot, row) in &rref {
            if let Some((_, v)) = row.iter().find(|(c, _)| *c == self.cols) {
                x[pivot] = v.clone();
            }
        }
        Ok(Some(x))
    }

    /// Solves `self * X = rhs` column by column.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Option<Matrix> {
        let mut cols = Vec::with_capacity(rhs.cols);
        for c in 0..rhs.cols {
            cols.push(self.solve(&rhs.column(c)).ok()??);
        }
        Some(Matrix::from_columns(self.cols, &cols))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let aug = self.hstack(&Matrix::identity(n));
        let rref = aug.echelon().rref();
        if (0..n).any(|c| !rref.contains_key(&c)) {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for (&pivot, row) in &rref {
            for (c, v) in row {
                if *c >= n {
                    inv[(pivot, c - n)] = v.clone();
                }
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Indices of a maximal independent set of columns (first-come order).
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.echelon().pivots().collect()
    }

    /// Matrix whose columns form a basis of the column space.
    pub fn column_space(&self) -> Matrix {
        let t = self.transpose().echelon();
        let rows: Vec<Vec<Rational>> = t.rref().values().map(|r| to_dense(r, self.rows)).collect();
        Matrix::from_columns(self.rows, &rows)
    }

    /// Matrix whose columns form a basis of the right kernel.
    pub fn kernel(&self) -> Matrix {
        let basis = self.nullspace_basis();
        Matrix::from_columns(self.cols, &basis)
    }

    /// `L` with `L * self = I`, for a matrix of full column rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let t = self.transpose();
        t.mul(self).inverse().map(|g| g.mul(&t))
    }

    /// Indices of standard unit vectors completing the columns of `self`
    /// (assumed independent) to a basis of the ambient space.
    pub fn complement_units(&self) -> Vec<usize> {
        let mut e = Echelon::new(self.rows);
        for c in 0..self.cols {
            e.insert_dense(&self.column(c));
        }
        let mut out = Vec::new();
        for i in 0..self.rows {
            if e.insert(vec![(i, Rational::one())]) {
                out.push(i);
            }
        }
        out
    }

    /// Columns `cols` of `self`, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                out[(r, j)] = self[(r, c)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                out[(i, c)] = self[(r, c)].clone();
            }
        }
        out
    }

    /// The `n x k` matrix of the given unit vectors.
    pub fn units(n: usize, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(n, idx.len());
        for (j, &i) in idx.iter().enumerate() {
            m[(i, j)] = Rational::one();
        }
        m
    }

    pub fn power(&self, mut e: usize) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Characteristic polynomial coefficients `c_0 .. c_n` (monic, `c_n = 1`) by
/// the Faddeev–LeVerrier recurrence.
pub fn charpoly(m: &Matrix) -> Vec<Rational> {
    assert!(m.is_square());
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = Matrix::zeros(n, n);
    for k in 1..=n {
        let shifted = mk.add(&Matrix::scalar(n, &coeffs[n - k + 1]));
        mk = m.mul(&shifted);
        coeffs[n - k] = -mk.trace() / q(k as i64);
    }
    coeffs
}

/// Rational roots of a polynomial given by coefficients `c_0 .. c_n`.
/// Returns `None` when the candidate search would need to factor integers
/// larger than `limit`.
pub fn rational_roots(coeffs: &[Rational], limit: u64) -> Option<Vec<Rational>> {
    let mut c: Vec<Rational> = coeffs.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    let mut roots = Vec::new();
    // strip x = 0
    let mut shift = 0;
    while c.len() > 1 && c[shift].is_zero() {
        shift += 1;
    }
    if shift > 0 {
        roots.push(Rational::zero());
        c.drain(..shift);
    }
    if c.len() <= 1 {
        return Some(roots);
    }
    let ints = integer_row(&c);
    let a0 = ints[0].abs();
    let an = ints[ints.len() - 1].abs();
    let to_u64 = |x: &BigInt| -> Option<u64> { u64::try_from(x).ok().filter(|&v| v <= limit) };
    let p_divs = divisors(to_u64(&a0)?);
    let q_divs = divisors(to_u64(&an)?);
    for p in &p_divs {
        for qd in &q_divs {
            for sign in [1i64, -1] {
                let cand = Rational::new(BigInt::from(*p) * sign, BigInt::from(*qd));
                if roots.contains(&cand) {
                    continue;
                }
                let mut acc = Rational::zero();
                for coef in c.iter().rev() {
                    acc = acc * &cand + coef;
                }
                if acc.is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::zeros(3, 3).rank(), 0);
        assert_eq!(Matrix::identity(4).rank(), 4);
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn bareiss_agrees_with_gauss_jordan_on_fractions() {
        let m = Matrix::from_rows(vec![
            vec![qf(1, 2), qf(1, 3), q(1)],
            vec![q(3), q(2), q(6)],
            vec![q(1), q(0), qf(-7, 5)],
        ])
        .unwrap();
        assert_eq!(m.rank(), m.echelon().rank());
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn nullspace_examples() {
        assert!(Matrix::identity(3).nullspace_basis().is_empty());
        assert_eq!(Matrix::zeros(2, 3).nullspace_basis().len(), 3);
        let ns = Matrix::from_i64(&[&[1, 1]]).nullspace_basis();
        assert_eq!(ns, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![q(3), q(-1), qf(1, 2)];
        assert_eq!(Matrix::identity(3).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(Matrix::from_i64(&[&[1, 1]]).solve(&[q(2)]).unwrap(), Some(vec![q(2), q(0)]));
        assert_eq!(Matrix::from_i64(&[&[1], &[1]]).solve(&[q(1), q(2)]).unwrap(), None);
        assert!(Matrix::identity(2).solve(&[q(1)]).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn charpoly_and_roots() {
        // (x-1)(x-2) = x^2 - 3x + 2
        let m = Matrix::from_i64(&[&[1, 5], &[0, 2]]);
        assert_eq!(charpoly(&m), vec![q(2), q(-3), q(1)]);
        assert_eq!(rational_roots(&charpoly(&m), 1 << 40).unwrap(), vec![q(1), q(2)]);
        // x^2 - 2 has no rational roots
        assert!(rational_roots(&[q(-2), q(0), q(1)], 100).unwrap().is_empty());
        assert_eq!(rational_roots(&[q(0), q(0), qf(1, 3)], 100).unwrap(), vec![q(0)]);
    }

    #[test]
    fn column_space_and_kernel() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.column_space().cols(), 1);
        let k = m.kernel();
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
    }
}
