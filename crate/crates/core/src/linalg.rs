//! Dense matrices over a [`Scalar`] backend.
//!
//! Everything is elimination-based with a fixed deterministic pivot rule
//! (first nonzero entry, scanning rows top to bottom within each column),
//! so kernels, solutions, and echelon forms are canonical: the same input
//! always produces structurally identical output. Over the exact backend
//! "nonzero" is structural; over doubles it means magnitude above the
//! default tolerance.
//!
//! The module also carries the nilpotent/unipotent exponential-logarithm
//! pair, which is exact: both series terminate at the nilpotency index.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::scalar::{ApproxComplex, Scalar, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub enum LinAlgError<S: Scalar> {
    ShapeMismatch(&'static str),
    /// The matrix is not nilpotent; carries a nonzero power as witness.
    NotNilpotent { exponent: usize, power: Matrix<S> },
    /// The matrix is not unipotent; carries a nonzero power of (M - I).
    NotUnipotent { exponent: usize, power: Matrix<S> },
    Singular,
}

impl<S: Scalar> fmt::Display for LinAlgError<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinAlgError::ShapeMismatch(msg) => write!(f, "shape mismatch: {msg}"),
            LinAlgError::NotNilpotent { exponent, .. } => {
                write!(f, "matrix is not nilpotent: power {exponent} is nonzero")
            }
            LinAlgError::NotUnipotent { exponent, .. } => {
                write!(f, "matrix is not unipotent: (M - I)^{exponent} is nonzero")
            }
            LinAlgError::Singular => f.write_str("matrix is singular"),
        }
    }
}

/// A dense rows x cols matrix, entries stored row-major.
///
/// Zero-dimensional matrices are legal and behave as the unique maps to and
/// from the zero space; rank-0 representations depend on this.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S: Scalar> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, entries: Vec<S>) -> Result<Self, LinAlgError<S>> {
        if entries.len() != rows * cols {
            return Err(LinAlgError::ShapeMismatch("entry count != rows * cols"));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, LinAlgError<S>> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinAlgError::ShapeMismatch("ragged rows"));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    /// s * I.
    pub fn scalar_matrix(n: usize, s: &S) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { s.clone() } else { S::zero() })
    }

    pub fn from_diag(diag: &[S]) -> Self {
        Matrix::from_fn(diag.len(), diag.len(), |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                S::zero()
            }
        })
    }

    /// A single column vector as an r x 1 matrix.
    pub fn from_col(v: &[S]) -> Self {
        Matrix {
            rows: v.len(),
            cols: 1,
            entries: v.to_vec(),
        }
    }

    /// Columns assembled left to right; all must share a length.
    pub fn from_cols(cols: &[Vec<S>]) -> Result<Self, LinAlgError<S>> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|col| col.len() != r) {
            return Err(LinAlgError::ShapeMismatch("ragged columns"));
        }
        Ok(Matrix::from_fn(r, c, |i, j| cols[j][i].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vec<S> {
        assert!(i < self.rows);
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        assert!(j < self.cols);
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// The row-major entry list; for an r2 x r1 matrix T this is exactly the
    /// vectorisation vec(T) used by the intertwiner and adjoint conventions.
    pub fn vec_row_major(&self) -> Vec<S> {
        self.entries.clone()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|e| e.mul(s))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    /// True when the matrix is c * I for its own (0,0) entry c. The 0 x 0
    /// matrix counts as scalar.
    pub fn is_scalar_within(&self, tol: Tolerance) -> bool {
        if !self.is_square() {
            return false;
        }
        if self.rows == 0 {
            return true;
        }
        let c = self[(0, 0)].clone();
        self.eq_within(&Matrix::scalar_matrix(self.rows, &c), tol)
    }

    pub fn eq_within(&self, other: &Self, tol: Tolerance) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.eq_within(b, tol))
    }

    /// The largest entry magnitude, floored at 1: the natural scale for the
    /// rounding-error budget of a computed numeric product. Exact backends
    /// report 1.
    pub fn magnitude_bound(&self) -> f64 {
        self.entries
            .iter()
            .map(Scalar::magnitude)
            .fold(1.0, f64::max)
    }

    /// Like [`eq_within`](Self::eq_within), with the tolerance scaled by the
    /// magnitude of the operands — the right comparison for two large
    /// computed products, whose legitimate rounding error is relative.
    pub fn eq_within_scaled(&self, other: &Self, tol: Tolerance) -> bool {
        let scale = self.magnitude_bound().max(other.magnitude_bound());
        let eff = Tolerance::new(tol.eps() * scale).unwrap_or(tol);
        self.eq_within(other, eff)
    }

    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        assert!(r0 + h <= self.rows && c0 + w <= self.cols, "block out of range");
        Matrix::from_fn(h, w, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, m: &Matrix<S>) {
        assert!(
            r0 + m.rows <= self.rows && c0 + m.cols <= self.cols,
            "block out of range"
        );
        for i in 0..m.rows {
            for j in 0..m.cols {
                self[(r0 + i, c0 + j)] = m[(i, j)].clone();
            }
        }
    }

    /// [self | other], side by side.
    pub fn hstack(&self, other: &Self) -> Result<Self, LinAlgError<S>> {
        if self.rows != other.rows {
            return Err(LinAlgError::ShapeMismatch("hstack row counts differ"));
        }
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        Ok(out)
    }

    /// self stacked on top of other.
    pub fn vstack(&self, other: &Self) -> Result<Self, LinAlgError<S>> {
        if self.cols != other.cols {
            return Err(LinAlgError::ShapeMismatch("vstack column counts differ"));
        }
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, 0, other);
        Ok(out)
    }

    pub fn trace(&self) -> Result<S, LinAlgError<S>> {
        if !self.is_square() {
            return Err(LinAlgError::ShapeMismatch("trace of non-square matrix"));
        }
        let mut t = S::zero();
        for i in 0..self.rows {
            t = t.add(&self[(i, i)]);
        }
        Ok(t)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form and the pivot columns, via Gauss-Jordan
    /// elimination with the first-nonzero pivot rule. Eliminated entries are
    /// set to structural zero, so the result is canonical on both backends.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].inv().expect("pivot entry is nonzero");
            for c in col..m.cols {
                m[(row, c)] = m[(row, c)].mul(&inv);
            }
            m[(row, col)] = S::one();
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for c in col..m.cols {
                    let delta = f.mul(&m[(row, c)]);
                    m[(r, c)] = m[(r, c)].sub(&delta);
                }
                m[(r, col)] = S::zero();
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A canonical basis of the right kernel, as column vectors.
    ///
    /// Each free column of the echelon form contributes one vector carrying
    /// a structural 1 in its own coordinate and zeros in the other free
    /// coordinates, so the basis is in reduced column echelon form and is
    /// deterministic.
    pub fn kernel_basis(&self) -> Vec<Vec<S>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![S::zero(); self.cols];
            v[f] = S::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = r[(i, f)].neg();
            }
            basis.push(v);
        }
        basis
    }

    /// The canonical solution of self * x = b (free coordinates zero), or
    /// None when the system is inconsistent.
    pub fn solve(&self, b: &[S]) -> Result<Option<Vec<S>>, LinAlgError<S>> {
        if b.len() != self.rows {
            return Err(LinAlgError::ShapeMismatch("rhs length != rows"));
        }
        Ok(self
            .solve_matrix(&Matrix::from_col(b))
            .map(|x| x.col(0)))
    }

    /// Columnwise `solve` against every column of b; None if any column is
    /// inconsistent. Shapes must agree (b.rows == self.rows).
    pub fn solve_matrix(&self, b: &Matrix<S>) -> Option<Matrix<S>> {
        assert_eq!(self.rows, b.rows, "solve_matrix row mismatch");
        let aug = self.hstack(b).expect("rows agree");
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = r[(i, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    /// The inverse, iff the matrix is square of full rank.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(self.clone());
        }
        if self.rank() != self.rows {
            return None;
        }
        self.solve_matrix(&Matrix::identity(self.rows))
    }

    /// Integer power; negative exponents require invertibility.
    pub fn pow_signed(&self, e: i64) -> Result<Self, LinAlgError<S>> {
        if !self.is_square() {
            return Err(LinAlgError::ShapeMismatch("power of non-square matrix"));
        }
        let base = if e < 0 {
            self.inverse().ok_or(LinAlgError::Singular)?
        } else {
            self.clone()
        };
        let mut n = e.unsigned_abs();
        let mut acc = Matrix::identity(self.rows);
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Kronecker product with the convention
    /// (A (x) B)[i*rB + k, j*cB + l] = A[i,j] * B[k,l].
    pub fn kron(&self, other: &Self) -> Self {
        let (rb, cb) = (other.rows, other.cols);
        Matrix::from_fn(self.rows * rb, self.cols * cb, |r, c| {
            let (i, k) = (r / rb, r % rb);
            let (j, l) = (c / cb, c % cb);
            self[(i, j)].mul(&other[(k, l)])
        })
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    /// The least n >= 0 with self^n = 0.
    ///
    /// Nilpotency itself is decided first by repeated squaring (log r
    /// squarings reach an exponent >= r, and N is nilpotent iff N^r = 0);
    /// the failure witness is that nonzero power. Only then is the exact
    /// index found by a linear scan.
    pub fn nilpotency_index(&self) -> Result<usize, LinAlgError<S>> {
        if !self.is_square() {
            return Err(LinAlgError::ShapeMismatch("nilpotency of non-square matrix"));
        }
        let r = self.rows;
        if r == 0 {
            return Ok(0);
        }
        let mut p = self.clone();
        let mut e = 1usize;
        while e < r {
            p = &p * &p;
            e *= 2;
        }
        if !p.is_zero() {
            return Err(LinAlgError::NotNilpotent { exponent: e, power: p });
        }
        let mut q = Matrix::identity(r);
        for n in 0..=r {
            if q.is_zero() {
                return Ok(n);
            }
            q = &q * self;
        }
        unreachable!("N^r vanished above")
    }

    /// exp of a nilpotent matrix: the series terminates at the nilpotency
    /// index, so over the exact backend this is exact.
    pub fn exp_nilpotent(&self) -> Result<Self, LinAlgError<S>> {
        let idx = self.nilpotency_index()?;
        let mut acc = Matrix::identity(self.rows);
        let mut term = Matrix::identity(self.rows);
        for k in 1..idx {
            let inv_k = S::from_i64(k as i64).inv().expect("k nonzero");
            term = (&term * self).scale(&inv_k);
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// log of a unipotent matrix: the Mercator series in (M - I), again a
    /// finite, exact sum. Inverse to [`Matrix::exp_nilpotent`].
    pub fn log_unipotent(&self) -> Result<Self, LinAlgError<S>> {
        if !self.is_square() {
            return Err(LinAlgError::ShapeMismatch("log of non-square matrix"));
        }
        let x = self - &Matrix::identity(self.rows);
        let idx = match x.nilpotency_index() {
            Ok(idx) => idx,
            Err(LinAlgError::NotNilpotent { exponent, power }) => {
                return Err(LinAlgError::NotUnipotent { exponent, power })
            }
            Err(e) => return Err(e),
        };
        let mut acc = Matrix::zeros(self.rows, self.rows);
        let mut pw = Matrix::identity(self.rows);
        for k in 1..idx {
            pw = &pw * &x;
            let mut c = S::from_i64(k as i64).inv().expect("k nonzero");
            if k % 2 == 0 {
                c = c.neg();
            }
            acc = &acc + &pw.scale(&c);
        }
        Ok(acc)
    }
}

impl Matrix<ApproxComplex> {
    /// Max row sum of entry magnitudes.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// General matrix exponential over doubles by scaling and squaring on a
    /// truncated Taylor series. Accurate to near machine precision for the
    /// moderate norms this crate produces.
    pub fn expm(&self) -> Matrix<ApproxComplex> {
        assert!(self.is_square(), "expm of non-square matrix");
        if self.rows == 0 {
            return self.clone();
        }
        let norm = self.norm_inf();
        let squarings = if norm > 0.5 {
            num_traits::Float::ceil(num_traits::Float::log2(norm / 0.5)) as u32
        } else {
            0
        };
        let scale =
            ApproxComplex::new(num_traits::Float::powi(0.5f64, squarings as i32), 0.0).unwrap();
        let a = self.scale(&scale);
        let mut acc = Matrix::identity(self.rows);
        let mut term = Matrix::identity(self.rows);
        for k in 1..=24i64 {
            let inv_k = ApproxComplex::from_i64(k).inv().unwrap();
            term = (&term * &a).scale(&inv_k);
            acc = &acc + &term;
            if term.norm_inf() < 1e-19 {
                break;
            }
        }
        for _ in 0..squarings {
            acc = &acc * &acc;
        }
        acc
    }
}

impl<S: Scalar> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &self.entries[r * self.cols + c]
    }
}

impl<S: Scalar> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &mut self.entries[r * self.cols + c]
    }
}

impl<S: Scalar> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: Self) -> Matrix<S> {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix addition shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }
}

impl<S: Scalar> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: Self) -> Matrix<S> {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix subtraction shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }
}

impl<S: Scalar> Neg for &Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        self.map(Scalar::neg)
    }
}

impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: Self) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                acc = acc.add(&self[(i, k)].mul(&rhs[(k, j)]));
            }
            acc
        })
    }
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}
