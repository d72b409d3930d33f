//! Dense linear algebra over a prime field `F_p`.
//!
//! Every matrix carries its modulus. Binary operations assert that the moduli
//! agree; use [`FieldMatrix::check_modulus`] at API boundaries to turn a
//! mismatch into an error instead.

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_MODULUS: u32 = 32003;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("{0} is not a prime modulus")]
    NotPrime(u32),
    #[error("division by zero in F_{0}")]
    DivisionByZero(u32),
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A scalar of `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldScalar {
    pub value: u32,
    pub p: u32,
}

impl FieldScalar {
    pub fn new(value: i64, p: u32) -> Self {
        FieldScalar { value: reduce(value, p), p }
    }

    pub fn add(self, o: Self) -> Self {
        assert_eq!(self.p, o.p, "mixed moduli");
        FieldScalar { value: add(self.value, o.value, self.p), p: self.p }
    }

    pub fn sub(self, o: Self) -> Self {
        assert_eq!(self.p, o.p, "mixed moduli");
        FieldScalar { value: sub(self.value, o.value, self.p), p: self.p }
    }

    pub fn mul(self, o: Self) -> Self {
        assert_eq!(self.p, o.p, "mixed moduli");
        FieldScalar { value: mul(self.value, o.value, self.p), p: self.p }
    }

    pub fn div(self, o: Self) -> Result<Self, LinalgError> {
        if o.p != self.p {
            return Err(LinalgError::ModulusMismatch(self.p, o.p));
        }
        if o.value == 0 {
            return Err(LinalgError::DivisionByZero(self.p));
        }
        Ok(self.mul(FieldScalar { value: inv(o.value, self.p), p: self.p }))
    }
}

#[inline]
pub fn reduce(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + p as u64 - b as u64) % p as u64) as u32
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1u32 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

/// Multiplicative inverse; panics on zero.
pub fn inv(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "inverse of zero in F_{p}");
    pow(a, p as u64 - 2, p)
}

/// Symmetric representative in `(-p/2, p/2]`, used for display and export.
pub fn signed(a: u32, p: u32) -> i64 {
    if a as u64 * 2 > p as u64 {
        a as i64 - p as i64
    } else {
        a as i64
    }
}

/// Dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl std::fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F{}[{}x{}]{:?}", self.p, self.rows, self.cols, self.to_signed_rows())
    }
}

/// Output of [`FieldMatrix::rref_decompose`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub rref: FieldMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Output of [`FieldMatrix::solve_linear`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Consistent { particular: Vec<u32>, kernel: Vec<Vec<u32>> },
    Inconsistent,
}

impl FieldMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FieldMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn scalar(p: u32, n: usize, c: u32) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = c % p;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing mod `p`. All rows must have
    /// length `cols`.
    pub fn from_rows(p: u32, rows: usize, cols: usize, entries: &[Vec<i64>]) -> Result<Self, LinalgError> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::DimensionMismatch(format!(
                "expected {rows}x{cols} entries"
            )));
        }
        let data = entries.iter().flat_map(|r| r.iter().map(|&v| reduce(v, p))).collect();
        Ok(FieldMatrix { p, rows, cols, data })
    }

    /// Convenience for literals: `rows` is inferred, an empty slice gives 0x0.
    pub fn from_i64(p: u32, entries: &[&[i64]]) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        let owned: Vec<Vec<i64>> = entries.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(p, rows, cols, &owned).expect("ragged literal")
    }

    pub fn from_flat(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        FieldMatrix { p, rows, cols, data }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(p: u32, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                m.data[i * m.cols + j] = c[i];
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
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

    pub fn check_modulus(&self, p: u32) -> Result<(), LinalgError> {
        if self.p == p {
            Ok(())
        } else {
            Err(LinalgError::ModulusMismatch(p, self.p))
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn to_signed_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&v| signed(v, self.p)).collect())
            .collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|&v| v as i64).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.p, o.p, "mixed moduli");
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let p = self.p as u64;
        let mut out = Self::zeros(self.p, self.rows, o.cols);
        let mut acc = vec![0u64; o.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &o.data[k * o.cols..(k + 1) * o.cols];
                for (j, &b) in orow.iter().enumerate() {
                    acc[j] = (acc[j] + a * b as u64) % p;
                }
            }
            for j in 0..o.cols {
                out.data[i * o.cols + j] = acc[j] as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let mut s = 0u64;
                for (k, &x) in v.iter().enumerate() {
                    s = (s + self.data[i * self.cols + k] as u64 * x as u64) % p;
                }
                s as u32
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.p, o.p, "mixed moduli");
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sum");
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| add(a, b, self.p)).collect();
        FieldMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.p, o.p, "mixed moduli");
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in difference");
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| sub(a, b, self.p)).collect();
        FieldMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u32) -> Self {
        let data = self.data.iter().map(|&a| mul(a, c, self.p)).collect();
        FieldMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    /// `self + c * o`.
    pub fn axpy(&self, c: u32, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(&a, &b)| add(a, mul(c, b, self.p), self.p))
            .collect();
        FieldMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows);
        let mut m = Self::zeros(self.p, self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[i * m.cols + j] = self.get(i, j);
            }
            for j in 0..o.cols {
                m.data[i * m.cols + self.cols + j] = o.get(i, j);
            }
        }
        m
    }

    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        FieldMatrix { p: self.p, rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut m = Self::zeros(self.p, self.rows + o.rows, self.cols + o.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, o);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = b.get(i, j);
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(self.p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = self.get(r0 + i, c0 + j);
            }
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.p, self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m.data[i * idx.len() + jj] = self.get(i, j);
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        FieldMatrix { p: self.p, rows: idx.len(), cols: self.cols, data }
    }

    /// Reduced row echelon form with first-nonzero pivoting.
    pub fn rref_decompose(&self) -> Rref {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, r * m.cols + j);
                }
            }
            let iv = inv(m.get(r, c), p);
            for j in c..m.cols {
                let v = m.get(r, j);
                m.data[r * m.cols + j] = mul(v, iv, p);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = sub(m.get(i, j), mul(f, m.get(r, j), p), p);
                    m.data[i * m.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        Rref { rref: m, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        self.rref_decompose().rank
    }

    /// Basis of `ker(self)` as column vectors, one per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let Rref { rref, pivots, .. } = self.rref_decompose();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[free] = 1 % p;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = neg(rref.get(r, free), p);
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self * x = b`: one particular solution plus a kernel basis.
    pub fn solve_linear(&self, b: &[u32]) -> Result<Solution, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "system has {} rows but right-hand side has length {}",
                self.rows,
                b.len()
            )));
        }
        let p = self.p;
        let aug = self.hstack(&FieldMatrix::from_columns(p, self.rows, &[b.to_vec()]));
        let Rref { rref, pivots, .. } = aug.rref_decompose();
        if pivots.last() == Some(&self.cols) {
            return Ok(Solution::Inconsistent);
        }
        let mut x = vec![0u32; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = rref.get(r, self.cols);
        }
        debug_assert_eq!(self.mul_vec(&x), b, "solve_linear self-check");
        Ok(Solution::Consistent { particular: x, kernel: self.kernel_basis() })
    }

    /// Returns one solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        match self.solve_linear(b).ok()? {
            Solution::Consistent { particular, .. } => Some(particular),
            Solution::Inconsistent => None,
        }
    }

    /// Kernel basis as the columns of a `cols x k` matrix, and a cokernel
    /// projection `c x rows` with rank `rows - rank(self)` that annihilates the image.
    pub fn kernel_cokernel(&self) -> (FieldMatrix, FieldMatrix) {
        let ker = FieldMatrix::from_columns(self.p, self.cols, &self.kernel_basis());
        let left = self.transpose().kernel_basis();
        let mut coker = FieldMatrix::zeros(self.p, left.len(), self.rows);
        for (i, v) in left.iter().enumerate() {
            for (j, &x) in v.iter().enumerate() {
                coker.data[i * self.rows + j] = x;
            }
        }
        (ker, coker)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(self.p, n));
        let r = aug.rref_decompose();
        if r.pivots.iter().take(n).copied().ne(0..n) || r.rank < n {
            return None;
        }
        Some(r.rref.block(0, n, n, n))
    }

    /// For a matrix of full column rank, a left inverse `L` with `L * self = I`.
    pub fn left_inverse(&self) -> Option<Self> {
        let t = self.transpose();
        let r = t.rref_decompose();
        if r.rank != self.cols {
            return None;
        }
        // Pivot columns of the transpose are independent rows of self.
        let sq = self.select_rows(&r.pivots);
        let sq_inv = sq.inverse()?;
        let mut l = Self::zeros(self.p, self.cols, self.rows);
        for (k, &row) in r.pivots.iter().enumerate() {
            for i in 0..self.cols {
                l.data[i * self.rows + row] = sq_inv.get(i, k);
            }
        }
        Some(l)
    }

    /// Columns of `self` forming a basis of its column space (deterministic).
    pub fn column_space_basis(&self) -> Vec<Vec<u32>> {
        self.rref_decompose().pivots.iter().map(|&c| self.column(c)).collect()
    }

    pub fn is_nilpotent(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let mut m = self.clone();
        for _ in 0..self.rows.max(1) {
            if m.is_zero() {
                return true;
            }
            m = m.mul(self);
        }
        m.is_zero()
    }

    pub fn trace(&self) -> u32 {
        (0..self.rows.min(self.cols)).fold(0, |s, i| add(s, self.get(i, i), self.p))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut r = Self::identity(self.p, self.rows);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Characteristic polynomial coefficients `c_0..c_n` (monic, `c_n = 1`),
    /// via Faddeev-LeVerrier. Requires `n < p`.
    pub fn char_poly(&self) -> Vec<u32> {
        assert!(self.is_square());
        let n = self.rows;
        let p = self.p;
        let mut coeffs = vec![0u32; n + 1];
        coeffs[n] = 1 % p;
        let mut mk = Self::zeros(p, n, n);
        for k in 1..=n {
            let ident_c = Self::scalar(p, n, coeffs[n - k + 1]);
            mk = self.mul(&mk).add(&ident_c);
            let t = self.mul(&mk).trace();
            let c = mul(neg(t, p), inv((k as u32) % p, p), p);
            coeffs[n - k] = c;
        }
        coeffs
    }
}

/// Evaluates a polynomial given by ascending coefficients.
pub fn poly_eval(coeffs: &[u32], x: u32, p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| add(mul(acc, x, p), c, p))
}

/// Roots in `F_p` of a polynomial, found by exhaustive evaluation.
pub fn poly_roots(coeffs: &[u32], p: u32) -> Vec<u32> {
    if coeffs.iter().all(|&c| c == 0) {
        return Vec::new();
    }
    (0..p).filter(|&x| poly_eval(coeffs, x, p) == 0).collect()
}

/// Dimension of the span of the given vectors.
pub fn span_rank(p: u32, len: usize, vecs: &[Vec<u32>]) -> usize {
    if vecs.is_empty() || len == 0 {
        return 0;
    }
    FieldMatrix::from_columns(p, len, vecs).rank()
}

/// Whether `v` lies in the span of `vecs`.
pub fn in_span(p: u32, v: &[u32], vecs: &[Vec<u32>]) -> bool {
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    if vecs.is_empty() {
        return false;
    }
    let m = FieldMatrix::from_columns(p, v.len(), vecs);
    m.solve(v).is_some()
}

/// Exact rational solution of `columns · x = rhs`, if one exists.
/// Free variables are set to zero.
pub fn solve_rational(columns: &[Vec<i64>], rhs: &[i64]) -> Option<Vec<Ratio<i128>>> {
    let n = columns.len();
    let m = rhs.len();
    let mut a: Vec<Vec<Ratio<i128>>> = (0..m)
        .map(|i| {
            let mut row: Vec<Ratio<i128>> = columns.iter().map(|c| Ratio::from_integer(c[i] as i128)).collect();
            row.push(Ratio::from_integer(rhs[i] as i128));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(k) = (r..m).find(|&k| !a[k][c].is_zero()) else {
            continue;
        };
        a.swap(r, k);
        let lead = a[r][c];
        for x in a[r].iter_mut() {
            *x /= lead;
        }
        for i in 0..m {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                for j in 0..=n {
                    let t = a[r][j] * f;
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![Ratio::from_integer(0); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][n];
    }
    Some(x)
}

/// Determinant of a square integer matrix.
pub fn det_integer(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    let mut a: Vec<Vec<Ratio<i128>>> =
        rows.iter().map(|r| r.iter().map(|&v| Ratio::from_integer(v as i128)).collect()).collect();
    let mut det = Ratio::from_integer(1i128);
    for c in 0..n {
        let Some(k) = (c..n).find(|&k| !a[k][c].is_zero()) else {
            return 0;
        };
        if k != c {
            a.swap(k, c);
            det = -det;
        }
        let lead = a[c][c];
        det *= lead;
        for i in c + 1..n {
            let f = a[i][c] / lead;
            for j in c..n {
                let t = a[c][j] * f;
                a[i][j] -= t;
            }
        }
    }
    det.to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = DEFAULT_MODULUS;

    #[test]
    fn rational_solve_and_det() {
        let cols = vec![vec![2, 0], vec![1, 1]];
        let x = solve_rational(&cols, &[3, 1]).unwrap();
        assert_eq!(x, vec![Ratio::new(1, 1), Ratio::new(1, 1)]);
        assert!(solve_rational(&[vec![1, 1]], &[1, 0]).is_none());
        assert_eq!(det_integer(&[vec![2, 1], vec![0, 1]]), 2);
        assert_eq!(det_integer(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det_integer(&[vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn scalar_field_ops() {
        let a = FieldScalar::new(-1, 7);
        assert_eq!(a.value, 6);
        assert_eq!(a.mul(a).value, 1);
        assert!(a.div(FieldScalar::new(0, 7)).is_err());
        assert!(a.div(FieldScalar::new(1, 5)).is_err());
        assert_eq!(a.div(FieldScalar::new(3, 7)).unwrap().value, 2);
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = FieldMatrix::identity(P, 2);
        let r = id.rref_decompose();
        assert_eq!(r.rref, id);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);

        let z = FieldMatrix::zeros(P, 3, 2);
        let r = z.rref_decompose();
        assert_eq!(r.rref, z);
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_rank_one() {
        let m = FieldMatrix::from_i64(P, &[&[1, 2], &[2, 4]]);
        let r = m.rref_decompose();
        assert_eq!(r.rref, FieldMatrix::from_i64(P, &[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn solve_examples() {
        let id = FieldMatrix::identity(P, 2);
        match id.solve_linear(&[3, 5]).unwrap() {
            Solution::Consistent { particular, kernel } => {
                assert_eq!(particular, vec![3, 5]);
                assert!(kernel.is_empty());
            }
            _ => panic!(),
        }
        let z = FieldMatrix::zeros(P, 2, 2);
        match z.solve_linear(&[0, 0]).unwrap() {
            Solution::Consistent { particular, kernel } => {
                assert_eq!(particular, vec![0, 0]);
                assert_eq!(kernel.len(), 2);
            }
            _ => panic!(),
        }
        assert_eq!(z.solve_linear(&[1, 0]).unwrap(), Solution::Inconsistent);
        let a = FieldMatrix::from_i64(P, &[&[1, 1]]);
        match a.solve_linear(&[1]).unwrap() {
            Solution::Consistent { particular, kernel } => {
                assert_eq!(a.mul_vec(&particular), vec![1]);
                assert_eq!(kernel.len(), 1);
            }
            _ => panic!(),
        }
        assert!(a.solve_linear(&[1, 2]).is_err());
    }

    #[test]
    fn kernel_cokernel_examples() {
        let inv = FieldMatrix::from_i64(P, &[&[1, 2], &[3, 4]]);
        let (k, c) = inv.kernel_cokernel();
        assert_eq!((k.cols(), c.rows()), (0, 0));
        let z = FieldMatrix::zeros(P, 2, 3);
        let (k, c) = z.kernel_cokernel();
        assert_eq!(k.cols(), 3);
        assert_eq!(c, FieldMatrix::identity(P, 2));
        let m = FieldMatrix::from_i64(P, &[&[1, 0], &[0, 0]]);
        let (k, c) = m.kernel_cokernel();
        assert_eq!((k.cols(), c.rows()), (1, 1));
        assert!(c.mul(&m).is_zero());
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn empty_matrices_behave() {
        let a = FieldMatrix::zeros(P, 0, 3);
        assert_eq!(a.rank(), 0);
        assert_eq!(a.kernel_basis().len(), 3);
        let b = FieldMatrix::zeros(P, 3, 0);
        assert_eq!(b.kernel_basis().len(), 0);
        let (_, c) = b.kernel_cokernel();
        assert_eq!(c.rows(), 3);
        assert_eq!(a.mul(&b).rows(), 0);
    }

    #[test]
    fn inverses_and_char_poly() {
        let m = FieldMatrix::from_i64(P, &[&[2, 1], &[1, 1]]);
        let mi = m.inverse().unwrap();
        assert_eq!(m.mul(&mi), FieldMatrix::identity(P, 2));
        // x^2 - 3x + 1
        assert_eq!(m.char_poly(), vec![1, P - 3, 1]);
        let tall = FieldMatrix::from_i64(P, &[&[1, 0], &[5, 7], &[0, 1]]);
        let l = tall.left_inverse().unwrap();
        assert_eq!(l.mul(&tall), FieldMatrix::identity(P, 2));
        let d = FieldMatrix::from_i64(7, &[&[2, 0], &[0, 5]]);
        assert_eq!(poly_roots(&d.char_poly(), 7), vec![2, 5]);
    }
}
