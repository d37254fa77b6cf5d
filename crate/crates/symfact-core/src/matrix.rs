//! Dense matrices over an exact ring.
//!
//! Everything here stays small (n <= 8), so cofactor expansion for
//! determinants over non-field rings and plain Gaussian elimination over
//! fields are entirely adequate.

use crate::error::{Error, Result};
use crate::ring::{Field, Ring};
use crate::unipoly::UniPoly;

#[derive(Clone, Debug)]
pub struct Matrix<R: Ring> {
    pub ring: R,
    pub rows: usize,
    pub cols: usize,
    data: Vec<R::Elem>,
}

impl<R: Ring> PartialEq for Matrix<R> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}
impl<R: Ring> Eq for Matrix<R> {}

impl<R: Ring> Matrix<R> {
    pub fn new(ring: R, rows: usize, cols: usize, data: Vec<R::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix {
            ring,
            rows,
            cols,
            data,
        }
    }

    pub fn zero(ring: R, rows: usize, cols: usize) -> Self {
        let z = ring.zero();
        Matrix {
            ring,
            rows,
            cols,
            data: vec![z; rows * cols],
        }
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let mut m = Matrix::zero(ring.clone(), n, n);
        for i in 0..n {
            *m.at_mut(i, i) = ring.one();
        }
        m
    }

    pub fn from_i64(ring: R, rows: usize, cols: usize, data: &[i64]) -> Self {
        let v = data.iter().map(|&x| ring.from_i64(x)).collect();
        Matrix::new(ring, rows, cols, v)
    }

    pub fn diag(ring: R, entries: Vec<R::Elem>) -> Self {
        let n = entries.len();
        let mut m = Matrix::zero(ring, n, n);
        for (i, e) in entries.into_iter().enumerate() {
            *m.at_mut(i, i) = e;
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &R::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut R::Elem {
        &mut self.data[i * self.cols + j]
    }

    pub fn data(&self) -> &[R::Elem] {
        &self.data
    }

    /// Entries flattened row-major, viewed as a vector of length rows*cols.
    pub fn flatten(&self) -> Vec<R::Elem> {
        self.data.clone()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix add".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(Matrix::new(self.ring.clone(), self.rows, self.cols, data))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&self.ring.neg(&self.ring.one())))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let data = self.data.iter().map(|a| self.ring.mul(a, c)).collect();
        Matrix::new(self.ring.clone(), self.rows, self.cols, data)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch("matrix mul".into()));
        }
        let mut out = Matrix::zero(self.ring.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if self.ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = self.ring.mul(a, other.at(k, j));
                    *out.at_mut(i, j) = self.ring.add(out.at(i, j), &t);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Matrix::zero(self.ring.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn trace(&self) -> Result<R::Elem> {
        let n = self.require_square()?;
        let mut acc = self.ring.zero();
        for i in 0..n {
            acc = self.ring.add(&acc, self.at(i, i));
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.at(i, j);
                if i == j {
                    if !self.ring.is_one(e) {
                        return false;
                    }
                } else if !self.ring.is_zero(e) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|e| self.ring.is_zero(e))
    }

    /// Kronecker product in row-major block layout.
    pub fn kronecker(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix::zero(self.ring.clone(), rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        *out.at_mut(i * other.rows + k, j * other.cols + l) =
                            self.ring.mul(a, other.at(k, l));
                    }
                }
            }
        }
        out
    }

    /// Direct sum: block diagonal of self and other.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Matrix::zero(
            self.ring.clone(),
            self.rows + other.rows,
            self.cols + other.cols,
        );
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                *out.at_mut(self.rows + i, self.cols + j) = other.at(i, j).clone();
            }
        }
        out
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in 0..self.rows {
            if i == skip_row {
                continue;
            }
            for j in 0..self.cols {
                if j == skip_col {
                    continue;
                }
                data.push(self.at(i, j).clone());
            }
        }
        Matrix::new(self.ring.clone(), self.rows - 1, self.cols - 1, data)
    }

    /// Determinant by cofactor expansion (fine for n <= 8 over any ring).
    pub fn det(&self) -> Result<R::Elem> {
        let n = self.require_square()?;
        Ok(self.det_inner(n))
    }

    fn det_inner(&self, n: usize) -> R::Elem {
        match n {
            0 => self.ring.one(),
            1 => self.at(0, 0).clone(),
            2 => self.ring.sub(
                &self.ring.mul(self.at(0, 0), self.at(1, 1)),
                &self.ring.mul(self.at(0, 1), self.at(1, 0)),
            ),
            _ => {
                let mut acc = self.ring.zero();
                for j in 0..n {
                    let c = self.at(0, j);
                    if self.ring.is_zero(c) {
                        continue;
                    }
                    let m = self.minor(0, j).det_inner(n - 1);
                    let t = self.ring.mul(c, &m);
                    if j % 2 == 0 {
                        acc = self.ring.add(&acc, &t);
                    } else {
                        acc = self.ring.sub(&acc, &t);
                    }
                }
                acc
            }
        }
    }

    /// Adjugate matrix: adj(A) * A = det(A) * I.
    pub fn adjugate(&self) -> Result<Self> {
        let n = self.require_square()?;
        let mut out = Matrix::zero(self.ring.clone(), n, n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det_inner(n - 1);
                let c = if (i + j) % 2 == 0 {
                    c
                } else {
                    self.ring.neg(&c)
                };
                *out.at_mut(j, i) = c;
            }
        }
        Ok(out)
    }

    /// Evaluate a univariate polynomial at this matrix.
    pub fn apply_poly(&self, p: &UniPoly<R>) -> Result<Self> {
        let n = self.require_square()?;
        let mut acc = Matrix::zero(self.ring.clone(), n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self)?;
            let cid = Matrix::identity(self.ring.clone(), n).scale(c);
            acc = acc.add(&cid)?;
        }
        Ok(acc)
    }
}

impl<R: Field> Matrix<R> {
    /// Determinant by Gaussian elimination (much faster than cofactor
    /// expansion once n grows past 5 or so).
    pub fn det_field(&self) -> Result<R::Elem> {
        let n = self.require_square()?;
        let mut m = self.clone();
        let mut det = self.ring.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !self.ring.is_zero(m.at(i, c))) else {
                return Ok(self.ring.zero());
            };
            if pr != c {
                for j in 0..n {
                    let tmp = m.at(pr, j).clone();
                    *m.at_mut(pr, j) = m.at(c, j).clone();
                    *m.at_mut(c, j) = tmp;
                }
                det = self.ring.neg(&det);
            }
            let piv = m.at(c, c).clone();
            det = self.ring.mul(&det, &piv);
            let inv = self.ring.inv(&piv).unwrap();
            for i in c + 1..n {
                if self.ring.is_zero(m.at(i, c)) {
                    continue;
                }
                let f = self.ring.mul(m.at(i, c), &inv);
                for j in c..n {
                    let t = self.ring.mul(&f, m.at(c, j));
                    *m.at_mut(i, j) = self.ring.sub(m.at(i, j), &t);
                }
            }
        }
        Ok(det)
    }

    /// Gaussian elimination to reduced row echelon form.
    /// Returns the pivot column indices.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r >= self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.ring.is_zero(self.at(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    let tmp = self.at(pr, j).clone();
                    *self.at_mut(pr, j) = self.at(r, j).clone();
                    *self.at_mut(r, j) = tmp;
                }
            }
            let inv = self.ring.inv(self.at(r, c)).unwrap();
            for j in c..self.cols {
                *self.at_mut(r, j) = self.ring.mul(self.at(r, j), &inv);
            }
            for i in 0..self.rows {
                if i == r || self.ring.is_zero(self.at(i, c)) {
                    continue;
                }
                let f = self.at(i, c).clone();
                for j in c..self.cols {
                    let t = self.ring.mul(&f, self.at(r, j));
                    *self.at_mut(i, j) = self.ring.sub(self.at(i, j), &t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.require_square()?;
        let mut aug = Matrix::zero(self.ring.clone(), n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = self.ring.one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zero(self.ring.clone(), n, n);
        for i in 0..n {
            for j in 0..n {
                *inv.at_mut(i, j) = aug.at(i, n + j).clone();
            }
        }
        Ok(inv)
    }

    /// Basis of the null space (columns x with A x = 0).
    pub fn kernel_basis(&self) -> Vec<Vec<R::Elem>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().cloned().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![self.ring.zero(); self.cols];
            v[free] = self.ring.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = self.ring.neg(m.at(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Solve A x = b; `None` when inconsistent. Solution is the one with
    /// free variables set to zero.
    pub fn solve(&self, b: &[R::Elem]) -> Option<Vec<R::Elem>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zero(self.ring.clone(), self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![self.ring.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }

    /// Monic characteristic polynomial det(X*I - M) via Faddeev-LeVerrier.
    pub fn charpoly(&self) -> Result<UniPoly<R>> {
        let n = self.require_square()?;
        let ring = self.ring.clone();
        let mut coeffs = vec![ring.zero(); n + 1];
        coeffs[n] = ring.one();
        let mut m = Matrix::zero(ring.clone(), n, n); // M_0 = 0
        let mut c = ring.one();
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k)/k
            let ci = Matrix::identity(ring.clone(), n).scale(&c);
            m = self.mul(&m)?.add(&ci)?;
            let am = self.mul(&m)?;
            let t = am.trace()?;
            let kinv = ring.inv(&ring.from_i64(k as i64)).unwrap();
            c = ring.neg(&ring.mul(&t, &kinv));
            coeffs[n - k] = c.clone();
        }
        Ok(UniPoly::new(ring, coeffs))
    }
}

/// Rank of a list of vectors over a field.
pub fn vectors_rank<R: Field>(ring: &R, vectors: &[Vec<R::Elem>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let cols = vectors[0].len();
    let data: Vec<R::Elem> = vectors.iter().flat_map(|v| v.iter().cloned()).collect();
    Matrix::new(ring.clone(), vectors.len(), cols, data).rank()
}

/// Indices of a maximal linearly independent subset of `vectors`.
pub fn independent_subset<R: Field>(ring: &R, vectors: &[Vec<R::Elem>]) -> Vec<usize> {
    if vectors.is_empty() {
        return vec![];
    }
    let rows = vectors[0].len();
    let cols = vectors.len();
    // columns are the vectors; pivot columns give the independent subset
    let mut m = Matrix::zero(ring.clone(), rows, cols);
    for (j, v) in vectors.iter().enumerate() {
        for (i, e) in v.iter().enumerate() {
            *m.at_mut(i, j) = e.clone();
        }
    }
    m.rref_in_place()
}
