//! Dense matrices over a [`FieldScalar`] with exact rank, kernel and solve.

use std::fmt;
use std::ops::Mul;

use serde::Serialize;

use super::{FieldScalar, GfError};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FieldMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: FieldScalar> FieldMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMatrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<F>]) -> Result<Self, GfError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(GfError::Ragged);
        }
        Ok(FieldMatrix { rows: rows.len(), cols, data: rows.concat() })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(n_rows: usize, columns: &[Vec<F>]) -> Result<Self, GfError> {
        let mut m = Self::zeros(n_rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != n_rows {
                return Err(GfError::Ragged);
            }
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        Ok(m)
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

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row-major bit patterns, the canonical key for hashing group elements.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.data.iter().map(|x| x.bits()).collect()
    }

    /// Lifts a matrix into another field of characteristic 2 by reinterpreting
    /// its 0/1 entries. Only meaningful for matrices with entries in GF(2).
    pub fn lift<G: FieldScalar>(&self) -> Result<FieldMatrix<G>, GfError> {
        let data = self
            .data
            .iter()
            .map(|x| match x.bits() {
                0 => Ok(G::zero()),
                1 => Ok(G::one()),
                b => Err(GfError::NotPrime(b)),
            })
            .collect::<Result<_, _>>()?;
        Ok(FieldMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, GfError> {
        if self.cols != rhs.rows {
            return Err(GfError::DimensionMismatch {
                op: "mul",
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, GfError> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(GfError::DimensionMismatch {
                op: "add",
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect();
        Ok(FieldMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: F) -> Self {
        FieldMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| x * c).collect() }
    }

    pub fn apply(&self, v: &[F]) -> Result<Vec<F>, GfError> {
        if v.len() != self.cols {
            return Err(GfError::DimensionMismatch { op: "apply", left: (self.rows, self.cols), right: (v.len(), 1) });
        }
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(v).fold(F::zero(), |acc, (&a, &b)| acc + a * b)).collect())
    }

    /// M^n by repeated squaring; M^0 is the identity.
    pub fn pow(&self, mut n: u32) -> Result<Self, GfError> {
        if !self.is_square() {
            return Err(GfError::NotSquare(self.rows, self.cols));
        }
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row-echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].checked_inv().expect("pivot is nonzero");
            for j in c..self.cols {
                self[(r, j)] *= inv;
            }
            for i in 0..self.rows {
                if i != r {
                    let f = self[(i, c)];
                    if !f.is_zero() {
                        for j in c..self.cols {
                            let t = self[(r, j)];
                            self[(i, j)] -= f * t;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of {v : Mv = 0}, as the rows of the reduced echelon form of the
    /// kernel. Equal kernels give identical output.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![F::zero(); self.cols];
            v[f] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(row, f)];
            }
            basis.push(v);
        }
        assert_eq!(pivots.len() + basis.len(), self.cols, "rank-nullity violated");
        canonical_basis(self.cols, &basis)
    }

    /// Basis of ker(M^n), the generalized kernel for large enough n.
    pub fn iterated_kernel(&self, n: u32) -> Result<Vec<Vec<F>>, GfError> {
        if n == 0 {
            return Err(GfError::ZeroPower);
        }
        Ok(self.pow(n)?.kernel())
    }

    /// Solves M x = b. Inconsistent systems are reported as
    /// [`GfError::Inconsistent`]; underdetermined ones return the solution
    /// with all free variables zero.
    pub fn solve(&self, b: &[F]) -> Result<Vec<F>, GfError> {
        if b.len() != self.rows {
            return Err(GfError::DimensionMismatch { op: "solve", left: (self.rows, self.cols), right: (b.len(), 1) });
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i];
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Err(GfError::Inconsistent);
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(row, self.cols)];
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Self, GfError> {
        if !self.is_square() {
            return Err(GfError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = F::one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(GfError::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)];
            }
        }
        Ok(inv)
    }

    /// Removes the last row and the last column.
    pub fn drop_last(&self) -> Self {
        let mut m = Self::zeros(self.rows.saturating_sub(1), self.cols.saturating_sub(1));
        for i in 0..m.rows {
            for j in 0..m.cols {
                m[(i, j)] = self[(i, j)];
            }
        }
        m
    }
}

/// Reduced row-echelon basis of the span of `vectors` (zero rows dropped).
pub fn canonical_basis<F: FieldScalar>(dim: usize, vectors: &[Vec<F>]) -> Vec<Vec<F>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = FieldMatrix::from_rows(vectors).expect("vectors share a length");
    debug_assert_eq!(m.cols(), dim);
    let rank = m.rref_in_place().len();
    m.to_rows().into_iter().take(rank).collect()
}

/// Dimension of the span of the given vectors.
pub fn span_rank<F: FieldScalar>(vectors: &[Vec<F>]) -> usize {
    if vectors.is_empty() {
        0
    } else {
        FieldMatrix::from_rows(vectors).expect("vectors share a length").rank()
    }
}

/// Whether two families span the same subspace.
pub fn same_span<F: FieldScalar>(dim: usize, a: &[Vec<F>], b: &[Vec<F>]) -> bool {
    canonical_basis(dim, a) == canonical_basis(dim, b)
}

impl<F> std::ops::Index<(usize, usize)> for FieldMatrix<F> {
    type Output = F;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for FieldMatrix<F> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

/// Panics on a dimension mismatch; use [`FieldMatrix::try_mul`] for input of
/// unknown shape.
impl<F: FieldScalar> Mul for &FieldMatrix<F> {
    type Output = FieldMatrix<F>;
    fn mul(self, rhs: Self) -> FieldMatrix<F> {
        self.try_mul(rhs).expect("matrix dimensions agree")
    }
}

impl<F: FieldScalar> fmt::Debug for FieldMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FieldMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}
