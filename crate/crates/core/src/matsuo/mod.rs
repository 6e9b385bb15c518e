//! Nilpotent Matsuo algebras over GF(2) and their scalar extensions.
//!
//! Basis elements are the points of a Fischer space, with `x·y = x + y + x∧y`
//! for collinear points and `0` otherwise. Structure constants are bitsets
//! over the basis, so every algebra here has dimension at most 128.

mod predict;

pub use predict::{predict_line_line, predict_point_line};

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::fischer::{FischerError, FischerSpace, Line, Point};
use crate::gf::{FieldMatrix, FieldScalar};
use crate::Gf2;

pub const MAX_DIM: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatsuoError {
    #[error("space has {0} points; at most {MAX_DIM} are supported")]
    TooLarge(usize),
    #[error("element has length {found}, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0:?} is not a line of the space")]
    UnknownLine(Line),
    #[error("algebra is already reduced")]
    AlreadyReduced,
    #[error("annihilator has dimension {0} and is not spanned by the sum of all points")]
    AnnihilatorMismatch(usize),
    #[error(transparent)]
    Fischer(#[from] FischerError),
}

/// Bitset with one bit per basis element.
pub type Bits = u128;

pub fn support(bits: Bits) -> Vec<usize> {
    (0..MAX_DIM).filter(|&i| bits >> i & 1 == 1).collect()
}

pub fn bits_of(indices: impl IntoIterator<Item = usize>) -> Bits {
    indices.into_iter().fold(0, |acc, i| acc ^ (1 << i))
}

pub fn mask(dim: usize) -> Bits {
    if dim == MAX_DIM {
        Bits::MAX
    } else {
        (1 << dim) - 1
    }
}

// point `d` is the sum of points `0..d` modulo the annihilator
fn project_onto(d: usize, point_bits: Bits) -> Bits {
    let low = point_bits & mask(d);
    if point_bits >> d & 1 == 1 {
        low ^ mask(d)
    } else {
        low
    }
}

/// `M(𝒢, 1)` or its quotient by the annihilator.
#[derive(Debug, Clone)]
pub struct NilpotentMatsuoAlgebra {
    space: Arc<FischerSpace>,
    dim: usize,
    reduced: bool,
    labels: Vec<String>,
    // products of basis pairs, dim * dim
    structure: Vec<Bits>,
}

impl NilpotentMatsuoAlgebra {
    pub fn build(space: &FischerSpace) -> Result<Self, MatsuoError> {
        let n = space.n_points();
        if n > MAX_DIM {
            return Err(MatsuoError::TooLarge(n));
        }
        let mut structure = vec![0; n * n];
        for l in space.lines() {
            let prod = bits_of(l.iter().copied());
            for (i, &p) in l.iter().enumerate() {
                for &q in &l[i + 1..] {
                    structure[p * n + q] = prod;
                    structure[q * n + p] = prod;
                }
            }
        }
        Ok(NilpotentMatsuoAlgebra {
            space: Arc::new(space.clone()),
            dim: n,
            reduced: false,
            labels: space.labels().to_vec(),
            structure,
        })
    }

    /// The quotient by `⟨s⟩`, with basis the images of all points except the
    /// last one. The last point maps to the sum of all basis elements.
    pub fn reduce(&self) -> Result<Self, MatsuoError> {
        if self.reduced {
            return Err(MatsuoError::AlreadyReduced);
        }
        let d = self.dim - 1;
        let mut structure = vec![0; d * d];
        for i in 0..d {
            for j in 0..d {
                structure[i * d + j] = project_onto(d, self.structure[i * self.dim + j]);
            }
        }
        Ok(NilpotentMatsuoAlgebra {
            space: Arc::clone(&self.space),
            dim: d,
            reduced: true,
            labels: self.labels[..d].to_vec(),
            structure,
        })
    }

    /// Maps a point-indicator bitset into this algebra's basis.
    pub fn project(&self, point_bits: Bits) -> Bits {
        if self.reduced {
            project_onto(self.dim, point_bits)
        } else {
            point_bits
        }
    }

    pub fn space(&self) -> &FischerSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn product_bits(&self, i: usize, j: usize) -> Bits {
        self.structure[i * self.dim + j]
    }

    /// Product of two GF(2) elements given as bitsets.
    pub fn mul_bits(&self, u: Bits, v: Bits) -> Bits {
        let mut acc = 0;
        for i in support(u & mask(self.dim)) {
            let row = &self.structure[i * self.dim..(i + 1) * self.dim];
            let mut w = v & mask(self.dim);
            while w != 0 {
                let j = w.trailing_zeros() as usize;
                acc ^= row[j];
                w &= w - 1;
            }
        }
        acc
    }

    pub fn point_bits(&self, p: Point) -> Bits {
        self.project(1 << p)
    }

    pub fn line_bits(&self, l: &Line) -> Result<Bits, MatsuoError> {
        self.space.line_index(l).ok_or(MatsuoError::UnknownLine(*l))?;
        Ok(self.project(bits_of(l.iter().copied())))
    }

    /// Image of the all-points sum `s` (zero in the reduced algebra).
    pub fn s_bits(&self) -> Bits {
        self.project(mask(self.space.n_points()))
    }

    pub fn to_vector<F: FieldScalar>(&self, bits: Bits) -> Vec<F> {
        (0..self.dim).map(|i| if bits >> i & 1 == 1 { F::one() } else { F::zero() }).collect()
    }

    pub fn point_vector<F: FieldScalar>(&self, p: Point) -> Vec<F> {
        self.to_vector(self.point_bits(p))
    }

    pub fn line_nilpotent<F: FieldScalar>(&self, l: &Line) -> Result<Vec<F>, MatsuoError> {
        Ok(self.to_vector(self.line_bits(l)?))
    }

    fn check_len<F>(&self, u: &[F]) -> Result<(), MatsuoError> {
        if u.len() == self.dim {
            Ok(())
        } else {
            Err(MatsuoError::DimensionMismatch { expected: self.dim, found: u.len() })
        }
    }

    /// Bilinear extension of the structure constants to GF(2^k).
    pub fn multiply<F: FieldScalar>(&self, u: &[F], v: &[F]) -> Result<Vec<F>, MatsuoError> {
        self.check_len(u)?;
        self.check_len(v)?;
        let mut out = vec![F::zero(); self.dim];
        for (i, &ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let c = ui * vj;
                let mut w = self.product_bits(i, j);
                while w != 0 {
                    let k = w.trailing_zeros() as usize;
                    out[k] += c;
                    w &= w - 1;
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `v ↦ u·v`; column `j` is `u·e_j`.
    pub fn ad_matrix<F: FieldScalar>(&self, u: &[F]) -> Result<FieldMatrix<F>, MatsuoError> {
        self.check_len(u)?;
        let mut m = FieldMatrix::zeros(self.dim, self.dim);
        for (i, &ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                let mut w = self.product_bits(i, j);
                while w != 0 {
                    let k = w.trailing_zeros() as usize;
                    m[(k, j)] += ui;
                    w &= w - 1;
                }
            }
        }
        Ok(m)
    }

    /// Elements annihilating every basis element: the kernel of all
    /// `ad_{e_i}` stacked on top of each other.
    pub fn annihilator(&self) -> Vec<Vec<Gf2>> {
        let rows: Vec<Vec<Gf2>> = (0..self.dim)
            .flat_map(|i| {
                let ad = self.ad_matrix::<Gf2>(&self.to_vector(1 << i)).expect("basis vector has full length");
                ad.to_rows()
            })
            .collect();
        FieldMatrix::from_rows(&rows).expect("rows have equal length").kernel()
    }

    /// Checks that the annihilator is `⟨s⟩` (full algebra) or zero (reduced).
    pub fn check_annihilator(&self) -> Result<(), MatsuoError> {
        let ann = self.annihilator();
        let expected: Vec<Vec<Gf2>> = if self.reduced { vec![] } else { vec![self.to_vector(self.s_bits())] };
        if ann == expected {
            Ok(())
        } else {
            Err(MatsuoError::AnnihilatorMismatch(ann.len()))
        }
    }

    /// Number of seeded random GF(2) elements whose square is nonzero.
    pub fn square_zero_failures(&self, samples: usize, seed: u64) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .filter(|_| {
                let u: Bits = rng.gen::<Bits>() & mask(self.dim);
                self.mul_bits(u, u) != 0
            })
            .count()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.product_bits(i, j) == self.product_bits(j, i)))
    }

    /// Replaces one structure constant; used to build negative controls.
    pub fn with_corrupted_product(mut self, i: usize, j: usize, value: Bits) -> Self {
        self.structure[i * self.dim + j] = value & mask(self.dim);
        self
    }

    pub fn export(&self) -> AlgebraExport {
        let mut products = Vec::new();
        for i in 0..self.dim {
            for j in i..self.dim {
                let p = self.product_bits(i, j);
                if p != 0 {
                    products.push((i, j, support(p)));
                }
            }
        }
        AlgebraExport {
            space: self.space.name().to_string(),
            dim: self.dim,
            reduced: self.reduced,
            basis_labels: self.labels.clone(),
            products,
        }
    }
}

/// JSON form of an algebra: nonzero products `[i, j, support]` with `i ≤ j`.
#[derive(Debug, Clone, Serialize)]
pub struct AlgebraExport {
    pub space: String,
    pub dim: usize,
    pub reduced: bool,
    pub basis_labels: Vec<String>,
    pub products: Vec<(usize, usize, Vec<usize>)>,
}
