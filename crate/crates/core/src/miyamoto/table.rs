//! GF(2) structure constants with respect to an arbitrary basis, with
//! vectors and matrix columns packed into bitsets.

use num_traits::{One, Zero};

use crate::gf::FieldMatrix;
use crate::matsuo::{mask, Bits, NilpotentMatsuoAlgebra};
use crate::Gf2;

use super::MiyamotoError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisTable {
    dim: usize,
    // product of basis vectors i and j, in basis coordinates
    prod: Vec<Bits>,
}

fn to_gf2(dim: usize, bits: Bits) -> Vec<Gf2> {
    (0..dim).map(|i| if bits >> i & 1 == 1 { Gf2::one() } else { Gf2::zero() }).collect()
}

fn from_gf2(v: &[Gf2]) -> Bits {
    v.iter().enumerate().filter(|(_, x)| **x == Gf2::one()).fold(0, |acc, (i, _)| acc | 1 << i)
}

/// Echelon basis of the span, over GF(2).
pub fn bit_basis(vectors: impl IntoIterator<Item = Bits>) -> Vec<Bits> {
    let mut basis: Vec<Bits> = Vec::new();
    for mut v in vectors {
        for &b in &basis {
            let top = 127 - b.leading_zeros();
            if v >> top & 1 == 1 {
                v ^= b;
            }
        }
        if v != 0 {
            let top = 127 - v.leading_zeros();
            for b in basis.iter_mut() {
                if *b >> top & 1 == 1 {
                    *b ^= v;
                }
            }
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

/// Every element of the span of an echelon basis.
pub fn bit_span(basis: &[Bits]) -> Vec<Bits> {
    (0..1u32 << basis.len())
        .map(|c| basis.iter().enumerate().filter(|(i, _)| c >> i & 1 == 1).fold(0, |acc, (_, &b)| acc ^ b))
        .collect()
}

pub fn in_span(basis: &[Bits], v: Bits) -> bool {
    bit_basis(basis.iter().copied().chain([v])).len() == basis.len()
}

/// Image of `v` under the map with the given columns.
pub fn apply_columns(cols: &[Bits], v: Bits) -> Bits {
    let mut out = 0;
    let mut w = v;
    while w != 0 {
        out ^= cols[w.trailing_zeros() as usize];
        w &= w - 1;
    }
    out
}

impl BasisTable {
    /// Structure constants of `alg` in the basis whose vectors are given as
    /// bitsets in the algebra's own basis.
    pub fn new(alg: &NilpotentMatsuoAlgebra, basis: &[Bits]) -> Result<Self, MiyamotoError> {
        let dim = alg.dim();
        if basis.len() != dim {
            return Err(MiyamotoError::DependentBasis);
        }
        let cols: Vec<Vec<Gf2>> = basis.iter().map(|&b| to_gf2(dim, b)).collect();
        let inv = FieldMatrix::from_columns(dim, &cols)?.inverse().map_err(|_| MiyamotoError::DependentBasis)?;
        let mut prod = vec![0; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let p = alg.mul_bits(basis[i], basis[j]);
                prod[i * dim + j] = from_gf2(&inv.apply(&to_gf2(dim, p))?);
            }
        }
        Ok(BasisTable { dim, prod })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn product(&self, i: usize, j: usize) -> Bits {
        self.prod[i * self.dim + j]
    }

    pub fn mul(&self, u: Bits, v: Bits) -> Bits {
        let mut out = 0;
        let mut a = u & mask(self.dim);
        while a != 0 {
            let i = a.trailing_zeros() as usize;
            a &= a - 1;
            let mut b = v & mask(self.dim);
            while b != 0 {
                let j = b.trailing_zeros() as usize;
                b &= b - 1;
                out ^= self.product(i, j);
            }
        }
        out
    }

    /// Whether the linear map with the given columns preserves products.
    pub fn preserves_products(&self, cols: &[Bits]) -> bool {
        (0..self.dim)
            .all(|i| (i..self.dim).all(|j| apply_columns(cols, self.product(i, j)) == self.mul(cols[i], cols[j])))
    }

    pub fn is_automorphism(&self, cols: &[Bits]) -> bool {
        self.preserves_products(cols) && bit_basis(cols.iter().copied()).len() == self.dim
    }

    /// Echelon basis of `A·A`.
    pub fn square_span(&self) -> Vec<Bits> {
        bit_basis(self.prod.iter().copied())
    }

    /// Echelon basis of `A·W` for a subspace `W`.
    pub fn times_span(&self, w: &[Bits]) -> Vec<Bits> {
        bit_basis((0..self.dim).flat_map(|i| w.iter().map(move |&v| self.mul(1 << i, v))))
    }

    /// Echelon basis of the annihilator.
    pub fn annihilator(&self) -> Vec<Bits> {
        let rows: Vec<Vec<Gf2>> = (0..self.dim)
            .flat_map(|i| (0..self.dim).map(move |k| (i, k)))
            .map(|(i, k)| {
                (0..self.dim).map(|j| if self.product(i, j) >> k & 1 == 1 { Gf2::one() } else { Gf2::zero() }).collect()
            })
            .collect();
        let kernel = FieldMatrix::from_rows(&rows).expect("rows have equal length").kernel();
        bit_basis(kernel.iter().map(|v| from_gf2(v)))
    }

    pub fn to_matrix(&self, cols: &[Bits]) -> FieldMatrix<Gf2> {
        let cols: Vec<Vec<Gf2>> = cols.iter().map(|&c| to_gf2(self.dim, c)).collect();
        FieldMatrix::from_columns(self.dim, &cols).expect("columns have the table dimension")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans() {
        let b = bit_basis([0b011, 0b110, 0b101]);
        assert_eq!(b.len(), 2);
        assert_eq!(bit_span(&b).len(), 4);
        assert!(in_span(&b, 0b101));
        assert!(!in_span(&b, 0b001));
        assert_eq!(apply_columns(&[0b10, 0b01], 0b11), 0b11);
    }
}
