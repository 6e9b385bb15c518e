//! Automorphism groups of the quadrilateral algebra `A` and its quotient
//! `A′` over GF(2), by exhaustive search in the bases `ℬ` and `ℬ′`.
//!
//! Automorphisms stabilize `A·A`, `A·(A·A)` and the annihilator, so each
//! basis vector may only be sent into the intersection of the invariant
//! subspaces containing it. These subspaces are recomputed from the
//! structure constants.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::fischer::catalog;
use crate::gf::{FieldMatrix, FieldScalar};
use crate::matsuo::{Bits, NilpotentMatsuoAlgebra};
use crate::Gf2;

use super::table::{bit_span, in_span};
use super::{cq_basis, BasisTable, MiyamotoError, SMatrix};

type Columns = Vec<Bits>;

fn cq_table(reduced: bool) -> Result<BasisTable, MiyamotoError> {
    let space = catalog("cq").map_err(crate::decomp::DecompError::from)?;
    let mut alg = NilpotentMatsuoAlgebra::build(&space)?;
    if reduced {
        alg = alg.reduce()?;
    }
    BasisTable::new(&alg, &cq_basis(&alg)?)
}

/// Echelon bases of `A·A`, `A·(A·A)` and `Ann(A)`.
fn invariant_subspaces(t: &BasisTable) -> [Vec<Bits>; 3] {
    let square = t.square_span();
    let cube = t.times_span(&square);
    [square, cube, t.annihilator()]
}

/// Allowed images of each basis vector.
fn allowed_columns(t: &BasisTable) -> Vec<Vec<Bits>> {
    let inv = invariant_subspaces(t);
    (0..t.dim())
        .map(|j| {
            let containing: Vec<&Vec<Bits>> = inv.iter().filter(|w| in_span(w, 1 << j)).collect();
            let pool = match containing.first() {
                Some(w) => bit_span(w),
                None => (0..1 << t.dim()).collect(),
            };
            pool.into_iter().filter(|&v| containing.iter().all(|w| in_span(w, v))).collect()
        })
        .collect()
}

/// All automorphisms among the candidates, sorted, and the candidate count.
fn search(t: &BasisTable, allowed: &[Vec<Bits>]) -> (Vec<Columns>, u64) {
    let total: u64 = allowed.iter().map(|a| a.len() as u64).product();
    let mut found: Vec<Columns> = (0..total)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut cols = [0 as Bits; 8];
            for (c, a) in cols.iter_mut().zip(allowed) {
                *c = a[(idx % a.len() as u64) as usize];
                idx /= a.len() as u64;
            }
            let cols = &cols[..allowed.len()];
            t.is_automorphism(cols).then(|| cols.to_vec())
        })
        .collect();
    found.sort_unstable();
    (found, total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutReduced {
    #[serde(skip)]
    pub elements: Vec<FieldMatrix<Gf2>>,
    pub order: usize,
    pub candidates: u64,
    pub square_span: Vec<Bits>,
    pub cube_span: Vec<Bits>,
    /// Every automorphism fixes the coefficient of `ℓ` in the image of `ℓ`.
    pub gamma3_all_one: bool,
    /// How many of the four `S_{α,β,1}` restrictions are automorphisms.
    pub s_translations_found: usize,
    #[serde(skip)]
    columns: Vec<Columns>,
}

/// `Aut(A′)` over GF(2) by constrained enumeration.
pub fn aut_enumerate_reduced() -> Result<AutReduced, MiyamotoError> {
    let t = cq_table(true)?;
    let [square, cube, _] = invariant_subspaces(&t);
    let (columns, candidates) = search(&t, &allowed_columns(&t));
    let elements: Vec<FieldMatrix<Gf2>> = columns.iter().map(|c| t.to_matrix(c)).collect();
    let keys: BTreeSet<Vec<u8>> = elements.iter().map(FieldMatrix::to_bytes).collect();
    let s_translations_found = [(0, 0), (1, 0), (0, 1), (1, 1)]
        .iter()
        .filter(|&&(a, b)| {
            let s = SMatrix::new(Gf2::from_bits(a).unwrap(), Gf2::from_bits(b).unwrap(), Gf2::one()).unwrap();
            keys.contains(&s.realize(true).to_bytes())
        })
        .count();
    Ok(AutReduced {
        order: elements.len(),
        gamma3_all_one: elements.iter().all(|m| m[(2, 2)].is_one()),
        elements,
        candidates,
        square_span: square,
        cube_span: cube,
        s_translations_found,
        columns,
    })
}

/// `Aut(A′)` over GF(2) by testing all 2^25 matrices.
pub fn aut_sweep_reduced() -> Result<Vec<FieldMatrix<Gf2>>, MiyamotoError> {
    let t = cq_table(true)?;
    let all: Vec<Bits> = (0..32).collect();
    let (found, _) = search(&t, &vec![all; 5]);
    Ok(found.iter().map(|c| t.to_matrix(c)).collect())
}

/// `(det D)⁻¹ (δ₄² η₄²; δ₅² η₅²)` equals the upper-left 2×2 block, where
/// `D = (δ₄ η₄; δ₅ η₅)` is the block acting on `⟨ℓx, ℓy⟩`.
pub fn quadratic_identity<F: FieldScalar>(m: &FieldMatrix<F>) -> bool {
    let (d4, d5, e4, e5) = (m[(3, 3)], m[(4, 3)], m[(3, 4)], m[(4, 4)]);
    let Some(r) = (d4 * e5 + e4 * d5).checked_inv() else {
        return false;
    };
    m[(0, 0)] == r * d4 * d4 && m[(0, 1)] == r * e4 * e4 && m[(1, 0)] == r * d5 * d5 && m[(1, 1)] == r * e5 * e5
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutFull {
    #[serde(skip)]
    pub elements: Vec<FieldMatrix<Gf2>>,
    pub order: usize,
    pub candidates: u64,
    /// Last column `(0,…,0,ν)`, last row `(κ,λ,0,0,0,ν)`.
    pub all_block_shape: bool,
    pub nu_is_one: bool,
    /// The automorphisms are exactly the lifts of `Aut(A′)` by `κ, λ, ν`.
    pub lifts_match: bool,
    pub quadratic_identity: bool,
}

/// `Aut(A)` over GF(2) by constrained enumeration.
pub fn aut_count_full() -> Result<AutFull, MiyamotoError> {
    let t = cq_table(false)?;
    let (found, candidates) = search(&t, &allowed_columns(&t));
    let elements: Vec<FieldMatrix<Gf2>> = found.iter().map(|c| t.to_matrix(c)).collect();
    let zero = Gf2::zero();
    let block = |m: &FieldMatrix<Gf2>| {
        (0..5).all(|i| m[(i, 5)] == zero) && (2..5).all(|j| m[(5, j)] == zero) && !m[(5, 5)].is_zero()
    };

    let reduced = aut_enumerate_reduced()?;
    let mut lifts: Vec<Columns> = Vec::new();
    for theta in &reduced.columns {
        for (kappa, lambda) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let mut cols = theta.clone();
            cols[0] |= kappa << 5;
            cols[1] |= lambda << 5;
            cols.push(1 << 5);
            lifts.push(cols);
        }
    }
    lifts.sort_unstable();
    Ok(AutFull {
        order: elements.len(),
        candidates,
        all_block_shape: elements.iter().all(block),
        nu_is_one: elements.iter().all(|m| m[(5, 5)].is_one()),
        lifts_match: lifts == found && lifts.iter().all(|c| t.is_automorphism(c)),
        quadratic_identity: elements.iter().all(quadratic_identity),
        elements,
    })
}
