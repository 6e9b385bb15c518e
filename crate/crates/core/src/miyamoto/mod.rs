//! Miyamoto maps of Z-graded line decompositions, finite matrix groups and
//! automorphism groups of the complete-quadrilateral algebras.

mod aut;
mod cq;
mod table;

pub use aut::{aut_count_full, aut_enumerate_reduced, aut_sweep_reduced, quadratic_identity, AutFull, AutReduced};
pub use cq::{cq_basis, cq_miyamoto_generators, verify_cq_miyamoto, CqMiyamotoReport, CQ_BASIS_LABELS, CQ_LINES};
pub use table::BasisTable;

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::decomp::{DecompError, LineDecomposition};
use crate::fischer::Line;
use crate::gf::{FieldMatrix, FieldScalar, GfError};
use crate::matsuo::{MatsuoError, NilpotentMatsuoAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MiyamotoError {
    #[error("scaling the 1-part of {0:?} is not an algebra automorphism")]
    NotAutomorphism(Line),
    #[error("lambda must be a unit")]
    ZeroLambda,
    #[error("group closure exceeded {0} elements")]
    CapExceeded(usize),
    #[error("field degree {0} is not supported here (use 2, 3 or 4)")]
    UnsupportedField(u8),
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("unexpected structure: {0}")]
    Structure(String),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Matsuo(#[from] MatsuoError),
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// `τ_{ℓ,λ}`: identity on the 0-part, multiplication by `λ` on the 1-part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiyamotoMap<F: FieldScalar> {
    pub line: Line,
    pub lambda: F,
    /// In the point basis of the algebra; columns are images.
    pub matrix: FieldMatrix<F>,
}

pub fn miyamoto_map<F: FieldScalar>(
    alg: &NilpotentMatsuoAlgebra,
    dec: &LineDecomposition<F>,
    lambda: F,
) -> Result<MiyamotoMap<F>, MiyamotoError> {
    if lambda.is_zero() {
        return Err(MiyamotoError::ZeroLambda);
    }
    let n = dec.dim();
    let mut cols = dec.basis0.clone();
    cols.extend(dec.basis1.iter().cloned());
    let p = FieldMatrix::from_columns(n, &cols)?;
    let mut d = FieldMatrix::identity(n);
    for i in dec.basis0.len()..n {
        d[(i, i)] = lambda;
    }
    let matrix = p.try_mul(&d)?.try_mul(&p.inverse()?)?;
    if !is_automorphism(alg, &matrix)? {
        return Err(MiyamotoError::NotAutomorphism(dec.line));
    }
    Ok(MiyamotoMap { line: dec.line, lambda, matrix })
}

/// `m(e_i·e_j) = m(e_i)·m(e_j)` for all basis pairs `i ≤ j`.
pub fn is_automorphism<F: FieldScalar>(
    alg: &NilpotentMatsuoAlgebra,
    m: &FieldMatrix<F>,
) -> Result<bool, MiyamotoError> {
    let n = alg.dim();
    let images: Vec<Vec<F>> = (0..n).map(|j| m.column(j)).collect();
    for i in 0..n {
        for j in i..n {
            let lhs = m.apply(&alg.to_vector::<F>(alg.product_bits(i, j)))?;
            if lhs != alg.multiply(&images[i], &images[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `S_{α,β,λ}`: block lower triangular with `I_3`, `M_{α,β}` and
/// `diag(λ, λ, 1)`, where `M_{α,β}` has rows `(α,0,β)`, `(0,β,α)`, `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SMatrix<F: FieldScalar> {
    pub alpha: F,
    pub beta: F,
    pub lambda: F,
}

impl<F: FieldScalar> SMatrix<F> {
    pub fn new(alpha: F, beta: F, lambda: F) -> Result<Self, MiyamotoError> {
        if lambda.is_zero() {
            return Err(MiyamotoError::ZeroLambda);
        }
        Ok(SMatrix { alpha, beta, lambda })
    }

    /// The 6×6 matrix, or its 5×5 restriction to the reduced algebra.
    pub fn realize(&self, reduced: bool) -> FieldMatrix<F> {
        let mut m = FieldMatrix::identity(6);
        m[(3, 0)] = self.alpha;
        m[(3, 2)] = self.beta;
        m[(4, 1)] = self.beta;
        m[(4, 2)] = self.alpha;
        m[(3, 3)] = self.lambda;
        m[(4, 4)] = self.lambda;
        if reduced {
            m.drop_last()
        } else {
            m
        }
    }

    /// `S_{α,β,λ} · S_{γ,δ,μ} = S_{α+λγ, β+λδ, λμ}`.
    pub fn compose(&self, other: &Self) -> Self {
        SMatrix {
            alpha: self.alpha + self.lambda * other.alpha,
            beta: self.beta + self.lambda * other.beta,
            lambda: self.lambda * other.lambda,
        }
    }

    pub fn inverse(&self) -> Self {
        let inv = self.lambda.checked_inv().expect("lambda is a unit");
        SMatrix { alpha: inv * self.alpha, beta: inv * self.beta, lambda: inv }
    }

    /// Reads the parameters off a 6×6 or 5×5 matrix, if it has the S shape.
    pub fn from_matrix(m: &FieldMatrix<F>) -> Option<Self> {
        if !(m.is_square() && (m.rows() == 6 || m.rows() == 5)) {
            return None;
        }
        let s = SMatrix::new(m[(3, 0)], m[(3, 2)], m[(3, 3)]).ok()?;
        (s.realize(m.rows() == 5) == *m).then_some(s)
    }
}

/// A finite matrix group, elements in breadth-first discovery order.
#[derive(Debug, Clone)]
pub struct MatrixGroup<F: FieldScalar> {
    pub generators: Vec<FieldMatrix<F>>,
    pub elements: Vec<FieldMatrix<F>>,
    index: HashMap<Vec<u8>, usize>,
}

impl<F: FieldScalar> MatrixGroup<F> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &FieldMatrix<F>) -> bool {
        self.index.contains_key(&m.to_bytes())
    }
}

/// Closes the generators under multiplication, starting from the identity.
/// In a finite group this also gives closure under inverses.
pub fn group_closure<F: FieldScalar>(
    degree: usize,
    gens: &[FieldMatrix<F>],
    cap: usize,
) -> Result<MatrixGroup<F>, MiyamotoError> {
    let id = FieldMatrix::identity(degree);
    let mut index = HashMap::from([(id.to_bytes(), 0)]);
    let mut elements = vec![id];
    let mut next = 0;
    while next < elements.len() {
        let x = elements[next].clone();
        next += 1;
        for g in gens {
            let y = x.try_mul(g)?;
            let key = y.to_bytes();
            if let Entry::Vacant(slot) = index.entry(key) {
                if elements.len() == cap {
                    return Err(MiyamotoError::CapExceeded(cap));
                }
                slot.insert(elements.len());
                elements.push(y);
            }
        }
    }
    Ok(MatrixGroup { generators: gens.to_vec(), elements, index })
}

/// Matrix of the same linear map in a new basis: `B⁻¹ M B`, where the
/// columns of `B` are the new basis vectors in old coordinates.
pub fn change_basis<F: FieldScalar>(
    m: &FieldMatrix<F>,
    basis: &FieldMatrix<F>,
) -> Result<FieldMatrix<F>, MiyamotoError> {
    let inv = basis.inverse().map_err(|_| MiyamotoError::DependentBasis)?;
    Ok(inv.try_mul(m)?.try_mul(basis)?)
}

/// Lines admitting at least one automorphism `τ_{ℓ,λ}` with `λ ≠ 1`. Lines
/// whose decomposition is only Z/2-graded never do, so the Miyamoto group
/// of such a space is trivial.
pub fn lines_with_nontrivial_maps<F: FieldScalar>(alg: &NilpotentMatsuoAlgebra) -> Result<Vec<Line>, MiyamotoError> {
    let mut out = Vec::new();
    for l in alg.space().lines() {
        let dec = crate::decomp::decompose_line::<F>(alg, l)?;
        for lambda in F::units().into_iter().filter(|x| !x.is_one()) {
            match miyamoto_map(alg, &dec, lambda) {
                Ok(_) => {
                    out.push(*l);
                    break;
                }
                Err(MiyamotoError::NotAutomorphism(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

/// Summary consumed by the command-line `miyamoto` report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MiyamotoReport {
    pub field_k: u8,
    pub group_order: usize,
    pub is_all_s_matrices: bool,
    pub restriction_injective: bool,
    pub aut_reduced_order: usize,
    pub aut_full_order: usize,
}

/// With `reduced`, `group_order` is the order of the closure on `A′`.
pub fn miyamoto_report(k: u8, reduced: bool) -> Result<MiyamotoReport, MiyamotoError> {
    let cq = verify_cq_miyamoto(k)?;
    Ok(MiyamotoReport {
        field_k: k,
        group_order: if reduced { cq.reduced_order } else { cq.group_order },
        is_all_s_matrices: cq.is_all_s_matrices,
        restriction_injective: cq.restriction_injective,
        aut_reduced_order: aut_enumerate_reduced()?.elements.len(),
        aut_full_order: aut_count_full()?.order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::decompose_line;
    use crate::fischer::catalog;
    use crate::{Gf2, Gf4, Gf8};
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn gf4(b: u8) -> Gf4 {
        Gf4::from_bits(b).unwrap()
    }

    #[test]
    fn identity_and_inverse() {
        let s = SMatrix::new(gf4(0), gf4(0), gf4(2)).unwrap();
        let t = SMatrix::new(gf4(0), gf4(0), gf4(2).checked_inv().unwrap()).unwrap();
        assert_eq!(s.compose(&t).realize(false), FieldMatrix::identity(6));
        assert_eq!(SMatrix::new(gf4(1), gf4(0), gf4(0)), Err(MiyamotoError::ZeroLambda));
    }

    #[test]
    fn composition_example() {
        // S_{1,0,ω} · S_{0,1,ω} = S_{1, ω, ω²}
        let w = gf4(2);
        let a = SMatrix::new(gf4(1), gf4(0), w).unwrap();
        let b = SMatrix::new(gf4(0), gf4(1), w).unwrap();
        let expect = SMatrix::new(gf4(1), w, w * w).unwrap();
        assert_eq!(a.compose(&b), expect);
        assert_eq!(&a.realize(false) * &b.realize(false), expect.realize(false));
    }

    #[test]
    fn conjugation_scales_translations() {
        for lambda in Gf8::units() {
            for alpha in Gf8::elements() {
                let beta = alpha * alpha + Gf8::one();
                let t = SMatrix::new(Gf8::zero(), Gf8::zero(), lambda).unwrap();
                let x = SMatrix::new(alpha, beta, Gf8::one()).unwrap();
                let got = t.compose(&x).compose(&t.inverse());
                assert_eq!(got, SMatrix::new(lambda * alpha, lambda * beta, Gf8::one()).unwrap());
            }
        }
    }

    fn arb_s() -> impl Strategy<Value = SMatrix<Gf8>> {
        (0u8..8, 0u8..8, 1u8..8).prop_map(|(a, b, l)| {
            SMatrix::new(Gf8::from_bits(a).unwrap(), Gf8::from_bits(b).unwrap(), Gf8::from_bits(l).unwrap()).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn law_matches_matrix_product(s in arb_s(), t in arb_s()) {
            prop_assert_eq!(s.compose(&t).realize(false), &s.realize(false) * &t.realize(false));
            prop_assert_eq!(SMatrix::from_matrix(&s.realize(false)), Some(s));
            prop_assert_eq!(SMatrix::from_matrix(&s.realize(true)), Some(s));
        }
    }

    #[test]
    fn closure_of_one_involution() {
        let mut m = FieldMatrix::<Gf2>::identity(3);
        m[(1, 0)] = Gf2::one();
        let g = group_closure(3, &[m.clone()], 10).unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.contains(&m));
        assert_eq!(group_closure(3, &[m], 1).map(|g| g.order()), Err(MiyamotoError::CapExceeded(1)));
    }

    #[test]
    fn maps_and_their_characters() {
        let a = NilpotentMatsuoAlgebra::build(&catalog("cq").unwrap()).unwrap();
        for l in a.space().lines() {
            let d = decompose_line::<Gf4>(&a, l).unwrap();
            let one = miyamoto_map(&a, &d, Gf4::one()).unwrap();
            assert_eq!(one.matrix, FieldMatrix::identity(6));
            let ad = a.ad_matrix::<Gf4>(&a.line_nilpotent(l).unwrap()).unwrap();
            for lambda in Gf4::units() {
                let t = miyamoto_map(&a, &d, lambda).unwrap();
                // id + (1 + λ) ad_ℓ
                let expect = FieldMatrix::identity(6).try_add(&ad.scale(Gf4::one() + lambda)).unwrap();
                assert_eq!(t.matrix, expect);
                for mu in Gf4::units() {
                    let u = miyamoto_map(&a, &d, mu).unwrap();
                    let lm = miyamoto_map(&a, &d, lambda * mu).unwrap();
                    assert_eq!(&t.matrix * &u.matrix, lm.matrix);
                }
            }
        }
    }

    #[test]
    fn only_quadrilateral_lines_carry_maps() {
        let cq = NilpotentMatsuoAlgebra::build(&catalog("cq").unwrap()).unwrap();
        assert_eq!(lines_with_nontrivial_maps::<Gf4>(&cq).unwrap().len(), 4);
        for name in ["w_a4", "w_d4"] {
            let a = NilpotentMatsuoAlgebra::build(&catalog(name).unwrap()).unwrap();
            assert!(lines_with_nontrivial_maps::<Gf4>(&a).unwrap().is_empty(), "{name}");
        }
    }

    #[test]
    fn z2_only_lines_have_no_nontrivial_maps() {
        let a = NilpotentMatsuoAlgebra::build(&catalog("w_a4").unwrap()).unwrap();
        let l = a.space().lines()[0];
        let d = decompose_line::<Gf4>(&a, &l).unwrap();
        assert_eq!(miyamoto_map(&a, &d, gf4(2)).unwrap_err(), MiyamotoError::NotAutomorphism(l));
    }
}
