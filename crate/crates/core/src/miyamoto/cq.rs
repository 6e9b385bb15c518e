//! Miyamoto group of the complete-quadrilateral algebra over GF(2^k), in
//! the basis `ℬ = (a, b, ℓ, ℓx, ℓy, s)` and its reduced version `ℬ′`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::decomp::decompose_line;
use crate::fischer::{catalog, Line};
use crate::gf::{FieldMatrix, FieldScalar};
use crate::matsuo::{bits_of, Bits, NilpotentMatsuoAlgebra};
use crate::{Gf16, Gf4, Gf8};

use super::{change_basis, group_closure, miyamoto_map, MiyamotoError, MiyamotoMap, SMatrix};

pub const CQ_BASIS_LABELS: [&str; 6] = ["a", "b", "l", "lx", "ly", "s"];

/// `ℓ₁ = abc`, `ℓ₂ = bxz`, `ℓ₃ = ayz`, `ℓ₄ = cxy` with `a..z = 0..5`.
pub const CQ_LINES: [Line; 4] = [[0, 1, 2], [1, 3, 5], [0, 4, 5], [2, 3, 4]];

const CLOSURE_CAP: usize = 100_000;

/// The basis `ℬ` (or `ℬ′` for the reduced algebra) as bitsets in the point
/// basis. `ℓx` and `ℓy` are computed as products.
pub fn cq_basis(alg: &NilpotentMatsuoAlgebra) -> Result<Vec<Bits>, MiyamotoError> {
    let space = alg.space();
    let mut lines = space.lines().to_vec();
    lines.sort_unstable();
    let mut expect = CQ_LINES.to_vec();
    expect.sort_unstable();
    if space.n_points() != 6 || lines != expect {
        return Err(MiyamotoError::Structure(format!("{} is not the labelled quadrilateral", space.name())));
    }
    let p = |b: Bits| alg.project(b);
    let l = bits_of([0, 1, 2]);
    let lx = alg.mul_bits(p(l), p(1 << 3));
    let ly = alg.mul_bits(p(l), p(1 << 4));
    let mut basis = vec![p(1), p(1 << 1), p(l), lx, ly];
    if !alg.is_reduced() {
        basis.push(alg.s_bits());
    }
    Ok(basis)
}

fn basis_matrix<F: FieldScalar>(alg: &NilpotentMatsuoAlgebra, basis: &[Bits]) -> Result<FieldMatrix<F>, MiyamotoError> {
    let cols: Vec<Vec<F>> = basis.iter().map(|&b| alg.to_vector(b)).collect();
    Ok(FieldMatrix::from_columns(alg.dim(), &cols)?)
}

/// `τ_{ℓᵢ,λ}` for the four lines in order and every unit `λ ≠ 1`, with
/// matrices expressed in `ℬ` (or `ℬ′`).
pub fn cq_miyamoto_generators<F: FieldScalar>(
    alg: &NilpotentMatsuoAlgebra,
) -> Result<Vec<MiyamotoMap<F>>, MiyamotoError> {
    let b = basis_matrix::<F>(alg, &cq_basis(alg)?)?;
    let mut out = Vec::new();
    for l in &CQ_LINES {
        let dec = decompose_line::<F>(alg, l)?;
        for lambda in F::units().into_iter().filter(|x| !x.is_one()) {
            let t = miyamoto_map(alg, &dec, lambda)?;
            out.push(MiyamotoMap { matrix: change_basis(&t.matrix, &b)?, ..t });
        }
    }
    Ok(out)
}

/// The S-matrix predicted for `τ_{ℓᵢ,λ}`.
fn expected_s<F: FieldScalar>(line: &Line, lambda: F) -> Result<SMatrix<F>, MiyamotoError> {
    let (z, t) = (F::zero(), F::one() + lambda);
    let (alpha, beta) = match CQ_LINES.iter().position(|l| l == line) {
        Some(0) => (z, z),
        Some(1) => (t, z),
        Some(2) => (z, t),
        Some(3) => (t, t),
        _ => return Err(MiyamotoError::Structure(format!("{line:?} is not a quadrilateral line"))),
    };
    SMatrix::new(alpha, beta, lambda)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CqMiyamotoReport {
    pub field_k: u8,
    pub group_order: usize,
    /// `2^{2k}(2^k − 1)`.
    pub expected_order: usize,
    pub generator_forms_match: bool,
    pub is_all_s_matrices: bool,
    pub parameters_unique: bool,
    pub fixes_s: bool,
    pub reduced_order: usize,
    pub restriction_injective: bool,
    pub restriction_homomorphism: bool,
    pub restriction_onto_reduced: bool,
}

impl CqMiyamotoReport {
    pub fn all_hold(&self) -> bool {
        self.group_order == self.expected_order
            && self.generator_forms_match
            && self.is_all_s_matrices
            && self.parameters_unique
            && self.fixes_s
            && self.restriction_injective
            && self.restriction_homomorphism
            && self.restriction_onto_reduced
    }
}

fn verify<F: FieldScalar>() -> Result<CqMiyamotoReport, MiyamotoError> {
    let full = NilpotentMatsuoAlgebra::build(&catalog("cq").map_err(crate::decomp::DecompError::from)?)?;
    let red = full.reduce()?;
    let gens = cq_miyamoto_generators::<F>(&full)?;
    let gens_red = cq_miyamoto_generators::<F>(&red)?;
    let mut generator_forms_match = true;
    for (t, r) in gens.iter().zip(&gens_red) {
        let s = expected_s(&t.line, t.lambda)?;
        generator_forms_match &= t.matrix == s.realize(false) && r.matrix == s.realize(true);
    }

    let mats: Vec<FieldMatrix<F>> = gens.iter().map(|t| t.matrix.clone()).collect();
    let mats_red: Vec<FieldMatrix<F>> = gens_red.iter().map(|t| t.matrix.clone()).collect();
    let g = group_closure(6, &mats, CLOSURE_CAP)?;
    let h = group_closure(5, &mats_red, CLOSURE_CAP)?;

    let params: Vec<Option<SMatrix<F>>> = g.elements.iter().map(SMatrix::from_matrix).collect();
    let is_all_s_matrices = params.iter().all(Option::is_some);
    let distinct: BTreeSet<_> = params.iter().flatten().collect();
    let mut s_vec = vec![F::zero(); 6];
    s_vec[5] = F::one();
    let fixes_s = g.elements.iter().all(|m| m.column(5) == s_vec);

    let restricted: Vec<FieldMatrix<F>> = g.elements.iter().map(FieldMatrix::drop_last).collect();
    let keys: BTreeSet<Vec<u8>> = restricted.iter().map(FieldMatrix::to_bytes).collect();
    let mut restriction_homomorphism = true;
    for (x, rx) in g.elements.iter().zip(&restricted) {
        for y in &mats {
            restriction_homomorphism &= x.try_mul(y)?.drop_last() == rx.try_mul(&y.drop_last())?;
        }
    }
    let k = F::DEGREE as u32;
    Ok(CqMiyamotoReport {
        field_k: F::DEGREE,
        group_order: g.order(),
        expected_order: (1usize << (2 * k)) * ((1usize << k) - 1),
        generator_forms_match,
        is_all_s_matrices,
        parameters_unique: distinct.len() == g.order(),
        fixes_s,
        reduced_order: h.order(),
        restriction_injective: keys.len() == g.order(),
        restriction_homomorphism,
        restriction_onto_reduced: h.order() == keys.len() && restricted.iter().all(|m| h.contains(m)),
    })
}

/// Runs every Miyamoto-group check for the quadrilateral over GF(2^k).
pub fn verify_cq_miyamoto(k: u8) -> Result<CqMiyamotoReport, MiyamotoError> {
    match k {
        2 => verify::<Gf4>(),
        3 => verify::<Gf8>(),
        4 => verify::<Gf16>(),
        other => Err(MiyamotoError::UnsupportedField(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::miyamoto::BasisTable;

    #[test]
    fn basis_vectors_and_table() {
        let a = NilpotentMatsuoAlgebra::build(&catalog("cq").unwrap()).unwrap();
        let b = cq_basis(&a).unwrap();
        // ℓx = b + c + y + z, ℓy = a + c + x + z
        assert_eq!(b[3], bits_of([1, 2, 4, 5]));
        assert_eq!(b[4], bits_of([0, 2, 3, 5]));
        let t = BasisTable::new(&a, &b).unwrap();
        let (l, lx, ly) = (4, 8, 16);
        let expect = [
            [0, l, 0, 0, lx, 0],
            [l, 0, 0, ly, 0, 0],
            [0, 0, 0, lx, ly, 0],
            [0, ly, lx, 0, 0, 0],
            [lx, 0, ly, 0, 0, 0],
            [0; 6],
        ];
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(t.product(i, j), expect[i][j], "{} {}", CQ_BASIS_LABELS[i], CQ_BASIS_LABELS[j]);
            }
        }
    }

    #[test]
    fn first_two_lines() {
        let a = NilpotentMatsuoAlgebra::build(&catalog("cq").unwrap()).unwrap();
        let gens = cq_miyamoto_generators::<Gf4>(&a).unwrap();
        assert_eq!(gens.len(), 8);
        for t in &gens[..4] {
            assert_eq!(t.matrix, expected_s(&t.line, t.lambda).unwrap().realize(false));
        }
    }

    #[test]
    fn gf4_and_gf8() {
        let r = verify_cq_miyamoto(2).unwrap();
        assert_eq!(r.group_order, 48);
        assert!(r.all_hold(), "{r:?}");
        let r = verify_cq_miyamoto(3).unwrap();
        assert_eq!(r.group_order, 448);
        assert!(r.all_hold(), "{r:?}");
        assert_eq!(verify_cq_miyamoto(1), Err(MiyamotoError::UnsupportedField(1)));
    }
}
