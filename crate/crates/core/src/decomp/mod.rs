//! Line decompositions `A = Ã^ℓ_0 ⊕ Ã^ℓ_1` into generalized eigenspaces of
//! `ad_ℓ`, their fusion tables and Z/2-grading verdicts.

mod geometry;
mod witness;

pub use geometry::{
    all_cq_pair_cases, converse_p0_failures, cq_pair_case, p0_subspace_failures, symplectic_structured_basis,
    CqPairCase, StructuredBasis,
};
pub use witness::{
    affine_space_witness, check_witness, configuration_witness, su32_witness, WitnessCheck, WitnessConfiguration,
};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::fischer::{FischerError, Line};
use crate::gf::{same_span, FieldMatrix, FieldScalar, GfError};
use crate::matsuo::{MatsuoError, NilpotentMatsuoAlgebra};
use crate::Gf2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("line {0:?}: generalized eigenspaces for 0 and 1 do not exhaust the algebra")]
    UnexpectedEigenvalue(Line),
    #[error("line {0:?}: generalized 1-eigenspace differs from the 1-eigenspace")]
    NonSemisimpleOnePart(Line),
    #[error("space is not of symplectic type")]
    NotSymplectic,
    #[error("structured basis for {0:?} does not span the eigenspaces")]
    SpanMismatch(Line),
    #[error("quadrilaterals through {0:?} match neither collinearity pattern")]
    NoCase(Line),
    #[error("{0:?} is not a complete quadrilateral through the line")]
    NotQuadrilateral(Vec<usize>),
    #[error("witness configuration not found: {0}")]
    Configuration(String),
    #[error(transparent)]
    Matsuo(#[from] MatsuoError),
    #[error(transparent)]
    Fischer(#[from] FischerError),
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// The two parts of a line decomposition, with proper eigenspace dimensions.
#[derive(Debug, Clone)]
pub struct LineDecomposition<F: FieldScalar> {
    pub line: Line,
    pub basis0: Vec<Vec<F>>,
    pub basis1: Vec<Vec<F>>,
    pub eigen0_dim: usize,
    pub eigen1_dim: usize,
    pub semisimple: bool,
    // inverse of the matrix with columns basis0 ++ basis1
    coords: FieldMatrix<F>,
}

impl<F: FieldScalar> LineDecomposition<F> {
    pub fn dim(&self) -> usize {
        self.basis0.len() + self.basis1.len()
    }

    pub fn gen_dims(&self) -> (usize, usize) {
        (self.basis0.len(), self.basis1.len())
    }

    pub fn part(&self, x: usize) -> &[Vec<F>] {
        if x == 0 {
            &self.basis0
        } else {
            &self.basis1
        }
    }

    /// Components of `v` in the two parts, as vectors of the algebra.
    pub fn components(&self, v: &[F]) -> Result<[Vec<F>; 2], DecompError> {
        let c = self.coords.apply(v)?;
        let n0 = self.basis0.len();
        let comb = |basis: &[Vec<F>], coeffs: &[F]| {
            let mut out = vec![F::zero(); self.dim()];
            for (b, &k) in basis.iter().zip(coeffs) {
                if !k.is_zero() {
                    for (o, &x) in out.iter_mut().zip(b) {
                        *o += k * x;
                    }
                }
            }
            out
        };
        Ok([comb(&self.basis0, &c[..n0]), comb(&self.basis1, &c[n0..])])
    }

    /// Bitmask of the parts in which `v` has a nonzero component.
    pub fn parts_hit(&self, v: &[F]) -> Result<u8, DecompError> {
        let c = self.coords.apply(v)?;
        let n0 = self.basis0.len();
        let mut mask = 0;
        if c[..n0].iter().any(|x| !x.is_zero()) {
            mask |= 1;
        }
        if c[n0..].iter().any(|x| !x.is_zero()) {
            mask |= 2;
        }
        Ok(mask)
    }

    pub fn in_part(&self, x: usize, v: &[F]) -> Result<bool, DecompError> {
        Ok(self.parts_hit(v)? & !(1 << x) == 0)
    }
}

pub fn decompose_line<F: FieldScalar>(
    alg: &NilpotentMatsuoAlgebra,
    l: &Line,
) -> Result<LineDecomposition<F>, DecompError> {
    let n = alg.dim();
    let ad = alg.ad_matrix::<F>(&alg.line_nilpotent::<F>(l)?)?;
    let ad_plus = ad.try_add(&FieldMatrix::identity(n))?;
    let basis0 = ad.iterated_kernel(n as u32)?;
    let basis1 = ad_plus.iterated_kernel(n as u32)?;
    let eigen0_dim = ad.kernel().len();
    let eigen1 = ad_plus.kernel();
    let mut cols = basis0.clone();
    cols.extend(basis1.iter().cloned());
    if cols.len() != n {
        return Err(DecompError::UnexpectedEigenvalue(*l));
    }
    let coords = FieldMatrix::from_columns(n, &cols)?.inverse().map_err(|_| DecompError::UnexpectedEigenvalue(*l))?;
    if !same_span(n, &eigen1, &basis1) {
        return Err(DecompError::NonSemisimpleOnePart(*l));
    }
    let eigen1_dim = eigen1.len();
    Ok(LineDecomposition {
        line: *l,
        basis0,
        basis1,
        eigen0_dim,
        eigen1_dim,
        semisimple: eigen0_dim + eigen1_dim == n,
        coords,
    })
}

/// Observed fusion law: `cells[x][y]` is a bitmask over the labels `{0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FusionTable {
    pub cells: [[u8; 2]; 2],
}

impl FusionTable {
    pub fn get(&self, x: usize, y: usize) -> Vec<u8> {
        (0..2).filter(|&z| self.cells[x][y] >> z & 1 == 1).collect()
    }

    /// `0∗0 ⊆ {0}`, `0∗1 ⊆ {1}`, `1∗1 ⊆ {0}`.
    pub fn is_z2_graded(&self) -> bool {
        (0..2).all(|x| (0..2).all(|y| self.cells[x][y] & !(1 << ((x + y) % 2)) == 0))
    }

    /// Graded by Z with labels 0 and 1: additionally `1∗1 = ∅`.
    pub fn is_z_graded(&self) -> bool {
        self.is_z2_graded() && self.cells[1][1] == 0
    }
}

/// Allowed labels in cell `(x, y)` under the Z/2 law.
fn z2_allowed(x: usize, y: usize) -> u8 {
    1 << ((x + y) % 2)
}

/// A pair of basis vectors whose product leaves the Z/2-allowed part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    pub bad_component: Vec<usize>,
}

fn nonzero_support<F: FieldScalar>(v: &[F]) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
}

/// Multiplies all basis pairs of the decomposition. Returns the observed
/// table and the first pair violating the Z/2 law, searching the cell 11
/// first, then 00 and 01, each lexicographically over basis pairs.
pub fn fusion_table<F: FieldScalar>(
    alg: &NilpotentMatsuoAlgebra,
    dec: &LineDecomposition<F>,
) -> Result<(FusionTable, Option<Witness>), DecompError> {
    let mut t = FusionTable::default();
    let mut witness = None;
    for (x, y) in [(1, 1), (0, 0), (0, 1)] {
        let (px, py) = (dec.part(x), dec.part(y));
        for (i, u) in px.iter().enumerate() {
            let start = if x == y { i } else { 0 };
            for v in &py[start..] {
                let w = alg.multiply(u, v)?;
                let hit = dec.parts_hit(&w)?;
                t.cells[x][y] |= hit;
                if witness.is_none() && hit & !z2_allowed(x, y) != 0 {
                    let comps = dec.components(&w)?;
                    let bad = 1 - (x + y) % 2;
                    witness = Some(Witness {
                        u: nonzero_support(u),
                        v: nonzero_support(v),
                        bad_component: nonzero_support(&comps[bad]),
                    });
                }
            }
        }
    }
    t.cells[1][0] = t.cells[0][1];
    Ok((t, witness))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FusionJson {
    #[serde(rename = "00")]
    pub c00: Vec<u8>,
    #[serde(rename = "01")]
    pub c01: Vec<u8>,
    #[serde(rename = "11")]
    pub c11: Vec<u8>,
}

impl From<&FusionTable> for FusionJson {
    fn from(t: &FusionTable) -> Self {
        FusionJson { c00: t.get(0, 0), c01: t.get(0, 1), c11: t.get(1, 1) }
    }
}

/// Per-line verdict in the JSON report schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineReport {
    pub line: Line,
    pub gen_dims: [usize; 2],
    pub eigen_dims: [usize; 2],
    pub semisimple: bool,
    pub fusion: FusionJson,
    pub z2_graded: bool,
    pub witness: Option<Witness>,
    #[serde(skip)]
    pub table: FusionTable,
}

pub fn analyze_line(alg: &NilpotentMatsuoAlgebra, l: &Line) -> Result<LineReport, DecompError> {
    let dec = decompose_line::<Gf2>(alg, l)?;
    let (table, witness) = fusion_table(alg, &dec)?;
    Ok(LineReport {
        line: *l,
        gen_dims: [dec.basis0.len(), dec.basis1.len()],
        eigen_dims: [dec.eigen0_dim, dec.eigen1_dim],
        semisimple: dec.semisimple,
        fusion: (&table).into(),
        z2_graded: table.is_z2_graded(),
        witness,
        table,
    })
}

/// Grading verdicts for every line, in line order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpaceVerdict {
    pub space: String,
    pub dim: usize,
    pub reduced: bool,
    pub globally_graded: bool,
    pub lines: Vec<LineReport>,
    /// Indices of lines contained in no complete quadrilateral.
    pub good_lines: Vec<usize>,
    pub good_but_ungraded: Vec<usize>,
    pub bad_but_graded: Vec<usize>,
}

pub fn classify_space(alg: &NilpotentMatsuoAlgebra) -> Result<SpaceVerdict, DecompError> {
    let space = alg.space();
    let lines: Vec<LineReport> = space.lines().par_iter().map(|l| analyze_line(alg, l)).collect::<Result<_, _>>()?;
    let good_lines: Vec<usize> = (0..lines.len()).filter(|&i| space.is_good_line(i)).collect();
    let good_but_ungraded = good_lines.iter().copied().filter(|&i| !lines[i].z2_graded).collect();
    let bad_but_graded = (0..lines.len()).filter(|&i| !space.is_good_line(i) && lines[i].z2_graded).collect();
    Ok(SpaceVerdict {
        space: space.name().to_string(),
        dim: alg.dim(),
        reduced: alg.is_reduced(),
        globally_graded: lines.iter().all(|r| r.z2_graded),
        lines,
        good_lines,
        good_but_ungraded,
        bad_but_graded,
    })
}
