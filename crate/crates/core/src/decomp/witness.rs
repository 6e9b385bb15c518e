//! Explicit elements showing that a line decomposition is not Z/2-graded.

use serde::Serialize;

use crate::fischer::{FischerSpace, Line, PlaneType, Point};
use crate::gf::FieldScalar;
use crate::matsuo::{bits_of, Bits, NilpotentMatsuoAlgebra};
use crate::transposition::{preset, AffineMat, GensData, GroupElement};
use crate::{Gf2, Gf4};

use super::{decompose_line, DecompError};

/// Evaluation of a candidate pair `u, v` for one line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub line: Line,
    pub u: Vec<Point>,
    pub v: Vec<Point>,
    pub u_in_1: bool,
    pub v_in_1: bool,
    /// `u·v` has a nonzero component in the 1-part.
    pub product_outside_0: bool,
    /// `u·v` lies entirely in the 1-part.
    pub product_in_1: bool,
}

impl WitnessCheck {
    pub fn reproduces(&self) -> bool {
        self.u_in_1 && self.v_in_1 && self.product_outside_0
    }
}

pub fn check_witness(alg: &NilpotentMatsuoAlgebra, l: &Line, u: Bits, v: Bits) -> Result<WitnessCheck, DecompError> {
    let mut check = check_witness_raw(alg, l, u, alg.project(v))?;
    check.v = crate::matsuo::support(v);
    Ok(check)
}

fn by_label(space: &FischerSpace, label: &str) -> Result<Point, DecompError> {
    space.point_by_label(label).ok_or_else(|| DecompError::Configuration(format!("no point labelled {label}")))
}

fn sorted(mut l: Line) -> Line {
    l.sort_unstable();
    l
}

/// The pair `[0,1,0] + [1,1,0]`, `[1,0,1] + [2,0,1]` for the line through
/// `[0,0,0]` in the first coordinate direction of AG(3,3).
pub fn affine_space_witness(alg: &NilpotentMatsuoAlgebra) -> Result<WitnessCheck, DecompError> {
    let s = alg.space();
    let pt = |l: &str| by_label(s, l);
    let l = sorted([pt("[0,0,0]")?, pt("[1,0,0]")?, pt("[2,0,0]")?]);
    let u = bits_of([pt("[0,1,0]")?, pt("[1,1,0]")?]);
    let v = bits_of([pt("[1,0,1]")?, pt("[2,0,1]")?]);
    check_witness(alg, &l, u, v)
}

/// The pair `[0,f] + [0,defed]`, `[(0,0,ω),f] + [(ω+1,1,ω),defed]` for the
/// line `{[0,d], [0,e], [0,ded]}` of the 2^6:SU_3(2)' space.
pub fn su32_witness(alg: &NilpotentMatsuoAlgebra) -> Result<WitnessCheck, DecompError> {
    let GensData::MatGf4 { gens, .. } = preset("su32").map_err(crate::fischer::FischerError::from)? else {
        return Err(DecompError::Configuration("su32 preset is not a matrix model".into()));
    };
    let lin = |g: &AffineMat<Gf4>| AffineMat::linear(g.matrix().clone());
    let group = |e| DecompError::Configuration(format!("{e}"));
    let (d, e, f) = (lin(&gens[0]).map_err(group)?, lin(&gens[1]).map_err(group)?, lin(&gens[2]).map_err(group)?);
    let prod = |xs: &[&AffineMat<Gf4>]| -> Result<AffineMat<Gf4>, DecompError> {
        xs[1..].iter().try_fold(xs[0].clone(), |acc, x| acc.compose(x).map_err(group))
    };
    let ded = prod(&[&d, &e, &d])?;
    let defed = prod(&[&d, &e, &f, &e, &d])?;
    let w = Gf4::from_bits(2)?;
    let shifted = |v: [Gf4; 3], g: &AffineMat<Gf4>| AffineMat::new(v.to_vec(), g.matrix().clone()).map_err(group);
    let (zero, one) = (Gf4::from_bits(0)?, Gf4::from_bits(1)?);
    let f_w = shifted([zero, zero, w], &f)?;
    let defed_w = shifted([w + one, one, w], &defed)?;

    let s = alg.space();
    let pt = |g: &AffineMat<Gf4>| by_label(s, &g.to_string());
    let l = sorted([pt(&d)?, pt(&e)?, pt(&ded)?]);
    let u = bits_of([pt(&f)?, pt(&defed)?]);
    let v = bits_of([pt(&f_w)?, pt(&defed_w)?]);
    check_witness(alg, &l, u, v)
}

/// Census of the configuration "`ℓ = {a,b,c}` in a quadrilateral with
/// opposite points `x, y, z`, `m = {a',b',c'}` parallel to `ℓ` in an affine
/// plane with `aa' ∥ bb' ∥ cc'`, `u = a' + b'`, `v = ℓz`".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessConfiguration {
    pub total: usize,
    pub reproducing: usize,
    pub first: Option<WitnessCheck>,
}

pub fn configuration_witness(alg: &NilpotentMatsuoAlgebra) -> Result<WitnessConfiguration, DecompError> {
    let s = alg.space();
    let mut out = WitnessConfiguration { total: 0, reproducing: 0, first: None };
    for l in s.lines() {
        let planes = s.planes_through(l)?;
        let quads: Vec<_> = planes.iter().filter(|p| p.kind == PlaneType::CompleteQuadrilateral).collect();
        let affine: Vec<_> = planes.iter().filter(|p| p.kind == PlaneType::AffinePlane).collect();
        let lb = bits_of(l.iter().copied());
        for quad in &quads {
            for order in permutations(l) {
                let [a, b, c] = order;
                // z is the point of the quadrilateral opposite c
                let z = quad
                    .points
                    .iter()
                    .copied()
                    .find(|&q| !l.contains(&q) && !s.collinear(c, q))
                    .ok_or_else(|| DecompError::NotQuadrilateral(quad.points.clone()))?;
                let v = alg.mul_bits(alg.project(lb), alg.project(1 << z));
                for plane in &affine {
                    for m in s.induced_lines(&plane.points) {
                        if m.iter().any(|p| l.contains(p)) {
                            continue;
                        }
                        for image in permutations(&m) {
                            if !translation(s, &plane.points, [a, b, c], image) {
                                continue;
                            }
                            let u = bits_of([image[0], image[1]]);
                            let check = check_witness_raw(alg, l, u, v)?;
                            out.total += 1;
                            if check.reproduces() {
                                out.reproducing += 1;
                                out.first.get_or_insert(check);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

// `u` given as full point bits, `v` already an algebra element
fn check_witness_raw(alg: &NilpotentMatsuoAlgebra, l: &Line, u: Bits, v: Bits) -> Result<WitnessCheck, DecompError> {
    let dec = decompose_line::<Gf2>(alg, l)?;
    let pu = alg.project(u);
    let w = alg.to_vector::<Gf2>(alg.mul_bits(pu, v));
    let hit = dec.parts_hit(&w)?;
    Ok(WitnessCheck {
        line: *l,
        u: crate::matsuo::support(u),
        v: crate::matsuo::support(v),
        u_in_1: dec.in_part(1, &alg.to_vector::<Gf2>(pu))?,
        v_in_1: dec.in_part(1, &alg.to_vector::<Gf2>(v))?,
        product_outside_0: hit & 2 != 0,
        product_in_1: hit == 2,
    })
}

/// The lines `aa'`, `bb'`, `cc'` are pairwise parallel (disjoint) in the plane.
fn translation(s: &FischerSpace, plane: &[Point], from: [Point; 3], to: [Point; 3]) -> bool {
    let joins: Vec<Line> = (0..3)
        .map(|i| s.line_index_of(from[i], to[i]).map(|k| s.lines()[k]))
        .collect::<Option<_>>()
        .unwrap_or_default();
    joins.len() == 3
        && joins.iter().all(|j| j.iter().all(|p| plane.contains(p)))
        && (0..3).all(|i| (i + 1..3).all(|k| joins[i].iter().all(|p| !joins[k].contains(p))))
}

fn permutations(l: &Line) -> [[Point; 3]; 6] {
    let [a, b, c] = *l;
    [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]]
}
