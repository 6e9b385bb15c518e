//! Geometry behind the symplectic decompositions: structured spanning sets
//! and the case split for two quadrilaterals through a line.

use serde::Serialize;

use crate::fischer::{FischerSpace, Line, PlaneType, Point};
use crate::gf::same_span;
use crate::matsuo::{bits_of, Bits, NilpotentMatsuoAlgebra};
use crate::Gf2;

use super::{decompose_line, DecompError};

/// Spanning sets of both eigenspaces built from the geometry around a line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuredBasis {
    pub line: Line,
    pub quadrilaterals: Vec<Vec<Point>>,
    pub p0: Vec<Point>,
    pub p2: Vec<Point>,
    /// Line points, one sum per quadrilateral, then the points of `P0`.
    pub zero_part: Vec<Bits>,
    /// `ℓz` for `z ∈ P2`.
    pub one_part: Vec<Bits>,
    pub zero_rank: usize,
    pub one_rank: usize,
}

pub fn symplectic_structured_basis(alg: &NilpotentMatsuoAlgebra, l: &Line) -> Result<StructuredBasis, DecompError> {
    let space = alg.space();
    if !space.is_symplectic_type() {
        return Err(DecompError::NotSymplectic);
    }
    let census = space.line_census(l)?;
    let quadrilaterals: Vec<Vec<Point>> = space.planes_through(l)?.into_iter().map(|p| p.points).collect();
    let mut zero_part: Vec<Bits> = l.iter().map(|&p| 1 << p).collect();
    zero_part.extend(quadrilaterals.iter().map(|q| bits_of(q.iter().copied())));
    zero_part.extend(census.p0.iter().map(|&p| 1 << p));
    let lb = bits_of(l.iter().copied());
    let one_part: Vec<Bits> = census.p2.iter().map(|&z| alg.mul_bits(alg.project(lb), alg.project(1 << z))).collect();

    let vecs = |parts: &[Bits]| -> Vec<Vec<Gf2>> { parts.iter().map(|&b| alg.to_vector(alg.project(b))).collect() };
    let (zero, one) = (vecs(&zero_part), vecs(&one_part));
    let dec = decompose_line::<Gf2>(alg, l)?;
    if !same_span(alg.dim(), &zero, &dec.basis0) || !same_span(alg.dim(), &one, &dec.basis1) {
        return Err(DecompError::SpanMismatch(*l));
    }
    Ok(StructuredBasis {
        line: *l,
        quadrilaterals,
        p0: census.p0,
        p2: census.p2,
        zero_part,
        one_part,
        zero_rank: dec.basis0.len(),
        one_rank: dec.basis1.len(),
    })
}

/// How two quadrilaterals through a common line sit relative to each other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CqPairCase {
    /// Opposite points pair up and meet in a common point `w` of `P0`.
    A { w: Point },
    /// The wedges `d, e, f` form a third quadrilateral with the line.
    B { d: Point, e: Point, f: Point, third: Vec<Point> },
}

/// The point of `quad` off the line that is not collinear with `p`.
fn opposite(space: &FischerSpace, quad: &[Point], l: &Line, p: Point) -> Option<Point> {
    quad.iter().copied().find(|&q| !l.contains(&q) && !space.collinear(p, q))
}

fn labelled(space: &FischerSpace, quad: &[Point], l: &Line) -> Result<[Point; 3], DecompError> {
    let bad = || DecompError::NotQuadrilateral(quad.to_vec());
    if quad.len() != 6 || !l.iter().all(|p| quad.contains(p)) {
        return Err(bad());
    }
    let mut out = [0; 3];
    for (o, &p) in out.iter_mut().zip(l) {
        *o = opposite(space, quad, l, p).ok_or_else(bad)?;
    }
    Ok(out)
}

/// Classifies two distinct quadrilaterals `π`, `π′` through `l`.
pub fn cq_pair_case(space: &FischerSpace, l: &Line, pi: &[Point], pi2: &[Point]) -> Result<CqPairCase, DecompError> {
    let [a, b, c] = *l;
    let [x, y, z] = labelled(space, pi, l)?;
    let [p, q, r] = labelled(space, pi2, l)?;
    let no_case = || DecompError::NoCase(*l);
    let wedge = |u, v| space.wedge(u, v).map_err(|_| no_case());
    let pattern: Vec<bool> = [p, q, r].iter().flat_map(|&u| [x, y, z].map(|v| space.collinear(u, v))).collect();
    let diagonal = |i: usize| i.is_multiple_of(4);
    if pattern.iter().enumerate().all(|(i, &s)| s == diagonal(i)) {
        let w = wedge(p, x)?;
        let in_p0 = !l.contains(&w) && l.iter().all(|&t| !space.collinear(w, t));
        if wedge(q, y)? != w || wedge(r, z)? != w || !in_p0 {
            return Err(no_case());
        }
        return Ok(CqPairCase::A { w });
    }
    if pattern.iter().enumerate().all(|(i, &s)| s != diagonal(i)) {
        let (d, e, f) = (wedge(r, y)?, wedge(r, x)?, wedge(q, x)?);
        if wedge(q, z)? != d || wedge(p, z)? != e || wedge(p, y)? != f {
            return Err(no_case());
        }
        let has = |t: [Point; 3]| {
            let mut t = t;
            t.sort_unstable();
            space.line_index(&t).is_some()
        };
        if !(has([a, e, f]) && has([b, d, f]) && has([c, d, e])) {
            return Err(no_case());
        }
        let third = space.generated_subspace([a, b, c, d, e, f]);
        let is_cq = third.len() == 6 && space.induced_lines(&third).len() == 4;
        if !is_cq || third == pi || third == pi2 {
            return Err(no_case());
        }
        return Ok(CqPairCase::B { d, e, f, third });
    }
    Err(no_case())
}

/// Pairs of quadrilaterals through `l`, in sorted order.
type QuadPair = (Vec<Point>, Vec<Point>);

fn quad_pairs(space: &FischerSpace, l: &Line) -> Result<Vec<QuadPair>, DecompError> {
    let quads: Vec<Vec<Point>> = space
        .planes_through(l)?
        .into_iter()
        .filter(|p| p.kind == PlaneType::CompleteQuadrilateral)
        .map(|p| p.points)
        .collect();
    let mut out = Vec::new();
    for i in 0..quads.len() {
        for j in i + 1..quads.len() {
            out.push((quads[i].clone(), quads[j].clone()));
        }
    }
    Ok(out)
}

/// Case tags for every quadrilateral pair through every line.
pub fn all_cq_pair_cases(space: &FischerSpace) -> Result<Vec<(Line, CqPairCase)>, DecompError> {
    let mut out = Vec::new();
    for l in space.lines() {
        for (pi, pi2) in quad_pairs(space, l)? {
            out.push((*l, cq_pair_case(space, l, &pi, &pi2)?));
        }
    }
    Ok(out)
}

/// Points of `P0` that arise as no case-(a) meeting point for their line.
/// Empty when every `w ∈ P0` is realised by some pair of quadrilaterals.
pub fn converse_p0_failures(space: &FischerSpace) -> Result<Vec<(Line, Point)>, DecompError> {
    if !space.is_symplectic_type() {
        return Err(DecompError::NotSymplectic);
    }
    let mut failures = Vec::new();
    for l in space.lines() {
        let mut covered = Vec::new();
        for (pi, pi2) in quad_pairs(space, l)? {
            if let CqPairCase::A { w } = cq_pair_case(space, l, &pi, &pi2)? {
                covered.push(w);
            }
        }
        for w in space.line_census(l)?.p0 {
            if !covered.contains(&w) {
                failures.push((*l, w));
            }
        }
    }
    Ok(failures)
}

/// Collinear pairs `v, w ∈ P0` whose third point leaves `P0`.
pub fn p0_subspace_failures(space: &FischerSpace) -> Result<Vec<(Line, Point, Point)>, DecompError> {
    let mut failures = Vec::new();
    for l in space.lines() {
        let p0 = space.line_census(l)?.p0;
        for (i, &v) in p0.iter().enumerate() {
            for &w in &p0[i + 1..] {
                if space.collinear(v, w) && !p0.contains(&space.wedge(v, w)?) {
                    failures.push((*l, v, w));
                }
            }
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fischer::catalog;

    #[test]
    fn cq_structured_basis() {
        let s = catalog("cq").unwrap();
        let a = NilpotentMatsuoAlgebra::build(&s).unwrap();
        let b = symplectic_structured_basis(&a, &[0, 1, 2]).unwrap();
        assert_eq!(b.quadrilaterals.len(), 1);
        assert_eq!(b.zero_part[3], (1 << 6) - 1);
        assert!(b.p0.is_empty());
        assert_eq!((b.zero_rank, b.one_rank), (4, 2));
    }

    #[test]
    fn affine_plane_is_refused() {
        let s = catalog("ag23").unwrap();
        let a = NilpotentMatsuoAlgebra::build(&s).unwrap();
        assert_eq!(symplectic_structured_basis(&a, &[0, 1, 2]), Err(DecompError::NotSymplectic));
        assert!(p0_subspace_failures(&s).unwrap().is_empty());
    }

    #[test]
    fn not_a_quadrilateral() {
        let s = catalog("cq").unwrap();
        let r = cq_pair_case(&s, &[0, 1, 2], &[0, 1, 2, 3], &[0, 1, 2, 3, 4, 5]);
        assert!(matches!(r, Err(DecompError::NotQuadrilateral(_))));
    }
}
