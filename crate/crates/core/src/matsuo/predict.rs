//! Products of points and line nilpotents predicted from the geometry alone.
//!
//! Results are point-indicator bitsets of the full algebra.

use crate::fischer::{FischerError, FischerSpace, Line, PlaneType, Point};

use super::{bits_of, Bits};

fn line_bits(l: &Line) -> Bits {
    bits_of(l.iter().copied())
}

fn known(space: &FischerSpace, l: &Line) -> Result<Line, FischerError> {
    space.line_index(l).map(|i| space.lines()[i]).ok_or(FischerError::UnknownLine(*l))
}

/// `x·ℓ`: zero if `x ∈ ℓ` or `x` sees no point of `ℓ`; the sum of the two
/// lines joining `x` to `ℓ` in a quadrilateral; `x + ℓ + m` in an affine
/// plane, with `m` the line parallel to `ℓ` missing `x`.
pub fn predict_point_line(space: &FischerSpace, x: Point, l: &Line) -> Result<Bits, FischerError> {
    let l = known(space, l)?;
    if l.contains(&x) {
        return Ok(0);
    }
    let Some(&p) = l.iter().find(|&&p| space.collinear(x, p)) else {
        return Ok(0);
    };
    let joining = space.lines()[space.line_index_of(x, p).expect("x and p are collinear")];
    let plane = space.plane(&l, &joining)?;
    match plane.kind {
        PlaneType::CompleteQuadrilateral => Ok(l
            .iter()
            .filter_map(|&q| space.line_index_of(x, q))
            .map(|i| line_bits(&space.lines()[i]))
            .fold(0, |a, b| a ^ b)),
        PlaneType::AffinePlane => {
            let m = space
                .induced_lines(&plane.points)
                .into_iter()
                .find(|m| !m.contains(&x) && m.iter().all(|q| !l.contains(q)))
                .expect("an affine plane has three parallel lines");
            Ok((1 << x) ^ line_bits(&l) ^ line_bits(&m))
        }
    }
}

/// `ℓ·m` by cases: zero if equal; `ℓ + m` if they span a quadrilateral; the
/// four points off both lines if they meet in an affine plane; the sum of the
/// plane if they are parallel in one. Disjoint lines spanning no plane fall
/// back to summing the point-line predictions over the points of `m`.
pub fn predict_line_line(space: &FischerSpace, l: &Line, m: &Line) -> Result<Bits, FischerError> {
    let (l, m) = (known(space, l)?, known(space, m)?);
    if l == m {
        return Ok(0);
    }
    let meet = l.iter().filter(|p| m.contains(p)).count();
    if meet == 1 {
        let plane = space.plane(&l, &m)?;
        return Ok(match plane.kind {
            PlaneType::CompleteQuadrilateral => line_bits(&l) ^ line_bits(&m),
            PlaneType::AffinePlane => bits_of(plane.points.iter().copied()) ^ (line_bits(&l) | line_bits(&m)),
        });
    }
    let span = space.generated_subspace(l.iter().chain(&m).copied());
    if span.len() == 9 && space.induced_lines(&span).len() == 12 {
        return Ok(bits_of(span));
    }
    m.iter().try_fold(0, |acc, &y| Ok(acc ^ predict_point_line(space, y, &l)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fischer::catalog;
    use crate::matsuo::NilpotentMatsuoAlgebra;

    #[test]
    fn cq_cases() {
        let s = catalog("cq").unwrap();
        // x = 3 against ℓ = abc joins via bxz and cxy
        let p = predict_point_line(&s, 3, &[0, 1, 2]).unwrap();
        assert_eq!(p, bits_of([1, 3, 5]) ^ bits_of([2, 3, 4]));
        assert_eq!(predict_point_line(&s, 0, &[0, 1, 2]).unwrap(), 0);
        assert_eq!(predict_line_line(&s, &[0, 1, 2], &[0, 4, 5]).unwrap(), bits_of([1, 2, 4, 5]));
    }

    #[test]
    fn affine_plane_parallel_lines() {
        let s = catalog("ag23").unwrap();
        // [0,0],[0,1],[0,2] and [1,0],[1,1],[1,2]
        assert_eq!(predict_line_line(&s, &[0, 1, 2], &[3, 4, 5]).unwrap(), (1 << 9) - 1);
    }

    #[test]
    fn agrees_with_structure_constants() {
        for name in crate::fischer::catalog_names() {
            let s = catalog(name).unwrap();
            let a = NilpotentMatsuoAlgebra::build(&s).unwrap();
            for l in s.lines() {
                let lb = a.line_bits(l).unwrap();
                for x in 0..s.n_points() {
                    assert_eq!(a.mul_bits(1 << x, lb), predict_point_line(&s, x, l).unwrap(), "{name}");
                }
                for m in s.lines() {
                    let mb = a.line_bits(m).unwrap();
                    assert_eq!(a.mul_bits(lb, mb), predict_line_line(&s, l, m).unwrap(), "{name}");
                }
            }
        }
    }
}
