//! Partial triple systems and Fischer spaces.
//!
//! Points are dense indices `0..n`; labels are for display only. Lines are
//! sorted triples kept in lexicographic order, and every enumeration over
//! lines follows that order.

mod catalog;
mod io;

pub use catalog::{catalog, catalog_names, CATALOG};
pub use io::{parse_fischer, read_fischer, write_fischer};

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

pub type Point = usize;
pub type Line = [Point; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FischerError {
    #[error("space has no points")]
    Empty,
    #[error("line {line:?} mentions point {point} outside 0..{n}")]
    PointOutOfRange { line: Line, point: Point, n: usize },
    #[error("line {0:?} repeats a point")]
    DuplicatePoint(Line),
    #[error("lines {first:?} and {second:?} share the points {a} and {b}")]
    SharedPair { first: Line, second: Line, a: Point, b: Point },
    #[error("space is disconnected: point {0} is unreachable from point 0")]
    Disconnected(Point),
    #[error("point {point} is collinear with exactly one point of line {line:?}")]
    ZeroTwoThree { point: Point, line: Line },
    #[error("lines {first:?} and {second:?} generate a {size}-point subspace that is neither a complete quadrilateral nor an affine plane")]
    BadPlane { first: Line, second: Line, size: usize },
    #[error("points {0} and {1} are not distinct collinear points")]
    NotCollinear(Point, Point),
    #[error("{0:?} is not a line of the space")]
    UnknownLine(Line),
    #[error("lines {0:?} and {1:?} are equal or disjoint")]
    NotIntersecting(Line, Line),
    #[error("unknown catalog entry {0:?}")]
    UnknownCatalog(String),
    #[error("parse error on line {line_no}: {msg}")]
    Parse { line_no: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Group(#[from] crate::transposition::GroupError),
}

/// The two isomorphism types of subspaces generated by two intersecting lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PlaneType {
    CompleteQuadrilateral,
    AffinePlane,
}

/// A rank-3 subspace: its sorted point set and type.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Plane {
    pub points: Vec<Point>,
    pub kind: PlaneType,
}

/// Declared metadata carried by catalog entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpaceMeta {
    pub name: String,
    pub rank: u8,
    pub symplectic: bool,
}

/// Points off a line, split by how many points of the line they see.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct LineCensus {
    pub p0: Vec<Point>,
    pub p2: Vec<Point>,
    pub p3: Vec<Point>,
}

/// A validated Fischer space.
#[derive(Debug, Clone)]
pub struct FischerSpace {
    labels: Vec<String>,
    lines: Vec<Line>,
    // index of the line through each collinear pair, n*n
    line_of: Vec<Option<u32>>,
    lines_through: Vec<Vec<usize>>,
    in_cq: Vec<bool>,
    in_affine: Vec<bool>,
    meta: Option<SpaceMeta>,
}

impl PartialEq for FischerSpace {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.lines == other.lines
    }
}

impl FischerSpace {
    /// Validates raw incidence data. Labels default to the point indices.
    pub fn validate(
        n_points: usize,
        raw_lines: &[Line],
        labels: Option<Vec<String>>,
    ) -> Result<FischerSpace, FischerError> {
        if n_points == 0 {
            return Err(FischerError::Empty);
        }
        let mut lines = Vec::with_capacity(raw_lines.len());
        for &l in raw_lines {
            if let Some(&p) = l.iter().find(|&&p| p >= n_points) {
                return Err(FischerError::PointOutOfRange { line: l, point: p, n: n_points });
            }
            let mut s = l;
            s.sort_unstable();
            if s[0] == s[1] || s[1] == s[2] {
                return Err(FischerError::DuplicatePoint(l));
            }
            lines.push(s);
        }
        lines.sort_unstable();

        let mut line_of = vec![None; n_points * n_points];
        let mut lines_through = vec![Vec::new(); n_points];
        for (li, l) in lines.iter().enumerate() {
            for (a, b) in [(l[0], l[1]), (l[0], l[2]), (l[1], l[2])] {
                if let Some(prev) = line_of[a * n_points + b] {
                    return Err(FischerError::SharedPair { first: lines[prev as usize], second: *l, a, b });
                }
                line_of[a * n_points + b] = Some(li as u32);
                line_of[b * n_points + a] = Some(li as u32);
            }
            for &p in l {
                lines_through[p].push(li);
            }
        }

        let labels = match labels {
            Some(l) if l.len() == n_points => l,
            _ => (0..n_points).map(|i| i.to_string()).collect(),
        };
        let n_lines = lines.len();
        let mut space = FischerSpace {
            labels,
            lines,
            line_of,
            lines_through,
            in_cq: vec![false; n_lines],
            in_affine: vec![false; n_lines],
            meta: None,
        };
        space.check_connected()?;
        space.check_zero_two_three()?;
        space.check_planes()?;
        Ok(space)
    }

    fn check_connected(&self) -> Result<(), FischerError> {
        let n = self.n_points();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(p) = queue.pop_front() {
            for (q, s) in seen.iter_mut().enumerate() {
                if !*s && self.collinear(p, q) {
                    *s = true;
                    queue.push_back(q);
                }
            }
        }
        match seen.iter().position(|&s| !s) {
            Some(p) => Err(FischerError::Disconnected(p)),
            None => Ok(()),
        }
    }

    fn check_zero_two_three(&self) -> Result<(), FischerError> {
        for l in &self.lines {
            for p in 0..self.n_points() {
                if !l.contains(&p) && self.count_collinear(p, l) == 1 {
                    return Err(FischerError::ZeroTwoThree { point: p, line: *l });
                }
            }
        }
        Ok(())
    }

    fn check_planes(&mut self) -> Result<(), FischerError> {
        for p in 0..self.n_points() {
            let through = self.lines_through[p].clone();
            for (i, &l1) in through.iter().enumerate() {
                for &l2 in &through[i + 1..] {
                    let pts = self.generated_subspace(self.lines[l1].iter().chain(&self.lines[l2]).copied());
                    let kind = self.classify_plane(&pts).ok_or(FischerError::BadPlane {
                        first: self.lines[l1],
                        second: self.lines[l2],
                        size: pts.len(),
                    })?;
                    let flags = match kind {
                        PlaneType::CompleteQuadrilateral => &mut self.in_cq,
                        PlaneType::AffinePlane => &mut self.in_affine,
                    };
                    flags[l1] = true;
                    flags[l2] = true;
                }
            }
        }
        Ok(())
    }

    /// Recognizes a 6-point complete quadrilateral or a 9-point affine plane
    /// of order 3 among the lines induced on `pts`.
    fn classify_plane(&self, pts: &[Point]) -> Option<PlaneType> {
        let induced = self.induced_lines(pts);
        let degree = |p: Point| induced.iter().filter(|l| l.contains(&p)).count();
        match (pts.len(), induced.len()) {
            (6, 4) if pts.iter().all(|&p| degree(p) == 2) => Some(PlaneType::CompleteQuadrilateral),
            (9, 12) if pts.iter().all(|&p| degree(p) == 4) => Some(PlaneType::AffinePlane),
            _ => None,
        }
    }

    /// Lines of the space contained in the given point set.
    pub fn induced_lines(&self, pts: &[Point]) -> Vec<Line> {
        let set: BTreeSet<Point> = pts.iter().copied().collect();
        let mut out = BTreeSet::new();
        for (i, &a) in pts.iter().enumerate() {
            for &b in &pts[i + 1..] {
                if let Some(li) = self.line_index_of(a, b) {
                    let l = self.lines[li];
                    if l.iter().all(|p| set.contains(p)) {
                        out.insert(l);
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn with_meta(mut self, meta: SpaceMeta) -> Self {
        self.meta = Some(meta);
        self
    }

    pub fn meta(&self) -> Option<&SpaceMeta> {
        self.meta.as_ref()
    }

    pub fn name(&self) -> &str {
        self.meta.as_ref().map_or("unnamed", |m| m.name.as_str())
    }

    pub fn n_points(&self) -> usize {
        self.labels.len()
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: Point) -> &str {
        &self.labels[p]
    }

    pub fn point_by_label(&self, label: &str) -> Option<Point> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn line_index(&self, line: &Line) -> Option<usize> {
        let mut s = *line;
        s.sort_unstable();
        self.lines.binary_search(&s).ok()
    }

    pub fn line_index_of(&self, a: Point, b: Point) -> Option<usize> {
        self.line_of[a * self.n_points() + b].map(|i| i as usize)
    }

    pub fn lines_through(&self, p: Point) -> &[usize] {
        &self.lines_through[p]
    }

    /// x ~ y: distinct and on a common line.
    pub fn collinear(&self, a: Point, b: Point) -> bool {
        self.line_of[a * self.n_points() + b].is_some()
    }

    /// The third point on the line through two collinear points.
    pub fn wedge(&self, a: Point, b: Point) -> Result<Point, FischerError> {
        let li = self.line_index_of(a, b).ok_or(FischerError::NotCollinear(a, b))?;
        Ok(self.lines[li].iter().copied().find(|&p| p != a && p != b).expect("lines have three points"))
    }

    fn count_collinear(&self, p: Point, l: &Line) -> usize {
        l.iter().filter(|&&q| self.collinear(p, q)).count()
    }

    /// Least subspace containing the seed: closure under the wedge of
    /// collinear pairs. Returned sorted.
    pub fn generated_subspace(&self, seed: impl IntoIterator<Item = Point>) -> Vec<Point> {
        let n = self.n_points();
        let mut inside = vec![false; n];
        let mut members = Vec::new();
        for p in seed {
            if !inside[p] {
                inside[p] = true;
                members.push(p);
            }
        }
        let mut i = 0;
        while i < members.len() {
            let p = members[i];
            for j in 0..i {
                let q = members[j];
                if let Some(li) = self.line_index_of(p, q) {
                    for &r in &self.lines[li] {
                        if !inside[r] {
                            inside[r] = true;
                            members.push(r);
                        }
                    }
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }

    fn known_line(&self, l: &Line) -> Result<usize, FischerError> {
        self.line_index(l).ok_or(FischerError::UnknownLine(*l))
    }

    /// The subspace generated by two distinct intersecting lines, with its type.
    pub fn plane(&self, l1: &Line, l2: &Line) -> Result<Plane, FischerError> {
        let (i1, i2) = (self.known_line(l1)?, self.known_line(l2)?);
        let (a, b) = (self.lines[i1], self.lines[i2]);
        let meet = a.iter().filter(|p| b.contains(p)).count();
        if i1 == i2 || meet != 1 {
            return Err(FischerError::NotIntersecting(a, b));
        }
        let points = self.generated_subspace(a.iter().chain(&b).copied());
        let kind =
            self.classify_plane(&points).ok_or(FischerError::BadPlane { first: a, second: b, size: points.len() })?;
        Ok(Plane { points, kind })
    }

    pub fn plane_type(&self, l1: &Line, l2: &Line) -> Result<PlaneType, FischerError> {
        Ok(self.plane(l1, l2)?.kind)
    }

    /// All distinct planes containing the given line, sorted by point set.
    pub fn planes_through(&self, l: &Line) -> Result<Vec<Plane>, FischerError> {
        let li = self.known_line(l)?;
        let line = self.lines[li];
        let mut planes = BTreeSet::new();
        for &p in &line {
            for &m in &self.lines_through[p] {
                if m != li {
                    planes.insert(self.plane(&line, &self.lines[m])?);
                }
            }
        }
        Ok(planes.into_iter().collect())
    }

    /// Every pair of intersecting lines generates a complete quadrilateral.
    pub fn is_symplectic_type(&self) -> bool {
        !self.in_affine.iter().any(|&b| b)
    }

    /// No complete quadrilateral contains the line.
    pub fn is_good_line(&self, line_index: usize) -> bool {
        !self.in_cq[line_index]
    }

    pub fn line_in_cq(&self, line_index: usize) -> bool {
        self.in_cq[line_index]
    }

    pub fn line_in_affine_plane(&self, line_index: usize) -> bool {
        self.in_affine[line_index]
    }

    /// Split of the off-line points by their number of collinear points on `l`.
    pub fn line_census(&self, l: &Line) -> Result<LineCensus, FischerError> {
        let line = self.lines[self.known_line(l)?];
        let mut c = LineCensus::default();
        for p in 0..self.n_points() {
            if line.contains(&p) {
                continue;
            }
            match self.count_collinear(p, &line) {
                0 => c.p0.push(p),
                2 => c.p2.push(p),
                3 => c.p3.push(p),
                _ => return Err(FischerError::ZeroTwoThree { point: p, line }),
            }
        }
        Ok(c)
    }

    /// Sum over points of the number of points collinear with them.
    pub fn collinearity_degree_sum(&self) -> usize {
        (0..self.n_points()).map(|p| (0..self.n_points()).filter(|&q| self.collinear(p, q)).count()).sum()
    }
}
