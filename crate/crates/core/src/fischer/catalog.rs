//! Built-in Fischer spaces.

use std::collections::BTreeSet;

use crate::transposition::{preset, DEFAULT_CLASS_CAP};

use super::{FischerError, FischerSpace, Line, SpaceMeta};

/// Catalog entries: name, declared rank, declared symplectic flag.
pub const CATALOG: &[(&str, u8, bool)] = &[
    ("cq", 3, true),
    ("ag23", 3, false),
    ("w_a4", 4, true),
    ("w_d4", 4, true),
    ("3_3_sym4", 4, false),
    ("ag33", 4, false),
    ("su32", 4, false),
];

pub fn catalog_names() -> impl Iterator<Item = &'static str> {
    CATALOG.iter().map(|(n, _, _)| *n)
}

/// The affine space AG(d, 3): points are vectors over F_3 indexed in base 3
/// with the first coordinate most significant; lines are the triples
/// `{x, y, -x-y}`.
fn affine_space(d: u32) -> Result<FischerSpace, FischerError> {
    let n = 3usize.pow(d);
    let digits = |mut i: usize| {
        let mut v = vec![0usize; d as usize];
        for k in (0..d as usize).rev() {
            v[k] = i % 3;
            i /= 3;
        }
        v
    };
    let index = |v: &[usize]| v.iter().fold(0, |acc, &c| acc * 3 + c);
    let mut lines = BTreeSet::new();
    for x in 0..n {
        for y in x + 1..n {
            let (vx, vy) = (digits(x), digits(y));
            let vz: Vec<usize> = vx.iter().zip(&vy).map(|(a, b)| (6 - a - b) % 3).collect();
            let mut l: Line = [x, y, index(&vz)];
            l.sort_unstable();
            lines.insert(l);
        }
    }
    let labels = (0..n)
        .map(|i| {
            let v: Vec<String> = digits(i).iter().map(usize::to_string).collect();
            format!("[{}]", v.join(","))
        })
        .collect();
    FischerSpace::validate(n, &lines.into_iter().collect::<Vec<_>>(), Some(labels))
}

pub fn catalog(name: &str) -> Result<FischerSpace, FischerError> {
    let &(_, rank, symplectic) =
        CATALOG.iter().find(|(n, _, _)| *n == name).ok_or_else(|| FischerError::UnknownCatalog(name.to_string()))?;
    let space = match name {
        "cq" => FischerSpace::validate(
            6,
            &[[0, 1, 2], [0, 4, 5], [1, 3, 5], [2, 3, 4]],
            Some(["a", "b", "c", "x", "y", "z"].map(String::from).to_vec()),
        )?,
        "ag23" => affine_space(2)?,
        "ag33" => affine_space(3)?,
        "w_a4" => preset("sym5")?.fischer(DEFAULT_CLASS_CAP)?,
        other => preset(other)?.fischer(DEFAULT_CLASS_CAP)?,
    };
    Ok(space.with_meta(SpaceMeta { name: name.to_string(), rank, symplectic }))
}
