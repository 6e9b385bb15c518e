//! The `.gens` text format.
//!
//! ```text
//! # W(D4) as 2^3:Sym(4)
//! affineperm 2 4 sumzero
//! [0,0,0,0 | (1 2)]
//! [1,1,0,0 | (1 2)]
//! seed [0,0,0,0 | (1 2)]
//! ```
//!
//! Headers are `perm <n>`, `affineperm <p> <m> [sumzero]` and
//! `affinemat-gf4 <dim>`. Affine elements may carry a third field of unit
//! scalars, `[v | cycles | s1,...,sm]`, for a monomial linear part.

use std::path::Path;

use crate::fischer::{FischerError, FischerSpace};
use crate::gf::FieldMatrix;
use crate::Gf4;

use super::{
    conjugacy_class, fischer_from_class, AffineMat, AffinePerm, GroupElement, GroupError, Permutation,
    TranspositionClass,
};

/// Generators and seed for one of the three shipped element models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GensData {
    Perm { gens: Vec<Permutation>, seed: Permutation },
    Affine { gens: Vec<AffinePerm>, seed: AffinePerm },
    MatGf4 { gens: Vec<AffineMat<Gf4>>, seed: AffineMat<Gf4> },
}

fn space_of<G: GroupElement>(gens: &[G], seed: &G, cap: usize) -> Result<FischerSpace, FischerError> {
    fischer_from_class(&conjugacy_class(gens, seed, cap)?)
}

fn size_of<G: GroupElement>(gens: &[G], seed: &G, cap: usize) -> Result<usize, GroupError> {
    conjugacy_class(gens, seed, cap).map(|c: TranspositionClass<G>| c.len())
}

impl GensData {
    pub fn class_size(&self, cap: usize) -> Result<usize, GroupError> {
        match self {
            GensData::Perm { gens, seed } => size_of(gens, seed, cap),
            GensData::Affine { gens, seed } => size_of(gens, seed, cap),
            GensData::MatGf4 { gens, seed } => size_of(gens, seed, cap),
        }
    }

    pub fn fischer(&self, cap: usize) -> Result<FischerSpace, FischerError> {
        match self {
            GensData::Perm { gens, seed } => space_of(gens, seed, cap),
            GensData::Affine { gens, seed } => space_of(gens, seed, cap),
            GensData::MatGf4 { gens, seed } => space_of(gens, seed, cap),
        }
    }
}

enum Header {
    Perm(usize),
    Affine { p: u8, m: usize, sum_zero: bool },
    Mat(usize),
}

fn perr(line_no: usize, msg: impl Into<String>) -> GroupError {
    GroupError::Parse(format!("line {line_no}: {}", msg.into()))
}

fn parse_header(toks: &[&str]) -> Result<Header, String> {
    let num = |i: usize| -> Result<usize, String> {
        toks.get(i).and_then(|t| t.parse().ok()).ok_or_else(|| format!("header {:?} needs a number", toks.join(" ")))
    };
    match toks.first().copied() {
        Some("perm") if toks.len() == 2 => Ok(Header::Perm(num(1)?)),
        Some("affineperm") if toks.len() == 3 || toks.len() == 4 => {
            let sum_zero = match toks.get(3) {
                None => false,
                Some(&"sumzero") => true,
                Some(t) => return Err(format!("unknown affineperm option {t:?}")),
            };
            let p = u8::try_from(num(1)?).map_err(|_| "prime too large".to_string())?;
            Ok(Header::Affine { p, m: num(2)?, sum_zero })
        }
        Some("affinemat-gf4") if toks.len() == 2 => Ok(Header::Mat(num(1)?)),
        _ => Err(format!("unknown header {:?}", toks.join(" "))),
    }
}

/// Splits `[a | b | c]` into its `|`-separated fields.
fn bracket_fields(text: &str) -> Result<Vec<&str>, GroupError> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| GroupError::Parse(format!("expected [..] element, found {text:?}")))?;
    Ok(inner.split('|').map(str::trim).collect())
}

fn split_entries(s: &str) -> Vec<&str> {
    s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect()
}

fn parse_ints(s: &str) -> Result<Vec<i64>, GroupError> {
    split_entries(s)
        .into_iter()
        .map(|t| t.parse::<i64>().map_err(|_| GroupError::Parse(format!("bad integer {t:?}"))))
        .collect()
}

pub(crate) fn parse_affine_perm(p: u8, m: usize, sum_zero: bool, text: &str) -> Result<AffinePerm, GroupError> {
    let f = bracket_fields(text)?;
    if f.len() != 2 && f.len() != 3 {
        return Err(GroupError::Parse(format!("affine element {text:?} needs 2 or 3 fields")));
    }
    let v = parse_ints(f[0])?;
    if v.len() != m {
        return Err(GroupError::Parse(format!("vector in {text:?} has length {} instead of {m}", v.len())));
    }
    let perm = Permutation::parse(m, f[1])?;
    let scalars = f.get(2).map(|s| parse_ints(s)).transpose()?;
    AffinePerm::new(p, sum_zero, v, perm, scalars)
}

pub(crate) fn parse_affine_mat(dim: usize, text: &str) -> Result<AffineMat<Gf4>, GroupError> {
    let f = bracket_fields(text)?;
    if f.len() != 2 {
        return Err(GroupError::Parse(format!("matrix element {text:?} needs 2 fields")));
    }
    let scalars = |s: &str| -> Result<Vec<Gf4>, GroupError> {
        split_entries(s).into_iter().map(|t| t.parse::<Gf4>().map_err(GroupError::from)).collect()
    };
    let v = scalars(f[0])?;
    let entries = scalars(f[1])?;
    if v.len() != dim || entries.len() != dim * dim {
        return Err(GroupError::Parse(format!("element {text:?} does not match dimension {dim}")));
    }
    let rows: Vec<Vec<Gf4>> = entries.chunks(dim).map(<[Gf4]>::to_vec).collect();
    AffineMat::new(v, FieldMatrix::from_rows(&rows)?)
}

pub fn parse_gens(text: &str) -> Result<GensData, GroupError> {
    let mut header: Option<Header> = None;
    let mut perms = Vec::new();
    let mut affs = Vec::new();
    let mut mats = Vec::new();
    let mut seed_line: Option<(usize, String)> = None;
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some(h) = &header else {
            let toks: Vec<&str> = content.split_whitespace().collect();
            header = Some(parse_header(&toks).map_err(|m| perr(line_no, m))?);
            continue;
        };
        if seed_line.is_some() {
            return Err(perr(line_no, "nothing may follow the seed line"));
        }
        let (is_seed, body) = match content.strip_prefix("seed") {
            Some(rest) => (true, rest.trim()),
            None => (false, content),
        };
        if is_seed {
            seed_line = Some((line_no, body.to_string()));
            continue;
        }
        let wrap = |e: GroupError| perr(line_no, e.to_string());
        match *h {
            Header::Perm(n) => perms.push(Permutation::parse(n, body).map_err(wrap)?),
            Header::Affine { p, m, sum_zero } => affs.push(parse_affine_perm(p, m, sum_zero, body).map_err(wrap)?),
            Header::Mat(d) => mats.push(parse_affine_mat(d, body).map_err(wrap)?),
        }
    }
    let header = header.ok_or_else(|| GroupError::Parse("missing header".into()))?;
    let (seed_no, seed) = seed_line.ok_or_else(|| GroupError::Parse("missing seed line".into()))?;
    let wrap = |e: GroupError| perr(seed_no, e.to_string());
    Ok(match header {
        Header::Perm(n) => GensData::Perm { gens: perms, seed: Permutation::parse(n, &seed).map_err(wrap)? },
        Header::Affine { p, m, sum_zero } => {
            GensData::Affine { gens: affs, seed: parse_affine_perm(p, m, sum_zero, &seed).map_err(wrap)? }
        }
        Header::Mat(d) => GensData::MatGf4 { gens: mats, seed: parse_affine_mat(d, &seed).map_err(wrap)? },
    })
}

pub fn read_gens(path: &Path) -> Result<GensData, GroupError> {
    let text = std::fs::read_to_string(path).map_err(|e| GroupError::Parse(format!("{}: {e}", path.display())))?;
    parse_gens(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_permutations() {
        let g = parse_gens("perm 4\n(1 2)\n(2 3)\n(3 4)\nseed (1 2)\n").unwrap();
        assert_eq!(g.class_size(100).unwrap(), 6);
    }

    #[test]
    fn parses_affine_with_scalars() {
        let text = "affineperm 3 2\n[0,0 | () | -1,-1]\n[1,0 | () | 2,2]\n[0,1 | () | 2,2]\nseed [0,0 | () | 2,2]\n";
        let g = parse_gens(text).unwrap();
        let s = g.fischer(100).unwrap();
        assert_eq!(s.n_points(), 9);
        assert_eq!(s.lines().len(), 12);
    }

    #[test]
    fn parses_gf4_matrices() {
        let text = "affinemat-gf4 3\n[0,0,0 | 1 0 0 1 1 0 1 0 1]\nseed [0,0,0 | 1 0 0 1 1 0 1 0 1]\n";
        let GensData::MatGf4 { gens, seed } = parse_gens(text).unwrap() else { panic!("wrong model") };
        assert_eq!(gens.len(), 1);
        assert!(seed.compose(&seed).unwrap().is_identity());
        let text = "affinemat-gf4 3\nseed [0,0,w | 1 0 1 0 1 w+1 0 0 1]\n";
        assert!(parse_gens(text).is_ok());
    }

    #[test]
    fn reports_bad_input() {
        assert!(parse_gens("perm 3\n(1 2)\n").is_err());
        assert!(parse_gens("group 3\n").is_err());
        let e = parse_gens("perm 3\n(1 5)\nseed (1 2)\n").unwrap_err();
        assert!(e.to_string().contains("line 2"));
        assert!(parse_gens("affineperm 3 4 sumzero\nseed [1,0,0,0 | (1 2)]\n").is_err());
        assert!(parse_gens("affinemat-gf4 3\nseed [0,0,0 | 0 0 0 0 0 0 0 0 0]\n").is_err());
    }
}
