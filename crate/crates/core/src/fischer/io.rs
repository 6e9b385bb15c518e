//! The `.fischer` text format.
//!
//! ```text
//! # comment
//! fischer 6
//! label 0 a
//! 0 1 2
//! 0 4 5
//! ```

use std::fmt::Write as _;
use std::path::Path;

use super::{FischerError, FischerSpace, Line};

pub fn parse_fischer(text: &str) -> Result<FischerSpace, FischerError> {
    let mut n_points: Option<usize> = None;
    let mut lines: Vec<Line> = Vec::new();
    let mut labels: Vec<Option<String>> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |msg: String| FischerError::Parse { line_no, msg };
        let mut toks = content.split_whitespace();
        let first = toks.next().expect("content is non-empty");
        let Some(n) = n_points else {
            if first != "fischer" {
                return Err(err(format!("expected `fischer <n_points>` header, found {content:?}")));
            }
            let n = toks
                .next()
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| err("header needs a point count".into()))?;
            n_points = Some(n);
            labels = vec![None; n];
            continue;
        };
        if first == "label" {
            let idx = toks
                .next()
                .and_then(|t| t.parse::<usize>().ok())
                .filter(|&i| i < n)
                .ok_or_else(|| err("label needs a point index below the point count".into()))?;
            let rest: Vec<&str> = toks.collect();
            if rest.is_empty() {
                return Err(err("label needs a string".into()));
            }
            labels[idx] = Some(rest.join(" "));
            continue;
        }
        let nums: Result<Vec<usize>, _> = content.split_whitespace().map(str::parse::<usize>).collect();
        match nums {
            Ok(v) if v.len() == 3 => lines.push([v[0], v[1], v[2]]),
            _ => return Err(err(format!("bad triple {content:?}"))),
        }
    }
    let n = n_points.ok_or(FischerError::Parse { line_no: 0, msg: "missing `fischer` header".into() })?;
    let labels = labels.into_iter().enumerate().map(|(i, l)| l.unwrap_or_else(|| i.to_string())).collect();
    FischerSpace::validate(n, &lines, Some(labels))
}

/// Serializes a space: header, non-default labels, then the sorted lines.
pub fn write_fischer(space: &FischerSpace) -> String {
    let mut out = String::new();
    if let Some(m) = space.meta() {
        let _ = writeln!(out, "# {} (rank {}, symplectic {})", m.name, m.rank, m.symplectic);
    }
    let _ = writeln!(out, "fischer {}", space.n_points());
    for (i, l) in space.labels().iter().enumerate() {
        if *l != i.to_string() {
            let _ = writeln!(out, "label {i} {l}");
        }
    }
    for l in space.lines() {
        let _ = writeln!(out, "{} {} {}", l[0], l[1], l[2]);
    }
    out
}

pub fn read_fischer(path: &Path) -> Result<FischerSpace, FischerError> {
    let text = std::fs::read_to_string(path).map_err(|e| FischerError::Io(format!("{}: {e}", path.display())))?;
    parse_fischer(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_labels() {
        let text = "# the complete quadrilateral\nfischer 6\nlabel 0 a\n0 1 2 # l\n0 4 5\n1 3 5\n\n2 3 4\n";
        let s = parse_fischer(text).unwrap();
        assert_eq!(s.n_points(), 6);
        assert_eq!(s.label(0), "a");
        assert_eq!(s.label(1), "1");
        assert_eq!(s.lines().len(), 4);
    }

    #[test]
    fn malformed_triple_is_named() {
        let e = parse_fischer("fischer 3\n0 1\n").unwrap_err();
        match e {
            FischerError::Parse { line_no, msg } => {
                assert_eq!(line_no, 2);
                assert!(msg.contains("0 1"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_fischer("0 1 2\n").is_err());
    }

    #[test]
    fn writer_sorts_triples() {
        let s = parse_fischer("fischer 6\n5 4 0\n2 1 0\n3 4 2\n5 3 1\n").unwrap();
        let text = write_fischer(&s);
        assert_eq!(text, "fischer 6\n0 1 2\n0 4 5\n1 3 5\n2 3 4\n");
        assert_eq!(parse_fischer(&text).unwrap(), s);
    }
}
