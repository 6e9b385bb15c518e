use std::fmt;

use super::{GroupElement, GroupError};

/// A permutation of `0..n`, composed left to right: `p.compose(q)` applies
/// `p` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u16).collect() }
    }

    pub fn from_images(images: Vec<u16>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i as usize >= n || seen[i as usize] {
                return Err(GroupError::Parse(format!("{images:?} is not a permutation")));
            }
            seen[i as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of `0..n` from 0-based cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut images: Vec<u16> = (0..n as u16).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for &p in c {
                if p >= n {
                    return Err(GroupError::Parse(format!("point {} outside 1..{n}", p + 1)));
                }
                if used[p] {
                    return Err(GroupError::Parse(format!("point {} repeated in cycles", p + 1)));
                }
                used[p] = true;
            }
            for (k, &p) in c.iter().enumerate() {
                images[p] = c[(k + 1) % c.len()] as u16;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based disjoint-cycle notation such as `(1 2)(3 4)` or `()`.
    pub fn parse(n: usize, text: &str) -> Result<Self, GroupError> {
        let t = text.trim();
        let mut cycles = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.find(')').map(|end| (&r[..end], &r[end + 1..])))
                .ok_or_else(|| GroupError::Parse(format!("bad cycle notation {text:?}")))?;
            let pts: Result<Vec<usize>, _> = body
                .0
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>())
                .collect();
            let pts = pts.map_err(|_| GroupError::Parse(format!("bad cycle notation {text:?}")))?;
            if pts.contains(&0) {
                return Err(GroupError::Parse(format!("cycle points are 1-based in {text:?}")));
            }
            if !pts.is_empty() {
                cycles.push(pts.into_iter().map(|p| p - 1).collect());
            }
            rest = body.1.trim_start();
        }
        Self::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// Disjoint cycles of length at least 2, 0-based, each starting at its
    /// smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut p = self.image(start);
            while p != start {
                seen[p] = true;
                c.push(p);
                p = self.image(p);
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    pub(crate) fn then(&self, other: &Self) -> Permutation {
        Permutation { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub(crate) fn inv(&self) -> Permutation {
        let mut images = vec![0u16; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u16;
        }
        Permutation { images }
    }
}

impl GroupElement for Permutation {
    fn compose(&self, other: &Self) -> Result<Self, GroupError> {
        if self.degree() != other.degree() {
            return Err(GroupError::Mismatch(format!(
                "permutations of degree {} and {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(self.then(other))
    }

    fn inverse(&self) -> Self {
        self.inv()
    }

    fn identity_like(&self) -> Self {
        Permutation::identity(self.degree())
    }

    fn key(&self) -> Vec<u8> {
        self.images.iter().flat_map(|i| i.to_be_bytes()).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_display() {
        let p = Permutation::parse(4, "(1 2)(3 4)").unwrap();
        assert_eq!(p.to_string(), "(1 2)(3 4)");
        assert_eq!(Permutation::parse(3, "()").unwrap(), Permutation::identity(3));
        assert_eq!(Permutation::parse(5, "(3,1, 2)").unwrap().to_string(), "(1 2 3)");
        assert!(Permutation::parse(3, "(1 4)").is_err());
        assert!(Permutation::parse(3, "(1 2)(2 3)").is_err());
        assert!(Permutation::parse(3, "(0 1)").is_err());
        assert!(Permutation::parse(3, "1 2").is_err());
    }

    #[test]
    fn composes_left_to_right() {
        let a = Permutation::parse(3, "(1 2)").unwrap();
        let b = Permutation::parse(3, "(2 3)").unwrap();
        // 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
        assert_eq!(a.compose(&b).unwrap().to_string(), "(1 3 2)");
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u16).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn group_axioms(a in arb_perm(6), b in arb_perm(6), c in arb_perm(6)) {
            let ab_c = a.compose(&b).unwrap().compose(&c).unwrap();
            let a_bc = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            prop_assert_eq!(a.compose(&a.inverse()).unwrap(), Permutation::identity(6));
            prop_assert_eq!(a.compose(&a.identity_like()).unwrap(), a.clone());
            prop_assert_eq!(Permutation::parse(6, &a.to_string()).unwrap(), a);
        }
    }
}
