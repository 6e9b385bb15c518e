//! 3-transposition groups: black-box group elements, conjugacy-class
//! enumeration and the Fischer space of a class.

mod affine;
mod gens;
mod perm;
mod presets;

pub use affine::{AffineMat, AffinePerm};
pub use gens::{parse_gens, read_gens, GensData};
pub use perm::Permutation;
pub use presets::{preset, PRESETS};

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::Hash;

use thiserror::Error;

use crate::fischer::{FischerError, FischerSpace, Line};
use crate::gf::GfError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("incompatible elements: {0}")]
    Mismatch(String),
    #[error("seed {0} is not an involution")]
    NotInvolution(String),
    #[error("members {i} and {j} have product of order {order}, so the class is not a class of 3-transpositions")]
    NotThreeTransposition { i: usize, j: usize, order: u32 },
    #[error("conjugacy class exceeds the cap of {0} elements")]
    CapExceeded(usize),
    #[error("element order exceeds {0}")]
    OrderCapExceeded(u32),
    #[error("members {i} and {j} have ded != ede")]
    InconsistentLine { i: usize, j: usize },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// A finite group element given as a black box.
///
/// `key` is a canonical serialization: equal elements have equal keys and
/// class enumeration orders elements by it.
pub trait GroupElement: Clone + Eq + Hash + fmt::Display + fmt::Debug + Send + Sync {
    fn compose(&self, other: &Self) -> Result<Self, GroupError>;
    fn inverse(&self) -> Self;
    fn identity_like(&self) -> Self;
    fn key(&self) -> Vec<u8>;

    fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }

    /// `g⁻¹ · self · g`.
    fn conjugate_by(&self, g: &Self) -> Result<Self, GroupError> {
        g.inverse().compose(self)?.compose(g)
    }
}

pub const ORDER_CAP: u32 = 12;
pub const DEFAULT_CLASS_CAP: usize = 10_000;

/// Least `n ≥ 1` with `(de)^n = 1`, searched up to [`ORDER_CAP`].
pub fn product_order<G: GroupElement>(d: &G, e: &G) -> Result<u32, GroupError> {
    let de = d.compose(e)?;
    let mut acc = de.clone();
    for n in 1..=ORDER_CAP {
        if acc.is_identity() {
            return Ok(n);
        }
        acc = acc.compose(&de)?;
    }
    Err(GroupError::OrderCapExceeded(ORDER_CAP))
}

/// A conjugacy class of 3-transpositions with its pairwise order table.
#[derive(Debug, Clone)]
pub struct TranspositionClass<G: GroupElement> {
    generators: Vec<G>,
    members: Vec<G>,
    index: HashMap<Vec<u8>, usize>,
    // o(d_i d_j), row-major
    order: Vec<u8>,
}

impl<G: GroupElement> TranspositionClass<G> {
    pub fn generators(&self) -> &[G] {
        &self.generators
    }

    pub fn members(&self) -> &[G] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn order(&self, i: usize, j: usize) -> u8 {
        self.order[i * self.len() + j]
    }

    pub fn index_of(&self, g: &G) -> Option<usize> {
        self.index.get(&g.key()).copied()
    }
}

/// Closes `{seed}` under conjugation by the generators.
///
/// Elements are discovered layer by layer; each new layer is sorted by key,
/// so the resulting indices depend only on the input.
pub fn conjugacy_class<G: GroupElement>(
    generators: &[G],
    seed: &G,
    cap: usize,
) -> Result<TranspositionClass<G>, GroupError> {
    if seed.is_identity() || !seed.compose(seed)?.is_identity() {
        return Err(GroupError::NotInvolution(seed.to_string()));
    }
    let mut seen: HashSet<Vec<u8>> = HashSet::from([seed.key()]);
    let mut members = vec![seed.clone()];
    let mut layer = vec![seed.clone()];
    while !layer.is_empty() {
        let mut next: Vec<(Vec<u8>, G)> = Vec::new();
        for x in &layer {
            for g in generators {
                let c = x.conjugate_by(g)?;
                let k = c.key();
                if seen.insert(k.clone()) {
                    next.push((k, c));
                }
            }
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        if members.len() + next.len() > cap {
            return Err(GroupError::CapExceeded(cap));
        }
        layer = next.into_iter().map(|(_, g)| g).collect();
        members.extend(layer.iter().cloned());
    }

    let n = members.len();
    let mut order = vec![1u8; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let o = product_order(&members[i], &members[j])?;
            if o > 3 {
                return Err(GroupError::NotThreeTransposition { i, j, order: o });
            }
            order[i * n + j] = o as u8;
            order[j * n + i] = o as u8;
        }
    }
    let index = members.iter().enumerate().map(|(i, m)| (m.key(), i)).collect();
    Ok(TranspositionClass { generators: generators.to_vec(), members, index, order })
}

/// Points are the class members; `{d, e, ded}` is a line whenever `o(de) = 3`.
pub fn fischer_from_class<G: GroupElement>(class: &TranspositionClass<G>) -> Result<FischerSpace, FischerError> {
    let n = class.len();
    let m = class.members();
    let mut lines = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            if class.order(i, j) != 3 {
                continue;
            }
            let ded = m[i].compose(&m[j])?.compose(&m[i])?;
            let ede = m[j].compose(&m[i])?.compose(&m[j])?;
            if ded != ede {
                return Err(GroupError::InconsistentLine { i, j }.into());
            }
            let k = class.index_of(&ded).ok_or(GroupError::InconsistentLine { i, j })?;
            let mut l: Line = [i, j, k];
            l.sort_unstable();
            lines.insert(l);
        }
    }
    let labels = m.iter().map(|g| g.to_string()).collect();
    FischerSpace::validate(n, &lines.into_iter().collect::<Vec<_>>(), Some(labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> Vec<Permutation> {
        (1..n).map(|i| Permutation::parse(n, &format!("({} {})", i, i + 1)).unwrap()).collect()
    }

    #[test]
    fn product_orders() {
        let p = |s: &str| Permutation::parse(4, s).unwrap();
        assert_eq!(product_order(&p("(1 2)"), &p("(1 2)")).unwrap(), 1);
        assert_eq!(product_order(&p("(1 2)"), &p("(3 4)")).unwrap(), 2);
        assert_eq!(product_order(&p("(1 2)"), &p("(1 3)")).unwrap(), 3);
        assert_eq!(product_order(&p("()"), &p("(1 3 2 4)")).unwrap(), 4);
    }

    #[test]
    fn order_cap() {
        let n = 13;
        let mut c = Vec::new();
        for i in 1..=n {
            c.push(i.to_string());
        }
        let long = Permutation::parse(n, &format!("({})", c.join(" "))).unwrap();
        let id = Permutation::identity(n);
        assert_eq!(product_order(&long, &id), Err(GroupError::OrderCapExceeded(12)));
    }

    #[test]
    fn sym4_transpositions() {
        let gens = sym(4);
        let class = conjugacy_class(&gens, &gens[0], DEFAULT_CLASS_CAP).unwrap();
        assert_eq!(class.len(), 6);
        let space = fischer_from_class(&class).unwrap();
        assert_eq!(space.lines().len(), 4);
        assert!(space.is_symplectic_type());
    }

    #[test]
    fn class_is_closed_and_deterministic() {
        let gens = sym(5);
        let a = conjugacy_class(&gens, &gens[0], DEFAULT_CLASS_CAP).unwrap();
        let b = conjugacy_class(&gens, &gens[0], DEFAULT_CLASS_CAP).unwrap();
        assert_eq!(a.members(), b.members());
        assert_eq!(a.len(), 10);
        for d in a.members() {
            for g in &gens {
                assert!(a.index_of(&d.conjugate_by(g).unwrap()).is_some());
            }
        }
    }

    #[test]
    fn rejects_non_involutions_and_large_orders() {
        let gens = sym(4);
        let three = Permutation::parse(4, "(1 2 3)").unwrap();
        assert!(matches!(conjugacy_class(&gens, &three, 100), Err(GroupError::NotInvolution(_))));
        // double transpositions of Sym(6) have products of order 4
        let gens6 = sym(6);
        let dt = Permutation::parse(6, "(1 2)(3 4)").unwrap();
        assert!(matches!(conjugacy_class(&gens6, &dt, 100), Err(GroupError::NotThreeTransposition { .. })));
        assert_eq!(conjugacy_class(&gens, &gens[0], 3).unwrap_err(), GroupError::CapExceeded(3));
    }
}
