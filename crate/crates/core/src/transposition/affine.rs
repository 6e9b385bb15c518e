//! Affine group elements `[v, g]` with product `[v, g][w, h] = [v·h + w, gh]`,
//! where `v·h` is the right action of the linear part on row vectors.

use std::fmt;

use crate::gf::{FieldMatrix, FieldScalar};

use super::{GroupElement, GroupError, Permutation};

/// `[v, g]` with `v ∈ F_p^m` and `g` a monomial transformation: a coordinate
/// permutation together with a unit scalar per coordinate.
///
/// The linear part acts by `(v·g)[σ(i)] = c[i]·v[i]`. With all scalars equal
/// to one this is the permutation module; `sum_zero` restricts vectors to the
/// submodule with coordinate sum zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffinePerm {
    p: u8,
    sum_zero: bool,
    v: Vec<u8>,
    perm: Permutation,
    scalars: Vec<u8>,
}

fn is_prime(p: u8) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn inv_mod(a: u8, p: u8) -> u8 {
    // p is a small prime; brute force is fine
    (1..p).find(|&x| (a as u16 * x as u16) % p as u16 == 1).expect("unit mod p")
}

impl AffinePerm {
    pub fn new(
        p: u8,
        sum_zero: bool,
        v: Vec<i64>,
        perm: Permutation,
        scalars: Option<Vec<i64>>,
    ) -> Result<Self, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::Parse(format!("{p} is not a prime")));
        }
        let m = v.len();
        if perm.degree() != m {
            return Err(GroupError::Mismatch(format!(
                "vector of length {m} with permutation of degree {}",
                perm.degree()
            )));
        }
        let red = |x: i64| x.rem_euclid(p as i64) as u8;
        let v: Vec<u8> = v.into_iter().map(red).collect();
        let scalars: Vec<u8> = match scalars {
            Some(s) if s.len() == m => s.into_iter().map(red).collect(),
            Some(s) => return Err(GroupError::Mismatch(format!("{} scalars for dimension {m}", s.len()))),
            None => vec![1; m],
        };
        if scalars.contains(&0) {
            return Err(GroupError::Parse("monomial scalars must be units".into()));
        }
        if sum_zero && v.iter().map(|&x| x as u32).sum::<u32>() % p as u32 != 0 {
            return Err(GroupError::Parse(format!("vector {v:?} is not in the sum-zero submodule")));
        }
        if sum_zero && scalars.iter().any(|&c| c != 1) {
            return Err(GroupError::Parse("the sum-zero submodule requires a pure permutation part".into()));
        }
        Ok(AffinePerm { p, sum_zero, v, perm, scalars })
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    pub fn vector(&self) -> &[u8] {
        &self.v
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    fn act(&self, v: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; v.len()];
        for (i, &x) in v.iter().enumerate() {
            out[self.perm.image(i)] = ((self.scalars[i] as u16 * x as u16) % self.p as u16) as u8;
        }
        out
    }

    fn linear_then(&self, other: &Self) -> (Permutation, Vec<u8>) {
        let perm = self.perm.then(&other.perm);
        let scalars = (0..self.dim())
            .map(|i| ((self.scalars[i] as u16 * other.scalars[self.perm.image(i)] as u16) % self.p as u16) as u8)
            .collect();
        (perm, scalars)
    }
}

impl GroupElement for AffinePerm {
    fn compose(&self, other: &Self) -> Result<Self, GroupError> {
        if (self.p, self.dim(), self.sum_zero) != (other.p, other.dim(), other.sum_zero) {
            return Err(GroupError::Mismatch("affine elements over different modules".into()));
        }
        let vh = other.act(&self.v);
        let v = vh.iter().zip(&other.v).map(|(&a, &b)| (a + b) % self.p).collect();
        let (perm, scalars) = self.linear_then(other);
        Ok(AffinePerm { p: self.p, sum_zero: self.sum_zero, v, perm, scalars })
    }

    fn inverse(&self) -> Self {
        let perm = self.perm.inv();
        let mut scalars = vec![1u8; self.dim()];
        for i in 0..self.dim() {
            scalars[self.perm.image(i)] = inv_mod(self.scalars[i], self.p);
        }
        let lin = AffinePerm { p: self.p, sum_zero: self.sum_zero, v: vec![0; self.dim()], perm, scalars };
        let v = lin.act(&self.v).into_iter().map(|x| (self.p - x) % self.p).collect();
        AffinePerm { v, ..lin }
    }

    fn identity_like(&self) -> Self {
        AffinePerm {
            p: self.p,
            sum_zero: self.sum_zero,
            v: vec![0; self.dim()],
            perm: Permutation::identity(self.dim()),
            scalars: vec![1; self.dim()],
        }
    }

    fn key(&self) -> Vec<u8> {
        let mut k = self.v.clone();
        k.extend(self.perm.key());
        k.extend(&self.scalars);
        k
    }
}

impl fmt::Display for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.v.iter().map(u8::to_string).collect();
        write!(f, "[{} | {}", v.join(","), self.perm)?;
        if self.scalars.iter().any(|&c| c != 1) {
            let s: Vec<String> = self.scalars.iter().map(u8::to_string).collect();
            write!(f, " | {}", s.join(","))?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffinePerm(p={}){self}", self.p)
    }
}

/// `[v, g]` with `v ∈ F^n` a row vector and `g ∈ GL_n(F)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffineMat<F: FieldScalar> {
    v: Vec<F>,
    g: FieldMatrix<F>,
}

impl<F: FieldScalar> AffineMat<F> {
    pub fn new(v: Vec<F>, g: FieldMatrix<F>) -> Result<Self, GroupError> {
        if !g.is_square() || g.rows() != v.len() {
            return Err(GroupError::Mismatch(format!(
                "vector of length {} with a {}x{} matrix",
                v.len(),
                g.rows(),
                g.cols()
            )));
        }
        if g.inverse().is_err() {
            return Err(GroupError::Parse("linear part is singular".into()));
        }
        Ok(AffineMat { v, g })
    }

    pub fn linear(g: FieldMatrix<F>) -> Result<Self, GroupError> {
        Self::new(vec![F::zero(); g.rows()], g)
    }

    pub fn vector(&self) -> &[F] {
        &self.v
    }

    pub fn matrix(&self) -> &FieldMatrix<F> {
        &self.g
    }

    fn row_times(v: &[F], g: &FieldMatrix<F>) -> Vec<F> {
        (0..g.cols()).map(|j| v.iter().enumerate().fold(F::zero(), |acc, (i, &x)| acc + x * g[(i, j)])).collect()
    }
}

impl<F: FieldScalar> GroupElement for AffineMat<F> {
    fn compose(&self, other: &Self) -> Result<Self, GroupError> {
        if self.v.len() != other.v.len() {
            return Err(GroupError::Mismatch("affine matrices of different degree".into()));
        }
        let vh = Self::row_times(&self.v, &other.g);
        let v = vh.into_iter().zip(&other.v).map(|(a, &b)| a + b).collect();
        Ok(AffineMat { v, g: &self.g * &other.g })
    }

    fn inverse(&self) -> Self {
        let gi = self.g.inverse().expect("linear part is invertible");
        let v = Self::row_times(&self.v, &gi).into_iter().map(|x| -x).collect();
        AffineMat { v, g: gi }
    }

    fn identity_like(&self) -> Self {
        AffineMat { v: vec![F::zero(); self.v.len()], g: FieldMatrix::identity(self.v.len()) }
    }

    fn key(&self) -> Vec<u8> {
        let mut k: Vec<u8> = self.v.iter().map(|x| x.bits()).collect();
        k.extend(self.g.to_bytes());
        k
    }
}

impl<F: FieldScalar> fmt::Display for AffineMat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.v.iter().map(|x| x.to_string()).collect();
        let g: Vec<String> = self.g.to_bytes().iter().map(u8::to_string).collect();
        write!(f, "[{} | {}]", v.join(","), g.join(" "))
    }
}

impl<F: FieldScalar> fmt::Debug for AffineMat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineMat{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Gf4;
    use proptest::prelude::*;

    fn perm(n: usize, s: &str) -> Permutation {
        Permutation::parse(n, s).unwrap()
    }

    #[test]
    fn affine_perm_product_convention() {
        // [v, σ][w, τ] = [v·τ + w, στ] over F_3^3
        let a = AffinePerm::new(3, false, vec![1, 2, 0], perm(3, "(1 2)"), None).unwrap();
        let b = AffinePerm::new(3, false, vec![0, 0, 1], perm(3, "(2 3)"), None).unwrap();
        let ab = a.compose(&b).unwrap();
        // v·τ moves coordinate 2 to 3: (1, 0, 2); plus w = (1, 0, 0)
        assert_eq!(ab.vector(), &[1, 0, 0]);
        assert_eq!(ab.permutation().to_string(), "(1 3 2)");
    }

    #[test]
    fn sum_zero_is_enforced() {
        assert!(AffinePerm::new(3, true, vec![1, 0, 0, 0], perm(4, "()"), None).is_err());
        assert!(AffinePerm::new(3, true, vec![1, 2, 0, 0], perm(4, "()"), None).is_ok());
        assert!(AffinePerm::new(4, false, vec![1], perm(1, "()"), None).is_err());
    }

    #[test]
    fn sign_action_gives_involutions() {
        let t = AffinePerm::new(3, false, vec![1, 2], perm(2, "()"), Some(vec![-1, -1])).unwrap();
        let sq = t.compose(&t).unwrap();
        assert_eq!(sq, t.identity_like());
        assert_eq!(t.to_string(), "[1,2 | () | 2,2]");
    }

    fn arb_affine() -> impl Strategy<Value = AffinePerm> {
        (
            proptest::collection::vec(-3i64..3, 4),
            Just((0..4u16).collect::<Vec<_>>()).prop_shuffle(),
            proptest::collection::vec(1i64..3, 4),
        )
            .prop_map(|(v, im, s)| {
                AffinePerm::new(3, false, v, Permutation::from_images(im).unwrap(), Some(s)).unwrap()
            })
    }

    fn arb_affine_mat() -> impl Strategy<Value = AffineMat<Gf4>> {
        (proptest::collection::vec(0u8..4, 3), proptest::collection::vec(0u8..4, 9)).prop_filter_map(
            "singular",
            |(v, g)| {
                let v: Vec<Gf4> = v.into_iter().map(|b| Gf4::from_bits(b).unwrap()).collect();
                let rows: Vec<Vec<Gf4>> =
                    g.chunks(3).map(|r| r.iter().map(|&b| Gf4::from_bits(b).unwrap()).collect()).collect();
                AffineMat::new(v, FieldMatrix::from_rows(&rows).unwrap()).ok()
            },
        )
    }

    proptest! {
        #[test]
        fn affine_perm_group_axioms(a in arb_affine(), b in arb_affine(), c in arb_affine()) {
            let l = a.compose(&b).unwrap().compose(&c).unwrap();
            let r = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            prop_assert_eq!(a.compose(&a.inverse()).unwrap(), a.identity_like());
            prop_assert_eq!(a.inverse().compose(&a).unwrap(), a.identity_like());
        }

        #[test]
        fn affine_mat_group_axioms(a in arb_affine_mat(), b in arb_affine_mat(), c in arb_affine_mat()) {
            let l = a.compose(&b).unwrap().compose(&c).unwrap();
            let r = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            prop_assert_eq!(a.compose(&a.inverse()).unwrap(), a.identity_like());
        }
    }
}
