//! Arithmetic in GF(2^k), 1 <= k <= 8.
//!
//! Each extension degree has one frozen defining polynomial, so bit patterns
//! are stable across runs and reports. Multiplication goes through log/antilog
//! tables that are computed at compile time for the const-generic [`Gf`] type
//! and shared with the runtime [`Field`] descriptor.

// Addition is XOR in characteristic 2.
#![allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]

use std::fmt;
use std::hash::Hash;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::GfError;

/// The defining polynomial for each degree, as a bit pattern (bit i = x^i).
pub const fn modulus_for(k: u8) -> u16 {
    match k {
        1 => 0b10,
        2 => 0b111,
        3 => 0b1011,
        4 => 0b1_0011,
        5 => 0b10_0101,
        6 => 0b100_0011,
        7 => 0b1000_0011,
        8 => 0x11b,
        _ => panic!("extension degree must lie in 1..=8"),
    }
}

const fn poly_mul_mod(a: u16, b: u16, k: u8, modulus: u16) -> u16 {
    let mut acc: u32 = 0;
    let mut i = 0;
    while i < 8 {
        if (b >> i) & 1 == 1 {
            acc ^= (a as u32) << i;
        }
        i += 1;
    }
    let mut deg: i32 = 15;
    while deg >= k as i32 {
        if (acc >> deg) & 1 == 1 {
            acc ^= (modulus as u32) << (deg - k as i32);
        }
        deg -= 1;
    }
    acc as u16
}

/// Log/antilog tables for one field.
#[derive(Debug)]
pub struct Tables {
    degree: u8,
    modulus: u16,
    generator: u8,
    exp: [u8; 512],
    log: [u8; 256],
}

impl Tables {
    pub const fn build(k: u8) -> Tables {
        let modulus = modulus_for(k);
        let units = (1u16 << k) - 1;
        // smallest primitive element
        let mut generator = 1u16;
        loop {
            let mut x = generator;
            let mut ord = 1u16;
            while x != 1 {
                x = poly_mul_mod(x, generator, k, modulus);
                ord += 1;
            }
            if ord == units {
                break;
            }
            generator += 1;
        }
        let mut exp = [0u8; 512];
        let mut log = [0u8; 256];
        let mut x = 1u16;
        let mut i = 0usize;
        while i < 512 {
            exp[i] = x as u8;
            if i < units as usize {
                log[x as usize] = i as u8;
            }
            x = poly_mul_mod(x, generator, k, modulus);
            i += 1;
        }
        Tables { degree: k, modulus, generator: generator as u8, exp, log }
    }

    #[inline]
    fn units(&self) -> usize {
        (1usize << self.degree) - 1
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
        }
    }

    #[inline]
    pub fn inv(&self, a: u8) -> Option<u8> {
        if a == 0 {
            None
        } else {
            Some(self.exp[self.units() - self.log[a as usize] as usize])
        }
    }
}

/// Behaviour shared by every scalar field the workbench computes over.
///
/// All implementors have characteristic 2, so subtraction coincides with
/// addition and every element is its own negative.
pub trait FieldScalar:
    Copy
    + Eq
    + Ord
    + Hash
    + Default
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    /// Extension degree k of GF(2^k).
    const DEGREE: u8;

    fn from_bits(bits: u8) -> Result<Self, GfError>;
    fn bits(self) -> u8;
    fn checked_inv(self) -> Option<Self>;

    fn order() -> usize {
        1usize << Self::DEGREE
    }

    /// All field elements in bit-pattern order.
    fn elements() -> Vec<Self> {
        (0..Self::order()).map(|b| Self::from_bits(b as u8).unwrap()).collect()
    }

    fn units() -> Vec<Self> {
        Self::elements().into_iter().filter(|x| !x.is_zero()).collect()
    }

    fn pow(self, mut n: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc *= base;
            }
            base *= base;
            n >>= 1;
        }
        acc
    }

    fn field() -> Field {
        Field::new(Self::DEGREE).expect("scalar degree is always supported")
    }
}

/// An element of GF(2^K), stored as its polynomial bit pattern.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Gf<const K: u8>(u8);

impl<const K: u8> Gf<K> {
    pub const TABLES: Tables = Tables::build(K);
    pub const ZERO: Self = Gf(0);
    pub const ONE: Self = Gf(1);

    /// The class of x, a root of the defining polynomial (for K = 2 this is ω).
    pub const fn x() -> Self {
        if K == 1 {
            Gf(1)
        } else {
            Gf(2)
        }
    }

    pub fn inv(self) -> Result<Self, GfError> {
        self.checked_inv().ok_or(GfError::ZeroInverse)
    }
}

impl<const K: u8> FieldScalar for Gf<K> {
    const DEGREE: u8 = K;

    fn from_bits(bits: u8) -> Result<Self, GfError> {
        if (bits as usize) < (1usize << K) {
            Ok(Gf(bits))
        } else {
            Err(GfError::OutOfRange { bits: bits as u16, k: K })
        }
    }

    #[inline]
    fn bits(self) -> u8 {
        self.0
    }

    #[inline]
    fn checked_inv(self) -> Option<Self> {
        Self::TABLES.inv(self.0).map(Gf)
    }
}

impl<const K: u8> Zero for Gf<K> {
    fn zero() -> Self {
        Gf(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const K: u8> One for Gf<K> {
    fn one() -> Self {
        Gf(1)
    }
}

impl<const K: u8> Add for Gf<K> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Gf(self.0 ^ rhs.0)
    }
}

impl<const K: u8> Sub for Gf<K> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Gf(self.0 ^ rhs.0)
    }
}

impl<const K: u8> Neg for Gf<K> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        self
    }
}

impl<const K: u8> Mul for Gf<K> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Gf(Self::TABLES.mul(self.0, rhs.0))
    }
}

/// Division by zero panics, like integer division.
impl<const K: u8> Div for Gf<K> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in GF(2^k)")
    }
}

impl<const K: u8> AddAssign for Gf<K> {
    fn add_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

impl<const K: u8> SubAssign for Gf<K> {
    fn sub_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

impl<const K: u8> MulAssign for Gf<K> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const K: u8> Sum for Gf<K> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Gf(0), |a, b| a + b)
    }
}

impl<const K: u8> Product for Gf<K> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Gf(1), |a, b| a * b)
    }
}

impl<const K: u8> fmt::Display for Gf<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if K == 2 {
            f.write_str(["0", "1", "w", "w+1"][self.0 as usize])
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl<const K: u8> fmt::Debug for Gf<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf<{K}>({self})")
    }
}

impl<const K: u8> Serialize for Gf<K> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.0)
    }
}

impl<'de, const K: u8> Deserialize<'de> for Gf<K> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let bits = u8::deserialize(d)?;
        Self::from_bits(bits).map_err(serde::de::Error::custom)
    }
}

impl<const K: u8> std::str::FromStr for Gf<K> {
    type Err = GfError;

    /// Accepts decimal bit patterns, and for GF(4) also `w` and `w+1`.
    fn from_str(s: &str) -> Result<Self, GfError> {
        let t = s.trim();
        if K == 2 {
            match t {
                "w" => return Ok(Gf(2)),
                "w+1" | "1+w" => return Ok(Gf(3)),
                _ => {}
            }
        }
        let bits: u8 = t.parse().map_err(|_| GfError::Parse(t.to_string()))?;
        Self::from_bits(bits)
    }
}

/// Runtime descriptor of GF(2^k).
///
/// Two descriptors with equal `k` are interchangeable; they point at the same
/// static tables.
#[derive(Clone, Copy)]
pub struct Field {
    tables: &'static Tables,
}

impl Field {
    pub fn new(k: u8) -> Result<Field, GfError> {
        let tables: &'static Tables = match k {
            1 => &Gf::<1>::TABLES,
            2 => &Gf::<2>::TABLES,
            3 => &Gf::<3>::TABLES,
            4 => &Gf::<4>::TABLES,
            5 => &Gf::<5>::TABLES,
            6 => &Gf::<6>::TABLES,
            7 => &Gf::<7>::TABLES,
            8 => &Gf::<8>::TABLES,
            _ => return Err(GfError::UnsupportedDegree(k)),
        };
        Ok(Field { tables })
    }

    pub fn degree(&self) -> u8 {
        self.tables.degree
    }

    pub fn modulus(&self) -> u16 {
        self.tables.modulus
    }

    /// The primitive element used to build the log tables.
    pub fn generator(&self) -> Fel {
        Fel { bits: self.tables.generator, k: self.degree() }
    }

    pub fn order(&self) -> usize {
        1usize << self.degree()
    }

    pub fn element(&self, bits: u8) -> Result<Fel, GfError> {
        if (bits as usize) < self.order() {
            Ok(Fel { bits, k: self.degree() })
        } else {
            Err(GfError::OutOfRange { bits: bits as u16, k: self.degree() })
        }
    }

    pub fn zero(&self) -> Fel {
        Fel { bits: 0, k: self.degree() }
    }

    pub fn one(&self) -> Fel {
        Fel { bits: 1, k: self.degree() }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fel> + '_ {
        (0..self.order()).map(|b| Fel { bits: b as u8, k: self.degree() })
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.degree() == other.degree()
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#b}", self.degree(), self.modulus())
    }
}

/// A field element tagged with its field at runtime.
///
/// Used where the field is only known at runtime (file input, CLI flags);
/// operations between elements of different fields are rejected.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Fel {
    bits: u8,
    k: u8,
}

impl Fel {
    pub fn bits(self) -> u8 {
        self.bits
    }

    pub fn field(self) -> Field {
        Field::new(self.k).expect("Fel always carries a valid degree")
    }

    fn same_field(self, other: Fel) -> Result<(), GfError> {
        if self.k == other.k {
            Ok(())
        } else {
            Err(GfError::MixedFields { left: self.k, right: other.k })
        }
    }

    pub fn try_add(self, other: Fel) -> Result<Fel, GfError> {
        self.same_field(other)?;
        Ok(Fel { bits: self.bits ^ other.bits, k: self.k })
    }

    pub fn try_mul(self, other: Fel) -> Result<Fel, GfError> {
        self.same_field(other)?;
        Ok(Fel { bits: self.field().tables.mul(self.bits, other.bits), k: self.k })
    }

    pub fn inv(self) -> Result<Fel, GfError> {
        let bits = self.field().tables.inv(self.bits).ok_or(GfError::ZeroInverse)?;
        Ok(Fel { bits, k: self.k })
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    /// Converts into the statically typed field of the same degree.
    pub fn to_scalar<F: FieldScalar>(self) -> Result<F, GfError> {
        if self.k != F::DEGREE {
            return Err(GfError::MixedFields { left: self.k, right: F::DEGREE });
        }
        F::from_bits(self.bits)
    }

    pub fn from_scalar<F: FieldScalar>(x: F) -> Fel {
        Fel { bits: x.bits(), k: F::DEGREE }
    }
}

impl fmt::Display for Fel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 2 {
            f.write_str(["0", "1", "w", "w+1"][self.bits as usize])
        } else {
            write!(f, "{}", self.bits)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type G4 = Gf<2>;
    type G8 = Gf<3>;

    #[test]
    fn omega_squared_is_omega_plus_one() {
        let w = G4::x();
        assert_eq!(w * w, w + G4::ONE);
        assert_eq!(w.to_string(), "w");
        assert_eq!((w * w).to_string(), "w+1");
    }

    #[test]
    fn omega_inverse() {
        let w = G4::x();
        assert_eq!(w.inv().unwrap(), w + G4::ONE);
        assert_eq!(G4::ONE.inv().unwrap(), G4::ONE);
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(G8::ZERO.inv(), Err(GfError::ZeroInverse));
        let f = Field::new(3).unwrap();
        assert_eq!(f.zero().inv(), Err(GfError::ZeroInverse));
    }

    #[test]
    fn gf8_exhaustive_associativity_and_inverses() {
        let els = G8::elements();
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    assert_eq!(a * (b * c), (a * b) * c);
                }
            }
        }
        for a in G8::units() {
            assert_eq!(a * a.inv().unwrap(), G8::ONE);
        }
    }

    // Schoolbook multiply, independent of the log tables.
    fn slow_mul(k: u8, a: u8, b: u8) -> u8 {
        let m = modulus_for(k) as u32;
        let mut acc = 0u32;
        for i in 0..8 {
            if (b >> i) & 1 == 1 {
                acc ^= (a as u32) << i;
            }
        }
        for deg in (k as u32..16).rev() {
            if (acc >> deg) & 1 == 1 {
                acc ^= m << (deg - k as u32);
            }
        }
        acc as u8
    }

    #[test]
    fn tables_agree_with_schoolbook_product() {
        for k in 1..=8u8 {
            let f = Field::new(k).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(a.try_mul(b).unwrap().bits(), slow_mul(k, a.bits(), b.bits()), "k={k}");
                }
            }
        }
    }

    #[test]
    fn field_axioms_small_degrees() {
        fn check<F: FieldScalar>() {
            let els = F::elements();
            for &a in &els {
                assert!((a + a).is_zero());
                assert_eq!(a * F::one(), a);
                for &b in &els {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    for &c in &els {
                        assert_eq!(a * (b + c), a * b + a * c);
                        assert_eq!((a + b) + c, a + (b + c));
                        assert_eq!((a * b) * c, a * (b * c));
                    }
                }
                if !a.is_zero() {
                    assert_eq!(a * a.checked_inv().unwrap(), F::one());
                }
            }
        }
        check::<Gf<1>>();
        check::<Gf<2>>();
        check::<Gf<3>>();
    }

    #[test]
    fn units_form_a_cyclic_group() {
        for k in 1..=8u8 {
            let f = Field::new(k).unwrap();
            let g = f.generator();
            let mut seen = std::collections::BTreeSet::new();
            let mut x = f.one();
            for _ in 0..f.order() - 1 {
                seen.insert(x.bits());
                x = x.try_mul(g).unwrap();
            }
            assert_eq!(seen.len(), f.order() - 1);
            assert_eq!(x, f.one());
        }
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = Field::new(2).unwrap().one();
        let b = Field::new(3).unwrap().one();
        assert_eq!(a.try_mul(b), Err(GfError::MixedFields { left: 2, right: 3 }));
        assert!(a.try_add(b).is_err());
        assert!(a.to_scalar::<Gf<3>>().is_err());
    }

    #[test]
    fn parse_and_serialize() {
        assert_eq!("w+1".parse::<G4>().unwrap(), G4::from_bits(3).unwrap());
        assert_eq!("2".parse::<G4>().unwrap(), G4::x());
        assert!("4".parse::<G4>().is_err());
        assert_eq!(serde_json::to_string(&G4::x()).unwrap(), "2");
    }
}
