//! Exact field arithmetic over `Q` and `F_{p^k}` (prime `p >= 5`, `k <= 3`),
//! univariate polynomials, and 3x3 matrices.
//!
//! No floating point appears anywhere in this crate: rationals are
//! arbitrary-precision fractions and finite-field elements are fixed-size
//! residue vectors.

pub mod finite;
pub mod matrix;
pub mod unipoly;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use finite::{inv_mod_p, is_prime, FiniteElem, FiniteField, MAX_PRIME};
pub use matrix::Matrix3;
pub use unipoly::UniPoly;

/// Callers may enumerate fields (root scans, point counts) only up to this
/// many elements; larger requests fail with an explicit error instead of
/// silently stalling.
pub const ENUM_CAP: u64 = 1 << 24;

/// A coefficient field: the rationals or a finite field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Finite(FiniteField),
}

impl Field {
    /// `F_{p^k}` with the canonical modulus (see [`FiniteField::extension`]).
    pub fn finite(p: u64, k: u8) -> Result<Self> {
        Ok(Field::Finite(FiniteField::extension(p, k)?))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::finite(p, 1)
    }

    /// 0 for `Q`, `p` otherwise.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Finite(f) => f.p(),
        }
    }

    /// Number of elements for finite fields.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Finite(f) => Some(f.order()),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Finite(_))
    }

    pub fn finite_field(&self) -> Option<FiniteField> {
        match self {
            Field::Rational => None,
            Field::Finite(f) => Some(*f),
        }
    }

    pub fn zero(&self) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rational(BigRational::zero()),
            Field::Finite(f) => FieldElem::Finite(f.zero()),
        }
    }

    pub fn one(&self) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rational(BigRational::one()),
            Field::Finite(f) => FieldElem::Finite(f.one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rational(BigRational::from(BigInt::from(n))),
            Field::Finite(f) => FieldElem::Finite(f.from_i64(n)),
        }
    }

    /// The fraction `n/d`; fails when `d` is zero in the field.
    pub fn from_ratio(&self, n: i64, d: i64) -> Result<FieldElem> {
        let den = self.from_i64(d);
        if den.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(&self.from_i64(n) * &den.inv()?)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Finite(ff) => write!(f, "{ff}"),
        }
    }
}

/// An element of a [`Field`].
///
/// Arithmetic on mismatched fields is a programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(BigRational),
    Finite(FiniteElem),
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Rational(_) => Field::Rational,
            FieldElem::Finite(e) => Field::Finite(e.field()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(r) => r.is_zero(),
            FieldElem::Finite(e) => e.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rational(r) => r.is_one(),
            FieldElem::Finite(e) => e.is_one(),
        }
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<FieldElem> {
        match self {
            FieldElem::Rational(r) => {
                if r.is_zero() {
                    Err(Error::NotInvertible)
                } else {
                    Ok(FieldElem::Rational(r.recip()))
                }
            }
            FieldElem::Finite(e) => Ok(FieldElem::Finite(e.inv()?)),
        }
    }

    pub fn pow(&self, e: u64) -> FieldElem {
        match self {
            FieldElem::Rational(r) => {
                let e32: i32 = e.try_into().expect("exponent too large for rational pow");
                FieldElem::Rational(r.pow(e32))
            }
            FieldElem::Finite(x) => FieldElem::Finite(x.pow(e)),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElem::Rational(r) => Some(r),
            FieldElem::Finite(_) => None,
        }
    }

    pub fn as_finite(&self) -> Option<FiniteElem> {
        match self {
            FieldElem::Rational(_) => None,
            FieldElem::Finite(e) => Some(*e),
        }
    }

    /// Reduce a rational element into `f` (denominator must be a unit mod p);
    /// finite elements must already live in `f`.
    pub fn reduce_into(&self, f: &FiniteField) -> Result<FiniteElem> {
        match self {
            FieldElem::Rational(r) => {
                let num = r.numer().mod_floor_u64(f.p());
                let den = r.denom().mod_floor_u64(f.p());
                let den_inv = inv_mod_p(den, f.p()).ok_or(Error::BadReduction(f.p()))?;
                Ok(f.from_u64(num).mul(&f.from_u64(den_inv)))
            }
            FieldElem::Finite(e) => {
                if e.field() == *f {
                    Ok(*e)
                } else {
                    Err(Error::InvalidInput("element lives in a different finite field".into()))
                }
            }
        }
    }

    /// Total order within one field: rationals by value, finite elements by
    /// canonical index. Panics on mixed fields.
    pub fn cmp_same_field(&self, other: &FieldElem) -> Ordering {
        match (self, other) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => a.cmp(b),
            (FieldElem::Finite(a), FieldElem::Finite(b)) => a.index().cmp(&b.index()),
            _ => panic!("comparing elements of different fields"),
        }
    }
}

/// Helper: value of a `BigInt` reduced into `0..p`.
trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num_integer::Integer;
        let m = self.mod_floor(&BigInt::from(p));
        let (_, digits) = m.to_u64_digits();
        match digits.len() {
            0 => 0,
            1 => digits[0],
            _ => unreachable!("residue below p < 2^21"),
        }
    }
}

impl std::ops::Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a + b),
            (FieldElem::Finite(a), FieldElem::Finite(b)) => FieldElem::Finite(a.add(b)),
            _ => panic!("adding elements of different fields"),
        }
    }
}

impl std::ops::Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a - b),
            (FieldElem::Finite(a), FieldElem::Finite(b)) => FieldElem::Finite(a.sub(b)),
            _ => panic!("subtracting elements of different fields"),
        }
    }
}

impl std::ops::Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a * b),
            (FieldElem::Finite(a), FieldElem::Finite(b)) => FieldElem::Finite(a.mul(b)),
            _ => panic!("multiplying elements of different fields"),
        }
    }
}

impl std::ops::Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(-a),
            FieldElem::Finite(a) => FieldElem::Finite(a.neg()),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(r) => write!(f, "{r}"),
            FieldElem::Finite(e) => write!(f, "{e}"),
        }
    }
}
