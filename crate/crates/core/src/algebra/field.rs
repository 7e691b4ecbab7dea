use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;

/// Exact rationals.
pub type Q = BigRational;

/// A commutative field with exact arithmetic.
///
/// Arithmetic goes through the by-value `std::ops` traits (with a borrowed
/// right-hand side), so generic code reads `a.clone() * &b`.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn inv(&self) -> Result<Self, AlgebraError>;

    fn div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        Ok(self.clone() * &rhs.inv()?)
    }

    /// Integer power; negative exponents invert.
    fn pow(&self, e: i64) -> Result<Self, AlgebraError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.clone() * &sq;
            }
        }
        Ok(acc)
    }

    /// Number of nested transcendental variables over Q (0 for Q itself).
    fn depth() -> usize;

    /// Whether the element prints as a single term (no parentheses needed
    /// when it appears as a coefficient).
    fn is_atomic(&self) -> bool;

    /// Whether the printed form starts with a minus sign.
    fn is_negative_display(&self) -> bool {
        false
    }
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn inv(&self) -> Result<Self, AlgebraError> {
        if Zero::is_zero(self) {
            Err(AlgebraError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn depth() -> usize {
        0
    }
    fn is_atomic(&self) -> bool {
        true
    }
    fn is_negative_display(&self) -> bool {
        self.is_negative()
    }
}

/// Shorthand for a rational from a numerator/denominator pair.
pub fn rat(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The printable name of the variable adjoined at a given nesting depth.
pub(crate) fn var_name(depth: usize) -> &'static str {
    match depth {
        1 => "q",
        2 => "z",
        3 => "w",
        _ => "t",
    }
}
