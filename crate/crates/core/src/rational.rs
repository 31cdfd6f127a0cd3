//! Exact rational numbers.
//!
//! Every rate, entropy value and sum-rate estimate is a [`Rational`]. Values are
//! kept in lowest terms with a positive denominator. Operator arithmetic panics on
//! overflow instead of wrapping; the `checked_*` methods report it as `None`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact fraction `numer / denom` in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    /// Builds `numer / denom`, reducing to lowest terms.
    pub fn new(numer: i128, denom: i128) -> Result<Self, Error> {
        if denom == 0 {
            return Err(Error::ZeroDenominator);
        }
        if numer == i128::MIN || denom == i128::MIN {
            return Err(Error::Overflow);
        }
        Ok(Rational(Ratio::new(numer, denom)))
    }

    pub fn from_integer(value: i128) -> Self {
        Rational(Ratio::from_integer(value))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Smallest integer not below `self`.
    pub fn ceil(&self) -> Rational {
        Rational(self.0.ceil())
    }

    /// Largest integer not above `self`.
    pub fn floor(&self) -> Rational {
        Rational(self.0.floor())
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<i128> {
        self.is_integer().then(|| self.numer())
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn checked_add(&self, rhs: &Rational) -> Option<Rational> {
        self.0.checked_add(&rhs.0).map(Rational)
    }

    pub fn checked_sub(&self, rhs: &Rational) -> Option<Rational> {
        self.0.checked_sub(&rhs.0).map(Rational)
    }

    pub fn checked_mul(&self, rhs: &Rational) -> Option<Rational> {
        self.0.checked_mul(&rhs.0).map(Rational)
    }

    /// `None` on overflow or division by zero.
    pub fn checked_div(&self, rhs: &Rational) -> Option<Rational> {
        if rhs.is_zero() {
            return None;
        }
        self.0.checked_div(&rhs.0).map(Rational)
    }

    pub fn min(self, other: Rational) -> Rational {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Rational) -> Rational {
        std::cmp::max(self, other)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value as i128)
    }
}

impl From<i32> for Rational {
    fn from(value: i32) -> Self {
        Rational::from_integer(value as i128)
    }
}

impl From<u32> for Rational {
    fn from(value: u32) -> Self {
        Rational::from_integer(value as i128)
    }
}

impl From<usize> for Rational {
    fn from(value: usize) -> Self {
        Rational::from_integer(value as i128)
    }
}

macro_rules! checked_op {
    ($trait:ident, $method:ident, $checked:ident, $what:literal) => {
        impl $trait for Rational {
            type Output = Rational;

            #[track_caller]
            fn $method(self, rhs: Rational) -> Rational {
                match self.$checked(&rhs) {
                    Some(value) => value,
                    None => panic!(
                        concat!("rational overflow in ", $what, ": {} and {}"),
                        self, rhs
                    ),
                }
            }
        }

        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;

            #[track_caller]
            fn $method(self, rhs: &'a Rational) -> Rational {
                $trait::$method(self, *rhs)
            }
        }
    };
}

checked_op!(Add, add, checked_add, "addition");
checked_op!(Sub, sub, checked_sub, "subtraction");
checked_op!(Mul, mul, checked_mul, "multiplication");

impl Div for Rational {
    type Output = Rational;

    #[track_caller]
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        match self.checked_div(&rhs) {
            Some(value) => value,
            None => panic!("rational overflow in division: {} and {}", self, rhs),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl AddAssign for Rational {
    #[track_caller]
    fn add_assign(&mut self, rhs: Rational) {
        *self = *self + rhs;
    }
}

impl SubAssign for Rational {
    #[track_caller]
    fn sub_assign(&mut self, rhs: Rational) {
        *self = *self - rhs;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |acc, x| acc + *x)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::ONE
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `"p/q"`, `"k"` and finite decimals such as `"-0.35"` (read exactly).
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let text = s.trim();
        let bad = || Error::ParseRational(s.to_string());
        if text.is_empty() {
            return Err(bad());
        }
        if let Some((p, q)) = text.split_once('/') {
            let numer: i128 = p.trim().parse().map_err(|_| bad())?;
            let denom: i128 = q.trim().parse().map_err(|_| bad())?;
            return Rational::new(numer, denom);
        }
        if let Some((whole, frac)) = text.split_once('.') {
            let negative = whole.starts_with('-');
            let digits = whole.trim_start_matches(['-', '+']);
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 30 {
                return Err(bad());
            }
            if !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let int_part: i128 = if digits.is_empty() {
                0
            } else {
                digits.parse().map_err(|_| bad())?
            };
            let frac_part: i128 = frac.parse().map_err(|_| bad())?;
            let scale = 10i128
                .checked_pow(frac.len() as u32)
                .ok_or(Error::Overflow)?;
            let magnitude = int_part
                .checked_mul(scale)
                .and_then(|v| v.checked_add(frac_part))
                .ok_or(Error::Overflow)?;
            return Rational::new(if negative { -magnitude } else { magnitude }, scale);
        }
        let value: i128 = text.parse().map_err(|_| bad())?;
        Ok(Rational::from_integer(value))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RationalVisitor;

        impl Visitor<'_> for RationalVisitor {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational as \"p/q\", \"k\" or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
                v.parse().map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
                Ok(Rational::from(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
                Ok(Rational::from_integer(v as i128))
            }
        }

        deserializer.deserialize_any(RationalVisitor)
    }
}

/// Shorthand for building a rational in tests and examples. Panics on a zero denominator.
pub fn ratio(numer: i128, denom: i128) -> Rational {
    Rational::new(numer, denom).expect("nonzero denominator")
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        *self == Rational::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Rational::from(*other)))
    }
}
