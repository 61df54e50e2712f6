use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Zero};
use thiserror::Error;

/// Field elements the linear algebra is generic over.
///
/// Arithmetic is exact. The `try_*` methods report overflow for fixed-width
/// representations and never fail for arbitrary-precision ones, so a single
/// elimination routine serves both.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn try_add(&self, rhs: &Self) -> Option<Self>;
    fn try_sub(&self, rhs: &Self) -> Option<Self>;
    fn try_mul(&self, rhs: &Self) -> Option<Self>;
    fn try_div(&self, rhs: &Self) -> Option<Self>;

    fn from_i64(value: i64) -> Self;
}

macro_rules! impl_checked_ratio {
    ($($int:ty),*) => {$(
        impl Scalar for Ratio<$int> {
            fn try_add(&self, rhs: &Self) -> Option<Self> {
                CheckedAdd::checked_add(self, rhs)
            }
            fn try_sub(&self, rhs: &Self) -> Option<Self> {
                CheckedSub::checked_sub(self, rhs)
            }
            fn try_mul(&self, rhs: &Self) -> Option<Self> {
                CheckedMul::checked_mul(self, rhs)
            }
            fn try_div(&self, rhs: &Self) -> Option<Self> {
                if rhs.is_zero() {
                    return None;
                }
                CheckedDiv::checked_div(self, rhs)
            }
            fn from_i64(value: i64) -> Self {
                Ratio::from_integer(<$int>::try_from(value).expect("integer out of range"))
            }
        }
    )*};
}

impl_checked_ratio!(i64, i128);

impl Scalar for BigRational {
    fn try_add(&self, rhs: &Self) -> Option<Self> {
        Some(self + rhs)
    }
    fn try_sub(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }
    fn try_mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }
    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<BigRational, ParseRationalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let malformed = || ParseRationalError::Malformed(text.to_string());
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let numer = BigInt::from_str(numer).map_err(|_| malformed())?;
    let denom = match denom {
        Some(d) => {
            if d.starts_with('-') || d.starts_with('+') {
                return Err(malformed());
            }
            BigInt::from_str(d).map_err(|_| malformed())?
        }
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(text.to_string()));
    }
    Ok(BigRational::new(numer, denom))
}

/// Shorthand for building exact constants in code and tests.
pub fn q(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

/// Narrows an arbitrary-precision rational into a fixed-width one when it fits.
pub fn narrow_i128(value: &BigRational) -> Option<Ratio<i128>> {
    let numer = i128::try_from(value.numer()).ok()?;
    let denom = i128::try_from(value.denom()).ok()?;
    Some(Ratio::new_raw(numer, denom))
}

pub fn widen_i128(value: &Ratio<i128>) -> BigRational {
    BigRational::new_raw(BigInt::from(*value.numer()), BigInt::from(*value.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        assert_eq!(parse_rational("6/4").unwrap(), q(3, 2));
        assert_eq!(parse_rational("-132").unwrap(), int(-132));
        assert_eq!(parse_rational(" 9/640 ").unwrap(), q(9, 640));
        assert_eq!(
            parse_rational("4/-2"),
            Err(ParseRationalError::Malformed("4/-2".into()))
        );
    }

    #[test]
    fn rejects_bad_literals() {
        assert_eq!(
            parse_rational("1/0"),
            Err(ParseRationalError::ZeroDenominator("1/0".into()))
        );
        assert!(matches!(
            parse_rational("x/2"),
            Err(ParseRationalError::Malformed(_))
        ));
        assert_eq!(parse_rational(""), Err(ParseRationalError::Empty));
    }

    #[test]
    fn display_is_p_over_q() {
        assert_eq!(q(-22016, 121).to_string(), "-22016/121");
        assert_eq!(q(10, 5).to_string(), "2");
        assert_eq!(q(0, 7).to_string(), "0");
    }

    #[test]
    fn checked_ops_report_overflow() {
        let big = Ratio::<i64>::from_integer(i64::MAX);
        assert!(big.try_mul(&big).is_none());
        assert!(big.try_div(&Ratio::zero()).is_none());
        assert_eq!(
            Ratio::<i64>::new(1, 2).try_add(&Ratio::new(1, 3)),
            Some(Ratio::new(5, 6))
        );
    }
}
