//! Scalar abstraction shared by the exact linear algebra, polynomial and
//! Lie algebra code.
//!
//! Everything in this crate is exact: the numeric routines branch on
//! `is_zero`, so only exact fields implement [`Field`]. The concrete field
//! used throughout is [`Rational`], an arbitrary-precision fraction.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always stored in lowest terms with
/// a positive denominator.
pub type Rational = BigRational;

/// An exact field of characteristic zero.
pub trait Field:
    Clone + fmt::Debug + fmt::Display + PartialEq + Num + std::ops::Neg<Output = Self> + Send + Sync
{
    fn from_i64(n: i64) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    fn pow_i(&self, exp: i64) -> Self {
        let mut base = if exp < 0 { self.inv() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync,
{
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(T::from_i64(n).expect("integer out of range for scalar type"))
    }
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
    }
}

/// Formats as `"p/q"`, or `"p"` for integers.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a rational vector to a primitive integer vector with the same
/// projective class. The zero vector maps to zeros.
pub fn primitive_integer_vector(xs: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(xs);
    let ints: Vec<BigInt> = xs.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/-4").unwrap(), q_frac(-3, 2));
        assert_eq!(format_rational(&q_frac(-3, 2)), "-3/2");
        assert_eq!(format_rational(&q(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn powers_with_negative_exponent() {
        assert_eq!(q(2).pow_i(-3), q_frac(1, 8));
        assert_eq!(q_frac(2, 3).pow_i(0), q(1));
    }

    #[test]
    fn small_ratio_is_a_field_too() {
        let a: Ratio<i64> = Field::from_i64(3);
        assert_eq!(a.inv() * a, Ratio::one());
    }

    #[test]
    fn primitive_vector_clears_content() {
        let v = primitive_integer_vector(&[q_frac(1, 2), q_frac(3, 4), q(0)]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(3), BigInt::from(0)]);
    }
}
