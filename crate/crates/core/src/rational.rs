//! Exact arbitrary-precision rational numbers, the base field of every
//! other module.
//!
//! Values are kept in canonical reduced form: positive denominator,
//! `gcd(|num|, den) = 1`, zero as `0/1`. Small values live on a machine-word
//! fast path; anything that leaves the `i64` range is promoted to a
//! [`num_rational::BigRational`] and demoted back as soon as it fits again,
//! so equality is plain structural comparison.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
enum Repr {
    /// den > 0, gcd(|num|, den) = 1.
    Small { num: i64, den: i64 },
    /// Reduced, positive denominator, and outside the `Small` range.
    Big(BigRational),
}

/// An exact rational number in canonical reduced form.
#[derive(Debug, Clone)]
pub struct Rational(Repr);

fn i128_fits(num: i128, den: i128) -> bool {
    num >= i64::MIN as i128 && num <= i64::MAX as i128 && den <= i64::MAX as i128
}

/// Build from an exact signed numerator and positive denominator, reducing.
fn from_i128(num: i128, den: i128) -> Rational {
    debug_assert!(den > 0);
    if num == 0 {
        return Rational(Repr::Small { num: 0, den: 1 });
    }
    let g = num.unsigned_abs().gcd(&den.unsigned_abs());
    let num = num / g as i128;
    let den = den / g as i128;
    if i128_fits(num, den) {
        Rational(Repr::Small {
            num: num as i64,
            den: den as i64,
        })
    } else {
        Rational(Repr::Big(BigRational::new_raw(num.into(), den.into())))
    }
}

/// Reduce a `BigRational` result and demote it if it fits in the fast path.
fn from_big(r: BigRational) -> Rational {
    if let (Some(num), Some(den)) = (r.numer().to_i64(), r.denom().to_i64()) {
        Rational(Repr::Small { num, den })
    } else {
        Rational(Repr::Big(r))
    }
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Self {
        Rational(Repr::Small { num: 1, den: 1 })
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(Repr::Small { num: n, den: 1 })
    }

    pub fn from_bigint(n: BigInt) -> Self {
        from_big(BigRational::from_integer(n))
    }

    /// `num/den` in canonical form; `den = 0` is a zero-divisor error.
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(from_big(BigRational::new(num, den)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDivisor);
        }
        let (num, den) = if den < 0 {
            (-(num as i128), -(den as i128))
        } else {
            (num as i128, den as i128)
        };
        Ok(from_i128(num, den))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => {
                BigRational::new_raw(BigInt::from(*num), BigInt::from(*den))
            }
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn checked_div(&self, other: &Rational) -> Result<Rational> {
        if other.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                // (a/b)/(c/d) = ad/bc with the sign moved to the numerator.
                let mut num = *a as i128 * *d as i128;
                let mut den = *b as i128 * *c as i128;
                if den < 0 {
                    num = -num;
                    den = -den;
                }
                Ok(from_i128(num, den))
            }
            _ => Ok(from_big(self.to_big() / other.to_big())),
        }
    }

    pub fn recip(&self) -> Result<Rational> {
        Rational::one().checked_div(self)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            // A Big value never fits the Small range, so mixed reprs differ.
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, other: &Rational) -> Rational {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                let num = *a as i128 * *d as i128 + *c as i128 * *b as i128;
                let den = *b as i128 * *d as i128;
                from_i128(num, den)
            }
            _ => from_big(self.to_big() + other.to_big()),
        }
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, other: &Rational) -> Rational {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                let num = *a as i128 * *d as i128 - *c as i128 * *b as i128;
                let den = *b as i128 * *d as i128;
                from_i128(num, den)
            }
            _ => from_big(self.to_big() - other.to_big()),
        }
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, other: &Rational) -> Rational {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => from_big(self.to_big() * other.to_big()),
        }
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => from_i128(-(*num as i128), *den as i128),
            Repr::Big(r) => from_big(-r.clone()),
        }
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, other: Rational) -> Rational {
                $trait::$method(&self, &other)
            }
        }
    )*};
}
forward_value_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `p` or `p/q` with arbitrary-precision integer parts.
    fn from_str(s: &str) -> Result<Self> {
        let parse_int = |t: &str| {
            BigInt::from_str(t.trim())
                .map_err(|_| Error::SizeLimit(format!("invalid integer literal: {t:?}")))
        };
        match s.split_once('/') {
            None => Ok(Rational::from_bigint(parse_int(s)?)),
            Some((p, q)) => Rational::new(parse_int(p)?, parse_int(q)?),
        }
    }
}
