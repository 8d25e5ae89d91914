//! Exact rational numbers for utilities and cost-model quantities.
//!
//! Values are always kept in lowest terms with a positive denominator, so
//! equality is structural and ordering is exact. On the wire a rational is a
//! two-element integer array `[numerator, denominator]`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub fn new(numerator: i64, denominator: i64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::Format("rational with zero denominator".into()));
        }
        Ok(Rational(Ratio::new(numerator, denominator)))
    }

    pub const fn integer(value: i64) -> Self {
        Rational(Ratio::new_raw(value, 1))
    }

    pub fn zero() -> Self {
        Rational(Ratio::zero())
    }

    pub fn one() -> Self {
        Rational(Ratio::one())
    }

    pub fn numerator(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> i64 {
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

    pub fn checked_add(&self, rhs: &Self) -> Option<Self> {
        num_traits::CheckedAdd::checked_add(&self.0, &rhs.0).map(Rational)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        num_traits::CheckedMul::checked_mul(&self.0, &rhs.0).map(Rational)
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        num_traits::CheckedDiv::checked_div(&self.0, &rhs.0).map(Rational)
    }

    pub fn to_pair(self) -> [i64; 2] {
        [self.numerator(), self.denominator()]
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::integer(value)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), self.denominator())
        }
    }
}

/// Accepts `"7"`, `"-7/3"`, or `"[7,3]"`.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Format(format!("cannot parse rational {s:?}"));
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let (n, d) = inner.split_once(',').ok_or_else(bad)?;
            let n = n.trim().parse().map_err(|_| bad())?;
            let d = d.trim().parse().map_err(|_| bad())?;
            return Rational::new(n, d);
        }
        match s.split_once('/') {
            Some((n, d)) => Rational::new(
                n.trim().parse().map_err(|_| bad())?,
                d.trim().parse().map_err(|_| bad())?,
            ),
            None => Ok(Rational::integer(s.parse().map_err(|_| bad())?)),
        }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Self) -> Self {
        Rational(self.0 + rhs.0)
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Self) -> Self {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Self) -> Self {
        Rational(self.0 * rhs.0)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Self) -> Self {
        Rational(self.0 / rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Self {
        Rational(-self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_pair().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [n, d] = <[i64; 2]>::deserialize(deserializer)?;
        if d <= 0 {
            return Err(D::Error::custom(format!(
                "denominator must be positive, got {d}"
            )));
        }
        Rational::new(n, d).map_err(D::Error::custom)
    }
}
