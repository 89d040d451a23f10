//! Exact real quadratic numbers `a + b * sqrt(d)` with rational `a`, `b`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticNumber {
    rational: BigRational,
    irrational: BigRational,
    radicand: BigInt,
}

/// Sign of `x + y * sqrt(d)` for `d >= 0`, decided by squaring.
fn sign_of(x: &BigRational, y: &BigRational, d: &BigInt) -> Ordering {
    let y_sign = if d.is_zero() {
        Ordering::Equal
    } else {
        y.cmp(&BigRational::zero())
    };
    let x_sign = x.cmp(&BigRational::zero());
    match (x_sign, y_sign) {
        (s, Ordering::Equal) => s,
        (Ordering::Equal, s) => s,
        (a, b) if a == b => a,
        (x_sign, _) => {
            // opposite signs: compare x^2 with y^2 d
            let lhs = x * x;
            let rhs = y * y * BigRational::from_integer(d.clone());
            match lhs.cmp(&rhs) {
                Ordering::Equal => Ordering::Equal,
                Ordering::Greater => x_sign,
                Ordering::Less => x_sign.reverse(),
            }
        }
    }
}

impl QuadraticNumber {
    pub fn new(rational: BigRational, irrational: BigRational, radicand: BigInt) -> Result<Self> {
        if radicand.is_negative() {
            return Err(Error::Malformed(format!(
                "negative radicand {radicand} in a real quadratic number"
            )));
        }
        Ok(QuadraticNumber {
            rational,
            irrational,
            radicand,
        })
    }

    pub fn from_rational(q: BigRational) -> Self {
        QuadraticNumber {
            rational: q,
            irrational: BigRational::zero(),
            radicand: BigInt::zero(),
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.irrational
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        sign_of(&(&self.rational - q), &self.irrational, &self.radicand)
    }

    /// Exact comparison; both numbers must share the radicand unless one of
    /// them has zero irrational part.
    pub fn try_cmp(&self, other: &Self) -> Option<Ordering> {
        if other.irrational.is_zero() || other.radicand.is_zero() {
            return Some(self.cmp_rational(&other.rational));
        }
        if self.irrational.is_zero() || self.radicand.is_zero() {
            return Some(other.cmp_rational(&self.rational).reverse());
        }
        if self.radicand != other.radicand {
            return None;
        }
        Some(sign_of(
            &(&self.rational - &other.rational),
            &(&self.irrational - &other.irrational),
            &self.radicand,
        ))
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        let b = self.irrational.to_f64().unwrap_or(f64::NAN);
        let d = self.radicand.to_f64().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irrational.is_zero() || self.radicand.is_zero() {
            return write!(f, "{}", self.rational);
        }
        let sign = if self.irrational.is_negative() {
            '-'
        } else {
            '+'
        };
        write!(
            f,
            "{} {} {}*sqrt({})",
            self.rational,
            sign,
            self.irrational.abs(),
            self.radicand
        )
    }
}
