//! Scalars for the exponent calculus.
//!
//! Every branch predicate of the calculus compares affine expressions of the
//! rates with strict or non-strict inequalities. [`Real`] keeps those
//! comparisons exact whenever the inputs are rational, and falls back to
//! plain `f64` (no epsilon) as soon as one operand is a float.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;

/// A real number that is either an exact rational or an `f64`.
#[derive(Clone, Debug)]
pub enum Real {
    Exact(BigRational),
    Float(f64),
}

impl Real {
    pub fn int(value: i64) -> Self {
        Real::Exact(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Real::Exact(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// Wraps a float without trying to recover a rational.
    pub fn float(value: f64) -> Self {
        Real::Float(value)
    }

    /// Exact rational value of a finite `f64` (binary expansion, not the
    /// shortest decimal).
    pub fn exact_from_f64(value: f64) -> Option<Self> {
        BigRational::from_float(value).map(Real::Exact)
    }

    /// The rational written by the shortest decimal that round-trips to
    /// `value`, so `1.8` becomes `9/5`. Non-finite values stay floats.
    pub fn from_shortest_decimal(value: f64) -> Self {
        if !value.is_finite() {
            return Real::Float(value);
        }
        format!("{value:e}").parse().unwrap_or(Real::Float(value))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Exact(_))
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Real::Exact(_) => true,
            Real::Float(v) => v.is_finite(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Real::Float(v) => *v,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Real::Exact(q) => q.is_zero(),
            Real::Float(v) => *v == 0.0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Real::Exact(q) => q.is_negative(),
            Real::Float(v) => *v < 0.0,
        }
    }

    pub fn min(self, other: Real) -> Real {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }

    fn binary(
        self,
        rhs: Real,
        exact: impl FnOnce(BigRational, BigRational) -> BigRational,
        float: impl FnOnce(f64, f64) -> f64,
    ) -> Real {
        match (self, rhs) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(exact(a, b)),
            (a, b) => Real::Float(float(a.to_f64(), b.to_f64())),
        }
    }
}

impl From<i64> for Real {
    fn from(value: i64) -> Self {
        Real::int(value)
    }
}

impl From<i32> for Real {
    fn from(value: i32) -> Self {
        Real::int(value as i64)
    }
}

impl Add for Real {
    type Output = Real;
    fn add(self, rhs: Real) -> Real {
        self.binary(rhs, |a, b| a + b, |a, b| a + b)
    }
}

impl Sub for Real {
    type Output = Real;
    fn sub(self, rhs: Real) -> Real {
        self.binary(rhs, |a, b| a - b, |a, b| a - b)
    }
}

impl Mul for Real {
    type Output = Real;
    fn mul(self, rhs: Real) -> Real {
        self.binary(rhs, |a, b| a * b, |a, b| a * b)
    }
}

impl Div for Real {
    type Output = Real;
    fn div(self, rhs: Real) -> Real {
        assert!(!rhs.is_zero(), "division by zero in exponent arithmetic");
        self.binary(rhs, |a, b| a / b, |a, b| a / b)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        match self {
            Real::Exact(q) => Real::Exact(-q),
            Real::Float(v) => Real::Float(-v),
        }
    }
}

macro_rules! ref_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                self.clone().$method(rhs.clone())
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                self.$method(rhs.clone())
            }
        }
    )*};
}
ref_ops!(Add add, Sub sub, Mul mul, Div div);

impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => Some(a.cmp(b)),
            (a, b) => a.to_f64().partial_cmp(&b.to_f64()),
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Real::Exact(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Real::Float(v) => write!(f, "{v}"),
        }
    }
}

/// Parses `"3"`, `"-7/4"`, `"-2.45"`, `"1e-3"` as exact rationals.
impl FromStr for Real {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        let s = s.trim();
        if s.is_empty() {
            return Err(bad());
        }
        if let Some((num, den)) = s.split_once('/') {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            return Ok(Real::Exact(BigRational::new(num, den)));
        }
        let (mantissa, exponent) = match s.find(['e', 'E']) {
            Some(pos) => {
                let exp: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
                (&s[..pos], exp)
            }
            None => (s, 0),
        };
        let (sign, digits) = match mantissa.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
        if int_part.is_empty() && frac_part.is_empty()
            || !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let all_digits = format!("{int_part}{frac_part}");
        let mut numer: BigInt = all_digits.parse().map_err(|_| bad())?;
        numer *= sign;
        let scale = exponent - frac_part.len() as i32;
        let ten = BigInt::from(10);
        let value = if scale >= 0 {
            BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
        } else {
            BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
        };
        Ok(Real::Exact(value))
    }
}

/// The extended real line used for exponent values.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtReal {
    NegInf,
    Finite(Real),
    PosInf,
}

impl ExtReal {
    pub fn finite(value: Real) -> Self {
        ExtReal::Finite(value)
    }

    pub fn int(value: i64) -> Self {
        ExtReal::Finite(Real::int(value))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Real> {
        match self {
            ExtReal::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtReal::NegInf => f64::NEG_INFINITY,
            ExtReal::Finite(r) => r.to_f64(),
            ExtReal::PosInf => f64::INFINITY,
        }
    }

    pub fn min(self, other: ExtReal) -> ExtReal {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: ExtReal) -> ExtReal {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Decimal rendering with the `inf` / `-inf` literals.
    pub fn decimal(&self) -> String {
        match self {
            ExtReal::NegInf => "-inf".to_string(),
            ExtReal::PosInf => "inf".to_string(),
            ExtReal::Finite(r) => format!("{}", r.to_f64()),
        }
    }
}

impl From<Real> for ExtReal {
    fn from(value: Real) -> Self {
        ExtReal::Finite(value)
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &ExtReal) -> Option<Ordering> {
        use ExtReal::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Some(Ordering::Equal),
            (NegInf, _) | (_, PosInf) => Some(Ordering::Less),
            (_, NegInf) | (PosInf, _) => Some(Ordering::Greater),
            (Finite(a), Finite(b)) => a.partial_cmp(b),
        }
    }
}

impl PartialEq<Real> for ExtReal {
    fn eq(&self, other: &Real) -> bool {
        matches!(self, ExtReal::Finite(r) if r == other)
    }
}

impl PartialOrd<Real> for ExtReal {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        self.partial_cmp(&ExtReal::Finite(other.clone()))
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::PosInf => f.write_str("inf"),
            ExtReal::Finite(r) => write!(f, "{r}"),
        }
    }
}

/// The open interval `(lo, hi)`; empty exactly when `lo >= hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct OpenInterval {
    pub lo: ExtReal,
    pub hi: ExtReal,
}

impl OpenInterval {
    pub fn new(lo: ExtReal, hi: ExtReal) -> Self {
        OpenInterval { lo, hi }
    }

    pub fn empty() -> Self {
        OpenInterval::new(ExtReal::PosInf, ExtReal::NegInf)
    }

    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }

    pub fn contains(&self, x: &Real) -> bool {
        self.lo < *x && self.hi > *x
    }

    pub fn intersect(&self, other: &OpenInterval) -> OpenInterval {
        OpenInterval::new(
            self.lo.clone().max(other.lo.clone()),
            self.hi.clone().min(other.hi.clone()),
        )
    }

    /// Same set: both empty, or identical endpoints.
    pub fn same_set(&self, other: &OpenInterval) -> bool {
        (self.is_empty() && other.is_empty()) || (self.lo == other.lo && self.hi == other.hi)
    }

    /// `self ⊆ other` as sets.
    pub fn is_subset_of(&self, other: &OpenInterval) -> bool {
        self.is_empty() || (self.lo >= other.lo && self.hi <= other.hi)
    }

    /// Whether `self ∩ [lo, hi]` is nonempty (closed bounds).
    pub fn meets_closed(&self, lo: &Real, hi: &Real) -> bool {
        if lo > hi {
            return false;
        }
        let lower_ok = self.lo < *hi;
        let upper_ok = self.hi > *lo;
        lower_ok && upper_ok && !self.is_empty()
    }
}

impl fmt::Display for OpenInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("∅")
        } else {
            write!(f, "({}, {})", self.lo, self.hi)
        }
    }
}
