//! Exact scalars carrying an irrational unit.
//!
//! Every moment of `exp(-a r^2)` over the real line is a rational multiple
//! of `sqrt(pi / a)`. Keeping that factor symbolic lets orthogonality and
//! constraint checks in the Gaussian cases stay exact.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{to_f64, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Unit {
    One,
    /// `sqrt(pi / a)` with `a > 0`.
    SqrtPiOver(Rational),
}

impl Unit {
    pub fn to_f64(&self) -> f64 {
        match self {
            Unit::One => 1.0,
            Unit::SqrtPiOver(a) => (std::f64::consts::PI / to_f64(a)).sqrt(),
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unit::One => write!(f, "1"),
            Unit::SqrtPiOver(a) => write!(f, "sqrt(pi/{a})"),
        }
    }
}

/// `value * unit`. Scalars produced by quadrature are flagged inexact; their
/// `value` is the exact rational image of a float.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitScalar {
    pub value: Rational,
    pub unit: Unit,
    pub exact: bool,
}

impl UnitScalar {
    pub fn new(value: Rational, unit: Unit) -> Self {
        UnitScalar {
            value,
            unit,
            exact: true,
        }
    }

    pub fn rational(value: Rational) -> Self {
        Self::new(value, Unit::One)
    }

    pub fn approx(value: f64) -> Self {
        UnitScalar {
            value: Rational::from_float(value).unwrap_or_else(Rational::zero),
            unit: Unit::One,
            exact: false,
        }
    }

    pub fn zero(unit: Unit) -> Self {
        Self::new(Rational::zero(), unit)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.value.is_positive()
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.value) * self.unit.to_f64()
    }

    fn check_unit(&self, other: &Self) -> Result<()> {
        if self.unit == other.unit || self.is_zero() || other.is_zero() {
            Ok(())
        } else {
            Err(Error::UnitMismatch(format!("{} vs {}", self.unit, other.unit)))
        }
    }

    fn merged_unit(&self, other: &Self) -> Unit {
        if self.is_zero() {
            other.unit.clone()
        } else {
            self.unit.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_unit(other)?;
        Ok(UnitScalar {
            value: &self.value + &other.value,
            unit: self.merged_unit(other),
            exact: self.exact && other.exact,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    /// Multiplication by a pure rational.
    pub fn scale(&self, c: &Rational) -> Self {
        UnitScalar {
            value: &self.value * c,
            unit: self.unit.clone(),
            exact: self.exact,
        }
    }

    /// Ratio of two equal-unit scalars, a pure rational.
    pub fn ratio(&self, other: &Self) -> Result<Rational> {
        if other.is_zero() {
            return Err(Error::InvalidArgument("division by a zero scalar".into()));
        }
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        self.check_unit(other)?;
        Ok(&self.value / &other.value)
    }
}

impl fmt::Display for UnitScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.unit {
            Unit::One => write!(f, "{}", self.value),
            u => write!(f, "{}*{}", self.value, u),
        }
    }
}
