//! Measures presented as moment sequences.
//!
//! Every integral in the crate is a polynomial integrated against one of
//! these weights, so a measure is fully described by `moment(k)`:
//!
//! | kind                    | weight                    | support   | moment(k)                    |
//! |-------------------------|---------------------------|-----------|------------------------------|
//! | `LaguerreOrtho(d)`      | `r^(d-1) e^(-r)`          | `[0, ∞)`  | `(d-1+k)!`                   |
//! | `LaguerreConstraint(d)` | `r^(d-1) e^(-r/2)`        | `[0, ∞)`  | `2^(d+k) (d-1+k)!`           |
//! | `Legendre(d)`           | `r^(d-1)`                 | `[0, 1]`  | `1/(d+k)`                    |
//! | `Gauss(a)`              | `e^(-a r^2)`              | `ℝ`       | `sqrt(pi/a) (k-1)!!/(2a)^(k/2)`, odd k → 0 |
//! | `Numeric`               | `r^p e^(c r^2)`           | `[lo, hi]`| Gauss–Legendre estimate      |

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{parse_rational, Polynomial, Rational};
use crate::quadrature::{GaussLegendre, DEFAULT_ORDER};
use crate::scalar::{Unit, UnitScalar};

/// Weight `r^power * exp(gauss * r^2)` on `[lo, hi]`, integrated by
/// Gauss–Legendre at `order` points and cross-checked at `2 * order`.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericWeight {
    pub power: u32,
    pub gauss: f64,
    pub lo: f64,
    pub hi: f64,
    pub order: usize,
    /// Relative tolerance for the order cross-check and for family residuals.
    pub tol: f64,
}

impl NumericWeight {
    pub fn new(power: u32, gauss: f64, lo: f64, hi: f64) -> Self {
        NumericWeight {
            power,
            gauss,
            lo,
            hi,
            order: DEFAULT_ORDER,
            tol: 1e-10,
        }
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.order = order;
        self
    }

    pub fn weight(&self, r: f64) -> f64 {
        r.powi(self.power as i32) * (self.gauss * r * r).exp()
    }

    fn quad_moment(&self, k: usize, order: usize) -> f64 {
        GaussLegendre::on_interval(order, self.lo, self.hi)
            .integrate(|r| self.weight(r) * r.powi(k as i32))
    }

    pub fn moment(&self, k: usize) -> Result<f64> {
        let low = self.quad_moment(k, self.order);
        let high = self.quad_moment(k, 2 * self.order);
        let scale = low.abs().max(high.abs()).max(f64::MIN_POSITIVE);
        if (low - high).abs() > self.tol * scale {
            return Err(Error::QuadratureDivergence {
                k,
                order: self.order,
                order2: 2 * self.order,
                low,
                high,
            });
        }
        Ok(low)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MomentFunctional {
    LaguerreOrtho(u32),
    LaguerreConstraint(u32),
    Legendre(u32),
    Gauss(Rational),
    Numeric(NumericWeight),
}

pub(crate) fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `(2j-1)!!`, with `(-1)!! = 1`.
pub(crate) fn double_factorial_odd(j: u64) -> BigInt {
    (1..=j).fold(BigInt::one(), |acc, i| acc * (2 * i - 1))
}

impl MomentFunctional {
    pub fn is_exact(&self) -> bool {
        !matches!(self, MomentFunctional::Numeric(_))
    }

    pub fn unit(&self) -> Unit {
        match self {
            MomentFunctional::Gauss(a) => Unit::SqrtPiOver(a.clone()),
            _ => Unit::One,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MomentFunctional::LaguerreOrtho(d)
            | MomentFunctional::LaguerreConstraint(d)
            | MomentFunctional::Legendre(d)
                if *d == 0 =>
            {
                Err(Error::InvalidArgument("dimension d must be >= 1".into()))
            }
            MomentFunctional::Gauss(a) if *a <= Rational::zero() => {
                Err(Error::InvalidArgument("Gaussian parameter a must be > 0".into()))
            }
            MomentFunctional::Numeric(w) if !(w.hi > w.lo) || w.order == 0 => Err(
                Error::InvalidArgument("numeric weight needs lo < hi and order > 0".into()),
            ),
            _ => Ok(()),
        }
    }

    /// Exact rational coefficient of the k-th moment relative to
    /// [`Self::unit`]. `None` for numeric measures.
    pub fn exact_moment(&self, k: usize) -> Option<Rational> {
        let k64 = k as u64;
        Some(match self {
            MomentFunctional::LaguerreOrtho(d) => {
                Rational::from_integer(factorial(*d as u64 - 1 + k64))
            }
            MomentFunctional::LaguerreConstraint(d) => Rational::from_integer(
                (BigInt::one() << (*d as usize + k)) * factorial(*d as u64 - 1 + k64),
            ),
            MomentFunctional::Legendre(d) => {
                Rational::new(BigInt::one(), BigInt::from(*d as u64 + k64))
            }
            MomentFunctional::Gauss(a) => {
                if k % 2 == 1 {
                    Rational::zero()
                } else {
                    let j = (k / 2) as i32;
                    let two_a = a * Rational::from_integer(2.into());
                    Rational::from_integer(double_factorial_odd(j as u64)) / two_a.pow(j)
                }
            }
            MomentFunctional::Numeric(_) => return None,
        })
    }

    pub fn moment(&self, k: usize) -> Result<UnitScalar> {
        self.validate()?;
        match self {
            MomentFunctional::Numeric(w) => Ok(UnitScalar::approx(w.moment(k)?)),
            _ => Ok(UnitScalar::new(
                self.exact_moment(k).expect("exact kind"),
                self.unit(),
            )),
        }
    }

    /// First `n` moments as floats in units of [`Self::unit`] (exact kinds)
    /// or absolute (numeric).
    pub fn moments_f64(&self, n: usize) -> Result<Vec<f64>> {
        self.validate()?;
        (0..n)
            .map(|k| match self {
                MomentFunctional::Numeric(w) => w.moment(k),
                _ => Ok(crate::poly::to_f64(&self.exact_moment(k).unwrap())),
            })
            .collect()
    }

    /// Integral of `p` against the weight: `sum_k p_k moment(k)`.
    pub fn apply(&self, p: &Polynomial) -> Result<UnitScalar> {
        self.validate()?;
        match self {
            MomentFunctional::Numeric(w) => {
                let mut acc = 0.0;
                for (k, c) in p.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        acc += crate::poly::to_f64(c) * w.moment(k)?;
                    }
                }
                Ok(UnitScalar::approx(acc))
            }
            _ => {
                let mut acc = Rational::zero();
                for (k, c) in p.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        acc += c * self.exact_moment(k).unwrap();
                    }
                }
                Ok(UnitScalar::new(acc, self.unit()))
            }
        }
    }

    /// Symmetric bilinear form `apply(p * q)`.
    pub fn pair(&self, p: &Polynomial, q: &Polynomial) -> Result<UnitScalar> {
        self.apply(&(p * q))
    }
}

impl fmt::Display for MomentFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MomentFunctional::LaguerreOrtho(d) => write!(f, "laguerre:d={d}"),
            MomentFunctional::LaguerreConstraint(d) => write!(f, "laguerre-constraint:d={d}"),
            MomentFunctional::Legendre(d) => write!(f, "legendre:d={d}"),
            MomentFunctional::Gauss(a) => write!(f, "gauss:a={a}"),
            MomentFunctional::Numeric(w) => write!(
                f,
                "numeric:p={},c={},lo={},hi={},order={}",
                w.power, w.gauss, w.lo, w.hi, w.order
            ),
        }
    }
}

/// Parses descriptors such as `laguerre:d=2`, `laguerre-constraint:d=1`,
/// `legendre:d=3`, `gauss:a=1/2` and `numeric:p=1,c=2,lo=0,hi=1,order=64`.
impl FromStr for MomentFunctional {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, params) = s.split_once(':').unwrap_or((s, ""));
        let mut kv = Vec::new();
        for item in params.split(',').filter(|t| !t.trim().is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {item:?}")))?;
            kv.push((k.trim().to_string(), v.trim().to_string()));
        }
        let get = |key: &str| kv.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
        let check_keys = |allowed: &[&str]| -> Result<()> {
            match kv.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
                Some((k, _)) => Err(Error::Parse(format!("unknown key {k:?} for {kind}"))),
                None => Ok(()),
            }
        };
        let parse_d = || -> Result<u32> {
            let d = get("d").unwrap_or("1");
            d.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad dimension {d:?}")))
        };
        let parse_f = |key: &str, default: f64| -> Result<f64> {
            match get(key) {
                Some(v) => v
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad value for {key}: {v:?}"))),
                None => Ok(default),
            }
        };
        let f = match kind.trim() {
            "laguerre" => {
                check_keys(&["d"])?;
                MomentFunctional::LaguerreOrtho(parse_d()?)
            }
            "laguerre-constraint" => {
                check_keys(&["d"])?;
                MomentFunctional::LaguerreConstraint(parse_d()?)
            }
            "legendre" => {
                check_keys(&["d"])?;
                MomentFunctional::Legendre(parse_d()?)
            }
            "gauss" => {
                check_keys(&["a"])?;
                MomentFunctional::Gauss(parse_rational(get("a").unwrap_or("1"))?)
            }
            "numeric" => {
                check_keys(&["p", "c", "lo", "hi", "order", "tol"])?;
                let power = get("p")
                    .unwrap_or("0")
                    .parse::<u32>()
                    .map_err(|_| Error::Parse("bad power p".into()))?;
                let order = match get("order") {
                    Some(o) => o
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad order {o:?}")))?,
                    None => crate::quadrature::default_order(),
                };
                let mut w = NumericWeight::new(
                    power,
                    parse_f("c", 0.0)?,
                    parse_f("lo", 0.0)?,
                    parse_f("hi", 1.0)?,
                )
                .with_order(order);
                w.tol = parse_f("tol", w.tol)?;
                MomentFunctional::Numeric(w)
            }
            other => return Err(Error::Parse(format!("unknown functional kind {other:?}"))),
        };
        f.validate()?;
        Ok(f)
    }
}
