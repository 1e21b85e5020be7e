//! Closed-form recursions, differential identities and norms for the
//! constrained Laguerre-type family `G_n^d` and Legendre-type family
//! `𝒢_n^d`, cross-checked against the Gram–Schmidt constructor.
//!
//! Laguerre type (weight `r^(d-1) e^(-r)`, constraint `r^(d-1) e^(-r/2)`):
//!
//! ```text
//! G_1 = r - 2d
//! G_n = (r - d) G_{n-1} - 2 r G'_{n-1} + (n + d - 1)(n - 2) G_{n-2}
//! 2 r G_n'' - (r - 2d) G_n' + n G_n = (n - 1)(n + d) G_{n-1}
//! ∫ r^(d-1) e^(-r) G_n^2 = (n - 1)! (n + d)!
//! ```
//!
//! Legendre type (weight `r^(d-1)` on `[0, 1]` for both conditions), in the
//! endpoint normalization `𝒢_n(1) = 1`:
//!
//! ```text
//! d = 1:  n 𝒢_n = (2n - 1)(2r - 1) 𝒢_{n-1} - (n - 1) 𝒢_{n-2}
//! d = 2:  (n + 1)(2n - 1) 𝒢_n = 2[(4n² - 1) r - 2n²] 𝒢_{n-1} - (n - 1)(2n + 1) 𝒢_{n-2}
//! d = 3:  n²(n + 2) 𝒢_n = (2n + 1)[2n(n + 1) r - (n² + n + 1)] 𝒢_{n-1} - (n - 1)(n + 1)² 𝒢_{n-2}
//! r (r - 1) 𝒢'' + [(d + 1) r - d] 𝒢' - n (n + d) 𝒢 = 0
//! ∫_0^1 r^(d-1) 𝒢_n^2 = 1 / (2n + d)
//! ```

use num_traits::{One, Zero};
use serde::Serialize;

use crate::constructor::{constrained_family, ConstrainedFamily, Provenance};
use crate::error::{Error, Result};
use crate::measures::{factorial, MomentFunctional};
use crate::poly::{int, Polynomial, Rational};
use crate::scalar::UnitScalar;

fn lin(c0: i64, c1: i64) -> Polynomial {
    Polynomial::from_ints(&[c0, c1])
}

/// `G_1..G_N` of dimension `d` from the three-term recursion with a
/// derivative term. The `(n - 2)` factor kills the `G_0` term at `n = 2`.
pub fn laguerre_recursion_family(d: u32, n_max: usize) -> Result<ConstrainedFamily> {
    if d == 0 || n_max == 0 {
        return Err(Error::InvalidArgument("need d >= 1 and N >= 1".into()));
    }
    let d64 = d as i64;
    let r = Polynomial::x();
    let mut polys: Vec<Polynomial> = vec![lin(-2 * d64, 1)];
    for n in 2..=n_max {
        let prev = &polys[n - 2];
        let mut next = &(&lin(-d64, 1) * prev) - &(&r * &prev.derivative()).scale(&int(2));
        if n >= 3 {
            let c = (n as i64 + d64 - 1) * (n as i64 - 2);
            next = &next + &polys[n - 3].scale(&int(c));
        }
        polys.push(next);
    }
    let norms = (1..=n_max).map(|n| laguerre_norm(n, d)).collect();
    Ok(ConstrainedFamily {
        ortho: MomentFunctional::LaguerreOrtho(d),
        constraint: MomentFunctional::LaguerreConstraint(d),
        polys,
        norms,
        provenance: Provenance::Recursion,
    })
}

/// `2 r G_n'' - (r - 2d) G_n' + n G_n - (n - 1)(n + d) G_{n-1}`.
pub fn laguerre_diffrec_residual(d: u32, n: usize, family: &ConstrainedFamily) -> Result<Polynomial> {
    let (Some(g), Some(gm1)) = (family.get(n), n.checked_sub(1).and_then(|m| family.get(m))) else {
        return Err(Error::InvalidArgument(format!(
            "family must contain orders {} and {n}",
            n.saturating_sub(1)
        )));
    };
    let d64 = d as i64;
    let n64 = n as i64;
    let g1 = g.derivative();
    let g2 = g1.derivative();
    let r = Polynomial::x();
    let lhs = &(&(&r * &g2).scale(&int(2)) - &(&lin(-2 * d64, 1) * &g1)) + &g.scale(&int(n64));
    Ok(&lhs - &gm1.scale(&int((n64 - 1) * (n64 + d64))))
}

/// `(n - 1)! (n + d)!`
pub fn laguerre_norm(n: usize, d: u32) -> UnitScalar {
    UnitScalar::rational(Rational::from_integer(
        factorial(n as u64 - 1) * factorial(n as u64 + d as u64),
    ))
}

/// Endpoint-normalized `𝒢_1..𝒢_N` for `d ∈ {1, 2, 3}`. `𝒢_0 = 1` seeds the
/// recursion but is not a member.
pub fn legendre_recursion_family(d: u32, n_max: usize) -> Result<ConstrainedFamily> {
    if !(1..=3).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    if n_max == 0 {
        return Err(Error::InvalidArgument("N must be >= 1".into()));
    }
    let d64 = d as i64;
    let mut prev2 = Polynomial::one();
    let mut prev = lin(-d64, d64 + 1);
    let mut polys = vec![prev.clone()];
    for n in 2..=n_max as i64 {
        let (lhs, a, b) = match d {
            1 => (n, lin(-(2 * n - 1), 2 * (2 * n - 1)), n - 1),
            2 => (
                (n + 1) * (2 * n - 1),
                lin(-4 * n * n, 2 * (4 * n * n - 1)),
                (n - 1) * (2 * n + 1),
            ),
            _ => (
                n * n * (n + 2),
                lin(-(2 * n + 1) * (n * n + n + 1), (2 * n + 1) * 2 * n * (n + 1)),
                (n - 1) * (n + 1) * (n + 1),
            ),
        };
        let next = (&(&a * &prev) - &prev2.scale(&int(b))).scale(&Rational::new(1.into(), lhs.into()));
        prev2 = std::mem::replace(&mut prev, next);
        polys.push(prev.clone());
    }
    let norms = (1..=n_max)
        .map(|n| UnitScalar::rational(legendre_norm(n, d)))
        .collect();
    Ok(ConstrainedFamily {
        ortho: MomentFunctional::Legendre(d),
        constraint: MomentFunctional::Legendre(d),
        polys,
        norms,
        provenance: Provenance::Recursion,
    })
}

/// Endpoint-normalized Legendre-type family for any `d >= 1`: the recursion
/// where it is known, Gram–Schmidt plus rescaling otherwise.
pub fn legendre_family(d: u32, n_max: usize) -> Result<ConstrainedFamily> {
    if (1..=3).contains(&d) {
        return legendre_recursion_family(d, n_max);
    }
    let f = MomentFunctional::Legendre(d);
    to_convention(&constrained_family(&f, &f, n_max)?, Convention::EndpointOne)
}

/// `r (r - 1) 𝒢'' + [(d + 1) r - d] 𝒢' - n (n + d) 𝒢`
pub fn legendre_ode_residual(d: u32, n: usize, g: &Polynomial) -> Polynomial {
    let d64 = d as i64;
    let g1 = g.derivative();
    let g2 = g1.derivative();
    let a = &Polynomial::from_ints(&[0, -1, 1]) * &g2;
    let b = &lin(-d64, d64 + 1) * &g1;
    &(&a + &b) - &g.scale(&int(n as i64 * (n as i64 + d64)))
}

/// `1 / (2n + d)`
pub fn legendre_norm(n: usize, d: u32) -> Rational {
    Rational::new(1.into(), (2 * n as i64 + d as i64).into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    Monic,
    /// `P_n(1) = 1`, the convention of the Legendre-type tables.
    EndpointOne,
}

/// Rescales every member; norms pick up the square of the factor.
pub fn to_convention(
    family: &ConstrainedFamily,
    convention: Convention,
) -> Result<ConstrainedFamily> {
    let mut out = family.clone();
    for (i, p) in family.polys.iter().enumerate() {
        let target = match convention {
            Convention::Monic => p.leading().cloned().unwrap_or_else(Rational::zero),
            Convention::EndpointOne => p.eval_exact(&Rational::one()),
        };
        if target.is_zero() {
            return Err(Error::ZeroAtEndpoint { n: i + 1 });
        }
        let factor = target.recip();
        out.polys[i] = p.scale(&factor);
        out.norms[i] = family.norms[i].scale(&(&factor * &factor));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityResidual {
    pub identity: String,
    pub n: usize,
    pub residual: Polynomial,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormComparison {
    pub n: usize,
    pub formula: String,
    pub computed: String,
    pub equal: bool,
}

/// Verification record: every residual must be the zero polynomial and
/// every norm pair equal.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyIdentityReport {
    pub family: String,
    pub d: u32,
    pub n_max: usize,
    pub residuals: Vec<IdentityResidual>,
    pub norms: Vec<NormComparison>,
    pub all_zero: bool,
}

impl FamilyIdentityReport {
    fn new(family: &str, d: u32, n_max: usize) -> Self {
        FamilyIdentityReport {
            family: family.to_string(),
            d,
            n_max,
            residuals: Vec::new(),
            norms: Vec::new(),
            all_zero: true,
        }
    }

    fn residual(&mut self, identity: &str, n: usize, residual: Polynomial) {
        self.all_zero &= residual.is_zero();
        self.residuals.push(IdentityResidual {
            identity: identity.to_string(),
            n,
            residual,
        });
    }

    fn norm(&mut self, n: usize, formula: &UnitScalar, computed: &UnitScalar) {
        let equal = formula == computed;
        self.all_zero &= equal;
        self.norms.push(NormComparison {
            n,
            formula: formula.to_string(),
            computed: computed.to_string(),
            equal,
        });
    }

    /// Names of failing identities, e.g. `"differential_recurrence n=3"`.
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .residuals
            .iter()
            .filter(|r| !r.residual.is_zero())
            .map(|r| format!("{} {} d={} n={}", self.family, r.identity, self.d, r.n))
            .collect();
        out.extend(
            self.norms
                .iter()
                .filter(|c| !c.equal)
                .map(|c| format!("{} norm d={} n={}", self.family, self.d, c.n)),
        );
        out
    }
}

/// Optional corruption applied to one member before checking; used to show
/// that the report is sensitive.
#[derive(Clone, Copy, Debug, Default)]
pub struct Corruption {
    pub order: Option<usize>,
}

impl Corruption {
    fn apply(&self, family: &mut ConstrainedFamily) {
        if let Some(n) = self.order {
            if let Some(p) = n.checked_sub(1).and_then(|i| family.polys.get_mut(i)) {
                *p = &*p + &Polynomial::one();
            }
        }
    }
}

/// Recursion vs. Gram–Schmidt, the differential recurrence and the norm
/// formula for the Laguerre-type family.
pub fn verify_laguerre(d: u32, n_max: usize, corruption: Corruption) -> Result<FamilyIdentityReport> {
    let mut rec = laguerre_recursion_family(d, n_max)?;
    corruption.apply(&mut rec);
    let gs = constrained_family(
        &MomentFunctional::LaguerreOrtho(d),
        &MomentFunctional::LaguerreConstraint(d),
        n_max,
    )?;
    let mut report = FamilyIdentityReport::new("laguerre", d, n_max);
    for n in 1..=n_max {
        report.residual("recursion_vs_gram_schmidt", n, &rec.polys[n - 1] - &gs.polys[n - 1]);
    }
    for n in 2..=n_max {
        report.residual("differential_recurrence", n, laguerre_diffrec_residual(d, n, &rec)?);
    }
    for n in 1..=n_max {
        let computed = rec.ortho.pair(&rec.polys[n - 1], &rec.polys[n - 1])?;
        report.norm(n, &laguerre_norm(n, d), &computed);
    }
    Ok(report)
}

/// Recursion vs. Gram–Schmidt (after rescaling), the ODE, the endpoint
/// value and the norm formula for the Legendre-type family.
pub fn verify_legendre(d: u32, n_max: usize, corruption: Corruption) -> Result<FamilyIdentityReport> {
    let mut rec = legendre_recursion_family(d, n_max)?;
    corruption.apply(&mut rec);
    let f = MomentFunctional::Legendre(d);
    let gs = to_convention(&constrained_family(&f, &f, n_max)?, Convention::EndpointOne)?;
    let mut report = FamilyIdentityReport::new("legendre", d, n_max);
    for n in 1..=n_max {
        let p = &rec.polys[n - 1];
        report.residual("recursion_vs_gram_schmidt", n, p - &gs.polys[n - 1]);
        report.residual("differential_equation", n, legendre_ode_residual(d, n, p));
        let endpoint = p.eval_exact(&Rational::one()) - Rational::one();
        report.residual("endpoint_one", n, Polynomial::constant(endpoint));
    }
    for n in 1..=n_max {
        let p = &rec.polys[n - 1];
        let computed = f.pair(p, p)?;
        report.norm(n, &UnitScalar::rational(legendre_norm(n, d)), &computed);
    }
    Ok(report)
}
