//! Density response of the centrifuge `ρ_K(r) ∝ e^(Kr²)` on the unit disc
//! and the constrained family orthogonal under `r e^(2Kr²)` with zero
//! average under `r e^(Kr²)`.

use serde::Serialize;

use crate::constructor::{constrained_family, ConstrainedFamily};
use crate::error::{Error, Result};
use crate::measures::{MomentFunctional, NumericWeight};
use crate::quadrature::GaussLegendre;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CentrifugeMode {
    pub k: f64,
    /// `∂ρ/∂K = (c2 r² + c0) e^(Kr²)`
    pub c2: f64,
    pub c0: f64,
}

impl CentrifugeMode {
    pub fn new(k: f64) -> Result<Self> {
        if k == 0.0 {
            return Err(Error::RemovableSingularity);
        }
        if !k.is_finite() {
            return Err(Error::InvalidArgument(format!("K must be finite, got {k}")));
        }
        let em1 = k.exp_m1();
        let scale = 2.0 / (em1 * em1);
        // 2[K r² (e^K-1) + e^K - K e^K - 1] / (e^K-1)²
        let c2 = scale * k * em1;
        let c0 = scale * (em1 - k * (em1 + 1.0));
        Ok(CentrifugeMode { k, c2, c0 })
    }

    pub fn eval(&self, r: f64) -> f64 {
        (self.c2 * r * r + self.c0) * (self.k * r * r).exp()
    }

    /// `∫₀¹ r ∂ρ/∂K dr` with a Gauss–Legendre rule of the given order.
    pub fn residual_at(&self, order: usize) -> f64 {
        GaussLegendre::on_interval(order, 0.0, 1.0).integrate(|r| r * self.eval(r))
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CentrifugeCheck {
    pub k: f64,
    pub residual: f64,
    pub residual_check: f64,
    pub order: usize,
    pub c2: f64,
    pub c0: f64,
}

/// Zero-average residual at `order` and `2·order`.
pub fn centrifuge_mode(k: f64, order: usize) -> Result<CentrifugeCheck> {
    if order == 0 {
        return Err(Error::InvalidArgument("quadrature order must be >= 1".into()));
    }
    let mode = CentrifugeMode::new(k)?;
    Ok(CentrifugeCheck {
        k,
        residual: mode.residual_at(order),
        residual_check: mode.residual_at(2 * order),
        order,
        c2: mode.c2,
        c0: mode.c0,
    })
}

/// Constrained family for the centrifuge measures on `[0, 1]`.
pub fn centrifuge_family(k: f64, n_max: usize, order: usize) -> Result<ConstrainedFamily> {
    let ortho = MomentFunctional::Numeric(NumericWeight::new(1, 2.0 * k, 0.0, 1.0).with_order(order));
    let constraint = MomentFunctional::Numeric(NumericWeight::new(1, k, 0.0, 1.0).with_order(order));
    constrained_family(&ortho, &constraint, n_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_average() {
        for k in [0.5, 1.0, 2.0, 5.0, -1.0] {
            let c = centrifuge_mode(k, 64).unwrap();
            assert!(c.residual.abs() < 1e-12, "K={k}: {}", c.residual);
        }
    }

    #[test]
    fn k_zero_rejected() {
        assert_eq!(CentrifugeMode::new(0.0), Err(Error::RemovableSingularity));
    }

    #[test]
    fn matches_closed_form() {
        let k: f64 = 1.3;
        let m = CentrifugeMode::new(k).unwrap();
        let e = k.exp();
        for r in [0.0, 0.3, 0.9] {
            let direct = 2.0 * (k * r * r * (e - 1.0) + e - k * e - 1.0) / ((e - 1.0) * (e - 1.0))
                * (k * r * r).exp();
            assert!((direct - m.eval(r)).abs() < 1e-14);
        }
    }
}
