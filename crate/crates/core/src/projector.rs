//! Truncation projectors and the subtractor.
//!
//! For a weight factor `μ` the classical functions `z_n = μ L̂_n`
//! (`n = 0..N`) and the constrained functions `w_n = μ Ĝ_n` (`n = 1..N`)
//! are orthonormal under `∫ dr`, and every `w_n` has `∫ w_n = 0`. With
//! `P_N = Σ |w_n⟩⟨w_n|` and `Q_N = Σ |z_n⟩⟨z_n|`,
//!
//! ```text
//! Q_N - P_N = |σ_N⟩⟨σ_N|,   σ_N ∝ Σ_n ⟨z_n⟩ z_n,   ⟨z_n⟩ = ∫ z_n dr.
//! ```
//!
//! In z-coordinates the identity reads `OᵀO = I - c cᵀ` with
//! `O[n][m] = ⟨w_n|z_m⟩`; [`decomposition_check`] measures it from exact
//! pairings. High orders are evaluated through the closed-form coordinates
//! of [`constrained_coordinates`] and stable recurrences for `z_n`, which
//! avoids summing huge alternating monomial coefficients in floating point.
//!
//! Sign convention: every normalized polynomial has a positive leading
//! coefficient, which makes `⟨z_n⟩ = 2` for all `n` in the Laguerre case.

use nalgebra::{DMatrix, DVector};
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::constructor::{constrained_family, ClassicalFamily};
use crate::error::{Error, Result};
use crate::measures::MomentFunctional;
use crate::poly::{int, to_f64, Polynomial, Rational};
use crate::scalar::{Unit, UnitScalar};

/// Weight factor of the basis functions.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightCase {
    /// `μ = e^(-r/2)` on `[0, ∞)`, `d = 1`.
    Laguerre,
    /// `μ = e^(-a r²/2)` on `ℝ`.
    Hermite { a: Rational },
}

impl WeightCase {
    /// `μ = e^(-r²/2)`.
    pub fn hermite() -> Self {
        WeightCase::Hermite { a: int(1) }
    }

    /// `μ = e^(-r²)`, the variant used for the subtractor plots and the toy
    /// model.
    pub fn hermite_narrow() -> Self {
        WeightCase::Hermite { a: int(2) }
    }

    /// Orthogonality functional (weight `μ²`).
    pub fn ortho(&self) -> MomentFunctional {
        match self {
            WeightCase::Laguerre => MomentFunctional::LaguerreOrtho(1),
            WeightCase::Hermite { a } => MomentFunctional::Gauss(a.clone()),
        }
    }

    /// Constraint functional (weight `μ`).
    pub fn constraint(&self) -> MomentFunctional {
        match self {
            WeightCase::Laguerre => MomentFunctional::LaguerreConstraint(1),
            WeightCase::Hermite { a } => MomentFunctional::Gauss(a / int(2)),
        }
    }

    pub fn mu(&self, r: f64) -> f64 {
        match self {
            WeightCase::Laguerre => (-0.5 * r).exp(),
            WeightCase::Hermite { a } => (-0.5 * to_f64(a) * r * r).exp(),
        }
    }

    /// Integration domain (the Laguerre case lives on `r >= 0`).
    pub fn lower_bound(&self) -> f64 {
        match self {
            WeightCase::Laguerre => 0.0,
            WeightCase::Hermite { .. } => f64::NEG_INFINITY,
        }
    }

    pub fn name(&self) -> String {
        match self {
            WeightCase::Laguerre => "laguerre".into(),
            WeightCase::Hermite { a } => format!("hermite:a={a}"),
        }
    }

    /// Monic classical polynomials `0..=n_max` from their three-term
    /// recurrences, with exact norms.
    pub fn classical(&self, n_max: usize) -> ClassicalFamily {
        let o = self.ortho();
        let mut polys = vec![Polynomial::one()];
        let mut norms = vec![o.moment(0).expect("valid functional")];
        let r = Polynomial::x();
        for n in 0..n_max {
            let nq = int(n as i64);
            let (shift, back) = match self {
                // p_{n+1} = (r - (2n+1)) p_n - n² p_{n-1}
                WeightCase::Laguerre => (int(2 * n as i64 + 1), &nq * &nq),
                // p_{n+1} = r p_n - n/(2a) p_{n-1}
                WeightCase::Hermite { a } => (Rational::zero(), &nq / (a * int(2))),
            };
            let pn = &polys[n];
            let mut next = &(&r * pn) - &pn.scale(&shift);
            if n > 0 {
                next = &next - &polys[n - 1].scale(&back);
            }
            polys.push(next);
            let prev: &UnitScalar = &norms[n];
            let factor = match self {
                WeightCase::Laguerre => int((n as i64 + 1).pow(2)),
                WeightCase::Hermite { a } => int(n as i64 + 1) / (a * int(2)),
            };
            norms.push(prev.scale(&factor));
        }
        ClassicalFamily {
            ortho: o,
            polys,
            norms,
        }
    }

    /// `z_0(r), ..., z_{n_max}(r)` by the normalized recurrences.
    pub fn classical_values(&self, n_max: usize, r: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(n_max + 1);
        match self {
            WeightCase::Laguerre => {
                // (-1)^n L_n(r) e^{-r/2}, standard L_n orthonormal under e^{-r}
                let mu = (-0.5 * r).exp();
                let (mut l0, mut l1) = (1.0, 1.0 - r);
                out.push(mu * l0);
                if n_max >= 1 {
                    out.push(-mu * l1);
                }
                for n in 1..n_max {
                    let nf = n as f64;
                    let l2 = ((2.0 * nf + 1.0 - r) * l1 - nf * l0) / (nf + 1.0);
                    l0 = l1;
                    l1 = l2;
                    let sign = if (n + 1) % 2 == 0 { 1.0 } else { -1.0 };
                    out.push(sign * mu * l1);
                }
            }
            WeightCase::Hermite { a } => {
                let af = to_f64(a);
                let x = af.sqrt() * r;
                let scale = af.powf(0.25);
                let h0 = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
                let (mut h_prev, mut h) = (0.0, h0);
                out.push(scale * h);
                for n in 0..n_max {
                    let nf = n as f64;
                    let next = (2.0 / (nf + 1.0)).sqrt() * x * h - (nf / (nf + 1.0)).sqrt() * h_prev;
                    h_prev = h;
                    h = next;
                    out.push(scale * h);
                }
            }
        }
        out
    }
}

/// `norm_factor * poly(r) * μ(r)` with unit norm under `∫ dr` and positive
/// leading coefficient.
#[derive(Clone, Debug)]
pub struct BasisFunction {
    pub mu: WeightCase,
    pub poly: Polynomial,
    pub norm_factor: f64,
}

impl BasisFunction {
    fn new(mu: &WeightCase, poly: Polynomial, norm: &UnitScalar) -> Self {
        BasisFunction {
            mu: mu.clone(),
            poly,
            norm_factor: 1.0 / norm.to_f64().sqrt(),
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.norm_factor * self.poly.eval(r) * self.mu.mu(r)
    }
}

/// `z_0..z_N`.
pub fn classical_basis(case: &WeightCase, n_max: usize) -> Vec<BasisFunction> {
    let fam = case.classical(n_max);
    fam.polys
        .into_iter()
        .zip(&fam.norms)
        .map(|(p, n)| BasisFunction::new(case, p, n))
        .collect()
}

/// `w_1..w_N` from the exact constrained family.
pub fn constrained_basis(case: &WeightCase, n_max: usize) -> Result<Vec<BasisFunction>> {
    let fam = constrained_family(&case.ortho(), &case.constraint(), n_max)?;
    Ok(fam
        .polys
        .into_iter()
        .zip(&fam.norms)
        .map(|(p, n)| BasisFunction::new(case, p, n))
        .collect())
}

/// Exact `⟨z_n⟩²` for `n = 0..=n_max`. The Laguerre values are rational;
/// the Hermite ones are rational multiples of `sqrt(pi/a)`.
pub fn z_average_squares(case: &WeightCase, n_max: usize) -> Result<Vec<UnitScalar>> {
    let fam = case.classical(n_max);
    let c = case.constraint();
    fam.polys
        .iter()
        .zip(&fam.norms)
        .map(|(p, norm)| {
            let avg = c.apply(p)?;
            let sq = &avg.value * &avg.value;
            Ok(match case {
                WeightCase::Laguerre => UnitScalar::rational(sq / &norm.value),
                // (R1 sqrt(2pi/a))² / (R2 sqrt(pi/a)) = (2 R1²/R2) sqrt(pi/a)
                WeightCase::Hermite { a } => UnitScalar::new(
                    sq * int(2) / &norm.value,
                    Unit::SqrtPiOver(a.clone()),
                ),
            })
        })
        .collect()
}

/// Signed `⟨z_n⟩ = ∫ z_n dr` for `n = 0..=n_max`.
pub fn z_averages(case: &WeightCase, n_max: usize) -> Result<Vec<f64>> {
    let fam = case.classical(n_max);
    let c = case.constraint();
    let squares = z_average_squares(case, n_max)?;
    fam.polys
        .iter()
        .zip(&squares)
        .map(|(p, sq)| {
            let sign = c.apply(p)?.value.signum();
            Ok(to_f64(&sign) * sq.to_f64().sqrt())
        })
        .collect()
}

/// Coordinates of `|σ_N⟩` in the z-basis.
#[derive(Clone, Debug, Serialize)]
pub struct SubtractorVector {
    pub n_max: usize,
    pub coords: Vec<f64>,
    pub averages: Vec<f64>,
}

pub fn subtractor(case: &WeightCase, n_max: usize) -> Result<SubtractorVector> {
    subtractor_from_averages(z_averages(case, n_max)?)
}

pub fn subtractor_from_averages(averages: Vec<f64>) -> Result<SubtractorVector> {
    let n_max = averages.len().saturating_sub(1);
    let total: f64 = averages.iter().map(|a| a * a).sum();
    if total == 0.0 {
        return Err(Error::ZeroAverages(n_max));
    }
    let s = total.sqrt();
    Ok(SubtractorVector {
        n_max,
        coords: averages.iter().map(|a| a / s).collect(),
        averages,
    })
}

/// Coordinates of `w_1..w_N` in the z-basis, built directly from the
/// averages: `w_n ∝ S_{n-1} e_n - a_n (a_0, …, a_{n-1}, 0)` with
/// `S_k = Σ_{m≤k} a_m²`. This is the unique unit vector of degree `n` that
/// is orthogonal to the constraint vector and to lower orders, with a
/// positive top coordinate. Requires `a_0 ≠ 0`.
pub fn constrained_coordinates(averages: &[f64]) -> Result<DMatrix<f64>> {
    let n_max = averages.len().saturating_sub(1);
    if averages.first().is_none_or(|&a| a == 0.0) {
        return Err(Error::ZeroAverages(0));
    }
    let mut c = DMatrix::zeros(n_max, n_max + 1);
    let mut s_prev = averages[0] * averages[0];
    for n in 1..=n_max {
        let an = averages[n];
        let s_n = s_prev + an * an;
        let inv = 1.0 / (s_prev * s_n).sqrt();
        for m in 0..n {
            c[(n - 1, m)] = -an * averages[m] * inv;
        }
        c[(n - 1, n)] = s_prev * inv;
        s_prev = s_n;
    }
    Ok(c)
}

/// `O[n-1][m] = ⟨w_n | z_m⟩` from exact pairings of the Gram–Schmidt
/// family against the classical family.
pub fn overlap_matrix(case: &WeightCase, n_max: usize) -> Result<DMatrix<f64>> {
    let o = case.ortho();
    let w = constrained_family(&o, &case.constraint(), n_max)?;
    let z = case.classical(n_max);
    let moments: Vec<Rational> = (0..=2 * n_max)
        .map(|k| o.exact_moment(k).expect("exact kind"))
        .collect();
    let duals: Vec<Vec<Rational>> = z
        .polys
        .iter()
        .map(|p| {
            (0..=n_max)
                .map(|j| {
                    p.coeffs()
                        .iter()
                        .enumerate()
                        .fold(Rational::zero(), |acc, (i, c)| acc + c * &moments[i + j])
                })
                .collect()
        })
        .collect();
    let mut out = DMatrix::zeros(n_max, n_max + 1);
    for (n, (g, gn)) in w.polys.iter().zip(&w.norms).enumerate() {
        for m in 0..=n_max {
            // degree(w_n) = n + 1 < m gives zero overlap
            if m > n + 1 {
                continue;
            }
            let pair = g
                .coeffs()
                .iter()
                .zip(&duals[m])
                .fold(Rational::zero(), |acc, (c, d)| acc + c * d);
            if pair.is_zero() {
                continue;
            }
            // pair² / (g_n l_m), exact, then one square root in floats
            let sq = (&pair / &gn.value) * (&pair / &z.norms[m].value);
            let sign = if pair.is_negative() { -1.0 } else { 1.0 };
            out[(n, m)] = sign * to_f64(&sq).sqrt();
        }
    }
    Ok(out)
}

/// `max |OᵀO - (I - c cᵀ)|`.
pub fn decomposition_check(case: &WeightCase, n_max: usize) -> Result<f64> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("N must be >= 1".into()));
    }
    let o = overlap_matrix(case, n_max)?;
    let sigma = subtractor(case, n_max)?;
    Ok(decomposition_residual(&o, &sigma.coords))
}

pub fn decomposition_residual(o: &DMatrix<f64>, c: &[f64]) -> f64 {
    let c = DVector::from_column_slice(c);
    let p = o.transpose() * o;
    let target = DMatrix::identity(c.len(), c.len()) - &c * c.transpose();
    (p - target).amax()
}

/// Evaluates `w_1..w_N` at `r` through z-coordinates.
pub struct ConstrainedEvaluator {
    case: WeightCase,
    coords: DMatrix<f64>,
    subtractor: SubtractorVector,
}

impl ConstrainedEvaluator {
    pub fn new(case: &WeightCase, n_max: usize) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::InvalidArgument("N must be >= 1".into()));
        }
        let averages = z_averages(case, n_max)?;
        Ok(ConstrainedEvaluator {
            case: case.clone(),
            coords: constrained_coordinates(&averages)?,
            subtractor: subtractor_from_averages(averages)?,
        })
    }

    pub fn n_max(&self) -> usize {
        self.coords.nrows()
    }

    pub fn coords(&self) -> &DMatrix<f64> {
        &self.coords
    }

    pub fn subtractor(&self) -> &SubtractorVector {
        &self.subtractor
    }

    /// `(w_1(r), …, w_N(r))`
    pub fn w_values(&self, r: f64) -> DVector<f64> {
        let z = DVector::from_vec(self.case.classical_values(self.n_max(), r));
        &self.coords * z
    }

    /// `σ_N(r) = Σ c_n z_n(r)`
    pub fn sigma_value(&self, r: f64) -> f64 {
        self.case
            .classical_values(self.n_max(), r)
            .iter()
            .zip(&self.subtractor.coords)
            .map(|(z, c)| z * c)
            .sum()
    }
}

/// `⟨x|P_N|r⟩ = Σ_n w_n(x) w_n(r)` over the grid.
pub fn projector_kernel_profile(
    case: &WeightCase,
    n_max: usize,
    x: f64,
    grid: &[f64],
) -> Result<Vec<f64>> {
    let ev = ConstrainedEvaluator::new(case, n_max)?;
    let wx = ev.w_values(x);
    Ok(grid.iter().map(|&r| wx.dot(&ev.w_values(r))).collect())
}

/// `⟨x|σ_N⟩⟨σ_N|r⟩` over the grid.
pub fn subtractor_profile(
    case: &WeightCase,
    n_max: usize,
    x: f64,
    grid: &[f64],
) -> Result<Vec<f64>> {
    let ev = ConstrainedEvaluator::new(case, n_max)?;
    let sx = ev.sigma_value(x);
    Ok(grid.iter().map(|&r| sx * ev.sigma_value(r)).collect())
}

/// `lo, lo + step, …` up to and including `hi` (within half a step).
pub fn grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(hi >= lo) {
        return Err(Error::InvalidArgument(format!(
            "bad grid lo={lo} hi={hi} step={step}"
        )));
    }
    let n = ((hi - lo) / step + 0.5).floor() as usize;
    Ok((0..=n).map(|i| lo + i as f64 * step).collect())
}
