//! Non-interacting fermions in a 1-D harmonic oscillator perturbed along a
//! constrained Hermite-type mode.
//!
//! Orbitals are `ψ_p = (2^p p! √π)^(-1/2) H_p(r) e^(-r²/2)` with energies
//! `p + 1/2` (`p = 0..B-1`, label `i = p + 1`). The modes are
//! `w_n = c_n P_n(r) e^(-r²)` where `P_n` is the monic family orthogonal
//! under `e^(-2r²)` with zero average under `e^(-r²)`. Matrix elements
//! `∫ ψ_p w_n ψ_q` are Gaussian moments of `e^(-2r²)` and are computed in
//! exact integer arithmetic before a single conversion to `f64`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::constructor::{constrained_family, ConstrainedFamily};
use crate::error::{Error, Result};
use crate::measures::{double_factorial_odd, factorial};
use crate::poly::{to_f64, Polynomial, Rational};
use crate::projector::{BasisFunction, WeightCase};
use crate::quadrature::GaussLegendre;

/// Default number of oscillator orbitals kept in the diagonalization.
pub const DEFAULT_BASIS_SIZE: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OscillatorModel {
    /// Particle count.
    pub z: usize,
    /// Number of oscillator orbitals retained.
    pub b: usize,
}

impl OscillatorModel {
    pub fn new(z: usize, b: usize) -> Result<Self> {
        if z == 0 || b <= z {
            return Err(Error::InvalidArgument(format!(
                "need 0 < Z < B, got Z={z}, B={b}"
            )));
        }
        Ok(OscillatorModel { z, b })
    }

    /// `E_i = i - 1/2` for labels `i = 1..=B`.
    pub fn energy(&self, label: usize) -> f64 {
        label as f64 - 0.5
    }
}

/// `ψ_0(r), …, ψ_{n-1}(r)` by the normalized Hermite-function recurrence.
pub fn orbital_values(n: usize, r: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    let mut h_prev = 0.0;
    let mut h = std::f64::consts::PI.powf(-0.25) * (-0.5 * r * r).exp();
    out.push(h);
    for p in 0..n - 1 {
        let pf = p as f64;
        let next = (2.0 / (pf + 1.0)).sqrt() * r * h - (pf / (pf + 1.0)).sqrt() * h_prev;
        h_prev = h;
        h = next;
        out.push(h);
    }
    out
}

/// Physicists' Hermite polynomials `H_0..H_{n-1}` with integer coefficients.
fn hermite_integer_polys(n: usize) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for p in 0..n {
        let next = match p {
            0 => vec![BigInt::one()],
            1 => vec![BigInt::zero(), BigInt::from(2)],
            _ => {
                let a = &out[p - 1];
                let b = &out[p - 2];
                let mut c = vec![BigInt::zero(); p + 1];
                for (k, v) in a.iter().enumerate() {
                    c[k + 1] += v * 2;
                }
                for (k, v) in b.iter().enumerate() {
                    c[k] -= v * (2 * (p as i64 - 1));
                }
                c
            }
        };
        out.push(next);
    }
    out
}

/// Mode functions `w_1..w_N` with weight factor `e^(-r²)`.
#[derive(Clone, Debug)]
pub struct ModeBasis {
    pub family: ConstrainedFamily,
    pub functions: Vec<BasisFunction>,
}

impl ModeBasis {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::InvalidArgument("mode basis needs N >= 1".into()));
        }
        let case = WeightCase::hermite_narrow();
        let family = constrained_family(&case.ortho(), &case.constraint(), n_max)?;
        let functions = family
            .polys
            .iter()
            .zip(&family.norms)
            .map(|(p, norm)| BasisFunction {
                mu: case.clone(),
                poly: p.clone(),
                norm_factor: 1.0 / norm.to_f64().sqrt(),
            })
            .collect();
        Ok(ModeBasis { family, functions })
    }

    pub fn n_max(&self) -> usize {
        self.functions.len()
    }

    /// Mode `m` (1-based).
    pub fn mode(&self, m: usize) -> Result<&BasisFunction> {
        m.checked_sub(1)
            .and_then(|i| self.functions.get(i))
            .ok_or_else(|| {
                Error::InvalidArgument(format!("mode {m} outside 1..={}", self.n_max()))
            })
    }

    /// `∫ ψ_p w_m ψ_q` for `p ∈ rows`, `q ∈ cols`.
    pub fn matrix_elements(
        &self,
        m: usize,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> Result<DMatrix<f64>> {
        self.mode(m)?;
        let poly = &self.family.polys[m - 1];
        // norm relative to sqrt(pi/2)
        let g = &self.family.norms[m - 1].value;
        Ok(hermite_sandwich(poly, g, rows, cols))
    }

    /// Full `B × B` matrix of the mode `m` in the orbital basis.
    pub fn operator(&self, m: usize, b: usize) -> Result<DMatrix<f64>> {
        self.matrix_elements(m, 0..b, 0..b)
    }
}

/// `∫ ψ_p c P ψ_q dr` with `c = (g sqrt(pi/2))^(-1/2)` and the `e^(-r²)`
/// factor of the mode:
///
/// `I = ∫ H_p H_q P e^(-2r²) / sqrt(pi/2)` (rational), then
/// `value = sign(I) sqrt(I² / (g 2^(p+q) p! q!)) (2 pi)^(-1/4)`.
fn hermite_sandwich(
    poly: &Polynomial,
    g: &Rational,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> DMatrix<f64> {
    let nh = rows.end.max(cols.end);
    let herm = hermite_integer_polys(nh);
    let (pint, plcm) = poly.integer_coeffs();
    let deg_p = pint.len().saturating_sub(1);
    let parity_p = deg_p % 2;
    let max_k = 2 * nh + deg_p;
    let half = max_k / 2 + 1;
    // M[k] = 4^half * (k-1)!!/4^(k/2) for even k: integer moments of e^{-2r^2}
    let moments: Vec<BigInt> = (0..=max_k)
        .map(|k| {
            if k % 2 == 1 {
                BigInt::zero()
            } else {
                double_factorial_odd((k / 2) as u64) << (2 * (half - k / 2))
            }
        })
        .collect();
    let moment_scale = BigInt::one() << (2 * half);
    let facts: Vec<BigInt> = (0..nh as u64).map(factorial).collect();
    let inv_sqrt = (2.0 * std::f64::consts::PI).powf(-0.25);

    let mut out = DMatrix::zeros(rows.len(), cols.len());
    for p in rows.clone() {
        // A_p = H_p * P_int
        let mut a = vec![BigInt::zero(); p + 1 + deg_p];
        for (i, h) in herm[p].iter().enumerate() {
            if h.is_zero() {
                continue;
            }
            for (j, c) in pint.iter().enumerate() {
                if !c.is_zero() {
                    a[i + j] += h * c;
                }
            }
        }
        // u[j] = Σ_i A[i] M[i+j], only for j below the column bound
        let u: Vec<BigInt> = (0..cols.end)
            .map(|j| {
                a.iter()
                    .enumerate()
                    .filter(|(i, v)| (i + j) % 2 == 0 && !v.is_zero())
                    .fold(BigInt::zero(), |acc, (i, v)| acc + v * &moments[i + j])
            })
            .collect();
        for q in cols.clone() {
            if (p + q + parity_p) % 2 == 1 {
                continue;
            }
            let i_int: BigInt = herm[q]
                .iter()
                .zip(&u)
                .filter(|(h, _)| !h.is_zero())
                .map(|(h, v)| h * v)
                .sum();
            if i_int.is_zero() {
                continue;
            }
            // I = i_int / (plcm * moment_scale)
            let num = &i_int * &i_int;
            let den = &plcm * &plcm * &moment_scale * &moment_scale
                * (BigInt::one() << (p + q))
                * &facts[p]
                * &facts[q];
            let ratio = Rational::new(num, den) / g;
            let sign = if i_int.is_negative() { -1.0 } else { 1.0 };
            out[(p - rows.start, q - cols.start)] = sign * to_f64(&ratio).sqrt() * inv_sqrt;
        }
    }
    out
}

/// Occupied orbitals of `H_0 + λ w_m` expanded in oscillator functions.
#[derive(Clone, Debug)]
pub struct GroundState {
    /// `B × Z`, column `k` holds the k-th lowest eigenvector.
    pub orbitals: DMatrix<f64>,
    pub energies: Vec<f64>,
}

impl GroundState {
    /// `ρ(r) = Σ_k φ_k(r)²`.
    pub fn density(&self, r: f64) -> f64 {
        let psi = DVector::from_vec(orbital_values(self.orbitals.nrows(), r));
        let phi = self.orbitals.tr_mul(&psi);
        phi.iter().map(|v| v * v).sum()
    }
}

/// Diagonalizes `H_0 + λ V` where `V` is the mode operator in the orbital
/// basis and keeps the `Z` lowest states.
pub fn ground_state(model: &OscillatorModel, v: &DMatrix<f64>, lambda: f64) -> Result<GroundState> {
    let b = model.b;
    if v.nrows() != b || v.ncols() != b {
        return Err(Error::InvalidArgument("operator size must equal B".into()));
    }
    let mut h = v * lambda;
    for p in 0..b {
        h[(p, p)] += p as f64 + 0.5;
    }
    let eig = SymmetricEigen::try_new(h, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Eigensolver("symmetric eigensolver did not converge".into()))?;
    let mut order: Vec<usize> = (0..b).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let below = eig.eigenvalues[order[model.z - 1]];
    let above = eig.eigenvalues[order[model.z]];
    if (above - below).abs() < 1e-10 {
        return Err(Error::DegenerateGround { below, above });
    }
    let mut orbitals = DMatrix::zeros(b, model.z);
    for (k, &idx) in order.iter().take(model.z).enumerate() {
        orbitals.set_column(k, &eig.eigenvectors.column(idx));
    }
    Ok(GroundState {
        orbitals,
        energies: order.iter().take(model.z).map(|&i| eig.eigenvalues[i]).collect(),
    })
}

/// Ground state density sampler for `H_0 + λ w_m`.
pub fn perturbed_ground_density(
    model: &OscillatorModel,
    basis: &ModeBasis,
    m: usize,
    lambda: f64,
) -> Result<GroundState> {
    let v = basis.operator(m, model.b)?;
    ground_state(model, &v, lambda)
}

/// Closed form of the unperturbed density for `Z = 4`.
pub fn reference_density_z4(r: f64) -> f64 {
    let r2 = r * r;
    (((8.0 * r2 - 12.0) * r2 + 18.0) * r2 + 9.0) * (-r2).exp() / (6.0 * std::f64::consts::PI.sqrt())
}

/// Quadrature settings for projections onto the mode basis: a
/// Gauss–Legendre rule on `[-half_width, half_width]`, cross-checked at
/// 1.5 times the order.
#[derive(Clone, Debug)]
pub struct Projection {
    pub half_width: f64,
    pub order: usize,
    pub tol: f64,
}

impl Default for Projection {
    fn default() -> Self {
        Projection {
            half_width: 12.0,
            order: 240,
            tol: 1e-10,
        }
    }
}

impl Projection {
    fn rule(&self, order: usize) -> GaussLegendre {
        GaussLegendre::on_interval(order, -self.half_width, self.half_width)
    }

    /// `∫ f dr` over the window at both orders.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> Result<f64> {
        let lo = self.rule(self.order).integrate(&f);
        let hi = self.rule(self.order * 3 / 2).integrate(&f);
        if (lo - hi).abs() > self.tol * lo.abs().max(1.0) {
            return Err(Error::QuadratureDisagreement(format!(
                "order {} gives {lo:e}, order {} gives {hi:e}",
                self.order,
                self.order * 3 / 2
            )));
        }
        Ok(hi)
    }
}

/// `Δρ_n = ∫ w_n Δρ dr` for `n = 1..N`.
pub fn density_coordinates<F: Fn(f64) -> f64>(
    delta_rho: F,
    basis: &ModeBasis,
    quad: &Projection,
) -> Result<Vec<f64>> {
    let check = |order: usize| -> Vec<f64> {
        let rule = quad.rule(order);
        let samples: Vec<(f64, f64)> = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&r, &w)| (r, w * delta_rho(r)))
            .collect();
        basis
            .functions
            .iter()
            .map(|f| samples.iter().map(|&(r, wd)| wd * f.eval(r)).sum())
            .collect()
    };
    let lo = check(quad.order);
    let hi = check(quad.order * 3 / 2);
    for (n, (a, b)) in lo.iter().zip(&hi).enumerate() {
        if (a - b).abs() > quad.tol * a.abs().max(1.0) {
            return Err(Error::QuadratureDisagreement(format!(
                "coordinate {}: {a:e} vs {b:e}",
                n + 1
            )));
        }
    }
    Ok(hi)
}

/// Runs `H_0 + λ w_m` and projects the density change on the mode basis.
pub struct TrajectoryRunner<'a> {
    pub model: OscillatorModel,
    pub basis: &'a ModeBasis,
    pub quad: Projection,
    mode: usize,
    operator: DMatrix<f64>,
    reference: GroundState,
}

impl<'a> TrajectoryRunner<'a> {
    pub fn new(model: &OscillatorModel, basis: &'a ModeBasis, m: usize) -> Result<Self> {
        let operator = basis.operator(m, model.b)?;
        let reference = ground_state(model, &operator, 0.0)?;
        Ok(TrajectoryRunner {
            model: model.clone(),
            basis,
            quad: Projection::default(),
            mode: m,
            operator,
            reference,
        })
    }

    pub fn mode(&self) -> usize {
        self.mode
    }

    pub fn ground_state(&self, lambda: f64) -> Result<GroundState> {
        ground_state(&self.model, &self.operator, lambda)
    }

    /// `Δρ_1..Δρ_N` at `λ`.
    pub fn coordinates(&self, lambda: f64) -> Result<Vec<f64>> {
        if lambda == 0.0 {
            return Ok(vec![0.0; self.basis.n_max()]);
        }
        let gs = self.ground_state(lambda)?;
        let reference = &self.reference;
        density_coordinates(
            |r| gs.density(r) - reference.density(r),
            self.basis,
            &self.quad,
        )
    }

    /// `∫ Δρ dr`; zero by particle-number conservation.
    pub fn mass_change(&self, lambda: f64) -> Result<f64> {
        let gs = self.ground_state(lambda)?;
        let reference = &self.reference;
        self.quad
            .integrate(|r| gs.density(r) - reference.density(r))
    }
}

/// Same coordinates without quadrature: `Δρ_n = Σ_k φ_kᵀ W_n φ_k - Σ_{p<Z} (W_n)_pp`
/// where `W_n` is the orbital-basis matrix of `w_n`.
pub fn density_coordinates_exact(
    model: &OscillatorModel,
    basis: &ModeBasis,
    gs: &GroundState,
) -> Result<Vec<f64>> {
    (1..=basis.n_max())
        .map(|n| {
            let w = basis.operator(n, model.b)?;
            let occupied: f64 = (0..gs.orbitals.ncols())
                .map(|k| {
                    let c = gs.orbitals.column(k);
                    c.dot(&(&w * c))
                })
                .sum();
            let reference: f64 = (0..model.z).map(|p| w[(p, p)]).sum();
            Ok(occupied - reference)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ToyTrajectory {
    pub mode: usize,
    pub n_max: usize,
    pub lambdas: Vec<f64>,
    /// `coords[k][n-1] = Δρ_n(λ_k)`
    pub coords: Vec<Vec<f64>>,
}

impl ToyTrajectory {
    /// Plot scale factors `2^|n - m|` used to make all coordinates visible.
    pub fn scale_factors(&self) -> Vec<f64> {
        (1..=self.n_max)
            .map(|n| 2f64.powi((n as i64 - self.mode as i64).unsigned_abs() as i32))
            .collect()
    }

    pub fn header(&self) -> Vec<String> {
        std::iter::once("lambda".to_string())
            .chain((1..=self.n_max).map(|n| format!("drho_{n}")))
            .collect()
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.lambdas
            .iter()
            .zip(&self.coords)
            .map(|(l, c)| std::iter::once(*l).chain(c.iter().copied()).collect())
            .collect()
    }

    /// Parametric extract of three coordinates (1-based orders).
    pub fn extract(&self, orders: [usize; 3]) -> Vec<[f64; 3]> {
        self.coords
            .iter()
            .map(|c| orders.map(|n| c[n - 1]))
            .collect()
    }
}

/// Coordinates over a λ grid that contains zero.
pub fn trajectory(
    model: &OscillatorModel,
    m: usize,
    lambdas: &[f64],
    basis: &ModeBasis,
) -> Result<ToyTrajectory> {
    if !lambdas.contains(&0.0) {
        return Err(Error::InvalidArgument("λ grid must contain 0".into()));
    }
    let runner = TrajectoryRunner::new(model, basis, m)?;
    let coords = lambdas
        .iter()
        .map(|&l| runner.coordinates(l))
        .collect::<Result<Vec<_>>>()?;
    Ok(ToyTrajectory {
        mode: m,
        n_max: basis.n_max(),
        lambdas: lambdas.to_vec(),
        coords,
    })
}

/// Symmetric `λ` grid `-max, …, 0, …, max` with the given step.
pub fn lambda_grid(max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(max >= 0.0) {
        return Err(Error::InvalidArgument("need step > 0 and lambda-max >= 0".into()));
    }
    let n = (max / step + 0.5).floor() as i64;
    Ok((-n..=n).map(|k| k as f64 * step).collect())
}

/// `ℱ_mn = 2 Σ_{i ≤ Z < I ≤ B} D_{m iI} D_{n iI} / (E_i - E_I)` with
/// `D_{n iI} = ∫ w_n ψ_i ψ_I`.
pub fn flexibility_matrix(model: &OscillatorModel, basis: &ModeBasis) -> Result<DMatrix<f64>> {
    let n = basis.n_max();
    let d: Vec<DMatrix<f64>> = (1..=n)
        .map(|m| basis.matrix_elements(m, 0..model.z, model.z..model.b))
        .collect::<Result<_>>()?;
    let mut f = DMatrix::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let mut s = 0.0;
            for i in 0..model.z {
                for (col, big_i) in (model.z..model.b).enumerate() {
                    s += d[a][(i, col)] * d[b][(i, col)] / (i as f64 - big_i as f64);
                }
            }
            f[(a, b)] = 2.0 * s;
            f[(b, a)] = 2.0 * s;
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbitals_are_orthonormal() {
        let rule = GaussLegendre::on_interval(200, -12.0, 12.0);
        for p in 0..8 {
            for q in 0..8 {
                let v = rule.integrate(|r| {
                    let o = orbital_values(8, r);
                    o[p] * o[q]
                });
                let e = if p == q { 1.0 } else { 0.0 };
                assert!((v - e).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn reference_density_matches_orbital_sum() {
        for k in 0..=50 {
            let r = k as f64 * 0.1;
            let sum: f64 = orbital_values(4, r).iter().map(|v| v * v).sum();
            assert!((sum - reference_density_z4(r)).abs() < 1e-14);
        }
    }

    #[test]
    fn sandwich_matches_quadrature() {
        let basis = ModeBasis::new(6).unwrap();
        let rule = GaussLegendre::on_interval(240, -12.0, 12.0);
        for m in [2, 3, 4, 6] {
            let v = basis.operator(m, 12).unwrap();
            let w = basis.mode(m).unwrap();
            for p in 0..12 {
                for q in 0..12 {
                    let num = rule.integrate(|r| {
                        let o = orbital_values(12, r);
                        o[p] * o[q] * w.eval(r)
                    });
                    assert!((num - v[(p, q)]).abs() < 1e-13, "m={m} p={p} q={q}");
                }
            }
        }
    }

    #[test]
    fn mode_polynomials() {
        let basis = ModeBasis::new(6).unwrap();
        let p2 = &basis.family.polys[1];
        assert_eq!(p2.scale(&crate::poly::int(2)), Polynomial::from_ints(&[-1, 0, 2]));
        let p4 = &basis.family.polys[3];
        assert_eq!(p4.scale(&crate::poly::int(8)), Polynomial::from_ints(&[1, 0, -14, 0, 8]));
        let p6 = &basis.family.polys[5];
        assert_eq!(
            p6.scale(&crate::poly::int(32)),
            Polynomial::from_ints(&[-11, 0, 94, 0, -128, 0, 32])
        );
    }

    #[test]
    fn model_validation() {
        assert!(OscillatorModel::new(4, 4).is_err());
        assert!(OscillatorModel::new(0, 4).is_err());
        assert_eq!(OscillatorModel::new(4, 60).unwrap().energy(1), 0.5);
    }

    #[test]
    fn lambda_grid_contains_zero() {
        let g = lambda_grid(2.0, 0.1).unwrap();
        assert_eq!(g.len(), 41);
        assert!(g.contains(&0.0));
        assert_eq!(g[40], 2.0);
    }
}
