//! Positivity domain of the truncated density
//! `𝒫̄(r) = 8r⁶-12r⁴+18r²+9 + ΔR₂(2r²-1) + ΔR₄(8r⁴-14r²+1)`.
//!
//! `𝒫̄` is even, so with `s = r²` it is the cubic
//! `8s³ + (8b-12)s² + (18+2a-14b)s + (9-a+b)` (`a = ΔR₂`, `b = ΔR₄`) and its
//! minimum over `r` is attained at `s = 0` or at a nonnegative root of the
//! quadratic derivative. The minimum is concave in `(a, b)`, so the domain
//! is convex and every ray from the origin crosses its border once.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::resultant::sylvester_resultant;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PositivityQuery {
    pub dr2: f64,
    pub dr4: f64,
}

/// Location and value of `min_{r ≥ 0} 𝒫̄`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Minimum {
    pub r: f64,
    pub value: f64,
}

impl PositivityQuery {
    pub fn new(dr2: f64, dr4: f64) -> Self {
        PositivityQuery { dr2, dr4 }
    }

    /// Cubic in `s = r²`, ascending.
    pub fn cubic(&self) -> [f64; 4] {
        let (a, b) = (self.dr2, self.dr4);
        [9.0 - a + b, 18.0 + 2.0 * a - 14.0 * b, 8.0 * b - 12.0, 8.0]
    }

    /// `𝒫̄` in `r`, ascending, degree 6.
    pub fn poly(&self) -> [f64; 7] {
        let c = self.cubic();
        [c[0], 0.0, c[1], 0.0, c[2], 0.0, c[3]]
    }

    pub fn eval(&self, r: f64) -> f64 {
        eval_cubic(&self.cubic(), r * r)
    }

    pub fn minimum(&self) -> Minimum {
        let c = self.cubic();
        let mut best = Minimum {
            r: 0.0,
            value: c[0],
        };
        // f'(s) = 3c3 s² + 2c2 s + c1
        for s in quadratic_roots(3.0 * c[3], 2.0 * c[2], c[1]) {
            if s < 0.0 {
                continue;
            }
            let s = polish(&c, s);
            if s < 0.0 {
                continue;
            }
            let v = eval_cubic(&c, s);
            if v < best.value {
                best = Minimum { r: s.sqrt(), value: v };
            }
        }
        best
    }

    pub fn is_interior(&self) -> bool {
        self.minimum().value > 0.0
    }

    /// `|Res(𝒫̄, 𝒫̄')|` after scaling each polynomial to unit max-coefficient.
    pub fn normalized_resultant(&self) -> Result<f64> {
        let p = self.poly();
        let dp: Vec<f64> = (1..p.len()).map(|k| k as f64 * p[k]).collect();
        Ok(sylvester_resultant(&unit_max(&p), &unit_max(&dp))?.abs())
    }
}

fn eval_cubic(c: &[f64; 4], s: f64) -> f64 {
    ((c[3] * s + c[2]) * s + c[1]) * s + c[0]
}

fn unit_max(p: &[f64]) -> Vec<f64> {
    let m = p.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if m == 0.0 {
        return p.to_vec();
    }
    p.iter().map(|v| v / m).collect()
}

/// Real roots of `a s² + b s + c` (`a ≠ 0`), cancellation-free.
fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        return vec![0.0];
    }
    vec![q / a, c / q]
}

/// Newton steps on `f'(s) = 0`.
fn polish(c: &[f64; 4], mut s: f64) -> f64 {
    for _ in 0..4 {
        let d1 = (3.0 * c[3] * s + 2.0 * c[2]) * s + c[1];
        let d2 = 6.0 * c[3] * s + 2.0 * c[2];
        if d2 == 0.0 {
            break;
        }
        let step = d1 / d2;
        if !step.is_finite() {
            break;
        }
        s -= step;
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct BorderPoint {
    /// Ray angle in the `(ΔR₂, ΔR₄)` plane.
    pub theta: f64,
    pub dr2: f64,
    pub dr4: f64,
    /// `min_r 𝒫̄` at the returned point.
    pub min_residual: f64,
    /// Minimizer `r`; zero on the segment where `𝒫̄(0) = 0` binds.
    pub r_min: f64,
    /// Normalized resultant relative to its value at the origin.
    pub resultant_rel: f64,
    /// The ray stayed inside the domain up to the search bound.
    pub unbounded: bool,
}

#[derive(Clone, Debug)]
pub struct BorderScan {
    pub directions: usize,
    pub tolerance: f64,
    /// Largest `t` probed along a ray before declaring it unbounded.
    pub bound: f64,
}

impl BorderScan {
    pub fn new(directions: usize, tolerance: f64) -> Result<Self> {
        if directions < 4 {
            return Err(Error::InvalidArgument("need at least 4 directions".into()));
        }
        if !(tolerance > 0.0) {
            return Err(Error::InvalidArgument("tolerance must be positive".into()));
        }
        Ok(BorderScan {
            directions,
            tolerance,
            bound: 1e6,
        })
    }

    pub fn run(&self) -> Result<Vec<BorderPoint>> {
        let origin = PositivityQuery::new(0.0, 0.0).normalized_resultant()?;
        (0..self.directions)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / self.directions as f64;
                self.ray(theta, origin)
            })
            .collect()
    }

    fn ray(&self, theta: f64, origin_resultant: f64) -> Result<BorderPoint> {
        let (dx, dy) = (theta.cos(), theta.sin());
        let at = |t: f64| PositivityQuery::new(t * dx, t * dy);
        let mut lo = 0.0;
        let mut hi = 1.0;
        while at(hi).is_interior() {
            lo = hi;
            hi *= 2.0;
            if hi > self.bound {
                let q = at(lo);
                let m = q.minimum();
                return Ok(BorderPoint {
                    theta,
                    dr2: q.dr2,
                    dr4: q.dr4,
                    min_residual: m.value,
                    r_min: m.r,
                    resultant_rel: f64::NAN,
                    unbounded: true,
                });
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if at(mid).is_interior() {
                lo = mid;
            } else {
                hi = mid;
            }
            if at(lo).minimum().value.abs() <= self.tolerance * 1e-3 {
                break;
            }
        }
        let q = at(lo);
        let m = q.minimum();
        if m.value.abs() > self.tolerance {
            return Err(Error::Verification(format!(
                "border along theta={theta} not resolved: min {:e}",
                m.value
            )));
        }
        Ok(BorderPoint {
            theta,
            dr2: q.dr2,
            dr4: q.dr4,
            min_residual: m.value,
            r_min: m.r,
            resultant_rel: q.normalized_resultant()? / origin_resultant,
            unbounded: false,
        })
    }
}

pub fn positivity_border(directions: usize, tolerance: f64) -> Result<Vec<BorderPoint>> {
    BorderScan::new(directions, tolerance)?.run()
}

/// Samples the ray through `p`: interior strictly before it, exterior
/// beyond it (single sign change).
pub fn is_star_shaped(p: &BorderPoint, samples: usize) -> bool {
    if p.unbounded {
        return (1..=samples).all(|k| {
            let t = k as f64 / samples as f64;
            PositivityQuery::new(t * p.dr2, t * p.dr4).is_interior()
        });
    }
    let inside = (1..samples).all(|k| {
        let t = k as f64 / samples as f64 * (1.0 - 1e-6);
        PositivityQuery::new(t * p.dr2, t * p.dr4).minimum().value > 0.0
    });
    let outside = (1..=samples).all(|k| {
        let t = 1.0 + 1e-6 + k as f64 / samples as f64;
        PositivityQuery::new(t * p.dr2, t * p.dr4).minimum().value < 0.0
    });
    inside && outside
}

/// Largest violation `-min 𝒫̄` over midpoints of all bounded border pairs.
pub fn midpoint_convexity_violation(points: &[BorderPoint]) -> f64 {
    let bounded: Vec<&BorderPoint> = points.iter().filter(|p| !p.unbounded).collect();
    let mut worst = 0.0f64;
    for (i, a) in bounded.iter().enumerate() {
        for b in &bounded[i + 1..] {
            let q = PositivityQuery::new(0.5 * (a.dr2 + b.dr2), 0.5 * (a.dr4 + b.dr4));
            worst = worst.max(-q.minimum().value);
        }
    }
    worst
}

/// Border points where `𝒫̄(0) = 0` binds, with their distance from the
/// line `9 - ΔR₂ + ΔR₄ = 0`.
pub fn line_segment_report(points: &[BorderPoint]) -> Vec<(f64, f64, f64)> {
    points
        .iter()
        .filter(|p| !p.unbounded && p.r_min == 0.0)
        .map(|p| (p.dr2, p.dr4, 9.0 - p.dr2 + p.dr4))
        .collect()
}

pub fn border_header() -> Vec<String> {
    vec!["dR2".into(), "dR4".into(), "min_residual".into()]
}

pub fn border_rows(points: &[BorderPoint]) -> Vec<Vec<f64>> {
    points
        .iter()
        .filter(|p| !p.unbounded)
        .map(|p| vec![p.dr2, p.dr4, p.min_residual])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_interior() {
        let q = PositivityQuery::new(0.0, 0.0);
        assert!(q.is_interior());
        assert_eq!(q.minimum().value, 9.0);
    }

    #[test]
    fn r_zero_violation() {
        assert!(!PositivityQuery::new(9.0 + 1e-6, 0.0).is_interior());
    }

    #[test]
    fn matches_dense_scan() {
        for &(a, b) in &[(1.0, 0.5), (-3.0, 2.0), (4.0, -1.0), (0.0, 3.0)] {
            let q = PositivityQuery::new(a, b);
            let scan = (0..=40000)
                .map(|k| q.eval(k as f64 * 1e-4))
                .fold(f64::INFINITY, f64::min);
            assert!((scan - q.minimum().value).abs() < 1e-6, "{a},{b}");
        }
    }

    #[test]
    fn small_scan() {
        let pts = positivity_border(16, 1e-8).unwrap();
        for p in &pts {
            assert!(p.min_residual.abs() < 1e-8);
            assert!(is_star_shaped(p, 32));
        }
        assert!(midpoint_convexity_violation(&pts) < 1e-8);
    }
}
