//! Gauss–Legendre quadrature.

use std::f64::consts::PI;

/// Default rule size for numerically defined measures.
pub const DEFAULT_ORDER: usize = 64;

/// Environment variable that overrides [`DEFAULT_ORDER`] for the CLI.
pub const ORDER_ENV: &str = "CONPOLY_QUAD_ORDER";

/// [`DEFAULT_ORDER`] unless `CONPOLY_QUAD_ORDER` holds a positive integer.
pub fn default_order() -> usize {
    std::env::var(ORDER_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(DEFAULT_ORDER)
}

/// Nodes and weights of an `n`-point Gauss–Legendre rule on `[a, b]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Rule on the reference interval `[-1, 1]`; roots of `P_n` by Newton
    /// iteration from the Chebyshev-like initial guess.
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "quadrature order must be positive");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_and_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_and_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn on_interval(n: usize, a: f64, b: f64) -> Self {
        let mut rule = Self::new(n);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        for (x, w) in rule.nodes.iter_mut().zip(rule.weights.iter_mut()) {
            *x = mid + half * *x;
            *w *= half;
        }
        rule
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = if n == 0 {
        0.0
    } else {
        n as f64 * (x * p1 - p0) / (x * x - 1.0)
    };
    (p, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_polynomials() {
        let rule = GaussLegendre::on_interval(10, 0.0, 1.0);
        for k in 0..20 {
            let v = rule.integrate(|x| x.powi(k));
            assert!((v - 1.0 / (k as f64 + 1.0)).abs() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn weights_sum_to_length() {
        for n in [1, 2, 7, 64, 200] {
            let rule = GaussLegendre::on_interval(n, -3.0, 5.0);
            let s: f64 = rule.weights.iter().sum();
            assert!((s - 8.0).abs() < 1e-12, "n={n}");
            assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn gaussian_second_moment() {
        let rule = GaussLegendre::on_interval(200, -12.0, 12.0);
        let v = rule.integrate(|x| x * x * (-x * x).exp());
        assert!((v - PI.sqrt() / 2.0).abs() < 1e-14);
    }
}
