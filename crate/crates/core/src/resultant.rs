//! Sylvester resultants.
//!
//! The exact variant uses fraction-free (Bareiss) elimination over the
//! integers after clearing denominators; the float variant uses Gaussian
//! elimination with partial pivoting. Both take coefficients in ascending
//! degree order.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational};

fn strip(c: &[f64]) -> &[f64] {
    let mut n = c.len();
    while n > 0 && c[n - 1] == 0.0 {
        n -= 1;
    }
    &c[..n]
}

/// Row-major Sylvester matrix of `p` (degree m) and `q` (degree n), size m+n.
/// Inputs are ascending coefficient lists with nonzero leading entries.
pub fn sylvester_matrix<T: Clone + Zero>(p: &[T], q: &[T]) -> Vec<Vec<T>> {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (src, count) in [(p, n), (q, m)] {
        for shift in 0..count {
            let mut row = vec![T::zero(); size];
            for (j, c) in src.iter().rev().enumerate() {
                row[shift + j] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Determinant of the Sylvester matrix of two float polynomials. Only the
/// sign and the zero set are meaningful; no normalisation is applied.
pub fn sylvester_resultant(p: &[f64], q: &[f64]) -> Result<f64> {
    let (p, q) = (strip(p), strip(q));
    if p.is_empty() || q.is_empty() {
        return Err(Error::ZeroPolynomial("sylvester_resultant"));
    }
    if p.len() < 2 || q.len() < 2 {
        return Err(Error::InvalidArgument(
            "resultant inputs must have degree >= 1".into(),
        ));
    }
    Ok(det_f64(sylvester_matrix(p, q)))
}

/// Exact resultant of two rational polynomials.
pub fn sylvester_resultant_exact(p: &Polynomial, q: &Polynomial) -> Result<Rational> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial("sylvester_resultant_exact"));
    }
    let (m, n) = (p.degree().unwrap_or(0), q.degree().unwrap_or(0));
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument(
            "resultant inputs must have degree >= 1".into(),
        ));
    }
    // Res(a p, b q) = a^n b^m Res(p, q)
    let (pi, pl) = p.integer_coeffs();
    let (qi, ql) = q.integer_coeffs();
    let det = det_bareiss(sylvester_matrix(&pi, &qi));
    let scale = Rational::from_integer(pl.pow(n as u32) * ql.pow(m as u32));
    Ok(Rational::from_integer(det) / scale)
}

pub fn det_f64(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let d = a[col][col];
        det *= d;
        for row in col + 1..n {
            let f = a[row][col] / d;
            if f != 0.0 {
                for k in col..n {
                    a[row][k] -= f * a[col][k];
                }
            }
        }
    }
    det
}

/// Fraction-free integer determinant.
pub fn det_bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign.is_negative() {
        -d
    } else {
        d
    }
}
