#![allow(dead_code)]

use conpoly::Polynomial;

/// Laguerre-type rows `G_n^d`, `d = 1..3`, `n = 1..4`, ascending coefficients.
pub const LAGUERRE_TABLE: [[&[i64]; 4]; 3] = [
    [&[-2, 1], &[2, -5, 1], &[-8, 20, -10, 1], &[24, -108, 78, -17, 1]],
    [&[-4, 1], &[8, -8, 1], &[-32, 44, -14, 1], &[144, -288, 138, -22, 1]],
    [&[-6, 1], &[18, -11, 1], &[-84, 78, -18, 1], &[468, -606, 216, -27, 1]],
];

/// Legendre-type rows `𝒢_n^d` with `𝒢_n^d(1) = 1`.
pub const LEGENDRE_TABLE: [[&[i64]; 4]; 3] = [
    [&[-1, 2], &[1, -6, 6], &[-1, 12, -30, 20], &[1, -20, 90, -140, 70]],
    [&[-2, 3], &[3, -12, 10], &[-4, 30, -60, 35], &[5, -60, 210, -280, 126]],
    [&[-3, 4], &[6, -20, 15], &[-10, 60, -105, 56], &[15, -140, 420, -504, 210]],
];

pub fn laguerre_row(d: u32, n: usize) -> Polynomial {
    Polynomial::from_ints(LAGUERRE_TABLE[d as usize - 1][n - 1])
}

pub fn legendre_row(d: u32, n: usize) -> Polynomial {
    Polynomial::from_ints(LEGENDRE_TABLE[d as usize - 1][n - 1])
}

/// Runs the CLI in-process, returning (exit code, stdout, stderr).
pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = conpoly::cli::run(
        std::iter::once("conpoly").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).expect("utf-8 stdout"),
        String::from_utf8(err).expect("utf-8 stderr"),
    )
}
