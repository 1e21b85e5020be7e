//! Projector kernel and subtractor profiles as CSV on stdout.
//!
//! `cargo run --example projector_profiles > kernel.csv`

use conpoly::format::csv_string;
use conpoly::projector::{grid, projector_kernel_profile, subtractor_profile, WeightCase};

fn main() -> conpoly::Result<()> {
    let r = grid(0.0, 10.0, 0.05)?;
    let orders = [50, 100, 150];
    let mut columns = Vec::new();
    for n in orders {
        columns.push(projector_kernel_profile(&WeightCase::Laguerre, n, 2.0, &r)?);
    }
    // Hermite subtractor centered at the origin, weight e^(-r^2)
    columns.push(subtractor_profile(&WeightCase::hermite_narrow(), 50, 0.0, &r)?);

    let header: Vec<String> = ["r", "kernel_50", "kernel_100", "kernel_150", "subtractor_50"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let rows: Vec<Vec<f64>> = r
        .iter()
        .enumerate()
        .map(|(i, &x)| std::iter::once(x).chain(columns.iter().map(|c| c[i])).collect())
        .collect();
    print!("{}", csv_string(&header, &rows));
    Ok(())
}
