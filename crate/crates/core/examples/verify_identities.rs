//! Runs the exact identity checks and the projector decomposition.

use conpoly::families::{verify_laguerre, verify_legendre, Corruption};
use conpoly::projector::{decomposition_check, WeightCase};

fn main() -> conpoly::Result<()> {
    for d in 1..=3 {
        for report in [
            verify_laguerre(d, 20, Corruption::default())?,
            verify_legendre(d, 20, Corruption::default())?,
        ] {
            println!(
                "{:<9} d={d}: {} residuals, {} norms, all zero: {}",
                report.family,
                report.residuals.len(),
                report.norms.len(),
                report.all_zero
            );
        }
    }
    // a deliberately corrupted coefficient shows up as a failed identity
    let bad = verify_laguerre(2, 6, Corruption { order: Some(3) })?;
    println!("corrupted run fails: {:?}", bad.failures());

    for case in [WeightCase::Laguerre, WeightCase::hermite()] {
        println!("decomposition {} N=30: {:.2e}", case.name(), decomposition_check(&case, 30)?);
    }
    Ok(())
}
