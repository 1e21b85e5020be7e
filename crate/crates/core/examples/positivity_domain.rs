//! Border of the density-positivity domain in the (dR2, dR4) plane.

use conpoly::toymodel::{
    is_star_shaped, line_segment_report, midpoint_convexity_violation, positivity_border,
    PositivityQuery,
};

fn main() -> conpoly::Result<()> {
    let origin = PositivityQuery::new(0.0, 0.0).minimum();
    println!("origin: min P = {:.4} at r = {:.4}", origin.value, origin.r);

    let points = positivity_border(32, 1e-8)?;
    for p in &points {
        println!(
            "theta={:.3}  dR2={:+.5}  dR4={:+.5}  r_min={:.4}  star={}",
            p.theta,
            p.dr2,
            p.dr4,
            p.r_min,
            is_star_shaped(p, 32)
        );
    }
    println!("midpoint convexity violation: {:.2e}", midpoint_convexity_violation(&points));
    println!("points on the r = 0 segment: {}", line_segment_report(&points).len());
    Ok(())
}
