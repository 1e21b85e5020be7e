//! Zero-average check of the centrifuge density response and the matching
//! numerically defined constrained family.

use conpoly::constructor::family_residuals;
use conpoly::toymodel::{centrifuge_family, centrifuge_mode};

fn main() -> conpoly::Result<()> {
    for k in [0.5, 1.0, 2.0, 5.0] {
        let c = centrifuge_mode(k, 64)?;
        println!(
            "K={k}: d rho/dK = ({:.6} r^2 {:+.6}) e^(K r^2), residual {:.1e}",
            c.c2, c.c0, c.residual
        );
    }
    let fam = centrifuge_family(1.0, 4, 64)?;
    for (n, p) in fam.polys.iter().enumerate() {
        let c: Vec<String> = p.to_f64_coeffs().iter().map(|v| format!("{v:+.6}")).collect();
        println!("P_{} ascending: [{}]", n + 1, c.join(", "));
    }
    let (cres, ores) = family_residuals(&fam)?;
    println!("constraint residual {cres:.1e}, orthogonality residual {ores:.1e}");
    Ok(())
}
