//! Constrained families for arbitrary descriptor pairs, including a
//! Gaussian pair and a numerically integrated weight.

use conpoly::constructor::family_residuals;
use conpoly::{constrained_family, MomentFunctional};

fn main() -> conpoly::Result<()> {
    let pairs = [
        ("gauss:a=2", "gauss:a=1"),
        ("legendre:d=2", "legendre:d=2"),
        ("numeric:p=0,c=-1,lo=0,hi=2,order=64", "numeric:p=0,c=0,lo=0,hi=2,order=64"),
    ];
    for (o, c) in pairs {
        let ortho: MomentFunctional = o.parse()?;
        let constraint: MomentFunctional = c.parse()?;
        let fam = constrained_family(&ortho, &constraint, 4)?;
        println!("{o} / {c}");
        if ortho.is_exact() && constraint.is_exact() {
            for (n, p) in fam.polys.iter().enumerate() {
                println!("  P_{} = {p}", n + 1);
            }
        } else {
            let (cres, ores) = family_residuals(&fam)?;
            println!("  residuals: constraint {cres:.1e}, orthogonality {ores:.1e}");
        }
    }
    // too few quadrature nodes for the requested degree is an error
    let coarse: MomentFunctional = "numeric:p=1,c=4,lo=0,hi=1,order=4".parse()?;
    match constrained_family(&coarse, &coarse, 6) {
        Err(e) => println!("order 4: {e}"),
        Ok(_) => println!("order 4 unexpectedly resolved"),
    }
    Ok(())
}
