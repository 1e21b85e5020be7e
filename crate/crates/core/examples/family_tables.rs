//! First constrained Laguerre and Legendre polynomials for d = 1, 2, 3,
//! built by Gram–Schmidt and compared with the closed-form recursions.

use conpoly::families::{
    laguerre_recursion_family, legendre_recursion_family, to_convention, Convention,
};
use conpoly::{constrained_family, MomentFunctional};

fn main() -> conpoly::Result<()> {
    for d in 1..=3 {
        let gs = constrained_family(
            &MomentFunctional::LaguerreOrtho(d),
            &MomentFunctional::LaguerreConstraint(d),
            4,
        )?;
        let rec = laguerre_recursion_family(d, 4)?;
        println!("Laguerre type, d={d} (recursion agrees: {})", gs.polys == rec.polys);
        for (n, p) in gs.polys.iter().enumerate() {
            println!("  G_{} = {p}", n + 1);
        }
    }
    for d in 1..=3 {
        let f = MomentFunctional::Legendre(d);
        let gs = to_convention(&constrained_family(&f, &f, 4)?, Convention::EndpointOne)?;
        let rec = legendre_recursion_family(d, 4)?;
        println!("Legendre type, d={d} (recursion agrees: {})", gs.polys == rec.polys);
        for (n, p) in gs.polys.iter().enumerate() {
            println!("  G_{} = {p}", n + 1);
        }
    }
    Ok(())
}
