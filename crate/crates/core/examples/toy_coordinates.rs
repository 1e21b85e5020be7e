//! Density coordinates of the Z = 4 oscillator driven along w_4 and w_6.

use conpoly::toymodel::{ModeBasis, OscillatorModel, TrajectoryRunner};

fn main() -> conpoly::Result<()> {
    let model = OscillatorModel::new(4, 60)?;
    let basis = ModeBasis::new(10)?;
    for m in [4, 6] {
        let runner = TrajectoryRunner::new(&model, &basis, m)?;
        let c = runner.coordinates(2.0)?;
        let even: Vec<String> = [2, 4, 6, 8, 10]
            .iter()
            .map(|&n| format!("{:+.4}", c[n - 1]))
            .collect();
        println!("m={m}, lambda=2: (drho_2, drho_4, drho_6, drho_8, drho_10) = ({})", even.join(", "));
    }
    Ok(())
}
