//! Flexibility matrix of the Z = 4 oscillator and a finite-difference check
//! of one column.

use conpoly::toymodel::{
    flexibility_matrix, ModeBasis, OscillatorModel, TrajectoryRunner, DEFAULT_BASIS_SIZE,
};

fn main() -> conpoly::Result<()> {
    let model = OscillatorModel::new(4, DEFAULT_BASIS_SIZE)?;
    let basis = ModeBasis::new(8)?;
    let f = flexibility_matrix(&model, &basis)?;
    for i in 0..f.nrows() {
        let row: Vec<String> = (0..f.ncols()).map(|j| format!("{:+.4}", f[(i, j)])).collect();
        println!("{}", row.join(" "));
    }

    let m = 4;
    let h = 1e-4;
    let runner = TrajectoryRunner::new(&model, &basis, m)?;
    let plus = runner.coordinates(h)?;
    let minus = runner.coordinates(-h)?;
    let worst = (0..basis.n_max())
        .map(|n| ((plus[n] - minus[n]) / (2.0 * h) - f[(n, m - 1)]).abs())
        .fold(0.0, f64::max);
    println!("column {m} vs central difference: {worst:.2e}");
    Ok(())
}
