//! Harmonic-oscillator density toy model, positivity domain and the
//! centrifuge zero-average check.

pub mod centrifuge;
pub mod oscillator;
pub mod positivity;

pub use centrifuge::{centrifuge_family, centrifuge_mode, CentrifugeCheck, CentrifugeMode};
pub use oscillator::{
    density_coordinates, density_coordinates_exact, flexibility_matrix, ground_state,
    lambda_grid, orbital_values, perturbed_ground_density, reference_density_z4, trajectory,
    GroundState, ModeBasis, OscillatorModel, Projection, ToyTrajectory, TrajectoryRunner,
    DEFAULT_BASIS_SIZE,
};
pub use positivity::{
    is_star_shaped, line_segment_report, midpoint_convexity_violation, positivity_border, BorderPoint, BorderScan,
    PositivityQuery,
};
