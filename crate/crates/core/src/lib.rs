//! Orthogonal polynomials with a vanishing-average constraint.
//!
//! The crate builds monic polynomial families that are orthogonal under one
//! measure and integrate to zero under a second one (constrained Laguerre,
//! Legendre and Hermite types), checks their recursions, differential
//! identities and norms in exact rational arithmetic, assembles truncation
//! projectors and the rank-one subtractor that separates them, and runs a
//! harmonic-oscillator density toy model expanded in the constrained
//! Hermite-type basis.
//!
//! Module map:
//!
//! * [`poly`], [`scalar`], [`resultant`]: exact polynomial arithmetic.
//! * [`measures`]: weights as moment sequences.
//! * [`constructor`]: two-measure Gram–Schmidt.
//! * [`families`]: closed-form recursions and identity reports.
//! * [`projector`]: orthonormal bases, projectors and subtractors.
//! * [`toymodel`]: oscillator trajectories, flexibility matrix, positivity.
//! * [`cli`]: the `conpoly` command line.

pub mod cli;
pub mod constructor;
pub mod error;
pub mod families;
pub mod format;
pub mod measures;
pub mod poly;
pub mod projector;
pub mod quadrature;
pub mod resultant;
pub mod scalar;
pub mod toymodel;

pub use constructor::{
    classical_family, constrained_family, constrained_seed, ClassicalFamily, ConstrainedFamily,
};
pub use error::{Error, Result};
pub use measures::{MomentFunctional, NumericWeight};
pub use poly::{Polynomial, Rational};
pub use scalar::{Unit, UnitScalar};
