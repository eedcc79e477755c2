//! Numerical solution of the real equation on a truncated interval, by
//! minimizing the Donaldson functional over positive hermitian paths.

mod checks;
mod config;
mod energy;
pub mod linalg;
mod path;
mod solver;

pub use checks::{convexity_check, convexity_check_h, phi, uniqueness_check, ConvexityReport, ConvexityViolation, UniquenessReport};
pub use config::{matrix_from_json, RealFlowConfig};
pub use energy::{
    discrete_energy, discrete_gradient, donaldson_energy, energy_of_h, gauge_pair, sup_norm, variational_residual,
    HPath,
};
pub use linalg::CMat;
pub use path::{complex_pair_to_nahm, complex_residual, derivative, nahm_to_complex_pair, residual_f, ComplexPairPath, Grid, MIN_GRID};
pub use solver::{initial_path, matrix_to_json, solve_real_bvp, RealFlowProblem, SolveOptions, SolveReport};
