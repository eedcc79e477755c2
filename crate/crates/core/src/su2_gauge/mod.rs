//! `su(2)` representations, boundary residues, the Casimir spectrum of the
//! coupling operator and the power `−1/2` gauge fixing.

mod casimir;
mod halfpower;
mod irrep;

pub use casimir::{casimir_operator, casimir_spectrum_check, predicted_spectrum, CasimirReport};
pub use halfpower::{
    f_minus_half_coefficient, halfpower_assembly, halfpower_gauge_matrix, halfpower_gauge_solve, halfpower_normal_form,
    halfpower_system, real_equation_laurent, tridiag_det_factored, tridiag_det_two_ways, tridiag_m, HalfPowerAssembly,
    TridiagDet,
};
pub use irrep::{boundary_residues, su2_irrep, x_block, y_block, BoundaryResidues, IrrepTriple};
