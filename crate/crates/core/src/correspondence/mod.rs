//! Matrix pairs `(B, w)`, based rational maps and the charge stratification.
//!
//! Rebalancing convention: for `i > j` and `1 ≤ l ≤ kⱼ − kᵢ` the shifted
//! charge is `k + l(eᵢ − eⱼ)`, i.e. `l` units move from the larger entry to
//! the smaller one. Both the matrix-side vanishing conditions and the
//! `R_k` characterization use this single set of shifts.

mod charge;
mod pair;
mod rational_map;
mod syzygy;

pub use charge::ChargeVector;
pub use pair::{
    canonicalize, krylov_block_matrix, rebalanced_charges, validate_matrix_pair, MatrixPair, ValidityReport,
    VanishingCondition,
};
pub use rational_map::{from_rational_map, residue_gram, residue_pairing, to_rational_map, RationalMapData};
pub use syzygy::{
    bounded_syzygy_matrix, decode_syzygy, holomorphic_charge, membership_report, membership_rk, predicate_a,
    syzygy_constraint_matrix, syzygy_count, tangent_dimension, tangent_report, MembershipReport, RebalancedTest,
    TangentReport,
};
