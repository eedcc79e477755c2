//! Block companion normal forms, the `g_B` reduction steps and the
//! boundary expansions of `β_st`.

mod beta;
mod hurtubise;
mod layout;

pub use beta::{
    beta_lambda_1, build_beta_st, gq_conjugation_identity, gq_identity_report, gq_matrix, BetaSt, GqIdentityReport,
    HalfPowerBlock,
};
pub use hurtubise::{
    block_pattern_validate, canonical_pair, forced_zero_positions, from_hurtubise_form, gb_inverse_transform,
    gb_transform, hurtubise_block_b, to_hurtubise_form, NormalFormData, Pattern,
};
pub use layout::BlockLayout;
