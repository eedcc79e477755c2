//! Compiles every chapter of the guide so that `cargo test` runs its code
//! listings.

#[doc = include_str!("src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("src/exact_algebra.md")]
pub mod exact_algebra {}
#[doc = include_str!("src/correspondence.md")]
pub mod correspondence {}
#[doc = include_str!("src/charge.md")]
pub mod charge {}
#[doc = include_str!("src/flags.md")]
pub mod flags {}
#[doc = include_str!("src/normal_forms.md")]
pub mod normal_forms {}
#[doc = include_str!("src/su2_gauge.md")]
pub mod su2_gauge {}
#[doc = include_str!("src/realflow.md")]
pub mod realflow {}
#[doc = include_str!("src/verify.md")]
pub mod verify {}
