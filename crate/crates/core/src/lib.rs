pub mod error;
pub mod correspondence;
pub mod exact_algebra;
pub mod flags;
pub mod io;
pub mod normal_forms;
pub mod realflow;
pub mod sampling;
pub mod su2_gauge;
pub mod verify;

pub use error::{Error, Result};
