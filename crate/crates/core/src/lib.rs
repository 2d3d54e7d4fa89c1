//! Exact q-series arithmetic for generating functions of curve-counting
//! invariants on abelian and K3 surfaces.

pub mod check;
pub mod error;
pub mod forms;
pub mod genfun;
pub mod invariants;
pub mod par;
pub mod verify;
pub mod qseries;
pub mod ring;

pub use error::{Error, Result};
