pub mod algebra;
pub mod conjecture;
pub mod eisenstein;
pub mod error;
pub mod integrals;
pub mod jacobi;
pub mod known;
pub mod numerics;
pub mod sums;
pub mod verify;

pub use error::{Error, Result};
