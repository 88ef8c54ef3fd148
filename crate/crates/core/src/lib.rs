//! K-frames in finite-rank Hilbert C*-modules over matrix algebras.

pub mod algebra;
pub mod cli;
pub mod douglas;
pub mod error;
pub mod frames;
pub mod harness;
pub mod hypothesis;
pub mod transforms;
pub mod unitary;

pub use error::{Error, Result};
