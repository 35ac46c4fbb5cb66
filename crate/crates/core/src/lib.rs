pub mod ball;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod grid;
pub mod rearrange;
pub mod specfun;
pub mod spectrum;
pub mod two_ball;

pub use error::{Error, Result};
pub use spectrum::{ProblemKind, Provenance, Spectrum};
