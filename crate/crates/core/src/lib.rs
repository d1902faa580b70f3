pub mod error;
pub mod qubo;

pub use error::{Error, Result};
pub mod compiler;
pub mod mrf;
pub mod music;
pub mod solvers;
