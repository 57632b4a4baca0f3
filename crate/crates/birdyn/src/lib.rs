pub mod acceptance;
pub mod arith;
pub mod classifier;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod fibrations;
pub mod io;
pub mod maps;
pub mod orbits;

pub use error::{Error, Result};
