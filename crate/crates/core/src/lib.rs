pub mod analytic;
pub mod branching;
pub mod chars;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod fixtures;
pub mod groups;
pub mod hecke;
pub mod params;
pub mod sandbox;
pub mod tower;

pub use error::{Error, Result};
