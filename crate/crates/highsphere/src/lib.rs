pub mod error;
pub mod rng;
pub mod specfun;
pub mod spectral;

pub use error::{Error, Result};
