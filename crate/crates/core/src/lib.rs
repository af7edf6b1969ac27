pub mod algebra;
pub mod cli;
pub mod convolution;
pub mod error;
pub mod linalg;
pub mod operad;
pub mod scenarios;
pub mod slinf;
pub mod workspace;

pub use error::{Error, Result};
