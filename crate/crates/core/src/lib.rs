pub mod cli;
pub mod error;
pub mod handlebody;
pub mod json;
pub mod linalg;
pub mod polytope;
pub mod random;
pub mod torus;
pub mod words;

pub use error::{Error, Result};
