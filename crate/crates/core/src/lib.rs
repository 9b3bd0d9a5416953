pub mod emit;
pub mod error;
pub mod hopf;
pub mod matrix;
pub mod qmink;
pub mod replib;
pub mod report;
pub mod scalars;
pub mod spindirac;
pub mod suite;

pub use error::{QtkError, Result};
