pub mod chartfile;
pub mod cli;
pub mod clifford;
pub mod conservation;
pub mod corpus;
pub mod dirac;
pub mod error;
pub mod expr;
pub mod gravity;
pub mod quadrature;
pub mod report;
pub mod spin;

pub use error::{Error, Result};
