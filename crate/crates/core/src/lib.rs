//! Integration and vector calculus in non-integer dimensional product spaces.

pub mod altops;
pub mod battery;
pub mod beam;
pub mod diffops;
pub mod error;
pub mod field;
pub mod gamma;
pub mod linalg;
pub mod measure;
pub mod quadrature;
pub mod solvers;
pub mod validate;

pub use error::{Error, Result};
