//! Exact Hochschild cohomology of finite-dimensional Hopf algebras given by
//! structure constants, with the cochain-level modular group action for
//! factorizable ribbon Hopf algebras.

pub mod builders;
pub mod cli;
pub mod error;
pub mod hochschild;
pub mod hopf;
pub mod linalg;
pub mod modular;
pub mod ribbon;
pub mod scalar;

pub use error::{Error, Result};
