//! Exact and numerical verification engine for logarithmic Verlinde structures of
//! the triplet algebras `W_p` and the symplectic fermion algebras `SF⁺_d`.

pub mod cli;
pub mod cyclo;
pub mod error;
pub mod fixtures;
pub mod hopf;
pub mod linalg;
pub mod modular;
pub mod report;
pub mod rings;
pub mod suites;

pub use cyclo::CycloNum;
pub use error::{Error, Result};
