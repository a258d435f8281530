//! Library half of the `twodescent` binary: record rendering and the
//! residue-class member tables used by `verify-tables`.
//!
//! The binary (`src/main.rs`) is a thin argument-parsing shim over these
//! modules so that integration tests can drive the same code paths directly.

pub mod output;
pub mod tables;
