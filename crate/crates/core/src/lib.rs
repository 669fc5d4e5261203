//! Finite groupoid-graded rings with graded local units, their categories of
//! G-set-graded modules, and the functors between them, computed by exact
//! linear algebra.

pub mod change;
pub mod error;
pub mod functors;
pub mod exactla;
pub mod gring;
pub mod gmod;
pub mod gset;
pub mod io;
pub mod sample;
pub mod structure;

pub use error::{Error, Result, Violation};
