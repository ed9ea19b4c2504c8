//! Exact classification of linking forms over the Laurent polynomial rings
//! R[t, 1/t] and C[t, 1/t], with signature invariants, Witt classes and
//! representing Hermitian matrices.

pub mod cli;
pub mod error;
pub mod field;
pub mod forms;
pub mod io;
pub mod laurent;
pub mod matrixrep;
pub mod represent;
pub mod signature;

pub use error::{LinkError, Result};
