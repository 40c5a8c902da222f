//! Exact linear algebra over prime fields.

pub mod enumerate;
pub mod field;
pub mod flag;
pub mod matrix;
pub mod subspace;
pub mod textio;

pub use enumerate::{enumerate_full_flags, enumerate_subspaces, DEFAULT_CAP};
pub use field::Field;
pub use flag::Flag;
pub use matrix::{axpy, dot, unit, Matrix};
pub use subspace::Subspace;
