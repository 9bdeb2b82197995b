//! Exact computations in the category of N-complexes.

pub mod error;
pub mod homotopy;
pub mod classes;
pub mod complex;
pub mod document;
pub mod linalg;
pub mod random;
pub mod triangle;
pub mod verify;

pub use error::{Error, Result};
