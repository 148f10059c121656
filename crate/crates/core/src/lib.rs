pub mod algebra;
pub mod axioms;
pub mod catalog;
pub mod chain;
pub mod cluster;
pub mod complex;
pub mod error;
pub mod field;
pub mod matrix;
pub mod module;
pub mod octahedron;
pub mod homological;
pub mod homotopy;
pub mod io;
pub mod idempotent;
pub mod standard;
pub mod wide;
pub mod window;
pub mod witness;

pub use error::{Error, ParseError, Result};
