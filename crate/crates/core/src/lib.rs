//! Lie algebras, group laws and projective unitary representations of the
//! Weyl-Heisenberg, Hamilton, Galilei and quantum Hamilton groups.

pub mod cli;
pub mod enveloping;
pub mod error;
pub mod groups;
pub mod liealg;
pub mod repops;
pub mod uir;

pub use error::{Error, Result};
