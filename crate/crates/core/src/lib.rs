pub mod algebra;
pub mod cli;
pub mod cohomology;
pub mod constructions;
pub mod derivations;
pub mod error;
pub mod io;
pub mod linalg;
pub mod modules;

pub use error::{Error, Result};
