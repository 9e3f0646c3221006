//! Finite simplicial groupoids and their classifying objects.

pub mod bisset;
pub mod cert;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod groupoid;
pub mod holim;
pub mod homotopy;
pub mod kan;
pub mod ordinal;
pub mod presheaf;
pub mod proper;
pub mod search;
pub mod sgroupoid;
pub mod sheaf;
pub mod site;
pub mod sset;
pub mod torsors;
pub mod wbar;

pub use error::{Error, Result};
