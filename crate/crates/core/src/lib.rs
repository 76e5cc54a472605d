pub mod cli;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod functors;
pub mod linalg;
pub mod par;
pub mod quiver;
pub mod rep;
pub mod verify;

pub use error::{Error, ParseError, Result};
