pub mod error;
pub mod fplin;
pub mod fusion;
pub mod hlim;
pub mod mackey;
pub mod orbitcat;
pub mod pgroup;
pub mod sharp;

pub use error::{Error, Result};
