pub mod algebra;
pub mod error;
pub mod fusion;
pub mod groups;
pub mod scalar;
pub mod shapes;
pub mod verify;

pub use error::{Error, Result};
