pub mod barcobar;
pub mod builtins;
pub mod dga;
pub mod error;
pub mod ffla;
pub mod hochschild;
pub mod input;
pub mod shcmodel;

pub use error::{Error, Result};
