pub mod bounds;
pub mod config;
pub mod error;
pub mod extension;
pub mod ffpoly;
pub mod goodprime;
pub mod hecke;
pub mod json;
pub mod linalg;
pub mod localfield;
pub mod oracle;
pub mod verify;

pub use error::{Error, Result};
