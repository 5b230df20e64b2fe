pub mod arith;
pub mod cfrac;
pub mod error;
pub mod keystone;
pub mod lattice;
pub mod lens;
pub mod lisca;
mod serde_int;
pub mod snf;
pub mod surgery;
pub mod verify;

pub use error::{Error, Result};
