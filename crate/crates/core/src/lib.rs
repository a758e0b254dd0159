pub mod diagram;
pub mod error;
pub mod f2;
pub mod linalg;
pub mod model;
pub mod partition;
pub mod perm;
pub mod sample;
pub mod stabilizer;
pub mod strata;
pub mod verify;

pub use error::{Error, Result};
