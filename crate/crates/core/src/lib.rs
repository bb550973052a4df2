//! Characteristic-class calculus for lower bounds on k-regular maps.

pub mod bounds;
pub mod bundles;
pub mod digits;
pub mod error;
pub mod exec;
pub mod field;
pub mod grassmann;
pub mod linalg;
pub mod manifold;
pub mod sampler;
pub mod series;
pub mod table;
pub mod yasui;

pub use error::{Error, Result};
