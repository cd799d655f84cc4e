//! Exact computation of higher-rank equivariant Donaldson-Thomas partition
//! functions of `C^3`, by localization over colored plane partitions.

pub mod algebra;
pub mod characters;
pub mod dt;
pub mod error;
pub mod measures;
pub mod partitions;
pub mod series;
pub mod toric;

pub use error::{Error, Result};
