//! Bounds and constructions for constant dimension subspace codes.

pub mod asymptotics;
pub mod bounds;
pub mod build;
pub mod codefile;
pub mod combinatorics;
pub mod construct;
pub mod error;
pub mod field;
pub mod interval;
pub mod linalg;
pub mod lower;
pub mod params;
pub mod partial_spread;
pub mod sweep;
pub mod tables;
pub mod upper;
pub mod verify;

pub use bounds::{BoundReport, Bounds};
pub use error::{Error, Result};
pub use params::{BoundValue, Params, Regime};
