//! Exact Chern-character arithmetic, central charges and wall computations
//! for tilt and Bridgeland-type stability conditions on Picard-rank-one
//! threefolds.

pub mod charges;
pub mod chern;
pub mod cli;
pub mod destabilizers;
pub mod error;
pub mod poly;
pub mod polystab;
pub mod roots;
pub mod walls;

pub use chern::{ChernCharacter, Scalar, Slope};
pub use error::{Error, Result};
