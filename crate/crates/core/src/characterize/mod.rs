//! Structural recognizers for extreme propagation times, propagation time
//! one, and the relation between propagation time and diameter.

mod diameter;
mod extremes;
mod genstar;
mod pt_one;
mod zigzag;

pub use diameter::*;
pub use extremes::*;
pub use genstar::*;
pub use pt_one::*;
pub use zigzag::*;
