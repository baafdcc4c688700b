//! Minimal free resolutions of modules over the mod 2 Steenrod algebra.
//!
//! Bidegrees are computed in order of increasing internal degree `t`, then
//! filtration `s`. In each bidegree the new generators are found by reducing
//! a canonical (row-reduced) basis of the cycles modulo the boundaries, so
//! the resolution is a deterministic function of the module and the range.

mod checkpoint;
mod ext;
mod free;
mod resolution;

pub use ext::ExtClass;
pub use free::{FreeElt, GenId, Layout};
pub use resolution::{Resolution, ResolutionError, StepInfo};
