//! Secondary resolutions over the secondary Steenrod algebra: the τ-parts of
//! the null-homotopies of `∂∂`, the Adams `d₂` they determine, and arithmetic
//! of standard lifts in `π_{*,*}Cτ²`.

mod secondary;
mod timing;
mod value;

pub use secondary::{Composite, GenTiming, SecondaryError, SecondaryResolution};
pub use timing::thread_cpu_time;
pub use value::{carry, lift_sum, SecondaryValue};
