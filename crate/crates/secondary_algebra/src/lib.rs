//! The degree-zero part B₀ of the secondary Steenrod algebra at p = 2.
//!
//! B₀ is a Z/4-algebra spanned by lifts `Sq(R)` of Milnor basis elements and
//! by `Y_{k,l} Sq(R)` (`k < l`), with `2Y = Y·Y = 0`. The reduction
//! `π^B : B₀ → A` kills 2 and the `Y`s; the A-function describes the left
//! action of B₀ on the τ-component of B₁.
//!
//! [`BZeroElt`] is a sparse, profile-keyed form used for reference
//! computations; [`SecondaryAlgebra`] works on vectors with cached products.

mod b0;
mod indexed;

pub use b0::{
    a_function, a_on_y, b0_product, reduce_pi, sigma_b, sq_sq_product, sq_y_product, y_degree, BZeroElt, NotInKernel,
    TauElt,
};
pub use indexed::{B0Vec, SecondaryAlgebra};
