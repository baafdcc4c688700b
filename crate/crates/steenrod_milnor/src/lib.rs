//! The mod 2 Steenrod algebra in the Milnor basis.

mod algebra;
mod module;
mod product;
mod profile;

pub use algebra::{contract, milnor_basis, milnor_product, MilnorAlgebra, MilnorElt};
pub use module::{ModuleError, ModulePresentation};
pub use product::{binomial_mod4, product_terms_mod2, product_terms_mod4};
pub use profile::{xi_degree, MilnorProfile};
