//! Chain maps and null-homotopies between (secondary) resolutions: Yoneda
//! products, products in `π_{*,*}Cτ²` with standard lifts, and Massey
//! products `<c, b, a>` computed from a secondary null-homotopy of `[b][a]`.
//!
//! A multiplier `a ∈ Ext^{s_a,t_a}(M)` lifts to `f̄: P^{(s_a+k)} → Q^{(k)}`,
//! where `P` resolves `M` and `Q` resolves the ground field. Secondary lifts
//! add the τ-parts `H_τ: P^{(s_a+k)} → Q^{(k-2)}` of the homotopies
//! `f∂ - ∂f`.

mod chain_map;
mod error;
mod massey;
mod oracle;
mod secondary_map;
mod util;

pub use chain_map::ChainMap;
pub use error::LiftError;
pub use massey::{MasseyHomotopy, MasseyValue};
pub use oracle::{indeterminacy, ordinary_massey, yoneda_product};
pub use secondary_map::SecondaryChainMap;
