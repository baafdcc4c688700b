use std::fmt;

use resolution::ExtClass;
use secondary_lift::SecondaryValue;

/// A hidden `α`-extension by one filtration on the E₃ page, `α[x] = τ{y}`,
/// read off from a product in `π_{*,*}Cτ²` with vanishing E₂ part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HiddenExtension {
    pub multiplier: String,
    pub source: ExtClass,
    pub target: ExtClass,
    pub jump: u32,
    /// A jump-one extension read off on the E₃ page is automatically maximal.
    pub maximal: bool,
}

impl fmt::Display for HiddenExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} · ({}, {}) {} = τ ({}, {}) {}",
            self.multiplier,
            self.source.n,
            self.source.s,
            self.source.vector,
            self.target.n,
            self.target.s,
            self.target.vector
        )
    }
}

/// One record per product `[α][x] = e + τf` with `e = 0` and `f ≠ 0`.
pub fn extract_hidden(multiplier: &str, products: &[(ExtClass, SecondaryValue)]) -> Vec<HiddenExtension> {
    products
        .iter()
        .filter(|(_, v)| v.e.is_zero() && !v.f.is_zero())
        .map(|(x, v)| HiddenExtension {
            multiplier: multiplier.to_string(),
            source: x.clone(),
            target: v.f.clone(),
            jump: 1,
            maximal: true,
        })
        .collect()
}
