use resolution::ResolutionError;
use secondary_lift::SecondaryError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LiftError {
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Secondary(#[from] SecondaryError),
    #[error("class ({n}, {s}) {vector} does not survive to E₃: d₂ = {d2}")]
    NotCtau2 { n: i32, s: u32, vector: String, d2: String },
    #[error("product {product} is not null in π_{{*,*}}Cτ²")]
    NotNull { product: String },
    #[error("chain map not computed far enough for bidegree (n={n}, s={s})")]
    NotComputed { n: i32, s: u32 },
    #[error("lift obstruction at stage {s}, generator x_({n}, {s}, {idx})")]
    Obstruction { n: i32, s: u32, idx: usize },
}
