//! Spectral sequence bookkeeping on top of the secondary computations: the
//! E₃ page as the homology of d₂, hidden extensions that jump by one
//! filtration read off from products in `π_{*,*}Cτ²`, propagation of
//! differentials along them by the generalized Leibniz rule, and charts.

mod chart;
mod hidden;
mod leibniz;
mod page;
mod table;

pub use chart::{emit_chart, render_chart, ChartKind};
pub use hidden::{extract_hidden, HiddenExtension};
pub use leibniz::{leibniz_propagate, DerivedDifferential, Differential, Provenance, Status};
pub use page::{e3_page, D2Data, PageData, PageEntry};
pub use table::{Multiplier, ProductTable};
