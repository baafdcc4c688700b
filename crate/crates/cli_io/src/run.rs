//! The data-file computations, each returning its lines in file order.

use std::sync::Arc;

use homotopy_lift::{ChainMap, LiftError, MasseyHomotopy, SecondaryChainMap};
use resolution::{ExtClass, Resolution, ResolutionError};
use secondary_lift::{SecondaryResolution, SecondaryValue};
use sseq_engine::{
    e3_page, extract_hidden, leibniz_propagate, render_chart, ChartKind, D2Data, DerivedDifferential, Differential,
    HiddenExtension, Multiplier, ProductTable,
};

use crate::grammar::{Basis, D2Line, FiltrationOneLine, MasseyLine, ProductLine};
use crate::CliError;

/// Whether an error only says that the range is too small.
fn out_of_range(e: &LiftError) -> bool {
    matches!(e, LiftError::NotComputed { .. } | LiftError::Resolution(ResolutionError::NotComputed { .. }))
}

fn bidegrees(max_n: i32, max_s: u32) -> impl Iterator<Item = (i32, u32)> {
    (0..=max_n).flat_map(move |n| (0..=max_s).map(move |s| (n, s)))
}

/// Every nonzero `d₂` on a basis class, sorted by `(n, s, i)`.
pub fn d2_lines(sec: &SecondaryResolution, max_n: i32, max_s: u32) -> Result<Vec<D2Line>, CliError> {
    let res = sec.resolution();
    let mut out = Vec::new();
    for (n, s) in bidegrees(max_n, max_s) {
        if !sec.has_d2(n, s) {
            continue;
        }
        for i in 0..res.num_gens(s, n + s as i32)? {
            let d = sec.d2(&ExtClass::basis(res, n, s, i)?)?;
            if !d.is_zero() {
                out.push(D2Line { source: Basis { n, s, i }, target: d.vector });
            }
        }
    }
    Ok(out)
}

/// All products `[a][x]` with `x` a basis class surviving `d₂`, as
/// `(x, [a][x])` in order of `(n, s, i)`, wherever the range allows.
pub fn products(map: &SecondaryChainMap, max_n: i32, max_s: u32) -> Result<Vec<(ExtClass, SecondaryValue)>, CliError> {
    let res = map.target().resolution();
    let mut out = Vec::new();
    for (n, s) in bidegrees(max_n, max_s) {
        match map.products_in(n, s) {
            Ok(v) => {
                for (i, p) in v {
                    out.push((ExtClass::basis(res, n, s, i)?, p));
                }
            }
            Err(e) if out_of_range(&e) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

pub fn lift_map(sec: &Arc<SecondaryResolution>, value: SecondaryValue) -> Result<SecondaryChainMap, CliError> {
    Ok(SecondaryChainMap::lift(sec.clone(), sec.clone(), value)?)
}

/// The `product_<name>` file: nonzero products with the standard lift of `class`.
pub fn product_lines(
    sec: &Arc<SecondaryResolution>,
    name: &str,
    class: ExtClass,
    max_n: i32,
    max_s: u32,
) -> Result<Vec<ProductLine>, CliError> {
    let map = lift_map(sec, SecondaryValue::lift(sec.resolution(), class)?)?;
    Ok(products(&map, max_n, max_s)?
        .iter()
        .map(|(x, p)| ProductLine { name: name.into(), x: basis_of(x), value: p.into() })
        .filter(|l| !l.value.is_zero())
        .collect())
}

fn basis_of(x: &ExtClass) -> Basis {
    let i = x.vector.first_one().expect("basis class");
    Basis { n: x.n, s: x.s, i }
}

/// The `massey_<b>_<a>` file: `<c, [b], [a]>` for every basis class `c`
/// surviving `d₂` with `[c][b] = 0`.
pub fn massey_lines(
    sec: &Arc<SecondaryResolution>,
    (a_name, a): (&str, SecondaryValue),
    (b_name, b): (&str, SecondaryValue),
    max_n: i32,
    max_s: u32,
) -> Result<Vec<MasseyLine>, CliError> {
    let homotopy = MasseyHomotopy::new(Arc::new(lift_map(sec, a)?), Arc::new(lift_map(sec, b)?))?;
    let res = sec.resolution();
    let mut out = Vec::new();
    for (n, s) in bidegrees(max_n, max_s) {
        if !res.is_computed(s, n + s as i32) {
            continue;
        }
        for i in 0..res.num_gens(s, n + s as i32)? {
            match homotopy.bracket(&ExtClass::basis(res, n, s, i)?) {
                Ok(Some(v)) => out.push(MasseyLine {
                    c: Basis { n, s, i },
                    b: b_name.into(),
                    a: a_name.into(),
                    value: (&v.value).into(),
                }),
                Ok(None) => {}
                Err(e) if out_of_range(&e) => {}
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(out)
}

/// The `filtration_one` file: nonzero `h_j · x` for `j ≤ 3`, grouped by `j`.
pub fn filtration_one_lines(res: &Resolution, max_n: i32, max_s: u32) -> Result<Vec<FiltrationOneLine>, CliError> {
    let mut out = Vec::new();
    for j in 0..4 {
        for (n, s) in bidegrees(max_n, max_s) {
            let t = n + s as i32;
            if !res.is_computed(s, t) || !res.is_computed(s + 1, t + (1 << j)) || n + (1 << j) - 1 > max_n {
                continue;
            }
            for i in 0..res.num_gens(s, t)? {
                let p = res.filtration_one_product(j, &ExtClass::basis(res, n, s, i)?)?;
                if !p.is_zero() {
                    out.push(FiltrationOneLine { j, x: Basis { n, s, i }, product: p.vector });
                }
            }
        }
    }
    Ok(out)
}

/// Hidden extensions read off the products with each multiplier, and the
/// differentials they propagate from `d₂`.
pub struct Propagation {
    pub extensions: Vec<HiddenExtension>,
    pub derived: Vec<DerivedDifferential>,
}

/// The standard multipliers `h_0`, `h_1`, `h_2` and `h_0^2 = [h_0][h_0]`.
pub fn standard_multipliers(sec: &Arc<SecondaryResolution>) -> Result<Vec<(String, SecondaryValue)>, CliError> {
    let res = sec.resolution();
    let h = |n| -> Result<SecondaryValue, CliError> { Ok(SecondaryValue::lift(res, ExtClass::basis(res, n, 1, 0)?)?) };
    let h0_sq = lift_map(sec, h(0)?)?.product(&h(0)?)?;
    Ok(vec![("h_0".into(), h(0)?), ("h_1".into(), h(1)?), ("h_2".into(), h(3)?), ("h_0^2".into(), h0_sq)])
}

pub fn propagate(
    sec: &Arc<SecondaryResolution>,
    multipliers: &[(String, SecondaryValue)],
    max_n: i32,
    max_s: u32,
) -> Result<Propagation, CliError> {
    let d2 = D2Data::from_secondary(sec, max_n, max_s)?;
    let page = e3_page(&d2);
    let mut table = ProductTable::default();
    let mut extensions = Vec::new();
    for (name, value) in multipliers {
        let map = lift_map(sec, value.clone())?;
        table.insert(Multiplier::from_chain_map(name.clone(), map.chain_map(), max_n, max_s)?);
        extensions.extend(extract_hidden(name, &products(&map, max_n, max_s)?));
    }
    let known = Differential::from_d2(&d2);
    let derived = leibniz_propagate(&known, &extensions, &table, &page);
    Ok(Propagation { extensions, derived })
}

/// An SVG chart of the `E₂` page with its `d₂`s, or of the `E₃` page.
pub fn chart(sec: &SecondaryResolution, kind: ChartKind, max_n: i32, max_s: u32) -> Result<String, CliError> {
    let res = sec.resolution();
    let d2 = D2Data::from_secondary(sec, max_n, max_s)?;
    let page = e3_page(&d2);
    let mut table = ProductTable::default();
    for (j, n) in [(0, 0), (1, 1), (2, 3)] {
        let map = ChainMap::lift(res.clone(), res.clone(), ExtClass::basis(res, n, 1, 0)?)?;
        table.insert(Multiplier::from_chain_map(format!("h_{j}"), &map, max_n, max_s)?);
    }
    let diffs = match kind {
        ChartKind::E2 => Differential::from_d2(&d2),
        ChartKind::E3 => Vec::new(),
    };
    Ok(render_chart(&page, kind, Some(&table), &diffs))
}

/// The value `[a] + τ[f]` of a multiplier; `f` may be absent.
pub fn value(res: &Resolution, e: ExtClass, f: Option<ExtClass>) -> Result<SecondaryValue, CliError> {
    let lifted = SecondaryValue::lift(res, e)?;
    Ok(match f {
        Some(f) => SecondaryValue::new(lifted.e, f),
        None => lifted,
    })
}
