use std::collections::BTreeMap;

use fp_linalg::FVector;
use resolution::{ExtClass, FreeElt, GenId, Resolution};
use secondary_algebra::{B0Vec, SecondaryAlgebra};
use secondary_lift::SecondaryResolution;

/// A map on the generators of one stage.
pub(crate) type StageMap<T> = Vec<BTreeMap<GenId, T>>;

pub(crate) fn stage_get<T>(maps: &StageMap<T>, s: u32, g: GenId) -> Option<&T> {
    maps.get(s as usize)?.get(&g)
}

pub(crate) fn stage_insert<T>(maps: &mut StageMap<T>, s: u32, g: GenId, v: T) {
    while maps.len() <= s as usize {
        maps.push(BTreeMap::new());
    }
    maps[s as usize].insert(g, v);
}

/// Extends a map defined on generators of one stage A-linearly to `x`;
/// `degree` is the degree of the image of `x`.
pub(crate) fn apply_map(
    res: &Resolution,
    maps: &StageMap<FreeElt>,
    s: u32,
    x: &FreeElt,
    degree: i32,
) -> Option<FreeElt> {
    let alg = res.algebra();
    let mut out = FreeElt::zero(degree);
    for (g, c) in x.terms() {
        out.add(&stage_get(maps, s, *g)?.act(alg, x.degree - g.t, c));
    }
    Some(out)
}

/// `Σ_{(q, c) ∈ y} x(q)·[c]₀` mod 4, for `y` in the degree of `x`.
pub(crate) fn count_mod4(x: &ExtClass, y: &FreeElt) -> u8 {
    debug_assert_eq!(y.degree, x.t());
    let mut n = 0u8;
    for (q, c) in y.terms() {
        if x.eval(*q) && c.get(0) {
            n += 1;
        }
    }
    n & 3
}

/// `x ∘ y` for every generator of stage `s`, degree `t` of `P`, given its
/// image `y(g)` in the degree of `x`.
pub(crate) fn readout(res: &Resolution, n: i32, s: u32, mut value: impl FnMut(GenId) -> u8) -> (ExtClass, ExtClass) {
    let t = n + s as i32;
    let dim = res.gens(s, t).len();
    let (mut lo, mut hi) = (FVector::new(dim), FVector::new(dim));
    for i in 0..dim {
        let v = value(GenId::new(t, i));
        lo.set(i, v & 1 == 1);
        hi.set(i, v & 2 == 2);
    }
    (ExtClass::new(n, s, lo), ExtClass::new(n, s, hi))
}

/// `out += Σ_{(q, c) ∈ y} σ(a)σ(c)·q` where `a` has degree `da` and the rows
/// of `out` have degree `da + |y| - |q|`.
pub(crate) fn add_sigma_compose(
    sec: &SecondaryAlgebra,
    out: &mut BTreeMap<GenId, B0Vec>,
    da: i32,
    a: &FVector,
    y: &FreeElt,
) {
    for (q, c) in y.terms() {
        let d = da + y.degree - q.t;
        let row = out.entry(*q).or_insert_with(|| sec.zero(d));
        sec.add_sigma_product(row, da, a, y.degree - q.t, c);
    }
}

pub(crate) fn into_rows(rows: BTreeMap<GenId, B0Vec>) -> Vec<(GenId, B0Vec)> {
    rows.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// `out += Σ_q A(a, r_q)·q`.
pub(crate) fn add_a_terms(sec: &SecondaryAlgebra, out: &mut FreeElt, da: i32, a: &FVector, rows: &[(GenId, B0Vec)]) {
    for (q, r) in rows {
        out.add_term(*q, &sec.a_function(da, a, r));
    }
}

/// `h_τ^{(s)}(g)`, zero on stages below 2.
pub(crate) fn h_tau(sec: &SecondaryResolution, s: u32, g: GenId) -> Option<FreeElt> {
    if s < 2 {
        return Some(FreeElt::zero(g.t - 1));
    }
    sec.h_tau(s, g).cloned()
}

/// `σ∂̄σ∂̄ g`, empty on stages below 2.
pub(crate) fn composite(sec: &SecondaryResolution, s: u32, g: GenId) -> Option<&[(GenId, B0Vec)]> {
    if s < 2 {
        return Some(&[]);
    }
    sec.composite(s, g).map(Vec::as_slice)
}

/// Internal degrees to sweep for `res`, ascending.
pub(crate) fn degree_range(res: &Resolution) -> std::ops::RangeInclusive<i32> {
    let t0 = res.module().min_degree();
    let t1 = (0..res.num_stages()).filter_map(|s| res.max_t(s)).max().unwrap_or(t0);
    t0..=t1
}

/// The generator `ι` of `Q^{(0)}` for a resolution of the ground field.
pub(crate) fn iota(target: &Resolution) -> GenId {
    assert_eq!(target.module().min_degree(), 0, "target must resolve the ground field");
    assert_eq!(target.gens(0, 0).len(), 1, "target must resolve the ground field");
    GenId::new(0, 0)
}
