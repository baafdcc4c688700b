use std::sync::Arc;

use resolution::{ExtClass, Resolution};

use crate::chain_map::ChainMap;
use crate::error::LiftError;
use crate::massey::null_homotopy;
use crate::util::{count_mod4, readout};

/// `a · x` computed by lifting `x` instead of `a`, for classes over a
/// resolution of the ground field.
pub fn yoneda_product(res: &Arc<Resolution>, a: &ExtClass, x: &ExtClass) -> Result<ExtClass, LiftError> {
    ChainMap::lift(res.clone(), res.clone(), x.clone())?.yoneda(a)
}

/// The classical Massey product `<c, b, a>` from the null-homotopy of
/// `f̄_b f̄_a` that vanishes on `P^{(s_a+s_b-1)}`, or `None` when `ba ≠ 0` or
/// `cb ≠ 0`. Defined modulo [`indeterminacy`].
pub fn ordinary_massey(fa: &ChainMap, fb: &ChainMap, c: &ExtClass) -> Result<Option<ExtClass>, LiftError> {
    if !fa.yoneda(fb.class())?.is_zero() || !fb.yoneda(c)?.is_zero() {
        return Ok(None);
    }
    let (a, b) = (fa.class(), fb.class());
    let p = fa.source();
    let z = ExtClass::zero(p, a.n + b.n + 1, a.s + b.s - 1)?;
    let h = null_homotopy(fa, fb, &z)?;
    let (n, s) = (a.n + b.n + c.n + 1, a.s + b.s + c.s - 1);
    let t = n + s as i32;
    if !p.is_computed(s, t)
        || (0..p.gens(s, t).len()).any(|i| crate::util::stage_get(&h, s, resolution::GenId::new(t, i)).is_none())
    {
        return Err(LiftError::NotComputed { n, s });
    }
    Ok(Some(readout(p, n, s, |g| count_mod4(c, crate::util::stage_get(&h, s, g).expect("checked"))).0))
}

/// A spanning set of the indeterminacy `c·Ext^{s_a+s_b-1}(M) + Ext^{s_b+s_c-1}·a`
/// of `<c, b, a>`.
pub fn indeterminacy(fa: &ChainMap, b: &ExtClass, c: &ExtClass) -> Result<Vec<ExtClass>, LiftError> {
    let a = fa.class();
    let (p, q) = (fa.source(), fa.target());
    let mut out = Vec::new();
    let (n1, s1) = (a.n + b.n + 1, a.s + b.s - 1);
    for i in 0..p.num_gens(s1, n1 + s1 as i32)? {
        let w = ChainMap::lift(p.clone(), q.clone(), ExtClass::basis(p, n1, s1, i)?)?;
        out.push(w.yoneda(c)?);
    }
    let (n2, s2) = (b.n + c.n + 1, b.s + c.s - 1);
    for i in 0..q.num_gens(s2, n2 + s2 as i32)? {
        out.push(fa.yoneda(&ExtClass::basis(q, n2, s2, i)?)?);
    }
    Ok(out)
}
