use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use resolution::{ExtClass, FreeElt, GenId, Resolution};
use secondary_algebra::B0Vec;
use secondary_lift::{SecondaryResolution, SecondaryValue};

use crate::chain_map::ChainMap;
use crate::error::LiftError;
use crate::util::{
    add_a_terms, add_sigma_compose, composite, count_mod4, degree_range, h_tau, into_rows, iota, readout, stage_get,
    stage_insert, StageMap,
};

/// A secondary chain map lifting `[a] + τy ∈ π_{*,*}Cτ²` with `d₂a = 0`.
///
/// Besides the ordinary lift `f̄` it records, for each generator `g` of
/// `P^{(s_a+k)}`, `k ≥ 1`, the Z/4 row `K(g) = σf̄σ∂̄g - σ∂̄σf̄g` over
/// `Q^{(k-1)}` and the τ-part `H_τ(g) ∈ Q^{(k-1)}` of the homotopy, which
/// solves
///
/// `∂̄H_τ(g) = f̄h_τ(g) + Σ_i α^i H_τ(g_i) + A(α^i, K(g_i)) + Σ_j β^j h_τ(q_j) + A(β^j, C(q_j))`
///
/// for `∂̄g = Σ α^i g_i` and `f̄g = Σ β^j q_j`. On `P^{(s_a+1)}`, `H_τ = y·ι`.
pub struct SecondaryChainMap {
    sec_p: Arc<SecondaryResolution>,
    sec_q: Arc<SecondaryResolution>,
    value: SecondaryValue,
    fbar: ChainMap,
    k_rows: StageMap<Vec<(GenId, B0Vec)>>,
    h_tau: StageMap<FreeElt>,
}

impl SecondaryChainMap {
    /// Lifts `value` as far as the secondary resolutions allow. Fails with
    /// [`LiftError::NotCtau2`] unless `d₂(value.e) = 0`.
    pub fn lift(
        sec_p: Arc<SecondaryResolution>,
        sec_q: Arc<SecondaryResolution>,
        value: SecondaryValue,
    ) -> Result<Self, LiftError> {
        let e = &value.e;
        if !sec_p.has_d2(e.n, e.s) {
            return Err(LiftError::NotComputed { n: e.n - 1, s: e.s + 2 });
        }
        let d2 = sec_p.d2(e)?;
        if !d2.is_zero() {
            return Err(LiftError::NotCtau2 {
                n: e.n,
                s: e.s,
                vector: e.vector.to_string(),
                d2: d2.vector.to_string(),
            });
        }
        let fbar = ChainMap::lift(sec_p.resolution().clone(), sec_q.resolution().clone(), e.clone())?;
        let mut m = Self { sec_p, sec_q, value, fbar, k_rows: Vec::new(), h_tau: Vec::new() };
        m.compute()?;
        Ok(m)
    }

    pub fn value(&self) -> &SecondaryValue {
        &self.value
    }

    pub fn chain_map(&self) -> &ChainMap {
        &self.fbar
    }

    pub fn source(&self) -> &Arc<SecondaryResolution> {
        &self.sec_p
    }

    pub fn target(&self) -> &Arc<SecondaryResolution> {
        &self.sec_q
    }

    fn res_p(&self) -> &Resolution {
        self.sec_p.resolution()
    }

    fn res_q(&self) -> &Resolution {
        self.sec_q.resolution()
    }

    pub fn k_row(&self, s: u32, g: GenId) -> Option<&[(GenId, B0Vec)]> {
        stage_get(&self.k_rows, s, g).map(Vec::as_slice)
    }

    pub fn h_tau(&self, s: u32, g: GenId) -> Option<&FreeElt> {
        stage_get(&self.h_tau, s, g)
    }

    pub fn has_h_tau(&self, s: u32, t: i32) -> bool {
        self.res_p().is_computed(s, t)
            && (0..self.res_p().gens(s, t).len()).all(|i| self.h_tau(s, GenId::new(t, i)).is_some())
    }

    fn compute_k(&self, s: u32, g: GenId) -> Option<Vec<(GenId, B0Vec)>> {
        let sec = self.sec_p.algebra();
        let (sa, ta) = self.fbar.shift();
        let k = s - sa;
        let mut pos: BTreeMap<GenId, B0Vec> = BTreeMap::new();
        if s > sa {
            for (gi, a) in self.res_p().boundary(s, g).terms() {
                add_sigma_compose(sec, &mut pos, g.t - gi.t, a, self.fbar.get(s - 1, *gi)?);
            }
        }
        let mut neg: BTreeMap<GenId, B0Vec> = BTreeMap::new();
        for (q, b) in self.fbar.get(s, g)?.terms() {
            add_sigma_compose(sec, &mut neg, g.t - ta - q.t, b, self.res_q().boundary(k, *q));
        }
        for (q, r) in neg {
            pos.entry(q).or_insert_with(|| sec.zero(r.degree)).sub_assign(&r);
        }
        let rows = into_rows(pos);
        debug_assert!(rows.iter().all(|(_, r)| r.in_ker_pi()), "f̄ is not a chain map");
        Some(rows)
    }

    fn tau_rhs(&self, s: u32, g: GenId) -> Option<FreeElt> {
        let sec = self.sec_p.algebra();
        let alg = sec.algebra();
        let (sa, ta) = self.fbar.shift();
        let k = s - sa;
        let mut rhs = FreeElt::zero(g.t - ta - 1);
        let h = h_tau(&self.sec_p, s, g)?;
        if s - 2 >= sa {
            rhs.add(&self.fbar.apply(s - 2, &h)?);
        }
        for (gi, a) in self.res_p().boundary(s, g).terms() {
            let da = g.t - gi.t;
            rhs.add(&self.h_tau(s - 1, *gi)?.act(alg, da, a));
            add_a_terms(sec, &mut rhs, da, a, self.k_row(s - 1, *gi)?);
        }
        for (q, b) in self.fbar.get(s, g)?.terms() {
            let db = g.t - ta - q.t;
            rhs.add(&h_tau(&self.sec_q, k, *q)?.act(alg, db, b));
            add_a_terms(sec, &mut rhs, db, b, composite(&self.sec_q, k, *q)?);
        }
        Some(rhs)
    }

    fn compute(&mut self) -> Result<(), LiftError> {
        let (sa, ta) = self.fbar.shift();
        let res_p = self.sec_p.resolution().clone();
        let res_q = self.sec_q.resolution().clone();
        for t in degree_range(&res_p) {
            for s in sa + 1..res_p.num_stages() {
                let k = s - sa;
                if !self.fbar.is_defined(s, t) {
                    continue;
                }
                let todo: Vec<GenId> = (0..res_p.gens(s, t).len())
                    .map(|i| GenId::new(t, i))
                    .filter(|g| self.h_tau(s, *g).is_none())
                    .collect();
                if todo.is_empty() {
                    continue;
                }
                let want_tau = k == 1 || res_q.is_computed(k - 1, t - ta - 1);
                let this = &*self;
                let results: Vec<_> = todo
                    .par_iter()
                    .map(|&g| {
                        let rows = stage_get(&this.k_rows, s, g).cloned().or_else(|| this.compute_k(s, g));
                        let rhs = if want_tau && k >= 2 { this.tau_rhs(s, g) } else { None };
                        (g, rows, rhs)
                    })
                    .collect();
                for (g, rows, rhs) in results {
                    let Some(rows) = rows else { continue };
                    stage_insert(&mut self.k_rows, s, g, rows);
                    let h = if k == 1 {
                        if self.value.f.eval(g) {
                            FreeElt::generator(iota(&res_q))
                        } else {
                            FreeElt::zero(t - ta - 1)
                        }
                    } else if let Some(rhs) = rhs {
                        match res_q.lift(k - 1, &rhs)? {
                            Some(h) => h,
                            None if k == 2 => {
                                return Err(LiftError::NotCtau2 {
                                    n: self.value.e.n,
                                    s: sa,
                                    vector: self.value.e.vector.to_string(),
                                    d2: "nonzero".into(),
                                })
                            }
                            None => return Err(LiftError::Obstruction { n: t - s as i32, s, idx: g.idx }),
                        }
                    } else {
                        continue;
                    };
                    stage_insert(&mut self.h_tau, s, g, h);
                }
            }
        }
        Ok(())
    }

    /// `∂̄H_τ(g)` minus the right-hand side of its defining equation.
    pub fn residual(&self, s: u32, g: GenId) -> Option<FreeElt> {
        let k = s.checked_sub(self.fbar.shift().0).filter(|k| *k >= 2)?;
        let mut r = self.res_q().apply_boundary(k - 1, self.h_tau(s, g)?);
        r.add(&self.tau_rhs(s, g)?);
        Some(r)
    }

    /// The product before the sign twist: `e = x ∘ f̄` and
    /// `f = h₀·(v div 2) + x∘H_τ + y_x∘f̄` where `v` is the Z/4 count of `x`
    /// against `f̄`; returns `(e, v div 2, f)`.
    pub(crate) fn raw_product(&self, x: &SecondaryValue) -> Result<(ExtClass, ExtClass, ExtClass), LiftError> {
        let (sa, ta) = self.fbar.shift();
        let (n, s) = (self.value.e.n + x.e.n, sa + x.e.s);
        let t = n + s as i32;
        if !self.fbar.is_defined(s, t) || !self.fbar.is_defined(s + 1, t + 1) || !self.has_h_tau(s + 1, t + 1) {
            return Err(LiftError::NotComputed { n, s });
        }
        let (e, half) = readout(self.res_p(), n, s, |g| self.fbar.count(&x.e, s, g).expect("checked"));
        let mut f = self.res_p().filtration_one_product(0, &half)?;
        let (tau, _) = readout(self.res_p(), n, s + 1, |g| {
            let h = self.h_tau(s + 1, g).expect("checked");
            let hx = count_mod4(&x.e, h);
            let fy = count_mod4(&x.f, self.fbar.get(s + 1, g).expect("checked"));
            hx + fy
        });
        debug_assert_eq!(ta + x.e.t(), t);
        f.vector.add_assign(&tau.vector);
        Ok((e, half, f))
    }

    /// The product `[x] · [a]` in `π_{*,*}Cτ²`, for `x` over the target.
    /// When `s_a · t_x` is odd the composite differs from the product by a
    /// sign, `-v = v + τh₀v`.
    pub fn product(&self, x: &SecondaryValue) -> Result<SecondaryValue, LiftError> {
        let (e, _, mut f) = self.raw_product(x)?;
        if (self.fbar.shift().0 as i64 * x.e.t() as i64) % 2 != 0 {
            f.vector.add_assign(&self.res_p().filtration_one_product(0, &e)?.vector);
        }
        Ok(SecondaryValue::new(e, f))
    }

    /// The products with every standard lift `[x_(n, s, i)]` surviving `d₂`.
    pub fn products_in(&self, n: i32, s: u32) -> Result<Vec<(usize, SecondaryValue)>, LiftError> {
        let res_q = self.res_q();
        let mut out = Vec::new();
        for i in 0..res_q.num_gens(s, n + s as i32)? {
            let x = ExtClass::basis(res_q, n, s, i)?;
            if !self.sec_q.has_d2(n, s) || !self.sec_q.d2(&x)?.is_zero() {
                continue;
            }
            out.push((i, self.product(&SecondaryValue::lift(res_q, x)?)?));
        }
        Ok(out)
    }
}
