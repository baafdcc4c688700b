use std::collections::BTreeMap;
use std::sync::Arc;

use fp_linalg::{FMatrix, FVector, Solver};
use rayon::prelude::*;
use resolution::{ExtClass, FreeElt, GenId, Resolution};
use secondary_algebra::B0Vec;
use secondary_lift::{SecondaryResolution, SecondaryValue};

use crate::chain_map::ChainMap;
use crate::error::LiftError;
use crate::secondary_map::SecondaryChainMap;
use crate::util::{
    add_a_terms, add_sigma_compose, apply_map, composite, count_mod4, degree_range, h_tau, into_rows, iota, readout,
    stage_get, stage_insert, StageMap,
};

/// A value of `<c, b, a>`, determined up to sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasseyValue {
    pub c: ExtClass,
    pub value: SecondaryValue,
}

/// Solves `d₂(z) = w` over `Ext^{s, n+s}`, `w` in `(n - 1, s + 2)`.
pub(crate) fn solve_d2(sec: &SecondaryResolution, n: i32, s: u32, w: &ExtClass) -> Result<Option<ExtClass>, LiftError> {
    let res = sec.resolution();
    if !sec.has_d2(n, s) {
        return Err(LiftError::NotComputed { n, s });
    }
    let dim = res.num_gens(s, n + s as i32)?;
    let rows = (0..dim)
        .map(|i| Ok(sec.d2(&ExtClass::basis(res, n, s, i)?)?.vector))
        .collect::<Result<Vec<FVector>, LiftError>>()?;
    let m = FMatrix::from_rows(w.vector.len(), rows);
    Ok(Solver::new(&m).solve(&w.vector).map(|v| ExtClass::new(n, s, v)))
}

/// The null-homotopy `𝓗̄: P^{(s+k)} → Q^{(k+1)}` of `f̄_b f̄_a`, `s = s_a + s_b`,
/// starting from `𝓗̄^{(s-1)} = z·ι`: `𝓗̄(g)` is the canonical lift of
/// `f̄_b f̄_a(g) + 𝓗̄(∂̄g)`.
pub(crate) fn null_homotopy(fa: &ChainMap, fb: &ChainMap, z: &ExtClass) -> Result<StageMap<FreeElt>, LiftError> {
    let (sa, ta) = fa.shift();
    let (sb, tb) = fb.shift();
    let (s0, t0) = (sa + sb, ta + tb);
    let p = fa.source().clone();
    let q = fa.target().clone();
    assert!(sa >= 1 && sb >= 1, "Massey products need positive filtrations");
    assert_eq!((z.s, z.t()), (s0 - 1, t0), "correction class in the wrong bidegree");
    let mut maps: StageMap<FreeElt> = Vec::new();
    for t in degree_range(&p) {
        for s in s0 - 1..p.num_stages() {
            if !p.is_computed(s, t) {
                continue;
            }
            let gens: Vec<GenId> = (0..p.gens(s, t).len())
                .map(|i| GenId::new(t, i))
                .filter(|g| stage_get(&maps, s, *g).is_none())
                .collect();
            if s == s0 - 1 {
                for g in gens {
                    let v = if z.eval(g) { FreeElt::generator(iota(&q)) } else { FreeElt::zero(t - t0) };
                    stage_insert(&mut maps, s, g, v);
                }
                continue;
            }
            let k = s - s0;
            if !q.is_computed(k + 1, t - t0) {
                continue;
            }
            let maps_ref = &maps;
            let results: Vec<(GenId, Option<Result<FreeElt, LiftError>>)> = gens
                .par_iter()
                .map(|&g| {
                    let r = (|| {
                        let mut y = fb.apply(sb + k, fa.get(s, g)?)?;
                        y.add(&apply_map(&p, maps_ref, s - 1, p.boundary(s, g), t - t0)?);
                        Some(y)
                    })()
                    .map(|y| {
                        if y.is_zero() {
                            return Ok(FreeElt::zero(t - t0));
                        }
                        q.lift(k + 1, &y)?.ok_or(LiftError::Obstruction { n: t - s as i32, s, idx: g.idx })
                    });
                    (g, r)
                })
                .collect();
            for (g, r) in results {
                if let Some(r) = r {
                    stage_insert(&mut maps, s, g, r?);
                }
            }
        }
    }
    Ok(maps)
}

/// A secondary null-homotopy of `[b][a]`, from which `<c, b, a>` is read off
/// for every `c` with `[c][b] = 0`.
///
/// With `F = f_b f_a`, the B₀ rows `E(g) = σ∂̄σ𝓗̄g + σ𝓗̄σ∂̄g - σf̄_bσf̄_a g` over
/// `Q^{(k)}` lie in `ker π`, and the τ-part `η_τ: P^{(s+k)} → Q^{(k)}` solves
///
/// `∂̄η_τ(g) = Σ_i α^i η_τ(g_i) + A(α^i, E(g_i)) + Σ_j γ^j h_τ(q_j) + A(γ^j, C(q_j))
///  + 𝓗̄h_τ(g) + H^F_τ(g)`
///
/// where `∂̄g = Σ α^i g_i`, `𝓗̄g = Σ γ^j q_j` and `H^F_τ` is the τ-part of the
/// composite homotopy. The correction `z ∈ Ext^{s-1}` with `d₂z` equal to the
/// τ-part of `[b][a]` makes the degree-0 equation solvable.
pub struct MasseyHomotopy {
    a: Arc<SecondaryChainMap>,
    b: Arc<SecondaryChainMap>,
    z: ExtClass,
    hbar: StageMap<FreeElt>,
    e_rows: StageMap<Vec<(GenId, B0Vec)>>,
    eta: StageMap<FreeElt>,
}

impl MasseyHomotopy {
    pub fn new(a: Arc<SecondaryChainMap>, b: Arc<SecondaryChainMap>) -> Result<Self, LiftError> {
        assert!(Arc::ptr_eq(a.target(), b.source()), "b must act on the target of a");
        assert!(Arc::ptr_eq(b.source(), b.target()), "b must be a self-map of the ground field resolution");
        let (ea, eb) = (&a.value().e, &b.value().e);
        let (e, _, f) = a.raw_product(b.value())?;
        let product = || format!("[({}, {}) {}][({}, {}) {}]", eb.n, eb.s, eb.vector, ea.n, ea.s, ea.vector);
        if !e.is_zero() {
            return Err(LiftError::NotNull { product: product() });
        }
        let z = solve_d2(a.source(), e.n + 1, e.s - 1, &f)?.ok_or_else(|| LiftError::NotNull { product: product() })?;
        let hbar = null_homotopy(a.chain_map(), b.chain_map(), &z)?;
        let mut m = Self { a, b, z, hbar, e_rows: Vec::new(), eta: Vec::new() };
        m.compute()?;
        Ok(m)
    }

    /// The correction class `z`.
    pub fn correction(&self) -> &ExtClass {
        &self.z
    }

    fn p(&self) -> &Resolution {
        self.a.source().resolution()
    }

    fn q(&self) -> &Resolution {
        self.a.target().resolution()
    }

    fn shift(&self) -> (u32, i32) {
        let ((sa, ta), (sb, tb)) = (self.a.chain_map().shift(), self.b.chain_map().shift());
        (sa + sb, ta + tb)
    }

    pub fn hbar(&self, s: u32, g: GenId) -> Option<&FreeElt> {
        stage_get(&self.hbar, s, g)
    }

    pub fn eta(&self, s: u32, g: GenId) -> Option<&FreeElt> {
        stage_get(&self.eta, s, g)
    }

    fn defined<T>(&self, maps: &StageMap<T>, s: u32, t: i32) -> bool {
        self.p().is_computed(s, t)
            && (0..self.p().gens(s, t).len()).all(|i| stage_get(maps, s, GenId::new(t, i)).is_some())
    }

    fn compute_e(&self, s: u32, g: GenId) -> Option<Vec<(GenId, B0Vec)>> {
        let sec = self.a.source().algebra();
        let (s0, t0) = self.shift();
        let (sb, _) = self.b.chain_map().shift();
        let (_, ta) = self.a.chain_map().shift();
        let k = s - s0;
        let mut pos: BTreeMap<GenId, B0Vec> = BTreeMap::new();
        for (q, c) in self.hbar(s, g)?.terms() {
            add_sigma_compose(sec, &mut pos, g.t - t0 - q.t, c, self.q().boundary(k + 1, *q));
        }
        for (gi, a) in self.p().boundary(s, g).terms() {
            add_sigma_compose(sec, &mut pos, g.t - gi.t, a, self.hbar(s - 1, *gi)?);
        }
        let mut neg: BTreeMap<GenId, B0Vec> = BTreeMap::new();
        for (q, b) in self.a.chain_map().get(s, g)?.terms() {
            add_sigma_compose(sec, &mut neg, g.t - ta - q.t, b, self.b.chain_map().get(sb + k, *q)?);
        }
        for (q, r) in neg {
            pos.entry(q).or_insert_with(|| sec.zero(r.degree)).sub_assign(&r);
        }
        let rows = into_rows(pos);
        debug_assert!(rows.iter().all(|(_, r)| r.in_ker_pi()), "𝓗̄ is not a null-homotopy");
        Some(rows)
    }

    fn tau_rhs(&self, s: u32, g: GenId) -> Option<FreeElt> {
        let sec = self.a.source().algebra();
        let alg = sec.algebra();
        let (s0, t0) = self.shift();
        let (sb, _) = self.b.chain_map().shift();
        let (_, ta) = self.a.chain_map().shift();
        let k = s - s0;
        let p = self.p();
        let mut rhs = FreeElt::zero(g.t - t0 - 1);
        for (gi, a) in p.boundary(s, g).terms() {
            let da = g.t - gi.t;
            rhs.add(&self.eta(s - 1, *gi)?.act(alg, da, a));
            add_a_terms(sec, &mut rhs, da, a, stage_get(&self.e_rows, s - 1, *gi)?);
        }
        for (qj, c) in self.hbar(s, g)?.terms() {
            let dc = g.t - t0 - qj.t;
            rhs.add(&h_tau(self.a.target(), k + 1, *qj)?.act(alg, dc, c));
            add_a_terms(sec, &mut rhs, dc, c, composite(self.a.target(), k + 1, *qj)?);
        }
        rhs.add(&apply_map(p, &self.hbar, s - 2, &h_tau(self.a.source(), s, g)?, g.t - 1 - t0)?);
        for (qj, b) in self.a.chain_map().get(s, g)?.terms() {
            let db = g.t - ta - qj.t;
            rhs.add(&self.b.h_tau(sb + k, *qj)?.act(alg, db, b));
            add_a_terms(sec, &mut rhs, db, b, self.b.k_row(sb + k, *qj)?);
        }
        rhs.add(&self.b.chain_map().apply(sb + k - 1, self.a.h_tau(s, g)?)?);
        Some(rhs)
    }

    fn compute(&mut self) -> Result<(), LiftError> {
        let (s0, t0) = self.shift();
        let p = self.a.source().resolution().clone();
        let q = self.a.target().resolution().clone();
        for t in degree_range(&p) {
            for s in s0..p.num_stages() {
                if !self.defined(&self.hbar, s, t) {
                    continue;
                }
                let k = s - s0;
                let todo: Vec<GenId> =
                    (0..p.gens(s, t).len()).map(|i| GenId::new(t, i)).filter(|g| self.eta(s, *g).is_none()).collect();
                let want_tau = k == 0 || q.is_computed(k, t - t0 - 1);
                let this = &*self;
                let results: Vec<_> = todo
                    .par_iter()
                    .map(|&g| {
                        let rows = stage_get(&this.e_rows, s, g).cloned().or_else(|| this.compute_e(s, g));
                        let rhs = if want_tau && k >= 1 { this.tau_rhs(s, g) } else { None };
                        (g, rows, rhs)
                    })
                    .collect();
                for (g, rows, rhs) in results {
                    let Some(rows) = rows else { continue };
                    stage_insert(&mut self.e_rows, s, g, rows);
                    let eta = if k == 0 {
                        FreeElt::zero(t - t0 - 1)
                    } else if let Some(rhs) = rhs {
                        q.lift(k, &rhs)?.ok_or(LiftError::Obstruction { n: t - s as i32, s, idx: g.idx })?
                    } else {
                        continue;
                    };
                    stage_insert(&mut self.eta, s, g, eta);
                }
            }
        }
        Ok(())
    }

    /// `∂̄η_τ(g)` minus the right-hand side of its defining equation.
    pub fn residual(&self, s: u32, g: GenId) -> Option<FreeElt> {
        let k = s.checked_sub(self.shift().0).filter(|k| *k >= 1)?;
        let mut r = self.q().apply_boundary(k, self.eta(s, g)?);
        r.add(&self.tau_rhs(s, g)?);
        Some(r)
    }

    /// `<c, b, a>` up to sign, in bidegree `(n_a + n_b + n_c + 1, s_a + s_b + s_c - 1)`,
    /// or `None` if `d₂c ≠ 0` or `[c][b] ≠ 0`.
    pub fn bracket(&self, c: &ExtClass) -> Result<Option<MasseyValue>, LiftError> {
        let sec_q = self.b.source();
        if !sec_q.has_d2(c.n, c.s) {
            return Err(LiftError::NotComputed { n: c.n, s: c.s });
        }
        if !sec_q.d2(c)?.is_zero() {
            return Ok(None);
        }
        let lc = SecondaryValue::lift(self.q(), c.clone())?;
        let (e_cb, c_half, f_cb) = self.b.raw_product(&lc)?;
        if !e_cb.is_zero() {
            return Ok(None);
        }
        let Some(u) = solve_d2(sec_q, e_cb.n + 1, e_cb.s - 1, &f_cb)? else {
            return Ok(None);
        };
        let (s0, t0) = self.shift();
        let (n_out, s_out) = (self.a.value().e.n + self.b.value().e.n + c.n + 1, s0 + c.s - 1);
        let t_out = n_out + s_out as i32;
        let fa = self.a.chain_map();
        if !self.defined(&self.hbar, s_out, t_out)
            || !self.defined(&self.eta, s_out + 1, t_out + 1)
            || !fa.is_defined(s_out, t_out)
            || !fa.is_defined(s_out + 1, t_out + 1)
            || !self.a.has_h_tau(s_out + 1, t_out + 1)
        {
            return Err(LiftError::NotComputed { n: n_out, s: s_out });
        }
        debug_assert_eq!(t_out, t0 + c.t());
        let (e, half) = readout(self.p(), n_out, s_out, |g| {
            count_mod4(c, self.hbar(s_out, g).expect("checked")) + count_mod4(&u, fa.get(s_out, g).expect("checked"))
        });
        let mut f = self.p().filtration_one_product(0, &half)?;
        let (tau, _) = readout(self.p(), n_out, s_out + 1, |g| {
            let mut v = count_mod4(c, self.eta(s_out + 1, g).expect("checked"))
                + count_mod4(&u, self.a.h_tau(s_out + 1, g).expect("checked"));
            for (q, beta) in fa.get(s_out + 1, g).expect("checked").terms() {
                if c_half.eval(*q) && beta.get(0) {
                    v += 1;
                }
            }
            v
        });
        f.vector.add_assign(&tau.vector);
        Ok(Some(MasseyValue { c: c.clone(), value: SecondaryValue::new(e, f) }))
    }
}
