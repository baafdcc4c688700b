use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use fp_linalg::FVector;
use rayon::prelude::*;
use resolution::{ExtClass, FreeElt, GenId, Resolution, ResolutionError};
use secondary_algebra::{B0Vec, SecondaryAlgebra};
use thiserror::Error;

use crate::timing::thread_cpu_time;

#[derive(Debug, Error)]
pub enum SecondaryError {
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error("secondary obstruction: the τ-equation for x_({n}, {s}, {idx}) has no solution")]
    Obstruction { n: i32, s: u32, idx: usize },
    #[error("secondary data for bidegree (n={n}, s={s}) not computed")]
    NotComputed { n: i32, s: u32 },
}

/// `σ(∂₀∂₀)g` as a B₀ row: one entry per generator of `P^{(s-2)}`.
pub type Composite = Vec<(GenId, B0Vec)>;

/// Time spent on the parallel step (composite and A-function terms) of one generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenTiming {
    pub s: u32,
    pub t: i32,
    pub idx: usize,
    pub wall: Duration,
    pub cpu: Duration,
}

#[derive(Clone, Debug, Default)]
struct GenData {
    composite: Composite,
    h_tau: Option<FreeElt>,
}

/// A minimal resolution lifted to a secondary chain complex: for every
/// generator `g` of `P^{(s)}`, `s ≥ 2`, the composite `σ(∂̄)σ(∂̄)g` in B₀ and
/// the τ-part `h_τ(g) ∈ P̄^{(s-2)}` of the null-homotopy, of degree `|g| - 1`.
///
/// `h_τ` solves `∂̄ h_τ^{(s)}(g) = Σ_i α^i h_τ^{(s-1)}(g_i) + A(α^i, σ∂̄σ∂̄ g_i)`
/// where `∂̄g = Σ α^i g_i`; on `P^{(2)}` it is zero unless overridden.
pub struct SecondaryResolution {
    res: Arc<Resolution>,
    sec: Arc<SecondaryAlgebra>,
    data: Vec<BTreeMap<GenId, GenData>>,
    h_tau_2: BTreeMap<GenId, FreeElt>,
    timings: Vec<GenTiming>,
}

impl SecondaryResolution {
    pub fn new(res: Arc<Resolution>) -> Self {
        let sec = Arc::new(SecondaryAlgebra::new(res.algebra().clone()));
        Self::with_algebra(res, sec)
    }

    pub fn with_algebra(res: Arc<Resolution>, sec: Arc<SecondaryAlgebra>) -> Self {
        assert!(
            Arc::ptr_eq(sec.algebra_arc(), res.algebra()),
            "secondary algebra must share the resolution's Milnor algebra"
        );
        Self { res, sec, data: Vec::new(), h_tau_2: BTreeMap::new(), timings: Vec::new() }
    }

    pub fn resolution(&self) -> &Arc<Resolution> {
        &self.res
    }

    pub fn algebra(&self) -> &Arc<SecondaryAlgebra> {
        &self.sec
    }

    /// Replaces the default `h_τ^{(2)} = 0` on one generator of `P^{(2)}`.
    /// Must be called before [`Self::compute`].
    pub fn set_h_tau_2(&mut self, g: GenId, value: FreeElt) {
        assert_eq!(value.degree, g.t - 1, "h_τ(g) has degree |g| - 1");
        assert!(self.data.len() <= 2, "h_τ^(2) must be set before computing");
        self.h_tau_2.insert(g, value);
    }

    pub fn timings(&self) -> &[GenTiming] {
        &self.timings
    }

    pub fn composite(&self, s: u32, g: GenId) -> Option<&Composite> {
        self.data.get(s as usize)?.get(&g).map(|d| &d.composite)
    }

    pub fn h_tau(&self, s: u32, g: GenId) -> Option<&FreeElt> {
        self.data.get(s as usize)?.get(&g)?.h_tau.as_ref()
    }

    /// Whether `h_τ` is known on all generators of bidegree `(s, t)`.
    pub fn has_h_tau(&self, s: u32, t: i32) -> bool {
        if !self.res.is_computed(s, t) {
            return false;
        }
        if s < 2 {
            return true;
        }
        self.res.gens(s, t).iter().enumerate().all(|(i, _)| self.h_tau(s, GenId::new(t, i)).is_some())
    }

    fn compute_composite(&self, s: u32, g: GenId) -> Composite {
        let mut rows: BTreeMap<GenId, B0Vec> = BTreeMap::new();
        for (gi, a) in self.res.boundary(s, g).terms() {
            let da = g.t - gi.t;
            for (gii, b) in self.res.boundary(s - 1, *gi).terms() {
                let entry = rows.entry(*gii).or_insert_with(|| self.sec.zero(g.t - gii.t));
                self.sec.add_sigma_product(entry, da, a, gi.t - gii.t, b);
            }
        }
        rows.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// `Σ_i α^i h_τ(g_i) + A(α^i, C(g_i))` for `∂̄g = Σ α^i g_i`, an element of
    /// `P̄^{(s-3)}` in degree `|g| - 1`.
    fn tau_rhs(&self, s: u32, g: GenId) -> FreeElt {
        let alg = self.sec.algebra();
        let mut rhs = FreeElt::zero(g.t - 1);
        for (gi, a) in self.res.boundary(s, g).terms() {
            let da = g.t - gi.t;
            let prev = &self.data[s as usize - 1][gi];
            rhs.add(&prev.h_tau.as_ref().expect("h_τ computed in lower degrees").act(alg, da, a));
            for (giii, r) in &prev.composite {
                rhs.add_term(*giii, &self.sec.a_function(da, a, r));
            }
        }
        rhs
    }

    /// Computes composites for every generator of `P^{(s)}`, `s ≥ 2`, and `h_τ`
    /// wherever the resolution covers the target `(s - 2, t - 1)`. Extends
    /// previously computed data; generators within a bidegree run in parallel.
    pub fn compute(&mut self) -> Result<(), SecondaryError> {
        self.compute_with(|_| {})
    }

    pub fn compute_with(&mut self, mut on_gen: impl FnMut(&GenTiming)) -> Result<(), SecondaryError> {
        let res = self.res.clone();
        while self.data.len() < res.num_stages() as usize {
            self.data.push(BTreeMap::new());
        }
        let t0 = res.module().min_degree();
        let t_max = (0..res.num_stages()).filter_map(|s| res.max_t(s)).max().unwrap_or(t0);
        for t in t0..=t_max {
            for s in 2..res.num_stages() {
                if !res.is_computed(s, t) {
                    continue;
                }
                let want_tau = s >= 3 && res.is_computed(s - 2, t - 1);
                let todo: Vec<GenId> = (0..res.gens(s, t).len())
                    .map(|i| GenId::new(t, i))
                    .filter(|g| match self.data[s as usize].get(g) {
                        None => true,
                        Some(d) => d.h_tau.is_none() && want_tau,
                    })
                    .collect();
                if todo.is_empty() {
                    continue;
                }
                let this = &*self;
                let results: Vec<(GenId, Composite, Option<FreeElt>, GenTiming)> = todo
                    .par_iter()
                    .map(|&g| {
                        let wall = Instant::now();
                        let cpu = thread_cpu_time();
                        let composite = match this.data[s as usize].get(&g) {
                            Some(d) => d.composite.clone(),
                            None => this.compute_composite(s, g),
                        };
                        let rhs = want_tau.then(|| this.tau_rhs(s, g));
                        let timing = GenTiming {
                            s,
                            t,
                            idx: g.idx,
                            wall: wall.elapsed(),
                            cpu: thread_cpu_time().saturating_sub(cpu),
                        };
                        (g, composite, rhs, timing)
                    })
                    .collect();
                for (g, composite, rhs, timing) in results {
                    let h_tau = if s == 2 {
                        Some(self.h_tau_2.get(&g).cloned().unwrap_or_else(|| FreeElt::zero(t - 1)))
                    } else if let Some(rhs) = rhs {
                        let h = res.lift(s - 2, &rhs)?.ok_or(SecondaryError::Obstruction {
                            n: t - s as i32,
                            s,
                            idx: g.idx,
                        })?;
                        Some(h)
                    } else {
                        None
                    };
                    on_gen(&timing);
                    self.timings.push(timing);
                    self.data[s as usize].insert(g, GenData { composite, h_tau });
                }
            }
        }
        Ok(())
    }

    /// `∂̄ h_τ(g)` minus the right-hand side of its defining equation; zero
    /// whenever `h_τ(g)` is computed correctly.
    pub fn residual(&self, s: u32, g: GenId) -> Option<FreeElt> {
        if s < 3 {
            return None;
        }
        let h = self.h_tau(s, g)?;
        let mut r = self.res.apply_boundary(s - 2, h);
        r.add(&self.tau_rhs(s, g));
        Some(r)
    }

    /// `d₂(x) = x ∘ h_τ^{(s+2)}`, in bidegree `(n - 1, s + 2)`.
    pub fn d2(&self, x: &ExtClass) -> Result<ExtClass, SecondaryError> {
        let (s, t) = (x.s + 2, x.t() + 1);
        if !self.has_h_tau(s, t) || !self.res.is_computed(x.s, x.t()) {
            return Err(SecondaryError::NotComputed { n: x.n - 1, s });
        }
        let n = self.res.gens(s, t).len();
        let mut out = FVector::new(n);
        for j in 0..n {
            let h = self.h_tau(s, GenId::new(t, j)).expect("checked above");
            let mut v = false;
            for (g, c) in h.terms() {
                if x.eval(*g) && c.get(0) {
                    v = !v;
                }
            }
            out.set(j, v);
        }
        Ok(ExtClass::new(x.n - 1, s, out))
    }

    /// Whether `d₂` is defined on bidegree `(n, s)`.
    pub fn has_d2(&self, n: i32, s: u32) -> bool {
        let t = n + s as i32;
        self.res.is_computed(s, t) && self.has_h_tau(s + 2, t + 1)
    }
}

impl std::fmt::Debug for SecondaryResolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SecondaryResolution").field("stages", &self.data.len()).finish()
    }
}
