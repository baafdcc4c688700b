use std::sync::Arc;

use rayon::prelude::*;
use resolution::{ExtClass, FreeElt, GenId, Resolution};

use crate::error::LiftError;
use crate::util::{apply_map, count_mod4, degree_range, iota, readout, stage_get, stage_insert, StageMap};

/// The chain map `f̄: P^{(s+k)} → Q^{(k)}` lifting a class `a ∈ Ext^{s,t}`,
/// lowering internal degree by `t`. On `P^{(s)}` it is `g ↦ a(g)·ι`; above,
/// `f̄(g)` is the canonical lift of `f̄(∂̄g)`.
pub struct ChainMap {
    source: Arc<Resolution>,
    target: Arc<Resolution>,
    class: ExtClass,
    maps: StageMap<FreeElt>,
}

impl ChainMap {
    pub fn new(source: Arc<Resolution>, target: Arc<Resolution>, class: ExtClass) -> Self {
        iota(&target);
        assert!(source.is_computed(class.s, class.t()), "class ({}, {}) outside the computed range", class.n, class.s);
        Self { source, target, class, maps: Vec::new() }
    }

    /// Lifts `class` as far as both resolutions allow.
    pub fn lift(source: Arc<Resolution>, target: Arc<Resolution>, class: ExtClass) -> Result<Self, LiftError> {
        let mut m = Self::new(source, target, class);
        m.compute()?;
        Ok(m)
    }

    pub fn source(&self) -> &Arc<Resolution> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Resolution> {
        &self.target
    }

    pub fn class(&self) -> &ExtClass {
        &self.class
    }

    /// Filtration and internal degree of the lifted class.
    pub fn shift(&self) -> (u32, i32) {
        (self.class.s, self.class.t())
    }

    pub fn get(&self, s: u32, g: GenId) -> Option<&FreeElt> {
        stage_get(&self.maps, s, g)
    }

    /// Whether `f̄` is known on every generator of bidegree `(s, t)`.
    pub fn is_defined(&self, s: u32, t: i32) -> bool {
        self.source.is_computed(s, t)
            && (0..self.source.gens(s, t).len()).all(|i| self.get(s, GenId::new(t, i)).is_some())
    }

    /// `f̄(x)` for `x ∈ P^{(s)}`.
    pub fn apply(&self, s: u32, x: &FreeElt) -> Option<FreeElt> {
        apply_map(&self.source, &self.maps, s, x, x.degree - self.class.t())
    }

    pub fn compute(&mut self) -> Result<(), LiftError> {
        let (sa, ta) = self.shift();
        let source = self.source.clone();
        for t in degree_range(&source) {
            for s in sa..source.num_stages() {
                let k = s - sa;
                if !source.is_computed(s, t) || (k > 0 && !self.target.is_computed(k, t - ta)) {
                    continue;
                }
                let todo: Vec<GenId> = (0..source.gens(s, t).len())
                    .map(|i| GenId::new(t, i))
                    .filter(|g| self.get(s, *g).is_none())
                    .collect();
                if k == 0 {
                    for g in todo {
                        let v = if self.class.eval(g) {
                            FreeElt::generator(iota(&self.target))
                        } else {
                            FreeElt::zero(t - ta)
                        };
                        stage_insert(&mut self.maps, s, g, v);
                    }
                    continue;
                }
                let this = &*self;
                let results: Vec<(GenId, Option<Result<FreeElt, LiftError>>)> = todo
                    .par_iter()
                    .map(|&g| {
                        let r = this.apply(s - 1, source.boundary(s, g)).map(|y| {
                            if y.is_zero() {
                                return Ok(FreeElt::zero(t - ta));
                            }
                            this.target.lift(k, &y)?.ok_or(LiftError::Obstruction { n: t - s as i32, s, idx: g.idx })
                        });
                        (g, r)
                    })
                    .collect();
                for (g, r) in results {
                    if let Some(r) = r {
                        stage_insert(&mut self.maps, s, g, r?);
                    }
                }
            }
        }
        Ok(())
    }

    /// `∂̄f̄(g) - f̄(∂̄g)` for a generator of `P^{(s)}`, `s > shift`; zero for a
    /// chain map.
    pub fn residual(&self, s: u32, g: GenId) -> Option<FreeElt> {
        let k = s.checked_sub(self.class.s).filter(|k| *k > 0)?;
        let mut r = self.target.apply_boundary(k, self.get(s, g)?);
        r.add(&self.apply(s - 1, self.source.boundary(s, g))?);
        Some(r)
    }

    /// The raw count `Σ x(q)[c]₀` mod 4 of `x` against `f̄(g)`.
    pub(crate) fn count(&self, x: &ExtClass, s: u32, g: GenId) -> Option<u8> {
        Some(count_mod4(x, self.get(s, g)?))
    }

    /// The Yoneda product `x · a = x ∘ f̄`, in bidegree `(n_a + n_x, s_a + s_x)`.
    pub fn yoneda(&self, x: &ExtClass) -> Result<ExtClass, LiftError> {
        let (n, s) = (self.class.n + x.n, self.class.s + x.s);
        if !self.is_defined(s, n + s as i32) {
            return Err(LiftError::NotComputed { n, s });
        }
        Ok(readout(&self.source, n, s, |g| self.count(x, s, g).expect("checked")).0)
    }
}
