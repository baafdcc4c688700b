use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use fp_linalg::{FMatrix, FVector, Solver};
use steenrod_milnor::{MilnorAlgebra, MilnorElt, ModuleError, ModulePresentation};
use thiserror::Error;

use crate::free::{FreeElt, GenId, Layout};

#[derive(Debug, Error)]
pub enum ResolutionError {
    #[error("insufficient module data: {0}")]
    Module(#[from] ModuleError),
    #[error("bidegree (s={s}, t={t}) not computed")]
    NotComputed { s: u32, t: i32 },
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

/// Progress record for one bidegree.
#[derive(Clone, Copy, Debug)]
pub struct StepInfo {
    pub s: u32,
    pub t: i32,
    pub new_gens: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Stage {
    /// Boundaries of the generators, by degree.
    pub(crate) gens: BTreeMap<i32, Vec<FreeElt>>,
    /// Every degree `≤ max_t` is computed.
    pub(crate) max_t: Option<i32>,
}

/// A minimal free resolution `P^{(0)} ← P^{(1)} ← ...` of an A-module,
/// computed degree by degree.
///
/// The boundary of a generator of `P^{(s)}` is a [`FreeElt`] of `P^{(s-1)}`;
/// for `s = 0` it is an element of the module, written over its basis
/// (stage −1, see [`GenId`]). The generators of `P^{(s)}` in degree `t` form
/// the dual basis of `Ext^{s,t}`.
pub struct Resolution {
    pub(crate) module: ModulePresentation,
    pub(crate) alg: Arc<MilnorAlgebra>,
    pub(crate) stages: Vec<Stage>,
    solvers: Mutex<HashMap<(u32, i32), Arc<Solver>>>,
}

impl Resolution {
    pub fn new(module: ModulePresentation) -> Self {
        let top = module.top_degree().max(1);
        Self::from_parts(module, Arc::new(MilnorAlgebra::new(top)), Vec::new())
    }

    pub(crate) fn from_parts(module: ModulePresentation, alg: Arc<MilnorAlgebra>, stages: Vec<Stage>) -> Self {
        Self { module, alg, stages, solvers: Mutex::new(HashMap::new()) }
    }

    pub fn module(&self) -> &ModulePresentation {
        &self.module
    }

    pub fn algebra(&self) -> &Arc<MilnorAlgebra> {
        &self.alg
    }

    /// Ensures the algebra covers degree `t`.
    fn ensure_algebra(&mut self, t: i32) {
        if self.alg.max_degree() < t {
            self.alg = Arc::new(MilnorAlgebra::new(t));
            self.solvers.lock().unwrap().clear();
        }
    }

    pub fn num_stages(&self) -> u32 {
        self.stages.len() as u32
    }

    pub fn is_computed(&self, s: u32, t: i32) -> bool {
        self.stages.get(s as usize).and_then(|st| st.max_t).is_some_and(|m| t <= m)
    }

    /// Largest computed internal degree at stage `s`.
    pub fn max_t(&self, s: u32) -> Option<i32> {
        self.stages.get(s as usize).and_then(|st| st.max_t)
    }

    /// `dim Ext^{s,t}`.
    pub fn num_gens(&self, s: u32, t: i32) -> Result<usize, ResolutionError> {
        if !self.is_computed(s, t) {
            return Err(ResolutionError::NotComputed { s, t });
        }
        Ok(self.stages[s as usize].gens.get(&t).map_or(0, Vec::len))
    }

    /// Known generators of stage `s` in degree `t` (possibly none).
    pub fn gens(&self, s: u32, t: i32) -> &[FreeElt] {
        self.stages.get(s as usize).and_then(|st| st.gens.get(&t)).map_or(&[], Vec::as_slice)
    }

    /// All known generators of stage `s`, in `(t, idx)` order.
    pub fn all_gens(&self, s: u32) -> Vec<GenId> {
        let Some(st) = self.stages.get(s as usize) else {
            return Vec::new();
        };
        st.gens.iter().flat_map(|(&t, v)| (0..v.len()).map(move |i| GenId::new(t, i))).collect()
    }

    /// The boundary `∂g` of a generator of `P^{(s)}`.
    pub fn boundary(&self, s: u32, g: GenId) -> &FreeElt {
        &self.stages[s as usize].gens[&g.t][g.idx]
    }

    fn gens_up_to(&self, s: u32, t: i32, inclusive: bool) -> Vec<GenId> {
        let Some(st) = self.stages.get(s as usize) else {
            return Vec::new();
        };
        let end = if inclusive { t } else { t - 1 };
        st.gens.range(..=end).flat_map(|(&d, v)| (0..v.len()).map(move |i| GenId::new(d, i))).collect()
    }

    /// Coordinates of `P^{(s)}` in degree `t` (all known generators of degree
    /// `≤ t`); `s = -1` gives the module's basis in degree `t`.
    pub fn layout(&self, s: i32, t: i32) -> Layout {
        if s < 0 {
            let n = self.module.dimension(t);
            return Layout::new(&self.alg, t, (0..n).map(|i| GenId::new(t, i)).collect());
        }
        Layout::new(&self.alg, t, self.gens_up_to(s as u32, t, true))
    }

    /// Coordinates of the codomain of `∂^{(s)}` in degree `t`. By minimality
    /// images never involve generators of degree `t`, so for `s ≥ 1` these are
    /// the generators of `P^{(s-1)}` of degree `< t`.
    pub fn target_layout(&self, s: u32, t: i32) -> Layout {
        if s == 0 {
            return self.layout(-1, t);
        }
        Layout::new(&self.alg, t, self.gens_up_to(s - 1, t, false))
    }

    /// `a · x` in the module, for `x` of degree `tx` written over the module basis.
    fn module_act(&self, da: i32, ia: usize, tx: i32, x: &FreeElt) -> Result<FVector, ModuleError> {
        let v = x.to_vector(&self.layout(-1, tx));
        let a = MilnorElt::basis(self.alg.basis_element(da, ia).clone());
        self.module.act(&a, tx, &v)
    }

    /// The matrix of `∂^{(s)}` in degree `t` from `rows` to `cols`.
    fn boundary_matrix(&self, s: u32, t: i32, rows: &Layout, cols: &Layout) -> Result<FMatrix, ModuleError> {
        let mut m = FMatrix::new(0, cols.total);
        for (p, g) in rows.gens.iter().enumerate() {
            let da = t - g.t;
            let d = self.boundary(s, *g);
            for ia in 0..rows.dims[p] {
                let mut row = FVector::new(cols.total);
                if s == 0 {
                    let v = self.module_act(da, ia, g.t, d)?;
                    row.add_assign(&v);
                } else {
                    for (h, c) in d.terms() {
                        let off = cols.offsets[cols.position(*h).expect("boundary outside target layout")];
                        self.alg.multiply_basis_into(&mut row, off, da, ia, g.t - h.t, c);
                    }
                }
                m.push_row(row);
            }
        }
        Ok(m)
    }

    /// `∂^{(s)} x` for `x ∈ P^{(s)}`; for `s = 0` the result is written over
    /// the module basis.
    pub fn apply_boundary(&self, s: u32, x: &FreeElt) -> FreeElt {
        let t = x.degree;
        if s == 0 {
            let mut v = FVector::new(self.module.dimension(t));
            for (g, c) in x.terms() {
                for ia in c.iter_ones() {
                    v.add_assign(&self.module_act(t - g.t, ia, g.t, self.boundary(0, *g)).expect("module data"));
                }
            }
            return FreeElt::from_vector(&self.layout(-1, t), &v);
        }
        let mut out = FreeElt::zero(t);
        for (g, c) in x.terms() {
            out.add(&self.boundary(s, *g).act(&self.alg, t - g.t, c));
        }
        out
    }

    /// The solver for `∂^{(s)}` in degree `t`: rows over [`Self::layout`]`(s, t)`,
    /// columns over [`Self::target_layout`]`(s, t)`.
    pub fn solver(&self, s: u32, t: i32) -> Result<Arc<Solver>, ResolutionError> {
        if !self.is_computed(s, t) {
            return Err(ResolutionError::NotComputed { s, t });
        }
        if let Some(sv) = self.solvers.lock().unwrap().get(&(s, t)) {
            return Ok(sv.clone());
        }
        let m = self.boundary_matrix(s, t, &self.layout(s as i32, t), &self.target_layout(s, t))?;
        let sv = Arc::new(Solver::new(&m));
        self.solvers.lock().unwrap().insert((s, t), sv.clone());
        Ok(sv)
    }

    /// Drops all cached solvers.
    pub fn clear_solvers(&self) {
        self.solvers.lock().unwrap().clear();
    }

    /// Some `x ∈ P^{(s)}` with `∂x = y` (canonical choice), or `None` if `y`
    /// is not a boundary.
    pub fn lift(&self, s: u32, y: &FreeElt) -> Result<Option<FreeElt>, ResolutionError> {
        let t = y.degree;
        let cols = self.target_layout(s, t);
        if y.terms().iter().any(|(g, _)| cols.position(*g).is_none()) {
            return Ok(None);
        }
        let sv = self.solver(s, t)?;
        Ok(sv.solve(&y.to_vector(&cols)).map(|x| FreeElt::from_vector(&self.layout(s as i32, t), &x)))
    }

    pub fn extend(&mut self, max_n: i32, max_s: u32) -> Result<(), ResolutionError> {
        self.extend_with(max_n, max_s, |_| {})
    }

    /// Computes every bidegree with `t - s ≤ max_n` and `s ≤ max_s`, in order
    /// of increasing `t` and then `s`, reporting each step.
    pub fn extend_with(
        &mut self,
        max_n: i32,
        max_s: u32,
        mut on_step: impl FnMut(StepInfo),
    ) -> Result<(), ResolutionError> {
        let t0 = self.module.min_degree();
        let t_max = max_n + max_s as i32;
        self.ensure_algebra(t_max);
        while self.stages.len() <= max_s as usize {
            self.stages.push(Stage::default());
        }
        for t in t0..=t_max {
            for s in 0..=max_s {
                if t - s as i32 > max_n || self.is_computed(s, t) {
                    continue;
                }
                let start = Instant::now();
                let new_gens = self.step(s, t)?;
                on_step(StepInfo { s, t, new_gens, elapsed: start.elapsed() });
            }
        }
        Ok(())
    }

    fn step(&mut self, s: u32, t: i32) -> Result<usize, ResolutionError> {
        let expected = self.stages[s as usize].max_t.map_or(self.module.min_degree(), |m| m + 1);
        assert_eq!(t, expected, "bidegree (s={s}, t={t}) computed out of order");
        assert!(
            s == 0 || t == self.module.min_degree() || self.is_computed(s - 1, t - 1),
            "bidegree (s={s}, t={t}) needs (s={}, t={})",
            s - 1,
            t - 1
        );
        let rows = Layout::new(&self.alg, t, self.gens_up_to(s, t, false));
        let cols = self.target_layout(s, t);
        let mut solver = Solver::new(&self.boundary_matrix(s, t, &rows, &cols)?);

        // Cycles in the target: everything for s = 0, else ker ∂^{(s-1)}.
        let cycles: Vec<FVector> = if s == 0 {
            (0..cols.total).map(|i| FVector::unit(cols.total, i)).collect()
        } else if self.is_computed(s - 1, t) {
            // New generators in degree t are independent of the rest, so
            // the kernel vanishes on their (final) coordinates.
            self.solver(s - 1, t)?.kernel_rows().iter().map(|k| k.slice(0, cols.total)).collect()
        } else {
            let m = self.boundary_matrix(s - 1, t, &cols, &self.target_layout(s - 1, t))?;
            Solver::new(&m).kernel_rows().to_vec()
        };

        let mut new = Vec::new();
        for k in cycles {
            let mut r = k.clone();
            solver.reduce(&mut r);
            if r.is_zero() {
                continue;
            }
            solver.extend_rows(std::slice::from_ref(&k));
            new.push(FreeElt::from_vector(&cols, &k));
        }
        let n = new.len();
        let stage = &mut self.stages[s as usize];
        if n > 0 {
            stage.gens.insert(t, new);
        }
        stage.max_t = Some(t);
        self.solvers.lock().unwrap().insert((s, t), Arc::new(solver));
        Ok(n)
    }
}

impl std::fmt::Debug for Resolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Resolution").field("module", &self.module.name()).field("stages", &self.stages.len()).finish()
    }
}
