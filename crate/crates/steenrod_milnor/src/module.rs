use std::collections::BTreeMap;

use fp_linalg::FVector;
use thiserror::Error;

use crate::{milnor_basis, milnor_product, MilnorElt, MilnorProfile};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModuleError {
    #[error("generator {0} has negative degree {1}")]
    NegativeDegree(usize, i32),
    #[error("no generator g{0}")]
    UnknownGenerator(usize),
    #[error("{op} g{from} has degree {expected} but g{target} has degree {found}")]
    DegreeMismatch { op: MilnorProfile, from: usize, target: usize, expected: i32, found: i32 },
    #[error("the action of Sq() is the identity and cannot be specified")]
    UnitAction,
    #[error("insufficient module data: degree {degree} is beyond the known range (≤ {cap})")]
    InsufficientData { degree: i32, cap: i32 },
    #[error("not an A-module: ({a} · {b}) · g{gen} ≠ {a} · ({b} · g{gen})")]
    NotAModule { a: MilnorProfile, b: MilnorProfile, gen: usize },
}

/// A finite-type A-module given by an F₂-basis ("generators" g_i with
/// degrees) and the action of each Milnor basis element on each g_i.
/// Unspecified actions are zero; `Sq()` acts as the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    name: String,
    gen_degrees: Vec<i32>,
    /// Known through this degree; `None` means the module is finite and
    /// completely described.
    cap: Option<i32>,
    actions: BTreeMap<(MilnorProfile, usize), Vec<usize>>,
}

impl ModulePresentation {
    pub fn new(name: impl Into<String>, gen_degrees: Vec<i32>) -> Result<Self, ModuleError> {
        for (i, &d) in gen_degrees.iter().enumerate() {
            if d < 0 {
                return Err(ModuleError::NegativeDegree(i, d));
            }
        }
        Ok(Self { name: name.into(), gen_degrees, cap: None, actions: BTreeMap::new() })
    }

    /// `H^*(S) = F₂` in degree 0.
    pub fn sphere() -> Self {
        Self::new("S_2", vec![0]).unwrap()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_cap(&mut self, cap: Option<i32>) {
        self.cap = cap;
    }

    pub fn cap(&self) -> Option<i32> {
        self.cap
    }

    pub fn gen_degrees(&self) -> &[i32] {
        &self.gen_degrees
    }

    pub fn min_degree(&self) -> i32 {
        self.gen_degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn top_degree(&self) -> i32 {
        self.gen_degrees.iter().copied().max().unwrap_or(0)
    }

    /// Generators of degree `t`, in index order. Elements of degree `t` are
    /// vectors over this list.
    pub fn basis(&self, t: i32) -> Vec<usize> {
        (0..self.gen_degrees.len()).filter(|&i| self.gen_degrees[i] == t).collect()
    }

    pub fn dimension(&self, t: i32) -> usize {
        self.gen_degrees.iter().filter(|&&d| d == t).count()
    }

    fn check_degree(&self, t: i32) -> Result<(), ModuleError> {
        match self.cap {
            Some(cap) if t > cap => Err(ModuleError::InsufficientData { degree: t, cap }),
            _ => Ok(()),
        }
    }

    /// Declares `op · g_source = Σ g_target`.
    pub fn set_action(&mut self, op: MilnorProfile, source: usize, targets: Vec<usize>) -> Result<(), ModuleError> {
        if op.is_empty() {
            return Err(ModuleError::UnitAction);
        }
        let sd = *self.gen_degrees.get(source).ok_or(ModuleError::UnknownGenerator(source))?;
        let expected = sd + op.degree();
        for &t in &targets {
            let found = *self.gen_degrees.get(t).ok_or(ModuleError::UnknownGenerator(t))?;
            if found != expected {
                return Err(ModuleError::DegreeMismatch { op, from: source, target: t, expected, found });
            }
        }
        let mut sorted = targets;
        sorted.sort_unstable();
        let mut reduced: Vec<usize> = Vec::new();
        for t in sorted {
            if reduced.last() == Some(&t) {
                reduced.pop();
            } else {
                reduced.push(t);
            }
        }
        if reduced.is_empty() {
            self.actions.remove(&(op, source));
        } else {
            self.actions.insert((op, source), reduced);
        }
        Ok(())
    }

    /// All nonzero specified actions, in a fixed order.
    pub fn actions(&self) -> impl Iterator<Item = (&MilnorProfile, usize, &[usize])> {
        self.actions.iter().map(|((op, s), t)| (op, *s, t.as_slice()))
    }

    /// `op · g_gen` as a vector in degree `|g_gen| + |op|`.
    pub fn act_on_generator(&self, op: &MilnorProfile, gen: usize) -> Result<FVector, ModuleError> {
        let t = self.gen_degrees[gen] + op.degree();
        self.check_degree(t)?;
        let basis = self.basis(t);
        let mut v = FVector::new(basis.len());
        if op.is_empty() {
            v.set(basis.binary_search(&gen).unwrap(), true);
            return Ok(v);
        }
        if let Some(targets) = self.actions.get(&(op.clone(), gen)) {
            for g in targets {
                v.flip(basis.binary_search(g).unwrap());
            }
        }
        Ok(v)
    }

    /// `a · v` for `v` of degree `t`.
    pub fn act(&self, a: &MilnorElt, t: i32, v: &FVector) -> Result<FVector, ModuleError> {
        let target = t + a.degree();
        self.check_degree(target)?;
        let src = self.basis(t);
        assert_eq!(v.len(), src.len(), "element length does not match module dimension");
        let mut out = FVector::new(self.dimension(target));
        for i in v.iter_ones() {
            for op in a.terms() {
                out.add_assign(&self.act_on_generator(op, src[i])?);
            }
        }
        Ok(out)
    }

    /// Checks `(Sq(R) Sq(S)) g = Sq(R) (Sq(S) g)` for all basis operations and
    /// generators within the known range.
    pub fn validate(&self) -> Result<(), ModuleError> {
        let hi = self.cap.unwrap_or(self.top_degree());
        for (g, &d) in self.gen_degrees.iter().enumerate() {
            for sdeg in 1..=(hi - d) {
                for s in milnor_basis(sdeg) {
                    let sg = self.act_on_generator(&s, g)?;
                    for rdeg in 1..=(hi - d - sdeg) {
                        for r in milnor_basis(rdeg) {
                            let ra = MilnorElt::basis(r.clone());
                            let lhs = self.act(
                                &milnor_product(&ra, &MilnorElt::basis(s.clone())),
                                d,
                                &FVector::unit(self.dimension(d), self.basis(d).binary_search(&g).unwrap()),
                            )?;
                            let rhs = self.act(&ra, d + sdeg, &sg)?;
                            if lhs != rhs {
                                return Err(ModuleError::NotAModule { a: r, b: s, gen: g });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
