use std::fmt;

use fp_linalg::FVector;
use resolution::ExtClass;

use crate::hidden::HiddenExtension;
use crate::page::{D2Data, PageData};
use crate::table::ProductTable;

fn class(f: &mut fmt::Formatter<'_>, x: &ExtClass) -> fmt::Result {
    write!(f, "({}, {}) {}", x.n, x.s, x.vector)
}

/// `d_r(source) = target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Differential {
    pub r: u32,
    pub source: ExtClass,
    pub target: ExtClass,
}

impl Differential {
    pub fn new(r: u32, source: ExtClass, target: ExtClass) -> Self {
        assert_eq!((source.n - 1, source.s + r), (target.n, target.s), "d_{r} has the wrong bidegree");
        Self { r, source, target }
    }

    /// The nonzero d₂ on basis classes.
    pub fn from_d2(data: &D2Data) -> Vec<Differential> {
        let mut out = Vec::new();
        for (&(n, s), rows) in &data.d2 {
            for (i, row) in rows.iter().enumerate() {
                if !row.is_zero() {
                    let x = ExtClass::new(n, s, FVector::unit(rows.len(), i));
                    out.push(Differential::new(2, x, ExtClass::new(n - 1, s + 2, row.clone())));
                }
            }
        }
        out
    }
}

impl fmt::Display for Differential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d_{} ", self.r)?;
        class(f, &self.source)?;
        write!(f, " = ")?;
        class(f, &self.target)
    }
}

/// An `α`-extension from `from` to `to`: an E₂ product (jump 0) or a
/// hidden extension (jump 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Product { multiplier: String, from: ExtClass, to: ExtClass },
    Hidden(HiddenExtension),
}

impl Step {
    pub fn from(&self) -> &ExtClass {
        match self {
            Step::Product { from, .. } => from,
            Step::Hidden(h) => &h.source,
        }
    }

    pub fn to(&self) -> &ExtClass {
        match self {
            Step::Product { to, .. } => to,
            Step::Hidden(h) => &h.target,
        }
    }

    pub fn jump(&self) -> u32 {
        match self {
            Step::Product { .. } => 0,
            Step::Hidden(h) => h.jump,
        }
    }

    pub fn multiplier(&self) -> &str {
        match self {
            Step::Product { multiplier, .. } => multiplier,
            Step::Hidden(h) => &h.multiplier,
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Product { multiplier, from, to } => {
                write!(f, "{multiplier} · ")?;
                class(f, from)?;
                write!(f, " = ")?;
                class(f, to)
            }
            Step::Hidden(h) => write!(f, "hidden {h}"),
        }
    }
}

/// Which way the rule was applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// `d_r(x) = y` gives a differential between α-extensions of `x` and `y`.
    Multiply,
    /// A differential between α-extensions of `x` and `y` gives `d(x) = y`.
    Divide,
}

/// How a derived differential was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub rule: Rule,
    pub known: Differential,
    pub source_step: Step,
    pub target_step: Step,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rule = match self.rule {
            Rule::Multiply => "multiply",
            Rule::Divide => "divide",
        };
        write!(
            f,
            "{rule} {} by {}; {}; {}",
            self.known,
            self.source_step.multiplier(),
            self.source_step,
            self.target_step
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    /// Maximality holds and there is no indeterminacy.
    Definite,
    Candidate(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedDifferential {
    pub differential: Differential,
    pub provenance: Provenance,
    pub status: Status,
}

impl DerivedDifferential {
    pub fn r(&self) -> u32 {
        self.differential.r
    }

    pub fn source(&self) -> &ExtClass {
        &self.differential.source
    }

    pub fn target(&self) -> &ExtClass {
        &self.differential.target
    }

    pub fn is_definite(&self) -> bool {
        self.status == Status::Definite
    }

    /// Re-applies the recorded rule to the recorded inputs; `true` iff it
    /// yields this differential and every E₂ product step is confirmed by
    /// `table` and every hidden step is among `exts`.
    pub fn revalidate(&self, table: &ProductTable, exts: &[HiddenExtension]) -> bool {
        let p = &self.provenance;
        let step_ok = |s: &Step| match s {
            Step::Product { multiplier, from, to } => {
                table.get(multiplier).and_then(|m| m.multiply(from)).as_ref() == Some(to) && !to.is_zero()
            }
            Step::Hidden(h) => exts.contains(h),
        };
        if p.source_step.multiplier() != p.target_step.multiplier()
            || !step_ok(&p.source_step)
            || !step_ok(&p.target_step)
        {
            return false;
        }
        let (k, s, t) = (&p.known, &p.source_step, &p.target_step);
        let derived = match p.rule {
            Rule::Multiply => {
                if s.from() != &k.source || t.from() != &k.target {
                    return false;
                }
                (k.r + t.jump()).checked_sub(s.jump()).map(|r| (r, s.to(), t.to()))
            }
            Rule::Divide => {
                if s.to() != &k.source || t.to() != &k.target {
                    return false;
                }
                (k.r + s.jump()).checked_sub(t.jump()).map(|r| (r, s.from(), t.from()))
            }
        };
        derived.is_some_and(|(r, x, y)| r == self.r() && x == self.source() && y == self.target())
    }
}

impl fmt::Display for DerivedDifferential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.differential)?;
        match &self.status {
            Status::Definite => write!(f, " [definite]")?,
            Status::Candidate(why) => write!(f, " [candidate: {why}]")?,
        }
        write!(f, " <- {}", self.provenance)
    }
}

struct Ctx<'a> {
    table: &'a ProductTable,
    exts: &'a [HiddenExtension],
    page: &'a PageData,
}

impl Ctx<'_> {
    fn names(&self) -> Vec<String> {
        let mut names: Vec<String> = self.table.multipliers.keys().cloned().collect();
        for e in self.exts {
            if !names.contains(&e.multiplier) {
                names.push(e.multiplier.clone());
            }
        }
        names
    }

    /// α-extensions of `z`: its nonzero E₂ product, else a recorded hidden
    /// extension.
    fn forward(&self, name: &str, z: &ExtClass) -> Option<Step> {
        if let Some(p) = self.table.get(name).and_then(|m| m.multiply(z)) {
            if !p.is_zero() {
                return Some(Step::Product { multiplier: name.into(), from: z.clone(), to: p });
            }
        }
        self.exts.iter().find(|e| e.multiplier == name && &e.source == z).map(|e| Step::Hidden(e.clone()))
    }

    /// Classes whose α-extension is `z`, each with a uniqueness flag.
    fn backward(&self, name: &str, z: &ExtClass) -> Vec<(Step, bool)> {
        let mut out = Vec::new();
        if let Some((x, unique)) = self.table.get(name).and_then(|m| m.divide(z)) {
            if !z.is_zero() {
                out.push((Step::Product { multiplier: name.into(), from: x, to: z.clone() }, unique));
            }
        }
        for e in self.exts.iter().filter(|e| e.multiplier == name && &e.target == z) {
            out.push((Step::Hidden(e.clone()), true));
        }
        out
    }

    /// Why a jump-one extension is ambiguous: its target is defined modulo
    /// `α · E₂(n, s + 1)` and the image of d₂.
    fn hidden_ambiguity(&self, step: &Step) -> Option<String> {
        let Step::Hidden(h) = step else { return None };
        let Some(m) = self.table.get(&h.multiplier) else {
            return Some(format!("no E₂ products by {} to bound the indeterminacy", h.multiplier));
        };
        let (n, s) = (h.source.n, h.source.s + 1);
        let Some(rows) = m.rows(n, s) else {
            return Some(format!("{} · E₂({n}, {s}) unknown", h.multiplier));
        };
        let entry = self.page.get(h.target.n, h.target.s);
        for r in rows {
            if !r.is_zero() && !entry.is_some_and(|e| e.is_boundary(r)) {
                return Some(format!("target of {h} has indeterminacy {}", r));
            }
        }
        None
    }

    fn status(&self, d: &Differential, steps: [&Step; 2], unique: bool) -> Status {
        if !unique {
            return Status::Candidate("division is not unique".into());
        }
        for s in steps {
            if let Some(why) = self.hidden_ambiguity(s) {
                return Status::Candidate(why);
            }
        }
        match self.page.survives(&d.source) {
            Some(true) => {}
            Some(false) => return Status::Candidate("source does not survive to E₃".into()),
            None => return Status::Candidate("source outside the computed page".into()),
        }
        match self.page.get(d.target.n, d.target.s) {
            Some(e) if e.is_boundary(&d.target.vector) => Status::Candidate("target is a d₂ boundary".into()),
            Some(_) => Status::Definite,
            None => Status::Candidate("target outside the computed page".into()),
        }
    }
}

/// Applies the generalized Leibniz rule in both directions to every known
/// differential and every multiplier of `table` or `exts`, using at least
/// one hidden extension each time. A differential from a jump-`j`
/// α-extension of `x` to a jump-`j'` α-extension of `d_r x` has length
/// `r + j' - j`. Only differentials of length ≥ 2 with nonzero target are
/// reported; duplicates are dropped.
pub fn leibniz_propagate(
    known: &[Differential],
    exts: &[HiddenExtension],
    table: &ProductTable,
    page: &PageData,
) -> Vec<DerivedDifferential> {
    let ctx = Ctx { table, exts, page };
    let mut out: Vec<DerivedDifferential> = Vec::new();
    let mut push = |d: Differential, provenance: Provenance, unique: bool| {
        if d.target.is_zero() || d.r < 2 {
            return;
        }
        if out.iter().any(|o| o.differential == d) {
            return;
        }
        let status = ctx.status(&d, [&provenance.source_step, &provenance.target_step], unique);
        out.push(DerivedDifferential { differential: d, provenance, status });
    };
    for name in ctx.names() {
        for k in known {
            if let (Some(sx), Some(sy)) = (ctx.forward(&name, &k.source), ctx.forward(&name, &k.target)) {
                if sx.jump() + sy.jump() > 0 {
                    if let Some(r) = (k.r + sy.jump()).checked_sub(sx.jump()) {
                        let d = Differential::new(r, sx.to().clone(), sy.to().clone());
                        push(
                            d,
                            Provenance { rule: Rule::Multiply, known: k.clone(), source_step: sx, target_step: sy },
                            true,
                        );
                    }
                }
            }
            for (sx, ux) in ctx.backward(&name, &k.source) {
                for (sy, uy) in ctx.backward(&name, &k.target) {
                    if sx.jump() + sy.jump() == 0 {
                        continue;
                    }
                    let Some(r) = (k.r + sx.jump()).checked_sub(sy.jump()) else { continue };
                    if sx.from().n - 1 != sy.from().n || sx.from().s + r != sy.from().s {
                        continue;
                    }
                    let d = Differential::new(r, sx.from().clone(), sy.from().clone());
                    let p =
                        Provenance { rule: Rule::Divide, known: k.clone(), source_step: sx.clone(), target_step: sy };
                    push(d, p, ux && uy);
                }
            }
        }
    }
    out
}
