//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the test harness. Exits nonzero if a criterion outside
//! `KNOWN_FAILURES` fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use cli_io::run;
use cli_io::session::{self, RunConfig};
use cli_io::timing::{parse_log, stem_maxima, write_log};
use cli_io::CliError;
use fp_linalg::{FMatrix, FVector, Solver};
use homotopy_lift::{indeterminacy, ordinary_massey, yoneda_product, ChainMap, MasseyHomotopy, SecondaryChainMap};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use rayon::prelude::*;
use resolution::{ExtClass, Resolution};
use secondary_algebra::{a_function, b0_product, reduce_pi, sigma_b, y_degree, BZeroElt};
use secondary_lift::{carry, lift_sum, SecondaryResolution, SecondaryValue};
use sseq_engine::{D2Data, Status};
use steenrod_milnor::{milnor_basis, milnor_product, MilnorElt, ModulePresentation};

const N: i32 = 40;
const S: u32 = 20;
/// Wall-clock limits.
const RESOLUTION_LIMIT: Duration = Duration::from_secs(60);
const D2_LIMIT: Duration = Duration::from_secs(30 * 60);
/// Criteria expected to fail; see the README.
const KNOWN_FAILURES: [u32; 1] = [3];

/// Bidegrees of the named classes in stems ≤ 39.
const NAMED: [(i32, u32); 47] = [
    (0, 1),
    (1, 1),
    (3, 1),
    (7, 1),
    (8, 3),
    (9, 5),
    (11, 5),
    (14, 4),
    (15, 2),
    (16, 2),
    (16, 7),
    (17, 9),
    (18, 2),
    (19, 3),
    (19, 9),
    (20, 4),
    (22, 8),
    (23, 4),
    (23, 9),
    (24, 11),
    (25, 13),
    (27, 13),
    (30, 2),
    (30, 6),
    (30, 12),
    (31, 4),
    (31, 5),
    (31, 8),
    (32, 2),
    (32, 4),
    (32, 6),
    (32, 15),
    (33, 4),
    (33, 17),
    (34, 2),
    (34, 8),
    (35, 17),
    (36, 6),
    (37, 5),
    (37, 8),
    (38, 2),
    (38, 4),
    (38, 16),
    (39, 4),
    (39, 9),
    (39, 12),
    (39, 17),
];

/// Sources of the nonzero d₂ of the classical chart in stems ≤ 35, each of rank one.
const CHART_D2: [(i32, u32); 23] = [
    (15, 1),
    (17, 4),
    (18, 4),
    (18, 5),
    (23, 7),
    (23, 8),
    (25, 8),
    (26, 7),
    (26, 8),
    (26, 9),
    (29, 7),
    (29, 8),
    (31, 1),
    (31, 2),
    (31, 3),
    (32, 7),
    (32, 8),
    (33, 12),
    (34, 11),
    (34, 12),
    (34, 13),
    (35, 7),
    (35, 8),
];

type Failures = Vec<String>;

macro_rules! check {
    ($fails:expr, $cond:expr, $($msg:tt)+) => {
        if !$cond {
            $fails.push(format!($($msg)+));
        }
    };
}

struct Ctx {
    sec: Arc<SecondaryResolution>,
    resolve_time: Duration,
    d2_time: Duration,
}

impl Ctx {
    fn res(&self) -> &Arc<Resolution> {
        self.sec.resolution()
    }

    fn basis(&self, n: i32, s: u32, i: usize) -> ExtClass {
        ExtClass::basis(self.res(), n, s, i).unwrap()
    }

    fn classes(&self, n: i32, s: u32) -> Vec<ExtClass> {
        (0..self.dim(n, s)).map(|i| self.basis(n, s, i)).collect()
    }

    fn dim(&self, n: i32, s: u32) -> usize {
        self.res().num_gens(s, n + s as i32).unwrap()
    }

    fn mul(&self, j: u32, x: &ExtClass) -> ExtClass {
        self.res().filtration_one_product(j, x).unwrap()
    }

    fn h(&self, j: u32) -> ExtClass {
        self.basis((1 << j) - 1, 1, 0)
    }

    fn lift(&self, x: ExtClass) -> SecondaryValue {
        SecondaryValue::lift(self.res(), x).unwrap()
    }

    fn tau(&self, y: ExtClass) -> SecondaryValue {
        SecondaryValue::tau(self.res(), y).unwrap()
    }

    fn map(&self, v: SecondaryValue) -> SecondaryChainMap {
        SecondaryChainMap::lift(self.sec.clone(), self.sec.clone(), v).unwrap()
    }

    fn d2(&self, x: &ExtClass) -> ExtClass {
        self.sec.d2(x).unwrap()
    }
}

fn setup() -> Ctx {
    let start = Instant::now();
    let mut res = Resolution::new(ModulePresentation::sphere());
    res.extend(N, S).unwrap();
    let resolve_time = start.elapsed();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let start = Instant::now();
    let mut sec = SecondaryResolution::new(Arc::new(res));
    pool.install(|| sec.compute()).unwrap();
    let d2_time = start.elapsed();
    Ctx { sec: Arc::new(sec), resolve_time, d2_time }
}

fn in_span(x: &ExtClass, span: &[ExtClass]) -> bool {
    x.is_zero()
        || Solver::new(&FMatrix::from_rows(x.vector.len(), span.iter().map(|v| v.vector.clone()).collect()))
            .in_image(&x.vector)
}

fn criterion_1(c: &Ctx) -> Failures {
    let mut f = Failures::new();
    let r = c.res();
    check!(f, c.resolve_time < RESOLUTION_LIMIT, "resolution took {:?}", c.resolve_time);
    for t in 1..=N + 1 {
        let want = usize::from(t.count_ones() == 1);
        check!(f, r.num_gens(1, t).unwrap() == want, "dim Ext^(1,{t}) = {}", r.num_gens(1, t).unwrap());
    }
    for (n, s) in NAMED {
        check!(f, c.dim(n, s) > 0, "Ext at ({n}, {s}) is zero");
    }
    for s in 0..r.num_stages() {
        let Some(max_t) = r.max_t(s) else { continue };
        for g in r.all_gens(s) {
            let d = r.boundary(s, g);
            check!(f, !d.is_zero(), "∂{g} = 0");
            if s > 0 {
                check!(f, d.terms().iter().all(|(h, _)| h.t < g.t), "∂{g} is not minimal");
                check!(f, r.apply_boundary(s - 1, d).is_zero(), "∂∂{g} ≠ 0");
            }
        }
        for t in r.module().min_degree()..=max_t {
            let im = r.solver(s, t).unwrap().rank();
            let ker = if s == 0 {
                r.target_layout(s, t).total
            } else if r.is_computed(s - 1, t) {
                r.solver(s - 1, t).unwrap().kernel_rows().len()
            } else {
                continue;
            };
            check!(f, im == ker, "not exact at s={s}, t={t}");
        }
    }
    f
}

fn criterion_2(c: &Ctx) -> Failures {
    let mut f = Failures::new();
    check!(f, c.d2_time < D2_LIMIT, "single-threaded d₂ took {:?}", c.d2_time);
    let (h4, h5) = (c.h(4), c.h(5));
    let h0h3sq = c.mul(0, &c.mul(3, &c.h(3)));
    check!(f, !h0h3sq.is_zero() && c.d2(&h4) == h0h3sq, "d₂(h₄) ≠ h₀h₃²");
    let (d0, e0, k) = (c.basis(14, 4, 0), c.basis(17, 4, 0), c.basis(29, 7, 0));
    check!(f, c.dim(14, 4) == 1 && c.dim(17, 4) == 1 && c.dim(29, 7) == 1, "d₀, e₀, k not unique");
    check!(f, c.d2(&e0) == c.mul(1, &c.mul(1, &d0)), "d₂(e₀) ≠ h₁²d₀");
    let d0sq = yoneda_product(c.res(), &d0, &d0).unwrap();
    check!(f, !d0sq.is_zero() && c.d2(&k) == c.mul(0, &d0sq), "d₂(k) ≠ h₀d₀²");
    let h4sq = c.mul(4, &h4);
    let h0h5 = c.mul(0, &h5);
    let h0sq_h4sq = c.mul(0, &c.mul(0, &h4sq));
    check!(f, !h0sq_h4sq.is_zero() && c.d2(&h0h5) == h0sq_h4sq, "d₂(h₀h₅) ≠ h₀²h₄²");
    let h0cu_h4sq = c.mul(0, &h0sq_h4sq);
    check!(f, !h0cu_h4sq.is_zero() && c.d2(&c.mul(0, &h0h5)) == h0cu_h4sq, "d₂(h₀²h₅) ≠ h₀³h₄²");
    let (c0, ph1, ph2, g) = (c.basis(8, 3, 0), c.basis(9, 5, 0), c.basis(11, 5, 0), c.basis(20, 4, 0));
    let unique = [(8, 3), (9, 5), (11, 5), (20, 4)].iter().all(|&(n, s)| c.dim(n, s) == 1);
    let supports = [c.mul(1, &c0), c.mul(1, &ph1), c.mul(0, &ph2), c.mul(0, &g)].iter().all(|x| !x.is_zero());
    check!(f, unique && supports, "c₀, Ph₁, Ph₂ or g misidentified");
    for (name, x) in
        [("h₁", c.h(1)), ("h₂", c.h(2)), ("h₃", c.h(3)), ("c₀", c0), ("Ph₁", ph1), ("Ph₂", ph2), ("d₀", d0), ("g", g)]
    {
        check!(f, c.d2(&x).is_zero(), "d₂({name}) ≠ 0");
    }
    let data = D2Data::from_secondary(&c.sec, 35, S).unwrap();
    let chart: BTreeSet<_> = CHART_D2.into_iter().collect();
    for (&(n, s), rows) in &data.d2 {
        let cols = data.dim(n - 1, s + 2).unwrap_or(0);
        let rank = FMatrix::from_rows(cols, rows.clone()).rank();
        let want = usize::from(chart.contains(&(n, s)));
        check!(f, rank == want, "rank of d₂ on ({n}, {s}) is {rank}, chart has {want}");
    }
    for &(n, s) in &chart {
        check!(f, data.d2.contains_key(&(n, s)), "d₂ on ({n}, {s}) not computed");
    }
    f
}

fn criterion_3(c: &Ctx) -> Failures {
    let mut f = Failures::new();
    let h = |j| c.map(c.lift(c.h(j)));
    let h1sq_h3 = c.mul(1, &c.mul(1, &c.h(3)));
    let h2 = h(2);
    let cube = h2.product(&h2.product(&c.lift(c.h(2))).unwrap()).unwrap();
    check!(f, cube == c.lift(h1sq_h3.clone()), "[h₂]³ = {cube}");
    let h1 = h(1);
    let x = h1.product(&h1.product(&c.lift(c.h(3))).unwrap()).unwrap();
    let h1c0 = c.mul(1, &c.basis(8, 3, 0));
    check!(f, x == SecondaryValue::new(h1sq_h3, h1c0), "[h₁]²[h₃] = {x}");
    let d0 = c.map(c.lift(c.basis(14, 4, 0)));
    let x = d0.product(&c.lift(c.mul(0, &c.h(4)))).unwrap();
    check!(f, x == c.tau(c.basis(29, 7, 0)), "[d₀][h₀h₄] = {x}");
    let h0 = h(0);
    let h0sq_h4sq = c.mul(0, &c.mul(0, &c.mul(4, &c.h(4))));
    let h0cu_h4sq = c.mul(0, &h0sq_h4sq);
    let h0_delta_h2sq = c.mul(0, &c.basis(30, 6, 0));
    let once = h0.product(&c.lift(h0sq_h4sq.clone())).unwrap();
    check!(f, once == c.lift(h0cu_h4sq.clone()), "[h₀][h₀²h₄²] = {once}, not [h₀³h₄²]");
    let next = h0.product(&c.lift(h0cu_h4sq)).unwrap();
    check!(f, next == c.tau(h0_delta_h2sq.clone()), "[h₀][h₀³h₄²] = {next}");
    // Independent of the choice of lifts: [h₀]²[h₀²h₄²] = τh₀Δh₂².
    let twice = h0.product(&once).unwrap();
    if twice == c.tau(h0_delta_h2sq) {
        println!("    lift-independent [h₀]²[h₀²h₄²] = τh₀Δh₂² holds");
    } else {
        f.push(format!("[h₀]²[h₀²h₄²] = {twice}"));
    }
    f
}

fn criterion_4(c: &Ctx) -> Failures {
    let mut f = Failures::new();
    let h0_4 = Arc::new(c.map(c.lift(c.basis(0, 4, 0))));
    let m = MasseyHomotopy::new(Arc::new(c.map(c.lift(c.h(3)))), h0_4).unwrap();
    match m.bracket(&c.h(1)) {
        Ok(Some(v)) => check!(f, v.value.e == c.basis(9, 5, 0), "<h₁, h₀⁴, h₃> = {} mod τ", v.value.e),
        other => f.push(format!("<h₁, h₀⁴, h₃> undefined: {other:?}")),
    }
    // Every triple of surviving basis classes with bracket in stems ≤ 20.
    const MAX: i32 = 20;
    let mut classes = Vec::new();
    for n in 0..=MAX {
        for s in 1..=S {
            if c.sec.has_d2(n, s) {
                classes.extend(c.classes(n, s).into_iter().filter(|x| c.d2(x).is_zero()));
            }
        }
    }
    let maps: Vec<Arc<SecondaryChainMap>> = classes.iter().map(|x| Arc::new(c.map(c.lift(x.clone())))).collect();
    let plain: Vec<ChainMap> =
        classes.iter().map(|x| ChainMap::lift(c.res().clone(), c.res().clone(), x.clone()).unwrap()).collect();
    let per_a: Vec<(Failures, usize)> = classes
        .par_iter()
        .enumerate()
        .map(|(ia, a)| {
            let mut f = Failures::new();
            let mut checked = 0;
            for (ib, b) in classes.iter().enumerate() {
                if a.n + b.n + 1 > MAX {
                    continue;
                }
                let Ok(m) = MasseyHomotopy::new(maps[ia].clone(), maps[ib].clone()) else {
                    continue;
                };
                for x in &classes {
                    if a.n + b.n + x.n + 1 > MAX || a.s + b.s + x.s > S {
                        continue;
                    }
                    let v = match m.bracket(x) {
                        Ok(Some(v)) => v.value.e,
                        Ok(None) => continue,
                        Err(e) => {
                            f.push(format!("<{x}, {b}, {a}>: {e}"));
                            continue;
                        }
                    };
                    let classical = match ordinary_massey(&plain[ia], &plain[ib], x) {
                        Ok(Some(y)) => y,
                        other => {
                            f.push(format!("<{x}, {b}, {a}>: oracle gives {other:?}"));
                            continue;
                        }
                    };
                    let mut diff = classical;
                    diff.vector.add_assign(&v.vector);
                    let span = indeterminacy(&plain[ia], b, x).unwrap();
                    check!(f, in_span(&diff, &span), "<{x}, {b}, {a}> = {v} disagrees with the oracle");
                    checked += 1;
                }
            }
            (f, checked)
        })
        .collect();
    let mut checked = 0;
    for (fa, n) in per_a {
        f.extend(fa);
        checked += n;
    }
    check!(f, checked >= 100, "only {checked} brackets compared");
    println!("    {checked} brackets compared with the oracle");
    f
}

fn criterion_5(c: &Ctx) -> Failures {
    let mut f = Failures::new();
    let mut multipliers = run::standard_multipliers(&c.sec).unwrap();
    multipliers.push(("d_0".into(), c.lift(c.basis(14, 4, 0))));
    let prop = run::propagate(&c.sec, &multipliers, 34, 12).unwrap();
    let h0h4 = c.mul(0, &c.h(4));
    let h0d0 = c.mul(0, &c.basis(14, 4, 0));
    let h0cu_h5 = c.mul(0, &c.mul(0, &c.mul(0, &c.h(5))));
    let h0_delta_h2sq = c.mul(0, &c.basis(30, 6, 0));
    for (name, x, y) in [("d₃(h₀h₄) = h₀d₀", h0h4, h0d0), ("d₃(h₀³h₅) = h₀Δh₂²", h0cu_h5, h0_delta_h2sq)]
    {
        let found = prop.derived.iter().find(|d| d.source() == &x && d.r() == 3 && d.target() == &y);
        match found {
            Some(d) => check!(f, d.status == Status::Definite, "{name} only as a candidate"),
            None => f.push(format!("{name} not derived")),
        }
    }
    f
}

fn milnor_element(runner: &mut TestRunner, d: i32) -> MilnorElt {
    let basis = milnor_basis(d);
    let bits = proptest::collection::vec(proptest::bool::ANY, basis.len()).new_tree(runner).unwrap().current();
    MilnorElt::from_terms(d, basis.into_iter().zip(bits).filter(|(_, b)| *b).map(|(r, _)| r))
}

fn b0_basis(d: i32) -> Vec<BZeroElt> {
    let mut out: Vec<BZeroElt> = milnor_basis(d).into_iter().map(|r| BZeroElt::sq(r, 1)).collect();
    for l in 1..8u32 {
        for k in 0..l {
            if y_degree(k, l) <= d {
                out.extend(milnor_basis(d - y_degree(k, l)).into_iter().map(|r| BZeroElt::y(k, l, r)));
            }
        }
    }
    out
}

fn b0_element(runner: &mut TestRunner, d: i32, ker_pi: bool) -> BZeroElt {
    let basis = b0_basis(d);
    let coeffs = proptest::collection::vec(0u8..4, basis.len()).new_tree(runner).unwrap().current();
    let mut out = BZeroElt::zero(d);
    for (e, k) in basis.iter().zip(coeffs) {
        let e = if ker_pi && !e.in_ker_pi() { e.scale(2) } else { e.clone() };
        out.add(&e.scale(k));
    }
    out
}

fn degrees(runner: &mut TestRunner, max: i32) -> (i32, i32, i32) {
    let v = proptest::collection::vec(0..=max, 3).new_tree(runner).unwrap().current();
    let a = v[0];
    let b = v[1] % (max - a + 1);
    (a, b, v[2] % (max - a - b + 1))
}

fn criterion_6(c: &Ctx) -> Failures {
    let mut f = Failures::new();
    let mut runner = TestRunner::deterministic();
    // Associativity: exhaustive on basis elements in total degree ≤ 10, random ≤ 20.
    for total in 0..=10 {
        for da in 0..=total {
            for db in 0..=total - da {
                let dc = total - da - db;
                for a in b0_basis(da) {
                    for b in b0_basis(db) {
                        let ab = b0_product(&a, &b);
                        check!(f, reduce_pi(&ab) == milnor_product(&reduce_pi(&a), &reduce_pi(&b)), "π({a}·{b})");
                        for x in b0_basis(dc) {
                            check!(
                                f,
                                b0_product(&ab, &x) == b0_product(&a, &b0_product(&b, &x)),
                                "B₀: ({a})({b})({x})"
                            );
                        }
                    }
                }
            }
        }
    }
    for _ in 0..200 {
        let (da, db, dc) = degrees(&mut runner, 20);
        let (a, b, x) =
            (milnor_element(&mut runner, da), milnor_element(&mut runner, db), milnor_element(&mut runner, dc));
        check!(
            f,
            milnor_product(&milnor_product(&a, &b), &x) == milnor_product(&a, &milnor_product(&b, &x)),
            "Milnor: ({a})({b})({x})"
        );
        let (a, b, x) = (
            b0_element(&mut runner, da, false),
            b0_element(&mut runner, db, false),
            b0_element(&mut runner, dc, false),
        );
        check!(f, b0_product(&b0_product(&a, &b), &x) == b0_product(&a, &b0_product(&b, &x)), "B₀: ({a})({b})({x})");
    }
    // A-function: cocycle identity for any lift of b, and A(-, 2) is a derivation.
    for _ in 0..150 {
        let (da, db, dr) = degrees(&mut runner, 18);
        let (a, b) = (milnor_element(&mut runner, da), milnor_element(&mut runner, db));
        let r = b0_element(&mut runner, dr, true);
        let lhs = a_function(&milnor_product(&a, &b), &r).unwrap().value;
        let ar = a_function(&b, &r).unwrap().value;
        let mut other = sigma_b(&b);
        other.add(&b0_element(&mut runner, db, true));
        for lift in [sigma_b(&b), other] {
            let mut rhs = a_function(&a, &b0_product(&lift, &r)).unwrap().value;
            rhs.add(&milnor_product(&a, &ar));
            check!(f, lhs == rhs, "A cocycle: a={a}, b={b}, r={r}");
        }
        let two = BZeroElt::two();
        let lhs = a_function(&milnor_product(&a, &b), &two).unwrap().value;
        let mut rhs = milnor_product(&a_function(&a, &two).unwrap().value, &b);
        rhs.add(&milnor_product(&a, &a_function(&b, &two).unwrap().value));
        check!(f, lhs == rhs, "A(-, 2) derivation: a={a}, b={b}");
    }
    // d₂d₂ = 0 and d₂(h_j x) = h_j d₂(x) over the whole range.
    let mut dd = 0;
    for n in 0..=N {
        for s in 0..=S {
            if !c.sec.has_d2(n, s) {
                continue;
            }
            for x in c.classes(n, s) {
                let d = c.d2(&x);
                if c.sec.has_d2(n - 1, s + 2) {
                    check!(f, c.d2(&d).is_zero(), "d₂d₂{x} ≠ 0");
                    dd += 1;
                }
                for j in 0..3u32 {
                    if c.sec.has_d2(n + (1 << j) - 1, s + 1) {
                        check!(f, c.d2(&c.mul(j, &x)) == c.mul(j, &d), "d₂(h_{j}{x}) ≠ h_{j}d₂{x}");
                        let hj = c.h(j);
                        check!(
                            f,
                            yoneda_product(c.res(), &hj, &x).unwrap() == c.mul(j, &x),
                            "h_{j}·{x}: Yoneda ≠ Sq coefficient"
                        );
                    }
                }
            }
        }
    }
    check!(f, dd > 200, "only {dd} classes checked for d₂d₂ = 0");
    // The Ext part of every emitted product line is the Yoneda product.
    let mut lines = 0;
    for a in [c.h(0), c.h(1), c.h(2), c.h(3), c.basis(8, 3, 0), c.basis(14, 4, 0), c.basis(20, 4, 0)] {
        for l in run::product_lines(&c.sec, "a", a.clone(), N, S).unwrap() {
            let x = c.basis(l.x.n, l.x.s, l.x.i);
            let e = l.value.e.clone().unwrap_or_else(|| FVector::new(c.dim(a.n + x.n, a.s + x.s)));
            check!(
                f,
                yoneda_product(c.res(), &a, &x).unwrap().vector == e,
                "{a} · {x}: product line disagrees with Yoneda"
            );
            lines += 1;
        }
    }
    check!(f, lines > 300, "only {lines} product lines checked");
    // [x] + [y] = [x + y] + τh₀(x +̃ y).
    for (n, s) in [(0, 3), (20, 6), (23, 7), (30, 4), (32, 6), (38, 8)] {
        let dim = c.dim(n, s);
        for _ in 0..16 {
            let bits = proptest::collection::vec(0u8..2, 2 * dim).new_tree(&mut runner).unwrap().current();
            let x = ExtClass::new(n, s, FVector::from_bits(&bits[..dim]));
            let y = ExtClass::new(n, s, FVector::from_bits(&bits[dim..]));
            let sum = lift_sum(c.res(), &c.lift(x.clone()), &c.lift(y.clone())).unwrap();
            let mut xy = x.clone();
            xy.vector.add_assign(&y.vector);
            let want = SecondaryValue::new(xy, c.mul(0, &carry(&x, &y)));
            check!(f, sum == want, "[{x}] + [{y}] = {sum}");
        }
    }
    println!("    {dd} d₂d₂ checks, {lines} product lines");
    f
}

fn output(cfg: &RunConfig) -> Result<String, CliError> {
    let sec = session::secondary(cfg)?;
    let mut text: String = run::d2_lines(&sec, cfg.max_n, cfg.max_s)?.iter().map(|l| format!("{l}\n")).collect();
    let h1 = ExtClass::basis(sec.resolution(), 1, 1, 0)?;
    for l in run::product_lines(&sec, "h_1", h1, cfg.max_n, cfg.max_s)? {
        text += &format!("{l}\n");
    }
    Ok(text)
}

fn criterion_7() -> Failures {
    let mut f = Failures::new();
    let dir = tempfile::tempdir().unwrap();
    let direct = output(&RunConfig::new(30, 15)).unwrap();
    let mut cfg = RunConfig::new(30, 15);
    cfg.save_dir = Some(dir.path().to_path_buf());
    cfg.stop_after_stem = Some(17);
    check!(f, matches!(session::resolve(&cfg), Err(CliError::Interrupted(17))), "run did not stop after stem 17");
    cfg.stop_after_stem = None;
    let resumed = output(&cfg).unwrap();
    check!(f, resumed == direct, "resumed output differs from the uninterrupted run");
    let mut direct_res = Resolution::new(ModulePresentation::sphere());
    direct_res.extend(30, 15).unwrap();
    let mut saved = Vec::new();
    direct_res.write_to(&mut saved).unwrap();
    let checkpoint = std::fs::read(cfg.checkpoint_path(&ModulePresentation::sphere()).unwrap()).unwrap();
    check!(f, checkpoint == saved, "checkpoint differs from a direct resolution");
    f
}

fn criterion_8(c: &Ctx) -> Failures {
    println!("    NOT REPRODUCIBLE here: the 140-stem dataset, the multi-hour many-thread benchmark and its");
    println!("    per-10-stem growth fits, and the new differentials in stems 80-95. Checked instead: the");
    println!("    shape of the timing log below.");
    let mut f = Failures::new();
    let mut log = Vec::new();
    write_log(&mut log, c.sec.timings()).unwrap();
    let records = parse_log(std::str::from_utf8(&log).unwrap()).unwrap();
    let gens: usize = (2..c.res().num_stages()).map(|s| c.res().all_gens(s).len()).sum();
    check!(f, records.len() == gens, "{} timing records for {gens} generators", records.len());
    let mut range: BTreeMap<i32, (u32, u32)> = BTreeMap::new();
    for r in &records {
        let e = range.entry(r.n).or_insert((r.s, r.s));
        *e = (e.0.min(r.s), e.1.max(r.s));
    }
    // In each stem with enough filtrations, the slowest generator sits in the
    // lower half of the filtration range.
    let (mut stems, mut low) = (0, 0);
    for (n, slowest) in stem_maxima(&records) {
        let (lo, hi) = range[&n];
        if n < 14 || hi - lo < 4 {
            continue;
        }
        stems += 1;
        if slowest.s - lo <= (hi - lo) / 2 {
            low += 1;
        } else {
            println!("    stem {n}: slowest generator at s = {} of {lo}..={hi}", slowest.s);
        }
    }
    println!("    per-stem maximum in the lower half of the filtration range in {low} of {stems} stems");
    check!(f, stems >= 15 && low * 10 >= stems * 9, "maximum at low filtration in only {low} of {stems} stems");
    f
}

fn main() -> ExitCode {
    let start = Instant::now();
    let ctx = setup();
    println!("resolution n ≤ {N}, s ≤ {S}: {:.2?}; d₂ (one thread): {:.2?}", ctx.resolve_time, ctx.d2_time);
    let criteria: [(u32, &str, &dyn Fn() -> Failures); 8] = [
        (1, "resolution correctness", &|| criterion_1(&ctx)),
        (2, "d₂ regression", &|| criterion_2(&ctx)),
        (3, "product regression", &|| criterion_3(&ctx)),
        (4, "Massey regression", &|| criterion_4(&ctx)),
        (5, "propagation regression", &|| criterion_5(&ctx)),
        (6, "property suites", &|| criterion_6(&ctx)),
        (7, "determinism and persistence", &criterion_7),
        (8, "timing-log shape (desk-scale substitute)", &|| criterion_8(&ctx)),
    ];
    let mut unexpected = Vec::new();
    for (i, name, check) in criteria {
        let t = Instant::now();
        let fails = check();
        let verdict = if fails.is_empty() { "PASS" } else { "FAIL" };
        let known = if !fails.is_empty() && KNOWN_FAILURES.contains(&i) { " (known)" } else { "" };
        println!("criterion {i}: {verdict}{known} - {name} [{:.1?}]", t.elapsed());
        for m in fails.iter().take(10) {
            println!("    {m}");
        }
        if fails.len() > 10 {
            println!("    … {} more", fails.len() - 10);
        }
        if !fails.is_empty() && !KNOWN_FAILURES.contains(&i) {
            unexpected.push(i);
        }
    }
    println!("total {:.1?}", start.elapsed());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
