use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use fp_linalg::{FMatrix, FVector, Solver};

use crate::leibniz::Differential;
use crate::page::PageData;
use crate::table::ProductTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartKind {
    E2,
    E3,
}

const CELL: i32 = 24;
const MARGIN: i32 = 30;
const STRUCTURE: [(&str, i32, &str); 3] = [("h_0", 0, "#444"), ("h_1", 1, "#1f77b4"), ("h_2", 3, "#2ca02c")];

/// The basis vectors drawn as dots in one bidegree.
fn dots(page: &PageData, kind: ChartKind, n: i32, s: u32) -> Vec<FVector> {
    let Some(e) = page.get(n, s) else { return Vec::new() };
    match kind {
        ChartKind::E2 => (0..e.e2_dim).map(|i| FVector::unit(e.e2_dim, i)).collect(),
        ChartKind::E3 => e.e3_basis.clone(),
    }
}

/// Coordinates of `v` in the drawn basis, modulo the d₂ image on E₃.
fn coordinates(page: &PageData, kind: ChartKind, n: i32, s: u32, v: &FVector) -> Option<Vec<usize>> {
    let basis = dots(page, kind, n, s);
    match kind {
        ChartKind::E2 => Some(v.iter_ones().collect()),
        ChartKind::E3 => {
            let e = page.get(n, s)?;
            let rows = [basis.clone(), e.image.clone()].concat();
            if rows.is_empty() {
                return v.is_zero().then(Vec::new);
            }
            let x = Solver::new(&FMatrix::from_rows(v.len(), rows)).solve(v)?;
            Some(x.iter_ones().filter(|&i| i < basis.len()).collect())
        }
    }
}

/// A deterministic SVG chart: one dot per basis element, ordered
/// left-to-right within a bidegree; h₀, h₁, h₂ structure lines from
/// `table`; one arrow per differential between the first dots of source and
/// target.
pub fn render_chart(page: &PageData, kind: ChartKind, table: Option<&ProductTable>, diffs: &[Differential]) -> String {
    let max_n = page.entries.keys().map(|k| k.0).max().unwrap_or(0);
    let max_s = page.entries.keys().map(|k| k.1 as i32).max().unwrap_or(0);
    let (w, h) = (2 * MARGIN + (max_n + 1) * CELL, 2 * MARGIN + (max_s + 1) * CELL);
    let pos = |n: i32, s: u32, i: usize, k: usize| {
        let dx = (2 * i as i32 - (k as i32 - 1)) * 3;
        (MARGIN + n * CELL + CELL / 2 + dx, h - MARGIN - s as i32 * CELL - CELL / 2)
    };
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let title = match kind {
        ChartKind::E2 => "E2",
        ChartKind::E3 => "E3",
    };
    let _ = writeln!(out, r#"<title>{title}</title>"#);
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    for n in (0..=max_n).step_by(4) {
        let x = MARGIN + n * CELL + CELL / 2;
        let _ = writeln!(out, r#"<text x="{x}" y="{}" font-size="9" text-anchor="middle">{n}</text>"#, h - MARGIN / 3);
    }
    for s in (0..=max_s).step_by(2) {
        let y = h - MARGIN - s * CELL - CELL / 2;
        let _ = writeln!(out, r#"<text x="{}" y="{y}" font-size="9" text-anchor="end">{s}</text>"#, MARGIN - 4);
    }
    let drawn: BTreeMap<(i32, u32), Vec<FVector>> =
        page.entries.keys().map(|&(n, s)| ((n, s), dots(page, kind, n, s))).collect();
    if let Some(table) = table {
        for (name, dn, colour) in STRUCTURE {
            let Some(m) = table.get(name) else { continue };
            for (&(n, s), basis) in &drawn {
                for (i, b) in basis.iter().enumerate() {
                    let Some(p) = m.multiply(&resolution::ExtClass::new(n, s, b.clone())) else { continue };
                    let Some(targets) = coordinates(page, kind, p.n, p.s, &p.vector) else { continue };
                    let k_t = drawn.get(&(p.n, p.s)).map_or(0, Vec::len);
                    for j in targets {
                        let (x1, y1) = pos(n, s, i, basis.len());
                        let (x2, y2) = pos(n + dn, s + 1, j, k_t);
                        let _ = writeln!(
                            out,
                            r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{colour}" stroke-width="1"/>"#
                        );
                    }
                }
            }
        }
    }
    for d in diffs {
        let (Some(i), Some(j)) = (d.source.vector.iter_ones().next(), d.target.vector.iter_ones().next()) else {
            continue;
        };
        let ks = drawn.get(&(d.source.n, d.source.s)).map_or(0, Vec::len);
        let kt = drawn.get(&(d.target.n, d.target.s)).map_or(0, Vec::len);
        if kind == ChartKind::E3 && (ks == 0 || kt == 0) {
            continue;
        }
        let (x1, y1) = pos(d.source.n, d.source.s, i.min(ks.saturating_sub(1)), ks.max(1));
        let (x2, y2) = pos(d.target.n, d.target.s, j.min(kt.saturating_sub(1)), kt.max(1));
        let _ = writeln!(
            out,
            r##"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#d62728" stroke-width="1"><title>d_{}</title></line>"##,
            d.r
        );
    }
    for (&(n, s), basis) in &drawn {
        for i in 0..basis.len() {
            let (x, y) = pos(n, s, i, basis.len());
            let _ = writeln!(
                out,
                r#"<circle cx="{x}" cy="{y}" r="2.5" fill="black"><title>x_({n}, {s}, {i})</title></circle>"#
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

pub fn emit_chart(
    page: &PageData,
    kind: ChartKind,
    table: Option<&ProductTable>,
    diffs: &[Differential],
    path: impl AsRef<Path>,
) -> std::io::Result<()> {
    std::fs::write(path, render_chart(page, kind, table, diffs))
}
