//! Timing logs: one record per generator of the secondary resolution, timing
//! the parallel step (composite and A-function terms) of its `h_τ`.
//!
//! ```text
//! # n s t idx wall_ns cpu_ns
//! 14 3 17 0 48211 47903
//! ```

use std::collections::BTreeMap;
use std::io::{self, Write};

use secondary_lift::GenTiming;

pub const HEADER: &str = "# n s t idx wall_ns cpu_ns";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TimingRecord {
    pub n: i32,
    pub s: u32,
    pub t: i32,
    pub idx: usize,
    pub wall_ns: u64,
    pub cpu_ns: u64,
}

impl From<&GenTiming> for TimingRecord {
    fn from(g: &GenTiming) -> Self {
        TimingRecord {
            n: g.t - g.s as i32,
            s: g.s,
            t: g.t,
            idx: g.idx,
            wall_ns: g.wall.as_nanos() as u64,
            cpu_ns: g.cpu.as_nanos() as u64,
        }
    }
}

pub fn write_log(w: &mut impl Write, timings: &[GenTiming]) -> io::Result<()> {
    writeln!(w, "{HEADER}")?;
    for g in timings {
        let r = TimingRecord::from(g);
        writeln!(w, "{} {} {} {} {} {}", r.n, r.s, r.t, r.idx, r.wall_ns, r.cpu_ns)?;
    }
    Ok(())
}

pub fn parse_log(text: &str) -> Result<Vec<TimingRecord>, String> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        let bad = || format!("line {}: malformed timing record {line:?}", k + 1);
        if f.len() != 6 {
            return Err(bad());
        }
        out.push(TimingRecord {
            n: f[0].parse().map_err(|_| bad())?,
            s: f[1].parse().map_err(|_| bad())?,
            t: f[2].parse().map_err(|_| bad())?,
            idx: f[3].parse().map_err(|_| bad())?,
            wall_ns: f[4].parse().map_err(|_| bad())?,
            cpu_ns: f[5].parse().map_err(|_| bad())?,
        });
    }
    Ok(out)
}

/// Total CPU time per bidegree `(n, s)`.
pub fn bidegree_totals(records: &[TimingRecord]) -> BTreeMap<(i32, u32), u64> {
    let mut out = BTreeMap::new();
    for r in records {
        *out.entry((r.n, r.s)).or_insert(0) += r.cpu_ns;
    }
    out
}

/// The slowest generator of each stem, by CPU time.
pub fn stem_maxima(records: &[TimingRecord]) -> BTreeMap<i32, TimingRecord> {
    let mut out: BTreeMap<i32, TimingRecord> = BTreeMap::new();
    for r in records {
        let e = out.entry(r.n).or_insert(*r);
        if r.cpu_ns > e.cpu_ns {
            *e = *r;
        }
    }
    out
}
