//! Milnor's product formula.
//!
//! `Sq(R) Sq(S) = Σ_X b(X) Sq(T(X))`, the sum over matrices `X = (x_ij)` with
//! `Σ_j 2^j x_ij = r_i` and `Σ_i x_ij = s_j`, where `t_n = Σ_{i+j=n} x_ij` and
//! `b(X) = Π_n t_n! / Π_{i+j=n} x_ij!`.

use std::sync::OnceLock;

use crate::MilnorProfile;

/// Calls `f(x, rows, cols)` for every admissible matrix; `x` is row-major of
/// shape `(rows + 1) × (cols + 1)` with `x[0]` unused.
fn for_each_matrix(r: &[u32], s: &[u32], mut f: impl FnMut(&[u32], usize, usize)) {
    let m = r.len();
    let n = s.len();
    let w = n + 1;
    let mut x = vec![0u32; (m + 1) * w];
    let mut row_rem: Vec<u32> = std::iter::once(0).chain(r.iter().copied()).collect();
    let mut col_rem: Vec<u32> = std::iter::once(0).chain(s.iter().copied()).collect();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        cell: usize,
        m: usize,
        n: usize,
        x: &mut [u32],
        row_rem: &mut [u32],
        col_rem: &mut [u32],
        f: &mut dyn FnMut(&[u32], usize, usize),
    ) {
        let w = n + 1;
        if cell == m * n {
            for i in 1..=m {
                x[i * w] = row_rem[i];
            }
            x[1..=n].copy_from_slice(&col_rem[1..=n]);
            f(x, m, n);
            return;
        }
        let i = cell / n + 1;
        let j = cell % n + 1;
        let max = (row_rem[i] >> j).min(col_rem[j]);
        for v in 0..=max {
            x[i * w + j] = v;
            row_rem[i] -= v << j;
            col_rem[j] -= v;
            rec(cell + 1, m, n, x, row_rem, col_rem, f);
            row_rem[i] += v << j;
            col_rem[j] += v;
        }
        x[i * w + j] = 0;
    }

    rec(0, m, n, &mut x, &mut row_rem, &mut col_rem, &mut f);
}

/// The diagonal sums `t_1, t_2, ...` of a matrix, or `None` if some diagonal
/// has overlapping binary digits (then `b(X)` is even).
fn diagonals_mod2(x: &[u32], m: usize, n: usize) -> Option<Vec<u32>> {
    let w = n + 1;
    let mut t = Vec::with_capacity(m + n);
    for k in 1..=(m + n) {
        let mut acc = 0u32;
        for i in k.saturating_sub(n)..=k.min(m) {
            let v = x[i * w + (k - i)];
            if acc & v != 0 {
                return None;
            }
            acc |= v;
        }
        t.push(acc);
    }
    Some(t)
}

const PASCAL_SIZE: usize = 256;

/// Binomial coefficients mod 4 from Pascal's rule.
fn pascal_mod4() -> &'static [[u8; PASCAL_SIZE]] {
    static TABLE: OnceLock<Vec<[u8; PASCAL_SIZE]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![[0u8; PASCAL_SIZE]; PASCAL_SIZE];
        for nn in 0..PASCAL_SIZE {
            t[nn][0] = 1;
            for k in 1..=nn {
                t[nn][k] = (t[nn - 1][k - 1] + t[nn - 1][k]) % 4;
            }
        }
        t
    })
}

/// `binom(n, k) mod 4`.
pub fn binomial_mod4(n: u32, k: u32) -> u8 {
    if k > n {
        return 0;
    }
    let (n, k) = (n as usize, k as usize);
    assert!(n < PASCAL_SIZE, "binomial argument {n} exceeds table");
    pascal_mod4()[n][k]
}

/// `b(X) mod 4` together with the diagonal sums.
fn coefficient_mod4(x: &[u32], m: usize, n: usize) -> (u8, Vec<u32>) {
    let w = n + 1;
    let mut c = 1u8;
    let mut t = Vec::with_capacity(m + n);
    for k in 1..=(m + n) {
        let mut sum = 0u32;
        for i in k.saturating_sub(n)..=k.min(m) {
            let v = x[i * w + (k - i)];
            sum += v;
            if c != 0 && v != 0 {
                c = (c * binomial_mod4(sum, v)) % 4;
            }
        }
        t.push(sum);
    }
    (c, t)
}

/// `Sq(R) Sq(S)` over GF(2): the profiles with odd coefficient.
pub fn product_terms_mod2(r: &MilnorProfile, s: &MilnorProfile) -> Vec<MilnorProfile> {
    if r.is_empty() {
        return vec![s.clone()];
    }
    if s.is_empty() {
        return vec![r.clone()];
    }
    let mut out = Vec::new();
    for_each_matrix(r.entries(), s.entries(), |x, m, n| {
        if let Some(t) = diagonals_mod2(x, m, n) {
            out.push(MilnorProfile::new(t));
        }
    });
    // Distinct matrices can share T(X); the GF(2) coefficient is the parity.
    out.sort();
    let mut dedup: Vec<MilnorProfile> = Vec::with_capacity(out.len());
    for p in out {
        if dedup.last() == Some(&p) {
            dedup.pop();
        } else {
            dedup.push(p);
        }
    }
    dedup
}

/// `Sq(R) Sq(S)` with coefficients `b(X)` reduced mod 4, as nonzero
/// `(profile, coefficient)` pairs sorted by profile.
pub fn product_terms_mod4(r: &MilnorProfile, s: &MilnorProfile) -> Vec<(MilnorProfile, u8)> {
    if r.is_empty() {
        return vec![(s.clone(), 1)];
    }
    if s.is_empty() {
        return vec![(r.clone(), 1)];
    }
    let mut out: Vec<(MilnorProfile, u8)> = Vec::new();
    for_each_matrix(r.entries(), s.entries(), |x, m, n| {
        let (c, t) = coefficient_mod4(x, m, n);
        if c != 0 {
            out.push((MilnorProfile::new(t), c));
        }
    });
    out.sort();
    let mut merged: Vec<(MilnorProfile, u8)> = Vec::with_capacity(out.len());
    for (p, c) in out {
        match merged.last_mut() {
            Some((q, d)) if *q == p => *d = (*d + c) % 4,
            _ => merged.push((p, c)),
        }
    }
    merged.retain(|(_, c)| *c != 0);
    merged
}
