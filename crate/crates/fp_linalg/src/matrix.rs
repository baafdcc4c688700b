use std::fmt;

use crate::FVector;

/// A dense GF(2) matrix stored as a list of bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FMatrix {
    cols: usize,
    rows: Vec<FVector>,
}

impl FMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self { cols, rows: vec![FVector::new(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self { cols: n, rows: (0..n).map(|i| FVector::unit(n, i)).collect() }
    }

    pub fn from_rows(cols: usize, rows: Vec<FVector>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length does not match column count");
        }
        Self { cols, rows }
    }

    /// Convenience constructor from 0/1 rows. Needs at least one row to infer
    /// the width; use [`FMatrix::new`] for empty matrices.
    pub fn from_bits(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| FVector::from_bits(r)).collect())
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &FVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[FVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<FVector> {
        self.rows
    }

    pub fn push_row(&mut self, row: FVector) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v)
    }

    /// The row vector `x · self`.
    pub fn apply(&self, x: &FVector) -> FVector {
        assert_eq!(x.len(), self.rows.len(), "vector length must equal row count");
        let mut out = FVector::new(self.cols);
        for i in x.iter_ones() {
            out.add_assign(&self.rows[i]);
        }
        out
    }

    /// The product `self · other`.
    pub fn mul(&self, other: &FMatrix) -> FMatrix {
        assert_eq!(self.cols, other.num_rows());
        FMatrix { cols: other.cols, rows: self.rows.iter().map(|r| other.apply(r)).collect() }
    }

    pub fn transpose(&self) -> FMatrix {
        let mut t = FMatrix::new(self.cols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter_ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(FVector::is_zero)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        eliminate(&mut rows, self.cols).len()
    }
}

impl fmt::Display for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Reduces `rows` in place to reduced row echelon form with respect to the
/// first `ncols` columns (rows may be wider, e.g. augmented). Pivot rows end up
/// first, in pivot order; the returned list holds the pivot columns.
pub(crate) fn eliminate(rows: &mut [FVector], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(rank, p);
        let (before, rest) = rows.split_at_mut(rank);
        let (pivot, after) = rest.split_first_mut().unwrap();
        for r in before.iter_mut().chain(after.iter_mut()) {
            if r.get(col) {
                r.add_assign(pivot);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    pivots
}

/// The reduced row echelon form of `m` (zero rows last) and its pivot columns.
pub fn row_reduce(m: &FMatrix) -> (FMatrix, Vec<usize>) {
    let mut rows = m.rows.clone();
    let pivots = eliminate(&mut rows, m.cols);
    (FMatrix { cols: m.cols, rows }, pivots)
}
