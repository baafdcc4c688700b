use crate::matrix::eliminate;
use crate::{FMatrix, FVector};

/// A row-reduced matrix `M` together with the row operations that produced
/// it, so that equations `x · M = b` can be solved by one back-substitution.
///
/// Solutions are canonical: among all solutions, [`Solver::solve`] returns
/// the one vanishing on the pivot columns of the (reduced) kernel basis, so the
/// answer depends only on `M` and `b`, never on elimination order.
#[derive(Clone, Debug)]
pub struct Solver {
    rows: usize,
    cols: usize,
    /// Reduced rows of `M`, sorted by pivot column.
    image: Vec<FVector>,
    /// `combos[i] · M = image[i]`.
    combos: Vec<FVector>,
    pivots: Vec<usize>,
    /// Reduced row echelon basis of the kernel.
    kernel: Vec<FVector>,
    kernel_pivots: Vec<usize>,
}

impl Solver {
    pub fn new(m: &FMatrix) -> Self {
        let rows = m.num_rows();
        let cols = m.num_cols();
        let mut aug: Vec<FVector> = m
            .rows()
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut a = r.clone();
                a.resize(cols + rows);
                a.set(cols + i, true);
                a
            })
            .collect();
        let pivots = eliminate(&mut aug, cols);
        let rank = pivots.len();
        let mut image = Vec::with_capacity(rank);
        let mut combos = Vec::with_capacity(rank);
        for a in &aug[..rank] {
            image.push(a.slice(0, cols));
            combos.push(a.slice(cols, cols + rows));
        }
        let mut kernel: Vec<FVector> = aug[rank..].iter().map(|a| a.slice(cols, cols + rows)).collect();
        let kernel_pivots = eliminate(&mut kernel, rows);
        debug_assert_eq!(kernel_pivots.len(), kernel.len());
        Self { rows, cols, image, combos, pivots, kernel, kernel_pivots }
    }

    /// Number of rows of `M` (dimension of the domain).
    pub fn num_rows(&self) -> usize {
        self.rows
    }

    /// Number of columns of `M` (dimension of the codomain).
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The reduced row echelon basis of the row space of `M`.
    pub fn image(&self) -> &[FVector] {
        &self.image
    }

    /// Reduces `v` modulo the row space of `M`; the result is the canonical
    /// representative vanishing on all pivot columns.
    pub fn reduce(&self, v: &mut FVector) {
        assert_eq!(v.len(), self.cols, "dimension mismatch in reduce");
        for (row, &p) in self.image.iter().zip(&self.pivots) {
            if v.get(p) {
                v.add_assign(row);
            }
        }
    }

    pub fn in_image(&self, b: &FVector) -> bool {
        let mut v = b.clone();
        self.reduce(&mut v);
        v.is_zero()
    }

    /// Some `x` with `x · M = b`, or `None` if `b` is not in the row space.
    pub fn solve(&self, b: &FVector) -> Option<FVector> {
        assert_eq!(b.len(), self.cols, "dimension mismatch in solve");
        let mut rem = b.clone();
        let mut x = FVector::new(self.rows);
        for ((row, combo), &p) in self.image.iter().zip(&self.combos).zip(&self.pivots) {
            if rem.get(p) {
                rem.add_assign(row);
                x.add_assign(combo);
            }
        }
        if !rem.is_zero() {
            return None;
        }
        self.canonicalize(&mut x);
        Some(x)
    }

    fn canonicalize(&self, x: &mut FVector) {
        for (k, &p) in self.kernel.iter().zip(&self.kernel_pivots) {
            if x.get(p) {
                x.add_assign(k);
            }
        }
    }

    /// Basis of `{x : x · M = 0}` in reduced row echelon form.
    pub fn kernel_basis(&self) -> FMatrix {
        FMatrix::from_rows(self.rows, self.kernel.clone())
    }

    pub fn kernel_rows(&self) -> &[FVector] {
        &self.kernel
    }

    /// Appends rows to `M`, updating the reduction incrementally. The result
    /// is identical to building a fresh solver from the enlarged matrix.
    pub fn extend_rows(&mut self, new_rows: &[FVector]) {
        let old_rows = self.rows;
        self.rows += new_rows.len();
        for c in &mut self.combos {
            c.resize(self.rows);
        }
        for k in &mut self.kernel {
            k.resize(self.rows);
        }
        let mut new_kernel = false;
        for (j, r) in new_rows.iter().enumerate() {
            assert_eq!(r.len(), self.cols, "row length mismatch");
            let mut v = r.clone();
            let mut combo = FVector::unit(self.rows, old_rows + j);
            for ((row, c), &p) in self.image.iter().zip(&self.combos).zip(&self.pivots) {
                if v.get(p) {
                    v.add_assign(row);
                    combo.add_assign(c);
                }
            }
            match v.first_one() {
                None => {
                    self.kernel.push(combo);
                    new_kernel = true;
                }
                Some(p) => {
                    for (row, c) in self.image.iter_mut().zip(self.combos.iter_mut()) {
                        if row.get(p) {
                            row.add_assign(&v);
                            c.add_assign(&combo);
                        }
                    }
                    let pos = self.pivots.partition_point(|&q| q < p);
                    self.pivots.insert(pos, p);
                    self.image.insert(pos, v);
                    self.combos.insert(pos, combo);
                }
            }
        }
        if new_kernel {
            self.kernel_pivots = eliminate(&mut self.kernel, self.rows);
        }
    }
}
