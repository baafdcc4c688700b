use std::collections::BTreeMap;

use fp_linalg::{FMatrix, FVector, Solver};
use resolution::ExtClass;
use secondary_lift::{SecondaryError, SecondaryResolution};

/// d₂ on the basis of every bidegree `(n, s)` where it is known and lands
/// in range: row `i` is `d₂ x_(n, s, i)` over the basis of `(n - 1, s + 2)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct D2Data {
    pub dims: BTreeMap<(i32, u32), usize>,
    pub d2: BTreeMap<(i32, u32), Vec<FVector>>,
}

impl D2Data {
    pub fn from_secondary(sec: &SecondaryResolution, max_n: i32, max_s: u32) -> Result<Self, SecondaryError> {
        let res = sec.resolution();
        let mut out = Self::default();
        for n in 0..=max_n {
            for s in 0..=max_s {
                let t = n + s as i32;
                if !res.is_computed(s, t) {
                    continue;
                }
                let dim = res.num_gens(s, t)?;
                out.dims.insert((n, s), dim);
                let known = s + 2 <= max_s && sec.has_d2(n, s);
                if dim > 0 && known {
                    let rows = (0..dim).map(|i| Ok(sec.d2(&ExtClass::basis(res, n, s, i)?)?.vector)).collect::<Result<
                        _,
                        SecondaryError,
                    >>(
                    )?;
                    out.d2.insert((n, s), rows);
                } else if dim == 0 && known {
                    out.d2.insert((n, s), Vec::new());
                }
            }
        }
        Ok(out)
    }

    pub fn dim(&self, n: i32, s: u32) -> Option<usize> {
        self.dims.get(&(n, s)).copied()
    }

    /// `d₂ x`, if known.
    pub fn apply(&self, x: &ExtClass) -> Option<ExtClass> {
        let rows = self.d2.get(&(x.n, x.s))?;
        let dim = self.dim(x.n - 1, x.s + 2)?;
        let mut v = FVector::new(dim);
        for i in x.vector.iter_ones() {
            v.add_assign(&rows[i]);
        }
        Some(ExtClass::new(x.n - 1, x.s + 2, v))
    }
}

/// One bidegree of the E₃ page.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageEntry {
    pub e2_dim: usize,
    /// Rows `d₂ x_i`.
    pub d2: Vec<FVector>,
    /// Basis of `ker d₂`.
    pub kernel: Vec<FVector>,
    /// Basis of the image of the incoming d₂.
    pub image: Vec<FVector>,
    /// Representatives of a basis of `ker d₂ / im d₂`.
    pub e3_basis: Vec<FVector>,
    /// Whether the incoming d₂ is known, so that `e3_basis` is final.
    pub complete: bool,
}

impl PageEntry {
    pub fn e3_dim(&self) -> usize {
        self.e3_basis.len()
    }

    /// Whether `v` is hit by d₂.
    pub fn is_boundary(&self, v: &FVector) -> bool {
        v.is_zero() || in_span(v, &self.image)
    }
}

/// The E₃ page over the bidegrees of a [`D2Data`] where d₂ out is known.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PageData {
    pub entries: BTreeMap<(i32, u32), PageEntry>,
}

impl PageData {
    pub fn get(&self, n: i32, s: u32) -> Option<&PageEntry> {
        self.entries.get(&(n, s))
    }

    /// Whether `x` is nonzero on E₃ (a d₂-cycle not hit by d₂); `None` if unknown.
    pub fn survives(&self, x: &ExtClass) -> Option<bool> {
        let e = self.get(x.n, x.s)?;
        let rows = &e.d2;
        let mut d = FVector::new(rows.first().map_or(0, FVector::len));
        for i in x.vector.iter_ones() {
            d.add_assign(&rows[i]);
        }
        Some(d.is_zero() && !e.is_boundary(&x.vector))
    }
}

pub(crate) fn in_span(v: &FVector, span: &[FVector]) -> bool {
    if span.is_empty() {
        return v.is_zero();
    }
    Solver::new(&FMatrix::from_rows(v.len(), span.to_vec())).in_image(v)
}

/// A basis of the row space of `rows` in reduced echelon form.
pub(crate) fn row_basis(cols: usize, rows: &[FVector]) -> Vec<FVector> {
    if rows.is_empty() {
        return Vec::new();
    }
    Solver::new(&FMatrix::from_rows(cols, rows.to_vec())).image().to_vec()
}

/// The homology of d₂ in every bidegree `(n, s)` of `data`. E₃
/// representatives are the kernel basis vectors (reduced echelon form)
/// that are independent modulo the image, taken in order.
pub fn e3_page(data: &D2Data) -> PageData {
    let mut page = PageData::default();
    for (&(n, s), &dim) in &data.dims {
        let Some(d2) = data.d2.get(&(n, s)).cloned() else { continue };
        let kernel = if dim == 0 {
            Vec::new()
        } else {
            let cols = data.dim(n - 1, s + 2).unwrap_or(0);
            Solver::new(&FMatrix::from_rows(cols, d2.clone())).kernel_rows().to_vec()
        };
        let source = (n + 1, s.wrapping_sub(2));
        let (image, complete) = if s < 2 {
            (Vec::new(), true)
        } else {
            match data.d2.get(&source) {
                Some(rows) => (row_basis(dim, rows), true),
                None => (Vec::new(), data.dim(source.0, source.1) == Some(0)),
            }
        };
        let mut span = image.clone();
        let mut e3_basis = Vec::new();
        for k in &kernel {
            if !in_span(k, &span) {
                span.push(k.clone());
                e3_basis.push(k.clone());
            }
        }
        page.entries.insert((n, s), PageEntry { e2_dim: dim, d2, kernel, image, e3_basis, complete });
    }
    page
}
