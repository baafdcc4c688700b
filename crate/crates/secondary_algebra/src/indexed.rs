use std::sync::{Arc, OnceLock};

use fp_linalg::FVector;
use steenrod_milnor::{MilnorAlgebra, MilnorProfile};

use crate::b0::{sq_sq_product, xi_monomial, y_commutator_terms, y_degree, BZeroElt};

/// An element of B₀ in degree `degree` as vectors: the main part over Z/4 as
/// two bit planes over the Milnor basis, and for each `Y_{k,l}` the GF(2)
/// cofactor over the basis in degree `degree - |Y_{k,l}|`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct B0Vec {
    pub degree: i32,
    pub lo: FVector,
    pub hi: FVector,
    /// Indexed like [`SecondaryAlgebra::y_pairs`].
    pub y: Vec<FVector>,
}

impl B0Vec {
    pub fn is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero() && self.y.iter().all(FVector::is_zero)
    }

    /// Whether the reduction `π^B` vanishes.
    pub fn in_ker_pi(&self) -> bool {
        self.lo.is_zero()
    }

    /// `π^B`, as a vector over the Milnor basis.
    pub fn reduce_pi(&self) -> &FVector {
        &self.lo
    }

    pub fn add_assign(&mut self, other: &B0Vec) {
        assert_eq!(self.degree, other.degree, "adding B₀ elements of different degrees");
        FVector::add_mod4(&mut self.lo, &mut self.hi, &other.lo, &other.hi);
        for (a, b) in self.y.iter_mut().zip(&other.y) {
            a.add_assign(b);
        }
    }

    pub fn neg(&self) -> B0Vec {
        let mut hi = self.hi.clone();
        hi.add_assign(&self.lo);
        B0Vec { degree: self.degree, lo: self.lo.clone(), hi, y: self.y.clone() }
    }

    pub fn sub_assign(&mut self, other: &B0Vec) {
        self.add_assign(&other.neg());
    }

    /// `self += 2·σ(x)`.
    pub fn add_twice(&mut self, x: &FVector) {
        self.hi.add_assign(x);
    }
}

/// A cached product `σ(a)·σ(b)` of basis elements with sparse Y part.
#[derive(Clone, Debug)]
struct SparseB0 {
    lo: FVector,
    hi: FVector,
    y: Vec<(usize, FVector)>,
}

/// B₀ through a fixed degree on top of a [`MilnorAlgebra`], with cached
/// products of lifted basis elements and a vectorized A-function.
pub struct SecondaryAlgebra {
    alg: Arc<MilnorAlgebra>,
    pairs: Vec<(u32, u32)>,
    table: Vec<OnceLock<Vec<SparseB0>>>,
}

impl SecondaryAlgebra {
    pub fn new(alg: Arc<MilnorAlgebra>) -> Self {
        let max = alg.max_degree();
        let mut pairs = Vec::new();
        for l in 1..31u32 {
            if y_degree(0, l) > max {
                break;
            }
            for k in 0..l {
                if y_degree(k, l) <= max {
                    pairs.push((k, l));
                }
            }
        }
        let n = (max as usize + 1).pow(2);
        Self { alg, pairs, table: (0..n).map(|_| OnceLock::new()).collect() }
    }

    pub fn algebra(&self) -> &MilnorAlgebra {
        &self.alg
    }

    pub fn algebra_arc(&self) -> &Arc<MilnorAlgebra> {
        &self.alg
    }

    /// The pairs `(k, l)`, `k < l`, with `Y_{k,l}` inside the degree bound.
    pub fn y_pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    fn pair_index(&self, k: u32, l: u32) -> usize {
        self.pairs
            .iter()
            .position(|&q| q == (k, l))
            .unwrap_or_else(|| panic!("Y_{{{k},{l}}} is beyond the degree bound"))
    }

    fn pair_degree(&self, p: usize) -> i32 {
        let (k, l) = self.pairs[p];
        y_degree(k, l)
    }

    pub fn zero(&self, degree: i32) -> B0Vec {
        let dim = self.alg.dimension(degree);
        B0Vec {
            degree,
            lo: FVector::new(dim),
            hi: FVector::new(dim),
            y: (0..self.pairs.len()).map(|p| FVector::new(self.alg.dimension(degree - self.pair_degree(p)))).collect(),
        }
    }

    /// `σ^B(a)` for `a` a vector in degree `degree`.
    pub fn sigma(&self, degree: i32, a: &FVector) -> B0Vec {
        let mut out = self.zero(degree);
        out.lo = a.clone();
        out
    }

    pub fn from_elt(&self, e: &BZeroElt) -> B0Vec {
        let mut out = self.zero(e.degree());
        for (r, &c) in e.main() {
            let i = self.alg.index_of(r);
            out.lo.set(i, c & 1 == 1);
            out.hi.set(i, c & 2 == 2);
        }
        for (k, l, r) in e.y_part() {
            out.y[self.pair_index(*k, *l)].flip(self.alg.index_of(r));
        }
        out
    }

    pub fn to_elt(&self, v: &B0Vec) -> BZeroElt {
        let mut out = BZeroElt::zero(v.degree);
        for i in 0..v.lo.len() {
            let c = v.lo.get(i) as u8 + 2 * v.hi.get(i) as u8;
            if c != 0 {
                out.add_sq(self.alg.basis_element(v.degree, i).clone(), c);
            }
        }
        for (p, y) in v.y.iter().enumerate() {
            let (k, l) = self.pairs[p];
            for i in y.iter_ones() {
                out.add_y(k, l, self.alg.basis_element(v.degree - y_degree(k, l), i).clone());
            }
        }
        out
    }

    fn block(&self, da: i32, db: i32) -> &[SparseB0] {
        let max = self.alg.max_degree();
        assert!(da + db <= max, "product degree {} exceeds bound {max}", da + db);
        let slot = da as usize * (max as usize + 1) + db as usize;
        self.table[slot].get_or_init(|| {
            let target = da + db;
            let mut out = Vec::with_capacity(self.alg.dimension(da) * self.alg.dimension(db));
            for r in self.alg.basis(da) {
                for s in self.alg.basis(db) {
                    let v = self.from_elt(&sq_sq_product(r, s));
                    let dim = self.alg.dimension(target);
                    debug_assert_eq!(v.lo.len(), dim);
                    out.push(SparseB0 {
                        lo: v.lo,
                        hi: v.hi,
                        y: v.y.into_iter().enumerate().filter(|(_, y)| !y.is_zero()).collect(),
                    });
                }
            }
            out
        })
    }

    fn add_sparse(out: &mut B0Vec, e: &SparseB0) {
        FVector::add_mod4(&mut out.lo, &mut out.hi, &e.lo, &e.hi);
        for (p, y) in &e.y {
            out.y[*p].add_assign(y);
        }
    }

    /// `out += σ(a)·σ(b)` with `a` in degree `da`, `b` in degree `db`.
    pub fn add_sigma_product(&self, out: &mut B0Vec, da: i32, a: &FVector, db: i32, b: &FVector) {
        assert_eq!(out.degree, da + db);
        if a.is_zero() || b.is_zero() {
            return;
        }
        let block = self.block(da, db);
        let nb = self.alg.dimension(db);
        for i in a.iter_ones() {
            for j in b.iter_ones() {
                Self::add_sparse(out, &block[i * nb + j]);
            }
        }
    }

    pub fn sigma_product(&self, da: i32, a: &FVector, db: i32, b: &FVector) -> B0Vec {
        let mut out = self.zero(da + db);
        self.add_sigma_product(&mut out, da, a, db, b);
        out
    }

    /// `A(a, Y_{k,l})` as a vector in degree `da + |Y_{k,l}| - 1`.
    fn a_on_pair(&self, da: i32, a: &FVector, p: usize) -> FVector {
        let (k, l) = self.pairs[p];
        let target = da + y_degree(k, l) - 1;
        let mut out = FVector::new(self.alg.dimension(target));
        for ia in a.iter_ones() {
            let r = self.alg.basis_element(da, ia);
            for (i, j, c) in y_commutator_terms(k, l, r) {
                let (kk, ll) = (k + i, l + j);
                if kk < ll {
                    continue;
                }
                let z = MilnorProfile::delta(kk as usize).add(&MilnorProfile::delta(ll as usize));
                let (dz, dc) = (z.degree(), c.degree());
                let iz = self.alg.index_of(&z);
                let ic = self.alg.index_of(&c);
                out.add_assign(self.alg.product_basis(dz, iz, dc, ic));
            }
        }
        out
    }

    /// The A-function `A(a, r)` for `a` in degree `da` and `r ∈ ker π^B`;
    /// the result has degree `da + |r| - 1`.
    pub fn a_function(&self, da: i32, a: &FVector, r: &B0Vec) -> FVector {
        assert!(r.in_ker_pi(), "A-function applied outside ker π");
        let target = da + r.degree - 1;
        let mut out = FVector::new(self.alg.dimension(target));
        if a.is_zero() || target < 0 {
            return out;
        }
        if !r.hi.is_zero() && da >= 1 {
            let d = self.alg.contract_vector(&xi_monomial(1, 1, 0, 0), da, a);
            self.alg.multiply_into(&mut out, da - 1, &d, r.degree, &r.hi);
        }
        for (p, u) in r.y.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            let ay = self.a_on_pair(da, a, p);
            let dy = da + self.pair_degree(p) - 1;
            self.alg.multiply_into(&mut out, dy, &ay, r.degree - self.pair_degree(p), u);
        }
        out
    }
}

impl std::fmt::Debug for SecondaryAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SecondaryAlgebra")
            .field("max_degree", &self.alg.max_degree())
            .field("pairs", &self.pairs.len())
            .finish()
    }
}
