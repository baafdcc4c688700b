use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use fp_linalg::FVector;

use crate::product::product_terms_mod2;
use crate::profile::xi_degree;
use crate::MilnorProfile;

/// All profiles of degree `t`, shortest first and lexicographic within a
/// length. For `t = 3` this is `[Sq(3), Sq(0,1)]`.
pub fn milnor_basis(t: i32) -> Vec<MilnorProfile> {
    if t < 0 {
        return Vec::new();
    }
    fn rec(pos: usize, remaining: i32, cur: &mut Vec<u32>, out: &mut Vec<MilnorProfile>) {
        if pos == 0 {
            if remaining == 0 {
                out.push(MilnorProfile::new(cur.clone()));
            }
            return;
        }
        let d = xi_degree(pos);
        for r in 0..=(remaining / d) {
            cur[pos - 1] = r as u32;
            rec(pos - 1, remaining - r * d, cur, out);
        }
        cur[pos - 1] = 0;
    }
    let mut max_pos = 0;
    while xi_degree(max_pos + 1) <= t {
        max_pos += 1;
    }
    let mut out = Vec::new();
    rec(max_pos, t, &mut vec![0; max_pos], &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.entries().cmp(b.entries())));
    out
}

/// A homogeneous element of the Steenrod algebra: a set of Milnor basis
/// elements (coefficients in GF(2)).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MilnorElt {
    degree: i32,
    terms: BTreeSet<MilnorProfile>,
}

impl MilnorElt {
    pub fn zero(degree: i32) -> Self {
        Self { degree, terms: BTreeSet::new() }
    }

    pub fn one() -> Self {
        Self::basis(MilnorProfile::empty())
    }

    pub fn basis(p: MilnorProfile) -> Self {
        Self { degree: p.degree(), terms: [p].into_iter().collect() }
    }

    /// Sums the given profiles (repeated profiles cancel in pairs).
    pub fn from_terms(degree: i32, terms: impl IntoIterator<Item = MilnorProfile>) -> Self {
        let mut e = Self::zero(degree);
        for p in terms {
            e.add_term(p);
        }
        e
    }

    pub fn add_term(&mut self, p: MilnorProfile) {
        assert_eq!(p.degree(), self.degree, "inhomogeneous term {p} in degree {}", self.degree);
        if !self.terms.remove(&p) {
            self.terms.insert(p);
        }
    }

    pub fn add(&mut self, other: &MilnorElt) {
        assert_eq!(self.degree, other.degree, "adding elements of different degrees");
        for p in &other.terms {
            self.add_term(p.clone());
        }
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeSet<MilnorProfile> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `Sq()`.
    pub fn has_unit_term(&self) -> bool {
        self.terms.contains(&MilnorProfile::empty())
    }
}

impl fmt::Display for MilnorElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, p) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MilnorElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The GF(2) Milnor product of two homogeneous elements.
pub fn milnor_product(a: &MilnorElt, b: &MilnorElt) -> MilnorElt {
    let mut out = MilnorElt::zero(a.degree + b.degree);
    for r in &a.terms {
        for s in &b.terms {
            for t in product_terms_mod2(r, s) {
                out.add_term(t);
            }
        }
    }
    out
}

/// `ℸ(ξ^R, a)`: subtract `R` from every term, dropping terms that go negative.
pub fn contract(xi: &MilnorProfile, a: &MilnorElt) -> MilnorElt {
    let mut out = MilnorElt::zero(a.degree - xi.degree());
    for s in &a.terms {
        if let Some(d) = s.checked_sub(xi) {
            out.add_term(d);
        }
    }
    out
}

/// The Steenrod algebra up to a fixed degree, with indexed bases and a lazily
/// filled multiplication table.
///
/// Elements of degree `t` can be handled as [`FVector`]s over
/// `basis(t)`; products of basis elements are computed once per pair of
/// degrees and then shared.
pub struct MilnorAlgebra {
    max_degree: i32,
    basis: Vec<Vec<MilnorProfile>>,
    index: Vec<HashMap<MilnorProfile, usize>>,
    table: Vec<OnceLock<Vec<FVector>>>,
}

impl MilnorAlgebra {
    pub fn new(max_degree: i32) -> Self {
        assert!(max_degree >= 0);
        let basis: Vec<_> = (0..=max_degree).map(milnor_basis).collect();
        let index = basis.iter().map(|b| b.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect()).collect();
        let n = (max_degree as usize + 1).pow(2);
        Self { max_degree, basis, index, table: (0..n).map(|_| OnceLock::new()).collect() }
    }

    pub fn max_degree(&self) -> i32 {
        self.max_degree
    }

    #[inline]
    pub fn dimension(&self, t: i32) -> usize {
        if t < 0 {
            return 0;
        }
        assert!(t <= self.max_degree, "degree {t} exceeds algebra bound {}", self.max_degree);
        self.basis[t as usize].len()
    }

    pub fn basis(&self, t: i32) -> &[MilnorProfile] {
        if t < 0 {
            return &[];
        }
        &self.basis[t as usize]
    }

    pub fn basis_element(&self, t: i32, i: usize) -> &MilnorProfile {
        &self.basis[t as usize][i]
    }

    pub fn index_of(&self, p: &MilnorProfile) -> usize {
        let t = p.degree();
        *self.index[t as usize].get(p).unwrap_or_else(|| panic!("{p} is not a basis element"))
    }

    pub fn try_index_of(&self, p: &MilnorProfile) -> Option<usize> {
        let t = p.degree();
        if t < 0 || t > self.max_degree {
            return None;
        }
        self.index[t as usize].get(p).copied()
    }

    pub fn to_vector(&self, a: &MilnorElt) -> FVector {
        let mut v = FVector::new(self.dimension(a.degree()));
        for p in a.terms() {
            v.flip(self.index_of(p));
        }
        v
    }

    pub fn to_elt(&self, t: i32, v: &FVector) -> MilnorElt {
        MilnorElt::from_terms(t, v.iter_ones().map(|i| self.basis[t as usize][i].clone()))
    }

    /// The row of products `basis(da)[ia] · basis(db)[*]` is `table[ia*dim(db)+ib]`.
    fn block(&self, da: i32, db: i32) -> &[FVector] {
        assert!(da + db <= self.max_degree, "product degree {} exceeds algebra bound {}", da + db, self.max_degree);
        let slot = da as usize * (self.max_degree as usize + 1) + db as usize;
        self.table[slot].get_or_init(|| {
            let target = da + db;
            let mut out = Vec::with_capacity(self.dimension(da) * self.dimension(db));
            for r in self.basis(da) {
                for s in self.basis(db) {
                    let mut v = FVector::new(self.dimension(target));
                    for t in product_terms_mod2(r, s) {
                        v.flip(self.index[target as usize][&t]);
                    }
                    out.push(v);
                }
            }
            out
        })
    }

    /// Product of basis elements as a vector in degree `da + db`.
    #[inline]
    pub fn product_basis(&self, da: i32, ia: usize, db: i32, ib: usize) -> &FVector {
        let nb = self.dimension(db);
        &self.block(da, db)[ia * nb + ib]
    }

    /// `out += a · b` with `a` in degree `da` and `b` in degree `db`.
    pub fn multiply_into(&self, out: &mut FVector, da: i32, a: &FVector, db: i32, b: &FVector) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let block = self.block(da, db);
        let nb = self.dimension(db);
        for i in a.iter_ones() {
            for j in b.iter_ones() {
                out.add_assign(&block[i * nb + j]);
            }
        }
    }

    /// `out += basis(da)[ia] · b`, added at `offset` inside `out`.
    pub fn multiply_basis_into(&self, out: &mut FVector, offset: usize, da: i32, ia: usize, db: i32, b: &FVector) {
        if b.is_zero() {
            return;
        }
        let block = self.block(da, db);
        let nb = self.dimension(db);
        for j in b.iter_ones() {
            out.add_shifted(&block[ia * nb + j], offset);
        }
    }

    pub fn multiply(&self, da: i32, a: &FVector, db: i32, b: &FVector) -> FVector {
        let mut out = FVector::new(self.dimension(da + db));
        self.multiply_into(&mut out, da, a, db, b);
        out
    }

    /// `ℸ(ξ^R, a)` on vectors: `a` in degree `t`, result in degree `t - |ξ^R|`.
    pub fn contract_vector(&self, xi: &MilnorProfile, t: i32, a: &FVector) -> FVector {
        let target = t - xi.degree();
        let mut out = FVector::new(self.dimension(target));
        if target < 0 {
            return out;
        }
        for i in a.iter_ones() {
            if let Some(d) = self.basis[t as usize][i].checked_sub(xi) {
                out.flip(self.index[target as usize][&d]);
            }
        }
        out
    }
}

impl fmt::Debug for MilnorAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MilnorAlgebra").field("max_degree", &self.max_degree).finish()
    }
}
