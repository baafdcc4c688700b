use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use steenrod_milnor::{contract, milnor_product, product_terms_mod2, product_terms_mod4, MilnorElt, MilnorProfile};

/// Degree of `Y_{k,l}`, namely `2^k + 2^l - 1`.
#[inline]
pub fn y_degree(k: u32, l: u32) -> i32 {
    (1i32 << k) + (1i32 << l) - 1
}

/// The monomial `ξ_i^{e} ξ_j^{f}` as a profile, with `ξ_0 = 1`.
pub(crate) fn xi_monomial(i: u32, e: u32, j: u32, f: u32) -> MilnorProfile {
    let n = i.max(j) as usize;
    let mut r = vec![0u32; n];
    if i > 0 {
        r[i as usize - 1] += e;
    }
    if j > 0 {
        r[j as usize - 1] += f;
    }
    MilnorProfile::new(r)
}

/// All `(i, j, ℸ(ξ_i^{2^k} ξ_j^{2^l}, Sq(R)))` with a nonzero contraction.
pub(crate) fn y_commutator_terms(k: u32, l: u32, r: &MilnorProfile) -> Vec<(u32, u32, MilnorProfile)> {
    let d = r.degree();
    let (ek, el) = (1i32 << k, 1i32 << l);
    let mut out = Vec::new();
    let mut i = 0u32;
    while ek * ((1 << i) - 1) <= d {
        let mut j = 0u32;
        while ek * ((1 << i) - 1) + el * ((1 << j) - 1) <= d {
            let xi = xi_monomial(i, 1 << k, j, 1 << l);
            if let Some(c) = r.checked_sub(&xi) {
                out.push((i, j, c));
            }
            j += 1;
        }
        i += 1;
    }
    out
}

/// A homogeneous element of B₀: a Z/4-combination of `Sq(R)` plus a
/// GF(2)-combination of `Y_{k,l} Sq(R)` with `k < l`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BZeroElt {
    degree: i32,
    main: BTreeMap<MilnorProfile, u8>,
    y_part: BTreeSet<(u32, u32, MilnorProfile)>,
}

impl BZeroElt {
    pub fn zero(degree: i32) -> Self {
        Self { degree, main: BTreeMap::new(), y_part: BTreeSet::new() }
    }

    pub fn one() -> Self {
        Self::sq(MilnorProfile::empty(), 1)
    }

    /// `c · Sq(R)`.
    pub fn sq(r: MilnorProfile, c: u8) -> Self {
        let mut e = Self::zero(r.degree());
        e.add_sq(r, c);
        e
    }

    /// `Y_{k,l} Sq(R)`; requires `k < l`.
    pub fn y(k: u32, l: u32, r: MilnorProfile) -> Self {
        let mut e = Self::zero(y_degree(k, l) + r.degree());
        e.add_y(k, l, r);
        e
    }

    /// The constant `2`.
    pub fn two() -> Self {
        Self::sq(MilnorProfile::empty(), 2)
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn main(&self) -> &BTreeMap<MilnorProfile, u8> {
        &self.main
    }

    pub fn y_part(&self) -> &BTreeSet<(u32, u32, MilnorProfile)> {
        &self.y_part
    }

    pub fn is_zero(&self) -> bool {
        self.main.is_empty() && self.y_part.is_empty()
    }

    /// Whether `π^B` kills this element (all main coefficients even).
    pub fn in_ker_pi(&self) -> bool {
        self.main.values().all(|c| c % 2 == 0)
    }

    pub fn add_sq(&mut self, r: MilnorProfile, c: u8) {
        assert_eq!(r.degree(), self.degree, "inhomogeneous term {r} in degree {}", self.degree);
        let c = c % 4;
        if c == 0 {
            return;
        }
        let e = self.main.entry(r).or_insert(0);
        *e = (*e + c) % 4;
        if *e == 0 {
            self.main.retain(|_, c| *c != 0);
        }
    }

    pub fn add_y(&mut self, k: u32, l: u32, r: MilnorProfile) {
        assert!(k < l, "Y_{{{k},{l}}} needs k < l");
        assert_eq!(
            y_degree(k, l) + r.degree(),
            self.degree,
            "inhomogeneous term Y_{{{k},{l}}}{r} in degree {}",
            self.degree
        );
        let key = (k, l, r);
        if !self.y_part.remove(&key) {
            self.y_part.insert(key);
        }
    }

    /// Adds `Y_{k,l} · c` for any `k, l`, using `Y_{k,l} = Y_{l,k}` and
    /// `Y_{k,k} = 2 Sq(Δ_{k+1})`. Only `c` mod 2 matters.
    pub(crate) fn add_y_times(&mut self, k: u32, l: u32, c: &MilnorElt) {
        if k == l {
            let d = MilnorElt::basis(MilnorProfile::delta(k as usize + 1));
            for t in milnor_product(&d, c).terms() {
                self.add_sq(t.clone(), 2);
            }
            return;
        }
        let (k, l) = (k.min(l), k.max(l));
        for t in c.terms() {
            self.add_y(k, l, t.clone());
        }
    }

    pub fn add(&mut self, other: &BZeroElt) {
        assert_eq!(self.degree, other.degree, "adding elements of different degrees");
        for (r, &c) in &other.main {
            self.add_sq(r.clone(), c);
        }
        for (k, l, r) in &other.y_part {
            self.add_y(*k, *l, r.clone());
        }
    }

    pub fn neg(&self) -> BZeroElt {
        self.scale(3)
    }

    /// Multiplication by an integer mod 4.
    pub fn scale(&self, c: u8) -> BZeroElt {
        let c = c % 4;
        let mut out = BZeroElt::zero(self.degree);
        for (r, &d) in &self.main {
            out.add_sq(r.clone(), c * d);
        }
        if c % 2 == 1 {
            out.y_part = self.y_part.clone();
        }
        out
    }
}

impl fmt::Display for BZeroElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, l, r) in &self.y_part {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "Y_{{{k},{l}}}")?;
            if !r.is_empty() {
                write!(f, "{r}")?;
            }
        }
        for (r, c) in &self.main {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BZeroElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `Sq(R) · Sq(S)` in B₀.
pub fn sq_sq_product(r: &MilnorProfile, s: &MilnorProfile) -> BZeroElt {
    let mut out = BZeroElt::zero(r.degree() + s.degree());
    for (t, c) in product_terms_mod4(r, s) {
        out.add_sq(t, c);
    }
    // Σ_k Σ_{0≤m<n} Y_{m+k,n+k} ℸ(ξ_m^{2^k} ξ_n^{2^k}, Sq R) ℸ(ξ_{k+1}, Sq S).
    for k in 0..s.len() as u32 {
        if s.get(k as usize + 1) == 0 {
            continue;
        }
        let cs = s.checked_sub(&MilnorProfile::delta(k as usize + 1)).unwrap();
        for n in 1..=r.len() as u32 {
            for m in 0..n {
                let xi = xi_monomial(m, 1 << k, n, 1 << k);
                if let Some(cr) = r.checked_sub(&xi) {
                    for t in product_terms_mod2(&cr, &cs) {
                        out.add_y(m + k, n + k, t);
                    }
                }
            }
        }
    }
    out
}

/// `Sq(R) · Y_{k,l}` = `Σ_{i,j} Y_{k+i,l+j} ℸ(ξ_i^{2^k} ξ_j^{2^l}, Sq(R))`.
pub fn sq_y_product(r: &MilnorProfile, k: u32, l: u32) -> BZeroElt {
    let mut out = BZeroElt::zero(r.degree() + y_degree(k, l));
    for (i, j, c) in y_commutator_terms(k, l, r) {
        out.add_y_times(k + i, l + j, &MilnorElt::basis(c));
    }
    out
}

/// The product of B₀.
pub fn b0_product(a: &BZeroElt, b: &BZeroElt) -> BZeroElt {
    let mut out = BZeroElt::zero(a.degree + b.degree);
    for (r, &c) in &a.main {
        for (s, &d) in &b.main {
            out.add(&sq_sq_product(r, s).scale(c * d));
        }
        if c % 2 == 1 {
            for (k, l, s) in &b.y_part {
                // (Sq(R) Y_{k,l}) Sq(S): the Y terms only see Sq(S) mod 2.
                let left = sq_y_product(r, *k, *l);
                let sv = MilnorElt::basis(s.clone());
                for (r2, &c2) in &left.main {
                    let p = milnor_product(&MilnorElt::basis(r2.clone()), &sv);
                    for t in p.terms() {
                        out.add_sq(t.clone(), c2);
                    }
                }
                for (k2, l2, r2) in &left.y_part {
                    let p = milnor_product(&MilnorElt::basis(r2.clone()), &sv);
                    out.add_y_times(*k2, *l2, &p);
                }
            }
        }
    }
    for (k, l, r) in &a.y_part {
        let odd: Vec<&MilnorProfile> = b.main.iter().filter(|(_, c)| *c % 2 == 1).map(|(s, _)| s).collect();
        for s in odd {
            for t in product_terms_mod2(r, s) {
                out.add_y(*k, *l, t);
            }
        }
    }
    out
}

/// The section `σ^B`: every term lifted with coefficient 1.
pub fn sigma_b(a: &MilnorElt) -> BZeroElt {
    let mut out = BZeroElt::zero(a.degree());
    for r in a.terms() {
        out.add_sq(r.clone(), 1);
    }
    out
}

/// The reduction `π^B : B₀ → A`.
pub fn reduce_pi(b: &BZeroElt) -> MilnorElt {
    MilnorElt::from_terms(b.degree, b.main.iter().filter(|(_, c)| *c % 2 == 1).map(|(r, _)| r.clone()))
}

/// An element of `A{τ}`: the coefficient of `τ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TauElt {
    pub value: MilnorElt,
}

impl fmt::Display for TauElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})τ", self.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotInKernel(pub BZeroElt);

impl fmt::Display for NotInKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A-function applied outside ker π: {}", self.0)
    }
}

impl std::error::Error for NotInKernel {}

/// `A(a, Y_{k,l}) = Σ Z_{k+i,l+j} ℸ(ξ_i^{2^k} ξ_j^{2^l}, a)`, where
/// `Z_{k',l'} = Sq(Δ_{k'} + Δ_{l'})` if `k' ≥ l'` and 0 otherwise.
pub fn a_on_y(a: &MilnorElt, k: u32, l: u32) -> MilnorElt {
    let mut out = MilnorElt::zero(a.degree() + y_degree(k, l) - 1);
    for r in a.terms() {
        for (i, j, c) in y_commutator_terms(k, l, r) {
            let (kk, ll) = (k + i, l + j);
            if kk < ll {
                continue;
            }
            let z = MilnorProfile::delta(kk as usize).add(&MilnorProfile::delta(ll as usize));
            out.add(&milnor_product(&MilnorElt::basis(z), &MilnorElt::basis(c)));
        }
    }
    out
}

/// The A-function `A(a, r)` for `r ∈ ker π^B`, of degree `|a| + |r| - 1`.
pub fn a_function(a: &MilnorElt, r: &BZeroElt) -> Result<TauElt, NotInKernel> {
    if !r.in_ker_pi() {
        return Err(NotInKernel(r.clone()));
    }
    let mut out = MilnorElt::zero(a.degree() + r.degree - 1);
    let twos = MilnorElt::from_terms(r.degree, r.main.keys().cloned());
    if !twos.is_zero() {
        let d = contract(&MilnorProfile::delta(1), a);
        out.add(&milnor_product(&d, &twos));
    }
    let mut grouped: BTreeMap<(u32, u32), MilnorElt> = BTreeMap::new();
    for (k, l, s) in &r.y_part {
        grouped.entry((*k, *l)).or_insert_with(|| MilnorElt::zero(s.degree())).add_term(s.clone());
    }
    for ((k, l), u) in grouped {
        out.add(&milnor_product(&a_on_y(a, k, l), &u));
    }
    Ok(TauElt { value: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> MilnorProfile {
        MilnorProfile::from(v)
    }

    fn sq(v: &[u32]) -> BZeroElt {
        BZeroElt::sq(p(v), 1)
    }

    fn m(v: &[u32]) -> MilnorElt {
        MilnorElt::basis(p(v))
    }

    #[test]
    fn product_examples() {
        let mut e = BZeroElt::y(0, 1, p(&[]));
        e.add_sq(p(&[2]), 2);
        assert_eq!(b0_product(&sq(&[1]), &sq(&[1])), e);

        let mut e = BZeroElt::y(0, 1, p(&[1]));
        e.add_sq(p(&[3]), 3);
        assert_eq!(b0_product(&sq(&[1]), &sq(&[2])), e);

        let y = BZeroElt::y(0, 1, p(&[]));
        assert!(b0_product(&y, &y).is_zero());
        assert!(b0_product(&BZeroElt::two(), &y).is_zero());
    }

    #[test]
    fn commutation() {
        // Sq(1) Y_{0,1} = Y_{0,1} Sq(1) + 2 Sq(0,1).
        let mut e = BZeroElt::y(0, 1, p(&[1]));
        e.add_sq(p(&[0, 1]), 2);
        assert_eq!(b0_product(&sq(&[1]), &BZeroElt::y(0, 1, p(&[]))), e);
    }

    #[test]
    fn sigma_and_pi() {
        assert!(sigma_b(&MilnorElt::zero(3)).is_zero());
        assert_eq!(sigma_b(&m(&[2])), sq(&[2]));
        assert!(reduce_pi(&BZeroElt::sq(p(&[2]), 2)).is_zero());
        assert!(reduce_pi(&BZeroElt::y(0, 1, p(&[1]))).is_zero());
        assert_eq!(reduce_pi(&BZeroElt::sq(p(&[3]), 3)), m(&[3]));
    }

    #[test]
    fn a_function_examples() {
        assert_eq!(a_function(&m(&[1]), &BZeroElt::two()).unwrap().value, MilnorElt::one());
        assert_eq!(a_function(&m(&[2]), &BZeroElt::two()).unwrap().value, m(&[1]));
        assert_eq!(a_function(&m(&[1]), &BZeroElt::y(0, 1, p(&[]))).unwrap().value, m(&[2]));
        assert!(a_function(&m(&[1]), &sq(&[1])).is_err());
    }
}
