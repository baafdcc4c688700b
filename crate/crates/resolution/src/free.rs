use std::fmt;

use fp_linalg::FVector;
use steenrod_milnor::MilnorAlgebra;

/// A generator of a free module, named by its internal degree and its index
/// among the generators of that degree. For the module being resolved
/// (stage −1) the same naming refers to its F₂-basis.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GenId {
    pub t: i32,
    pub idx: usize,
}

impl GenId {
    pub fn new(t: i32, idx: usize) -> Self {
        Self { t, idx }
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g({},{})", self.t, self.idx)
    }
}

/// A homogeneous element `Σ c_g g` of a free module, stored sparsely: each
/// coefficient `c_g` is a vector over the Milnor basis in degree `degree - g.t`.
/// Terms are sorted by generator and never zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeElt {
    pub degree: i32,
    terms: Vec<(GenId, FVector)>,
}

impl FreeElt {
    pub fn zero(degree: i32) -> Self {
        Self { degree, terms: Vec::new() }
    }

    /// The generator itself, `Sq() · g`.
    pub fn generator(g: GenId) -> Self {
        Self { degree: g.t, terms: vec![(g, FVector::from_bits(&[1]))] }
    }

    pub fn from_terms(degree: i32, terms: impl IntoIterator<Item = (GenId, FVector)>) -> Self {
        let mut e = Self::zero(degree);
        for (g, c) in terms {
            e.add_term(g, &c);
        }
        e
    }

    pub fn terms(&self) -> &[(GenId, FVector)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: GenId) -> Option<&FVector> {
        self.terms.binary_search_by(|(h, _)| h.cmp(&g)).ok().map(|i| &self.terms[i].1)
    }

    pub fn add_term(&mut self, g: GenId, c: &FVector) {
        assert!(g.t <= self.degree, "generator {g} above element degree {}", self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.binary_search_by(|(h, _)| h.cmp(&g)) {
            Ok(i) => {
                self.terms[i].1.add_assign(c);
                if self.terms[i].1.is_zero() {
                    self.terms.remove(i);
                }
            }
            Err(i) => self.terms.insert(i, (g, c.clone())),
        }
    }

    pub fn add(&mut self, other: &FreeElt) {
        assert_eq!(self.degree, other.degree, "adding elements of different degrees");
        for (g, c) in &other.terms {
            self.add_term(*g, c);
        }
    }

    /// `a · self` for `a` a vector in degree `da`.
    pub fn act(&self, alg: &MilnorAlgebra, da: i32, a: &FVector) -> FreeElt {
        let mut out = FreeElt::zero(self.degree + da);
        if a.is_zero() {
            return out;
        }
        for (g, c) in &self.terms {
            let v = alg.multiply(da, a, self.degree - g.t, c);
            if !v.is_zero() {
                out.terms.push((*g, v));
            }
        }
        out
    }

    /// Coordinates over `layout`, which must contain every generator used.
    pub fn to_vector(&self, layout: &Layout) -> FVector {
        assert_eq!(self.degree, layout.degree, "element and layout degrees differ");
        let mut v = FVector::new(layout.total);
        for (g, c) in &self.terms {
            let p = layout.position(*g).unwrap_or_else(|| panic!("generator {g} is not part of the layout"));
            v.add_shifted(c, layout.offsets[p]);
        }
        v
    }

    pub fn from_vector(layout: &Layout, v: &FVector) -> FreeElt {
        assert_eq!(v.len(), layout.total, "vector does not match layout");
        let mut out = FreeElt::zero(layout.degree);
        for (p, g) in layout.gens.iter().enumerate() {
            let (o, d) = (layout.offsets[p], layout.dims[p]);
            if !v.is_zero_range(o, o + d) {
                out.terms.push((*g, v.slice(o, o + d)));
            }
        }
        out
    }
}

impl fmt::Debug for FreeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeElt(deg {}; ", self.degree)?;
        for (i, (g, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·{g}")?;
        }
        write!(f, ")")
    }
}

/// The coordinates of a free module in one internal degree: a block of
/// `dim A_{degree - g.t}` coordinates per generator, generators in
/// `(t, idx)` order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Layout {
    pub degree: i32,
    pub gens: Vec<GenId>,
    pub offsets: Vec<usize>,
    pub dims: Vec<usize>,
    pub total: usize,
}

impl Layout {
    /// `gens` must be sorted.
    pub fn new(alg: &MilnorAlgebra, degree: i32, gens: Vec<GenId>) -> Self {
        debug_assert!(gens.windows(2).all(|w| w[0] < w[1]));
        let mut offsets = Vec::with_capacity(gens.len());
        let mut dims = Vec::with_capacity(gens.len());
        let mut total = 0;
        for g in &gens {
            let d = alg.dimension(degree - g.t);
            offsets.push(total);
            dims.push(d);
            total += d;
        }
        Self { degree, gens, offsets, dims, total }
    }

    pub fn position(&self, g: GenId) -> Option<usize> {
        self.gens.binary_search(&g).ok()
    }

    /// The coordinate of `basis(degree - g.t)[i] · g`.
    pub fn index(&self, g: GenId, i: usize) -> usize {
        self.offsets[self.position(g).expect("generator not in layout")] + i
    }
}
