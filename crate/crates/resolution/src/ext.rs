use std::fmt;

use fp_linalg::FVector;
use steenrod_milnor::MilnorProfile;

use crate::free::GenId;
use crate::resolution::{Resolution, ResolutionError};

/// An element of `Ext^{s,t}`, `t = n + s`, as a vector over the generators of
/// `P^{(s)}` in degree `t` (the dual basis).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtClass {
    pub n: i32,
    pub s: u32,
    pub vector: FVector,
}

impl ExtClass {
    pub fn new(n: i32, s: u32, vector: FVector) -> Self {
        Self { n, s, vector }
    }

    pub fn zero(res: &Resolution, n: i32, s: u32) -> Result<Self, ResolutionError> {
        Ok(Self::new(n, s, FVector::new(res.num_gens(s, n + s as i32)?)))
    }

    /// The basis class `x_(n, s, i)`.
    pub fn basis(res: &Resolution, n: i32, s: u32, i: usize) -> Result<Self, ResolutionError> {
        let dim = res.num_gens(s, n + s as i32)?;
        assert!(i < dim, "x_({n}, {s}, {i}) out of range (dimension {dim})");
        Ok(Self::new(n, s, FVector::unit(dim, i)))
    }

    pub fn t(&self) -> i32 {
        self.n + self.s as i32
    }

    pub fn is_zero(&self) -> bool {
        self.vector.is_zero()
    }

    /// The value `x(g)` on a generator of degree `t`.
    pub fn eval(&self, g: GenId) -> bool {
        g.t == self.t() && self.vector.get(g.idx)
    }
}

impl fmt::Display for ExtClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) {}", self.n, self.s, self.vector)
    }
}

impl Resolution {
    /// The Yoneda product `h_i · x`. Since `ξ₁^{2^i}` is primitive, `(h_i x)(g')`
    /// is the `Sq(2^i)` coefficient of `∂g'` paired with `x`.
    pub fn filtration_one_product(&self, i: u32, x: &ExtClass) -> Result<ExtClass, ResolutionError> {
        let d = 1i32 << i;
        let (s, t) = (x.s + 1, x.t() + d);
        let n = self.num_gens(s, t)?;
        let sq = self.algebra().index_of(&MilnorProfile::new(vec![d as u32]));
        let mut out = FVector::new(n);
        for (j, bd) in self.gens(s, t).iter().enumerate() {
            let mut v = false;
            for (g, c) in bd.terms() {
                if g.t == x.t() && x.vector.get(g.idx) && c.get(sq) {
                    v = !v;
                }
            }
            out.set(j, v);
        }
        Ok(ExtClass::new(x.n + d - 1, s, out))
    }
}
