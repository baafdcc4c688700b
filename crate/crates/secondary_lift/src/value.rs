use std::fmt;

use fp_linalg::FVector;
use resolution::{ExtClass, Resolution, ResolutionError};

/// An element of `π_{*,*}Cτ²` in standard-lift coordinates: `[e] + τ f`, with
/// `e ∈ Ext^{s,t}` and `f ∈ Ext^{s+1,t+1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SecondaryValue {
    pub e: ExtClass,
    pub f: ExtClass,
}

impl SecondaryValue {
    pub fn new(e: ExtClass, f: ExtClass) -> Self {
        assert_eq!((e.n, e.s + 1), (f.n, f.s), "τ part must sit one filtration above");
        Self { e, f }
    }

    pub fn zero(res: &Resolution, n: i32, s: u32) -> Result<Self, ResolutionError> {
        Ok(Self::new(ExtClass::zero(res, n, s)?, ExtClass::zero(res, n, s + 1)?))
    }

    /// The standard lift `[e]`.
    pub fn lift(res: &Resolution, e: ExtClass) -> Result<Self, ResolutionError> {
        let f = ExtClass::zero(res, e.n, e.s + 1)?;
        Ok(Self::new(e, f))
    }

    pub fn is_zero(&self) -> bool {
        self.e.is_zero() && self.f.is_zero()
    }

    /// `τ y` for `y` one filtration above.
    pub fn tau(res: &Resolution, y: ExtClass) -> Result<Self, ResolutionError> {
        let e = ExtClass::zero(res, y.n, y.s - 1)?;
        Ok(Self::new(e, y))
    }

    /// `-v = v + τh₀e`, since `-[v] = [v] + τh₀v` at p = 2.
    pub fn neg(&self, res: &Resolution) -> Result<Self, ResolutionError> {
        let mut f = self.f.clone();
        f.vector.add_assign(&res.filtration_one_product(0, &self.e)?.vector);
        Ok(Self::new(self.e.clone(), f))
    }
}

impl fmt::Display for SecondaryValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + τ {}", self.e.vector, self.f.vector)
    }
}

/// The carrying cocycle `x +̃ y`: the coordinatewise AND.
pub fn carry(x: &ExtClass, y: &ExtClass) -> ExtClass {
    assert_eq!((x.n, x.s), (y.n, y.s), "carry of classes in different bidegrees");
    let words = x.vector.words().iter().zip(y.vector.words()).map(|(a, b)| a & b).collect();
    ExtClass::new(x.n, x.s, FVector::from_words(x.vector.len(), words))
}

/// `[x] + [y] = [x + y] + τh₀(x +̃ y)` extended to general values.
pub fn lift_sum(res: &Resolution, a: &SecondaryValue, b: &SecondaryValue) -> Result<SecondaryValue, ResolutionError> {
    assert_eq!((a.e.n, a.e.s), (b.e.n, b.e.s), "lift_sum of values in different bidegrees");
    let mut e = a.e.clone();
    e.vector.add_assign(&b.e.vector);
    let mut f = a.f.clone();
    f.vector.add_assign(&b.f.vector);
    let c = carry(&a.e, &b.e);
    if !c.is_zero() {
        f.vector.add_assign(&res.filtration_one_product(0, &c)?.vector);
    }
    Ok(SecondaryValue::new(e, f))
}
