use std::collections::BTreeMap;

use fp_linalg::{FMatrix, FVector, Solver};
use homotopy_lift::{ChainMap, LiftError};
use resolution::ExtClass;

/// Multiplication by a fixed class `α` on the E₂ page: for each source
/// bidegree, row `i` is `α · x_(n, s, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplier {
    pub name: String,
    pub n: i32,
    pub s: u32,
    rows: BTreeMap<(i32, u32), (usize, Vec<FVector>)>,
}

impl Multiplier {
    pub fn new(name: impl Into<String>, n: i32, s: u32) -> Self {
        Self { name: name.into(), n, s, rows: BTreeMap::new() }
    }

    /// Records `α · x_(n, s, i) = rows[i]`, each of length `target_dim`.
    pub fn insert(&mut self, n: i32, s: u32, target_dim: usize, rows: Vec<FVector>) {
        assert!(rows.iter().all(|r| r.len() == target_dim));
        self.rows.insert((n, s), (target_dim, rows));
    }

    /// The Yoneda products with the class lifted by `map`, wherever defined
    /// with `n ≤ max_n`, `s ≤ max_s`.
    pub fn from_chain_map(name: impl Into<String>, map: &ChainMap, max_n: i32, max_s: u32) -> Result<Self, LiftError> {
        let a = map.class();
        let q = map.target();
        let mut m = Self::new(name, a.n, a.s);
        for n in 0..=max_n {
            for s in 0..=max_s {
                let t = n + s as i32;
                if !q.is_computed(s, t) {
                    continue;
                }
                let dim = q.num_gens(s, t)?;
                let mut rows = Vec::with_capacity(dim);
                let mut target_dim = None;
                for i in 0..dim {
                    match map.yoneda(&ExtClass::basis(q, n, s, i)?) {
                        Ok(p) => {
                            target_dim = Some(p.vector.len());
                            rows.push(p.vector);
                        }
                        Err(LiftError::NotComputed { .. }) => break,
                        Err(e) => return Err(e),
                    }
                }
                if rows.len() != dim {
                    continue;
                }
                let target_dim = match target_dim {
                    Some(d) => d,
                    None => {
                        let (tn, ts) = (n + a.n, s + a.s);
                        if !map.is_defined(ts, tn + ts as i32) {
                            continue;
                        }
                        map.source().num_gens(ts, tn + ts as i32)?
                    }
                };
                m.insert(n, s, target_dim, rows);
            }
        }
        Ok(m)
    }

    pub fn has(&self, n: i32, s: u32) -> bool {
        self.rows.contains_key(&(n, s))
    }

    /// The rows `α · x_i` on bidegree `(n, s)`.
    pub fn rows(&self, n: i32, s: u32) -> Option<&[FVector]> {
        self.rows.get(&(n, s)).map(|(_, r)| r.as_slice())
    }

    pub fn multiply(&self, x: &ExtClass) -> Option<ExtClass> {
        let (dim, rows) = self.rows.get(&(x.n, x.s))?;
        let mut v = FVector::new(*dim);
        for i in x.vector.iter_ones() {
            v.add_assign(&rows[i]);
        }
        Some(ExtClass::new(x.n + self.n, x.s + self.s, v))
    }

    /// Some `x` with `α x = y` and whether it is unique.
    pub fn divide(&self, y: &ExtClass) -> Option<(ExtClass, bool)> {
        let (n, s) = (y.n - self.n, y.s.checked_sub(self.s)?);
        let (dim, rows) = self.rows.get(&(n, s))?;
        if rows.is_empty() {
            return y.vector.is_zero().then(|| (ExtClass::new(n, s, FVector::new(0)), true));
        }
        let sv = Solver::new(&FMatrix::from_rows(*dim, rows.clone()));
        let x = sv.solve(&y.vector)?;
        Some((ExtClass::new(n, s, x), sv.kernel_rows().is_empty()))
    }

    /// Source bidegrees with recorded products.
    pub fn bidegrees(&self) -> impl Iterator<Item = (i32, u32)> + '_ {
        self.rows.keys().copied()
    }
}

/// E₂ multiplications by named classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductTable {
    pub multipliers: BTreeMap<String, Multiplier>,
}

impl ProductTable {
    pub fn insert(&mut self, m: Multiplier) {
        self.multipliers.insert(m.name.clone(), m);
    }

    pub fn get(&self, name: &str) -> Option<&Multiplier> {
        self.multipliers.get(name)
    }
}
