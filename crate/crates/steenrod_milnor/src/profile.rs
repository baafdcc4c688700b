use std::fmt;

/// Degree of `ξ_i`, namely `2^i - 1`. `ξ_0 = 1` has degree 0.
#[inline]
pub fn xi_degree(i: usize) -> i32 {
    (1i32 << i) - 1
}

/// A Milnor profile `R = (r_1, r_2, ...)` with trailing zeros trimmed. It
/// names both the basis element `Sq(R)` and the dual monomial `ξ^R`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MilnorProfile(Vec<u32>);

impl MilnorProfile {
    pub fn new(mut r: Vec<u32>) -> Self {
        while r.last() == Some(&0) {
            r.pop();
        }
        Self(r)
    }

    /// `Sq()`, the unit.
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// `Δ_k`: 1 in position `k` (1-indexed), 0 elsewhere.
    pub fn delta(k: usize) -> Self {
        assert!(k >= 1, "Δ_k needs k ≥ 1");
        let mut r = vec![0; k];
        r[k - 1] = 1;
        Self(r)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `r_i` (1-indexed), zero past the end.
    pub fn get(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().enumerate().map(|(i, &r)| r as i32 * xi_degree(i + 1)).sum()
    }

    pub fn add(&self, other: &MilnorProfile) -> MilnorProfile {
        let n = self.len().max(other.len());
        MilnorProfile::new((1..=n).map(|i| self.get(i) + other.get(i)).collect())
    }

    /// `self - other`, or `None` if some entry would be negative.
    pub fn checked_sub(&self, other: &MilnorProfile) -> Option<MilnorProfile> {
        if other.len() > self.len() && other.0[self.len()..].iter().any(|&x| x != 0) {
            return None;
        }
        let mut out = self.0.clone();
        for (i, &o) in other.0.iter().enumerate() {
            out[i] = out[i].checked_sub(o)?;
        }
        Some(MilnorProfile::new(out))
    }
}

impl From<Vec<u32>> for MilnorProfile {
    fn from(v: Vec<u32>) -> Self {
        Self::new(v)
    }
}

impl From<&[u32]> for MilnorProfile {
    fn from(v: &[u32]) -> Self {
        Self::new(v.to_vec())
    }
}

impl fmt::Display for MilnorProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sq(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MilnorProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for MilnorProfile {
    type Err = String;

    /// Parses `Sq(1,0,2)`, `Sq()` or `Sq(0)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let inner = s
            .strip_prefix("Sq(")
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| format!("expected Sq(...), found {s:?}"))?;
        if inner.trim().is_empty() {
            return Ok(Self::empty());
        }
        let entries = inner
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|e| format!("bad entry {x:?} in {s:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(entries))
    }
}
