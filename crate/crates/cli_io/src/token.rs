use std::fmt;
use std::str::FromStr;

use fp_linalg::FVector;
use resolution::{ExtClass, Resolution};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TokenError {
    #[error("cannot parse {0:?} as x_(n, s, i) or [c₀, c₁, …]")]
    Syntax(String),
    #[error("empty class vector")]
    Empty,
    #[error("x_({n}, {s}, {i}) is out of range: the bidegree has dimension {dim}")]
    OutOfBounds { n: i32, s: u32, i: usize, dim: usize },
    #[error("vector of length {len} in bidegree ({n}, {s}) of dimension {dim}")]
    Length { n: i32, s: u32, len: usize, dim: usize },
    #[error("x_({n}, {s}, {i}) is not in bidegree ({en}, {es})")]
    Bidegree { n: i32, s: u32, i: usize, en: i32, es: u32 },
    #[error("bidegree ({n}, {s}) is not computed")]
    NotComputed { n: i32, s: u32 },
}

/// A class as written in the data files: the basis element `x_(n, s, i)`, or
/// a coefficient vector `[c₀, c₁, …]` over the basis of a bidegree given
/// separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassToken {
    Basis { n: i32, s: u32, i: usize },
    Vector(FVector),
}

impl ClassToken {
    /// The class in bidegree `(n, s)` of `res`.
    pub fn resolve(&self, res: &Resolution, n: i32, s: u32) -> Result<ExtClass, TokenError> {
        let dim = res.num_gens(s, n + s as i32).map_err(|_| TokenError::NotComputed { n, s })?;
        match self {
            &ClassToken::Basis { n: bn, s: bs, i } => {
                if (bn, bs) != (n, s) {
                    return Err(TokenError::Bidegree { n: bn, s: bs, i, en: n, es: s });
                }
                if i >= dim {
                    return Err(TokenError::OutOfBounds { n, s, i, dim });
                }
                Ok(ExtClass::new(n, s, FVector::unit(dim, i)))
            }
            ClassToken::Vector(v) => {
                if v.len() != dim {
                    return Err(TokenError::Length { n, s, len: v.len(), dim });
                }
                Ok(ExtClass::new(n, s, v.clone()))
            }
        }
    }
}

pub(crate) fn parse_vector(text: &str) -> Result<FVector, TokenError> {
    let syntax = || TokenError::Syntax(text.to_string());
    let inner = text.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(syntax)?;
    if inner.trim().is_empty() {
        return Err(TokenError::Empty);
    }
    let bits = inner
        .split(',')
        .map(|c| match c.trim() {
            "0" => Ok(0),
            "1" => Ok(1),
            _ => Err(syntax()),
        })
        .collect::<Result<Vec<u8>, _>>()?;
    Ok(FVector::from_bits(&bits))
}

pub(crate) fn parse_basis(text: &str) -> Result<(i32, u32, usize), TokenError> {
    let syntax = || TokenError::Syntax(text.to_string());
    let inner = text.trim().strip_prefix("x_(").and_then(|r| r.strip_suffix(')')).ok_or_else(syntax)?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [n, s, i] => {
            Ok((n.parse().map_err(|_| syntax())?, s.parse().map_err(|_| syntax())?, i.parse().map_err(|_| syntax())?))
        }
        _ => Err(syntax()),
    }
}

impl FromStr for ClassToken {
    type Err = TokenError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        if text.trim_start().starts_with('[') {
            parse_vector(text).map(ClassToken::Vector)
        } else {
            parse_basis(text).map(|(n, s, i)| ClassToken::Basis { n, s, i })
        }
    }
}

impl fmt::Display for ClassToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassToken::Basis { n, s, i } => write!(f, "x_({n}, {s}, {i})"),
            ClassToken::Vector(v) => write!(f, "{v}"),
        }
    }
}
