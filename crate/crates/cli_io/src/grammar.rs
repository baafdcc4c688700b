//! Line grammars of the data files.
//!
//! ```text
//! d_2 x_(15, 1, 0) = [1]
//! [g] x_(14, 4, 0) = [1] + τ [0, 1]
//! <x_(1, 1, 0), [h_0^4], [h_3]> = ±([1])
//! h_0 · x_(0, 1, 0) = [1]
//! ```
//!
//! A secondary value `e + τf` is written `[e] + τ [f]`, dropping a zero part
//! (`[e]`, `τ [f]`); the zero value is `0`.

use std::fmt;
use std::str::FromStr;

use fp_linalg::FVector;
use secondary_lift::SecondaryValue;

use crate::token::{parse_basis, parse_vector};
use crate::TokenError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    pub n: i32,
    pub s: u32,
    pub i: usize,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x_({}, {}, {})", self.n, self.s, self.i)
    }
}

impl FromStr for Basis {
    type Err = TokenError;

    fn from_str(text: &str) -> Result<Self, TokenError> {
        let (n, s, i) = parse_basis(text)?;
        Ok(Basis { n, s, i })
    }
}

/// `e + τf` with zero parts dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Value {
    pub e: Option<FVector>,
    pub f: Option<FVector>,
}

impl Value {
    pub fn is_zero(&self) -> bool {
        self.e.is_none() && self.f.is_none()
    }
}

impl From<&SecondaryValue> for Value {
    fn from(v: &SecondaryValue) -> Self {
        let part = |x: &FVector| (!x.is_zero()).then(|| x.clone());
        Value { e: part(&v.e.vector), f: part(&v.f.vector) }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.e, &self.f) {
            (None, None) => write!(f, "0"),
            (Some(e), None) => write!(f, "{e}"),
            (None, Some(t)) => write!(f, "τ {t}"),
            (Some(e), Some(t)) => write!(f, "{e} + τ {t}"),
        }
    }
}

impl FromStr for Value {
    type Err = TokenError;

    fn from_str(text: &str) -> Result<Self, TokenError> {
        let text = text.trim();
        if text == "0" {
            return Ok(Value::default());
        }
        let tau = |t: &str| t.trim().strip_prefix('τ').map(parse_vector).transpose();
        if let Some(f) = tau(text)? {
            return Ok(Value { e: None, f: Some(f) });
        }
        match text.split_once('+') {
            Some((e, t)) => Ok(Value {
                e: Some(parse_vector(e)?),
                f: Some(tau(t)?.ok_or_else(|| TokenError::Syntax(text.into()))?),
            }),
            None => Ok(Value { e: Some(parse_vector(text)?), f: None }),
        }
    }
}

fn split<'a>(text: &'a str, sep: &str) -> Result<(&'a str, &'a str), TokenError> {
    text.split_once(sep).ok_or_else(|| TokenError::Syntax(text.into()))
}

/// `d_2 x = [target]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D2Line {
    pub source: Basis,
    pub target: FVector,
}

impl fmt::Display for D2Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d_2 {} = {}", self.source, self.target)
    }
}

impl FromStr for D2Line {
    type Err = TokenError;

    fn from_str(text: &str) -> Result<Self, TokenError> {
        let rest = text.strip_prefix("d_2 ").ok_or_else(|| TokenError::Syntax(text.into()))?;
        let (x, v) = split(rest, " = ")?;
        Ok(D2Line { source: x.parse()?, target: parse_vector(v)? })
    }
}

/// `[name] x = value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductLine {
    pub name: String,
    pub x: Basis,
    pub value: Value,
}

impl fmt::Display for ProductLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {} = {}", self.name, self.x, self.value)
    }
}

impl FromStr for ProductLine {
    type Err = TokenError;

    fn from_str(text: &str) -> Result<Self, TokenError> {
        let rest = text.strip_prefix('[').ok_or_else(|| TokenError::Syntax(text.into()))?;
        let (name, rest) = split(rest, "] x_(")?;
        let (x, v) = split(rest, " = ")?;
        Ok(ProductLine { name: name.into(), x: format!("x_({x}").parse()?, value: v.parse()? })
    }
}

/// `<x, [b], [a]> = ±(value)`, or `= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasseyLine {
    pub c: Basis,
    pub b: String,
    pub a: String,
    pub value: Value,
}

impl fmt::Display for MasseyLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, [{}], [{}]> = ", self.c, self.b, self.a)?;
        if self.value.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "±({})", self.value)
        }
    }
}

impl FromStr for MasseyLine {
    type Err = TokenError;

    fn from_str(text: &str) -> Result<Self, TokenError> {
        let syntax = || TokenError::Syntax(text.into());
        let rest = text.strip_prefix('<').ok_or_else(syntax)?;
        let (c, rest) = split(rest, "), [")?;
        let (b, rest) = split(rest, "], [")?;
        let (a, v) = split(rest, "]> = ")?;
        let value = match v {
            "0" => Value::default(),
            _ => {
                let inner = v.strip_prefix("±(").and_then(|r| r.strip_suffix(')')).ok_or_else(syntax)?;
                let value: Value = inner.parse()?;
                if value.is_zero() {
                    return Err(syntax());
                }
                value
            }
        };
        Ok(MasseyLine { c: format!("{c})").parse()?, b: b.into(), a: a.into(), value })
    }
}

/// `h_j · x = [product]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationOneLine {
    pub j: u32,
    pub x: Basis,
    pub product: FVector,
}

impl fmt::Display for FiltrationOneLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h_{} · {} = {}", self.j, self.x, self.product)
    }
}

impl FromStr for FiltrationOneLine {
    type Err = TokenError;

    fn from_str(text: &str) -> Result<Self, TokenError> {
        let syntax = || TokenError::Syntax(text.into());
        let rest = text.strip_prefix("h_").ok_or_else(syntax)?;
        let (j, rest) = split(rest, " · ")?;
        let (x, v) = split(rest, " = ")?;
        Ok(FiltrationOneLine { j: j.parse().map_err(|_| syntax())?, x: x.parse()?, product: parse_vector(v)? })
    }
}
