//! JSON persistence.
//!
//! Rationals are written as `"p/q"` strings (`"p"` for integers). Objects are
//! emitted with sorted keys, so equal values always produce equal bytes.
//! Algebras are stored as a reference plus their structure constants;
//! loading rebuilds from the reference and checks the constants agree.

use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{AlgebraRef, Family, LieSuperalgebra};
use crate::detecting::{self, DetectError};
use crate::linalg::{Rational, SparseMatrix};
use crate::module::{ModuleError, Supermodule};
use crate::poly::{Exponent, Polynomial};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("json: {0}")]
    Serde(#[from] serde_json::Error),
    #[error("bad rational `{0}`")]
    BadRational(String),
    #[error(transparent)]
    Algebra(#[from] DetectError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("stored structure constants disagree with {0}")]
    ConstantsMismatch(String),
    #[error("action index out of range: {0}")]
    OutOfRange(String),
}

pub fn rat_to_string(x: &Rational) -> String {
    x.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational, JsonError> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| JsonError::BadRational(s.to_string()))
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_sorted_string<T: Serialize>(x: &T) -> Result<String, JsonError> {
    // serde_json's default map is ordered by key
    let v = serde_json::to_value(x)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: DeserializeOwned>(s: &str) -> Result<T, JsonError> {
    Ok(serde_json::from_str(s)?)
}

/// `#[serde(with = "...")]` helpers.
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub mod vector {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(rat_to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod vectors {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(
            v.iter()
                .map(|w| w.iter().map(rat_to_string).collect::<Vec<_>>()),
        )
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|w| {
                w.iter()
                    .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    nvars: usize,
    terms: Vec<(Exponent, String)>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            nvars: self.nvars(),
            terms: self
                .terms()
                .iter()
                .map(|(e, c)| (e.clone(), rat_to_string(c)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = PolyRepr::deserialize(d)?;
        let mut terms = Vec::with_capacity(r.terms.len());
        for (e, c) in r.terms {
            if e.len() != r.nvars {
                return Err(serde::de::Error::custom(
                    "exponent length differs from nvars",
                ));
            }
            terms.push((e, parse_rational(&c).map_err(serde::de::Error::custom)?));
        }
        Ok(Polynomial::from_terms(r.nvars, terms))
    }
}

/// `[i, j, k, "p/q"]`: coefficient of `b_k` in `[b_i, b_j]`, or entry
/// `(i, j)` of `ρ(b_k)` in module files.
pub type Entry = (usize, usize, usize, String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub reference: String,
    pub family: Family,
    pub params: Vec<usize>,
    pub labels: Vec<String>,
    pub parity: Vec<u8>,
    pub bracket: Vec<Entry>,
    pub cartan: Vec<usize>,
    pub weights: Vec<Option<Vec<String>>>,
}

impl From<&LieSuperalgebra> for AlgebraJson {
    fn from(a: &LieSuperalgebra) -> Self {
        let mut bracket: Vec<Entry> = a
            .structure_constants()
            .into_iter()
            .map(|(i, j, k, c)| (i, j, k, rat_to_string(&c)))
            .collect();
        bracket.sort_by(|x, y| (x.0, x.1, x.2).cmp(&(y.0, y.1, y.2)));
        AlgebraJson {
            reference: a.reference().to_string(),
            family: a.family(),
            params: a.params().to_vec(),
            labels: a.labels().to_vec(),
            parity: a.parities().to_vec(),
            bracket,
            cartan: a.cartan().to_vec(),
            weights: a
                .weights()
                .iter()
                .map(|w| w.as_ref().map(|w| w.iter().map(rat_to_string).collect()))
                .collect(),
        }
    }
}

impl AlgebraJson {
    /// Rebuild from the reference; fails if the stored data disagree.
    pub fn load(&self) -> Result<Arc<LieSuperalgebra>, JsonError> {
        let r: AlgebraRef = self
            .reference
            .parse()
            .map_err(|e| JsonError::Algebra(DetectError::Algebra(e)))?;
        let a = detecting::resolve(&r)?;
        if AlgebraJson::from(a.as_ref()) != *self {
            return Err(JsonError::ConstantsMismatch(self.reference.clone()));
        }
        Ok(a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub algebra_ref: String,
    pub dim0: usize,
    pub dim1: usize,
    pub action: Vec<Entry>,
}

impl From<&Supermodule> for ModuleJson {
    fn from(m: &Supermodule) -> Self {
        let mut action = Vec::new();
        for (k, a) in m.action().iter().enumerate() {
            let mut es: Vec<(usize, usize, &Rational)> = a.iter().collect();
            es.sort_by_key(|(i, j, _)| (*i, *j));
            action.extend(es.into_iter().map(|(i, j, c)| (k, i, j, rat_to_string(c))));
        }
        ModuleJson {
            algebra_ref: m.algebra().reference().to_string(),
            dim0: m.dim0(),
            dim1: m.dim1(),
            action,
        }
    }
}

impl ModuleJson {
    pub fn load(&self) -> Result<Supermodule, JsonError> {
        let r: AlgebraRef = self
            .algebra_ref
            .parse()
            .map_err(|e| JsonError::Algebra(DetectError::Algebra(e)))?;
        self.load_over(detecting::resolve(&r)?)
    }

    /// Load against an algebra already in hand.
    pub fn load_over(&self, a: Arc<LieSuperalgebra>) -> Result<Supermodule, JsonError> {
        let d = self.dim0 + self.dim1;
        let mut mats = vec![SparseMatrix::zeros(d, d); a.dim()];
        for (k, i, j, c) in &self.action {
            if *k >= a.dim() || *i >= d || *j >= d {
                return Err(JsonError::OutOfRange(format!("[{k}, {i}, {j}]")));
            }
            mats[*k].add_to(*i, *j, &parse_rational(c)?);
        }
        Ok(Supermodule::from_action(a, self.dim0, self.dim1, mats)?)
    }
}
