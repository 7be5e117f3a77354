use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::labelled::Labelled2Graph;
use crate::error::{Error, Result};

/// Formal rational linear combination of 2-labelled graphs. Terms with
/// isomorphic labelled graphs are merged and zero coefficients dropped; term
/// order is canonical (by edge count, then canonical key).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumGraph2 {
    terms: Vec<(BigRational, Labelled2Graph)>,
}

#[derive(Serialize, Deserialize)]
struct QuantumJson {
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    graph: serde_json::Value,
}

impl QuantumGraph2 {
    pub fn new(terms: Vec<(BigRational, Labelled2Graph)>) -> Self {
        let mut merged: BTreeMap<(usize, Vec<u64>), (BigRational, Labelled2Graph)> =
            BTreeMap::new();
        for (c, g) in terms {
            let key = (g.graph().edge_count(), g.canonical_form());
            match merged.get_mut(&key) {
                Some((acc, _)) => *acc += c,
                None => {
                    merged.insert(key, (c, g));
                }
            }
        }
        QuantumGraph2 {
            terms: merged
                .into_values()
                .filter(|(c, _)| !c.is_zero())
                .collect(),
        }
    }

    pub fn zero() -> Self {
        QuantumGraph2 { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(BigRational, Labelled2Graph)] {
        &self.terms
    }

    pub fn scale(&self, c: &BigRational) -> QuantumGraph2 {
        if c.is_zero() {
            return QuantumGraph2::zero();
        }
        QuantumGraph2 {
            terms: self.terms.iter().map(|(a, g)| (a * c, g.clone())).collect(),
        }
    }

    pub fn add(&self, other: &QuantumGraph2) -> QuantumGraph2 {
        QuantumGraph2::new(
            self.terms
                .iter()
                .chain(&other.terms)
                .cloned()
                .collect(),
        )
    }

    /// Coefficient of the term isomorphic to `g` (zero if absent).
    pub fn coeff_of(&self, g: &Labelled2Graph) -> BigRational {
        let key = g.canonical_form();
        for (c, h) in &self.terms {
            if h.canonical_form() == key {
                return c.clone();
            }
        }
        BigRational::zero()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(QuantumJson {
            terms: self
                .terms
                .iter()
                .map(|(c, g)| TermJson {
                    coeff: coeff_string(c),
                    graph: g.to_json(),
                })
                .collect(),
        })
        .expect("serialization cannot fail")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let dto: QuantumJson = serde_json::from_value(v.clone())?;
        let mut terms = Vec::with_capacity(dto.terms.len());
        for t in dto.terms {
            terms.push((parse_coeff(&t.coeff)?, Labelled2Graph::from_json(&t.graph)?));
        }
        Ok(QuantumGraph2::new(terms))
    }
}

fn coeff_string(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn parse_coeff(s: &str) -> Result<BigRational> {
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad rational coefficient '{s}'")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in '{s}'")));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

impl fmt::Display for QuantumGraph2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, g)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag.is_one() {
                write!(f, "{}", g.describe())?;
            } else {
                write!(f, "{}*{}", coeff_string(&mag), g.describe())?;
            }
        }
        Ok(())
    }
}
