//! JSON matrix format.
//!
//! ```text
//! {"dim": d, "entries": [[[n0,d0,n1,d1,n2,d2,n3,d3], ...], ...]}
//! ```
//!
//! Each entry lists the four rational coefficients as numerator/denominator
//! pairs in basis order `1, ζ, ζ², ζ³`. Integers are written verbatim and
//! may exceed 64 bits.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use super::{CMatrix, CycloNumber};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<Vec<Vec<Number>>>,
}

fn int_to_number(n: &BigInt) -> Number {
    Number::from_str(&n.to_string()).expect("integer literal is valid JSON")
}

fn number_to_int(n: &Number) -> Result<BigInt> {
    BigInt::from_str(&n.to_string())
        .map_err(|_| Error::Malformed(format!("expected an integer, got {n}")))
}

pub fn cyclo_to_json(c: &CycloNumber) -> Vec<Number> {
    c.coeffs()
        .iter()
        .flat_map(|r| [int_to_number(r.numer()), int_to_number(r.denom())])
        .collect()
}

pub fn cyclo_from_json(raw: &[Number]) -> Result<CycloNumber> {
    if raw.len() != 8 {
        return Err(Error::Malformed(format!(
            "entry must hold 8 integers, found {}",
            raw.len()
        )));
    }
    let mut coeffs: [BigRational; 4] = Default::default();
    for (k, pair) in raw.chunks(2).enumerate() {
        let n = number_to_int(&pair[0])?;
        let d = number_to_int(&pair[1])?;
        if d.is_zero() {
            return Err(Error::Malformed("zero denominator".into()));
        }
        coeffs[k] = BigRational::new(n, d);
    }
    Ok(CycloNumber::new(coeffs))
}

impl From<&CMatrix> for MatrixJson {
    fn from(m: &CMatrix) -> Self {
        MatrixJson {
            dim: m.dim(),
            entries: m
                .rows()
                .map(|r| r.iter().map(cyclo_to_json).collect())
                .collect(),
        }
    }
}

impl TryFrom<&MatrixJson> for CMatrix {
    type Error = Error;

    fn try_from(j: &MatrixJson) -> Result<CMatrix> {
        if j.entries.len() != j.dim {
            return Err(Error::Malformed(format!(
                "dim is {} but {} rows given",
                j.dim,
                j.entries.len()
            )));
        }
        let rows = j
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| cyclo_from_json(e))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        CMatrix::from_rows(rows).map_err(|e| Error::Malformed(e.to_string()))
    }
}

pub fn matrix_to_json(m: &CMatrix) -> Value {
    serde_json::to_value(MatrixJson::from(m)).expect("matrix serializes")
}

pub fn matrix_from_json(text: &str) -> Result<CMatrix> {
    let j: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    CMatrix::try_from(&j)
}
