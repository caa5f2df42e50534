//! JSON input formats with exact-fraction strings and their canonical
//! serialization.
//!
//! - tensor: `{"dim": d, "faces": [[[..]], ..]}`, faces front to back
//! - system: `{"n": n, "quadrics": [[[..]], ..]}`
//! - polynomial: `{"nvars": m, "poly": "x0^3 + ..."}`
//! - rank-5 coefficients: `{"rank5": [[..], ..]}`, a 4×4 matrix

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::linalg::RatMatrix;
use crate::poly::rat::parse_rat;
use crate::poly::{MultiPoly, PolyError, Rat};
use crate::tensor::{Tensor3, TensorError};
use crate::weddle::{rank5_system, LinearSystem, WeddleError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unrecognized input: expected one of the keys dim, n, nvars, rank5")]
    UnknownFormat,
    #[error("declared size {declared} does not match the data ({actual})")]
    SizeMismatch { declared: usize, actual: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Weddle(#[from] WeddleError),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorJson {
    dim: usize,
    faces: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemJson {
    n: usize,
    quadrics: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyJson {
    nvars: usize,
    poly: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Rank5Json {
    rank5: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AnyJson {
    Tensor(TensorJson),
    System(SystemJson),
    Poly(PolyJson),
    Rank5(Rank5Json),
}

/// A parsed input file.
#[derive(Clone, Debug, PartialEq)]
pub enum Input {
    Tensor(Tensor3),
    System(LinearSystem),
    Poly(MultiPoly),
    /// Coefficient matrix `M` of the rank-5 construction.
    Rank5(RatMatrix),
}

impl Input {
    /// The linear system this input describes, if any.
    pub fn system(&self) -> Result<Option<LinearSystem>, IoError> {
        Ok(match self {
            Input::Tensor(t) => Some(LinearSystem::from_tensor(t)?),
            Input::System(s) => Some(s.clone()),
            Input::Rank5(m) => Some(rank5_system(m)?),
            Input::Poly(_) => None,
        })
    }
}

fn parse_matrix(rows: &[Vec<String>]) -> Result<RatMatrix, IoError> {
    rows.iter()
        .map(|row| row.iter().map(|s| parse_rat(s).map_err(IoError::from)).collect())
        .collect()
}

fn print_matrix(m: &RatMatrix) -> Vec<Vec<String>> {
    m.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect()
}

fn check_size(declared: usize, actual: usize) -> Result<(), IoError> {
    if declared != actual {
        return Err(IoError::SizeMismatch { declared, actual });
    }
    Ok(())
}

pub fn parse_input(text: &str) -> Result<Input, IoError> {
    let any: AnyJson = serde_json::from_str(text).map_err(|e| {
        if e.is_data() {
            IoError::UnknownFormat
        } else {
            IoError::Json(e)
        }
    })?;
    match any {
        AnyJson::Tensor(t) => {
            let faces = t.faces.iter().map(|f| parse_matrix(f)).collect::<Result<Vec<_>, _>>()?;
            check_size(t.dim, faces.len())?;
            Ok(Input::Tensor(Tensor3::from_faces(&faces)?))
        }
        AnyJson::System(s) => {
            let quadrics = s.quadrics.iter().map(|q| parse_matrix(q)).collect::<Result<Vec<_>, _>>()?;
            check_size(s.n + 1, quadrics.len())?;
            Ok(Input::System(LinearSystem::new(quadrics)?))
        }
        AnyJson::Poly(p) => Ok(Input::Poly(MultiPoly::parse(&p.poly, Some(p.nvars))?)),
        AnyJson::Rank5(r) => {
            let m = parse_matrix(&r.rank5)?;
            if m.len() != 4 || m.iter().any(|row| row.len() != 4) {
                return Err(WeddleError::Shape("rank-5 coefficients must be 4x4".into()).into());
            }
            Ok(Input::Rank5(m))
        }
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn tensor_to_json(t: &Tensor3) -> String {
    pretty(&TensorJson {
        dim: t.dim(),
        faces: t.faces().iter().map(print_matrix).collect(),
    })
}

pub fn system_to_json(s: &LinearSystem) -> String {
    pretty(&SystemJson {
        n: s.n(),
        quadrics: s.quadrics().iter().map(print_matrix).collect(),
    })
}

pub fn poly_to_json(p: &MultiPoly) -> String {
    pretty(&PolyJson {
        nvars: p.nvars(),
        poly: p.to_string(),
    })
}

/// Canonical text of an input; parsing it back gives the same input.
pub fn to_canonical(input: &Input) -> String {
    match input {
        Input::Tensor(t) => tensor_to_json(t),
        Input::System(s) => system_to_json(s),
        Input::Poly(p) => poly_to_json(p),
        Input::Rank5(m) => pretty(&Rank5Json { rank5: print_matrix(m) }),
    }
}

/// Exact rationals as strings, for reports.
pub fn rats_to_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}
