//! Ensemble files.
//!
//! ```json
//! {"dim": 2, "states": [
//!   {"p": 0.5, "matrix": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]},
//!   {"p": 0.5, "matrix": [[[0.5, 0], [0.5, 0]], [[0.5, 0], [0.5, 0]]]}
//! ]}
//! ```
//!
//! Matrix entries are `[re, im]` pairs in row-major order. Qubit files may
//! give `"bloch": [x, y, z]` instead of `"matrix"`; one file uses one form
//! throughout.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::ensemble::Ensemble;
use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, DensityMatrix};
use crate::qubit::{bloch_to_density, BlochVector};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EnsembleFile {
    dim: usize,
    states: Vec<StateEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateEntry {
    p: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bloch: Option<[f64; 3]>,
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn matrix_from_rows(rows: &[Vec<[f64; 2]>], dim: usize) -> Result<CMatrix> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::Format(format!("matrix is not {dim}x{dim}")));
    }
    Ok(CMatrix::from_fn(dim, dim, |i, j| c(rows[i][j][0], rows[i][j][1])))
}

/// Parses an ensemble from JSON text.
pub fn parse_ensemble(text: &str) -> Result<Ensemble> {
    let file: EnsembleFile = serde_json::from_str(text).map_err(parse_error)?;
    if file.states.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let uses_bloch = file.states[0].bloch.is_some();
    let mut weights = Vec::with_capacity(file.states.len());
    let mut states = Vec::with_capacity(file.states.len());
    for (k, entry) in file.states.iter().enumerate() {
        let state = match (&entry.matrix, &entry.bloch) {
            (Some(_), Some(_)) => {
                return Err(Error::Format(format!("state {k} gives both matrix and bloch")));
            }
            (None, None) => return Err(Error::Format(format!("state {k} gives neither matrix nor bloch"))),
            (Some(rows), None) if !uses_bloch => DensityMatrix::new(matrix_from_rows(rows, file.dim)?)?,
            (None, Some(b)) if uses_bloch => {
                if file.dim != 2 {
                    return Err(Error::Format("bloch vectors require dim 2".into()));
                }
                bloch_to_density(&BlochVector::from_array(*b)?)
            }
            _ => return Err(Error::Format("matrix and bloch forms are mixed".into())),
        };
        weights.push(entry.p);
        states.push(state);
    }
    Ensemble::from_parts(weights, states)
}

/// Reads an ensemble file.
pub fn read_ensemble(path: impl AsRef<Path>) -> Result<Ensemble> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_ensemble(&text)
}

/// Serializes an ensemble in matrix form.
pub fn ensemble_to_json(e: &Ensemble) -> String {
    let dim = e.dim();
    let states = e
        .iter()
        .map(|(p, rho)| StateEntry {
            p,
            matrix: Some(
                (0..dim)
                    .map(|i| {
                        (0..dim)
                            .map(|j| {
                                let z = rho.as_matrix()[(i, j)];
                                [z.re, z.im]
                            })
                            .collect()
                    })
                    .collect(),
            ),
            bloch: None,
        })
        .collect();
    serde_json::to_string(&EnsembleFile { dim, states }).expect("plain data serializes")
}

/// SHA-256 of the matrix-form serialization, as lowercase hex.
pub fn ensemble_digest(e: &Ensemble) -> String {
    hex::encode(Sha256::digest(ensemble_to_json(e).as_bytes()))
}
