//! Classical divergences between probability vectors and joint distributions.
//!
//! Joint distributions are kept as dense `(n+1) × (m+1)` tables with zero cells
//! left in place, so `P` and `p × q` flatten to index-aligned vectors.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::neg_xlog2x;
use crate::notion::DistanceNotion;
use crate::value::Divergence;

/// Tolerance on `Σ p_i - 1`.
pub const SUM_TOL: f64 = 1e-10;
/// Entries in `[-NEGATIVE_TOL, 0)` are roundoff and clamped to zero.
pub const NEGATIVE_TOL: f64 = 1e-12;

/// A finite probability distribution.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ProbVector(Vec<f64>);

impl ProbVector {
    pub fn new(mut probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidProbabilities("empty".into()));
        }
        for (i, x) in probs.iter_mut().enumerate() {
            if !x.is_finite() {
                return Err(Error::InvalidProbabilities(format!("entry {i} is {x}")));
            }
            if *x < -NEGATIVE_TOL {
                return Err(Error::InvalidProbabilities(format!("entry {i} is negative ({x})")));
            }
            if *x < 0.0 {
                *x = 0.0;
            }
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidProbabilities(format!("sum is {total}")));
        }
        Ok(Self(probs))
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }
}

impl std::ops::Index<usize> for ProbVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

fn same_len(p: &ProbVector, q: &ProbVector) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch(p.len(), q.len()));
    }
    Ok(())
}

/// Shannon entropy in bits.
pub fn shannon_entropy(p: &ProbVector) -> f64 {
    p.iter().map(|&x| neg_xlog2x(x)).sum()
}

/// `½ Σ |p_i - q_i|`.
pub fn kolmogorov_c(p: &ProbVector, q: &ProbVector) -> Result<f64> {
    same_len(p, q)?;
    Ok(0.5 * p.iter().zip(q.iter()).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

/// Probability of error `½ Σ min(p_i, q_i)`.
///
/// Also equal to `½ - ½ K(p||q)`; the two forms are cross-checked in debug builds.
pub fn prob_error_c(p: &ProbVector, q: &ProbVector) -> Result<f64> {
    same_len(p, q)?;
    let direct = 0.5 * p.iter().zip(q.iter()).map(|(a, b)| a.min(*b)).sum::<f64>();
    debug_assert!((direct - (0.5 - 0.5 * kolmogorov_c(p, q)?)).abs() <= 1e-12);
    Ok(direct)
}

/// Bhattacharyya coefficient `Σ sqrt(p_i q_i)`.
pub fn bhattacharyya_c(p: &ProbVector, q: &ProbVector) -> Result<f64> {
    same_len(p, q)?;
    Ok(p.iter().zip(q.iter()).map(|(a, b)| (a * b).sqrt()).sum())
}

/// `Σ p_i log2(p_i / q_i)`; infinite if some `p_i > 0` has `q_i = 0`.
pub fn relative_entropy_c(p: &ProbVector, q: &ProbVector) -> Result<Divergence> {
    same_len(p, q)?;
    let mut acc = 0.0;
    for (&a, &b) in p.iter().zip(q.iter()) {
        if a > 0.0 {
            if b <= 0.0 {
                return Ok(Divergence::Infinite);
            }
            acc += a * (a / b).log2();
        }
    }
    Ok(Divergence::Finite(acc.max(0.0)))
}

/// Jensen-Shannon divergence `H((p+q)/2) - ½H(p) - ½H(q)` in bits.
pub fn jensen_shannon_c(p: &ProbVector, q: &ProbVector) -> Result<f64> {
    same_len(p, q)?;
    let mid: f64 = p
        .iter()
        .zip(q.iter())
        .map(|(a, b)| neg_xlog2x(0.5 * (a + b)))
        .sum();
    Ok((mid - 0.5 * shannon_entropy(p) - 0.5 * shannon_entropy(q)).max(0.0))
}

/// Joint distribution `P_ij` of a preparation index `i` and an outcome `j`.
#[derive(Clone, Debug, Serialize)]
pub struct JointDistribution {
    rows: usize,
    cols: usize,
    /// Row-major `P_ij`.
    entries: Vec<f64>,
    row_marginal: ProbVector,
    col_marginal: ProbVector,
}

impl JointDistribution {
    /// Builds from a row-major table; marginals are the row and column sums.
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != rows * cols || rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(entries.len(), rows * cols));
        }
        let flat = ProbVector::new(entries)?;
        let entries = flat.0;
        let p: Vec<f64> = (0..rows)
            .map(|i| entries[i * cols..(i + 1) * cols].iter().sum())
            .collect();
        let q: Vec<f64> = (0..cols)
            .map(|j| (0..rows).map(|i| entries[i * cols + j]).sum())
            .collect();
        Ok(Self {
            rows,
            cols,
            entries,
            row_marginal: ProbVector::new(p)?,
            col_marginal: ProbVector::new(q)?,
        })
    }

    /// `P_ij = p_i q_j`.
    pub fn independent(p: &ProbVector, q: &ProbVector) -> Result<Self> {
        let entries = p
            .iter()
            .flat_map(|a| q.iter().map(move |b| a * b))
            .collect();
        Self::new(p.len(), q.len(), entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    pub fn row_marginal(&self) -> &ProbVector {
        &self.row_marginal
    }

    pub fn col_marginal(&self) -> &ProbVector {
        &self.col_marginal
    }

    /// `vec(P)` in row-major order.
    pub fn flattened(&self) -> ProbVector {
        ProbVector(self.entries.clone())
    }

    /// `vec(p × q)` in the same order as [`flattened`](Self::flattened).
    pub fn product_of_marginals(&self) -> ProbVector {
        let p = self.row_marginal.as_slice();
        let q = self.col_marginal.as_slice();
        ProbVector(
            p.iter()
                .flat_map(|a| q.iter().map(move |b| a * b))
                .collect(),
        )
    }
}

/// Mutual information `H(p) + H(q) - H(P)` in bits.
pub fn mutual_information(j: &JointDistribution) -> f64 {
    let entropic = shannon_entropy(j.row_marginal()) + shannon_entropy(j.col_marginal())
        - shannon_entropy(&j.flattened());
    if cfg!(debug_assertions) {
        let divergence = relative_entropy_c(&j.flattened(), &j.product_of_marginals())
            .expect("aligned vectors")
            .value();
        debug_assert!((entropic - divergence).abs() <= 1e-10);
    }
    entropic.max(0.0)
}

/// `D(P || p × q)`: the classical form of `notion` between the joint table and
/// the product of its marginals.
pub fn d_of_joint(notion: DistanceNotion, j: &JointDistribution) -> Divergence {
    notion
        .classical(&j.flattened(), &j.product_of_marginals())
        .expect("P and p×q have the same shape")
}
