//! The five distinguishability notions and how each one is evaluated.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::classical::{
    bhattacharyya_c, jensen_shannon_c, kolmogorov_c, prob_error_c, relative_entropy_c,
    ProbVector,
};
use crate::error::Result;
use crate::linalg::DensityMatrix;
use crate::qdistance::{bhattacharyya_q, qjsd, relative_entropy_q, trace_distance};
use crate::value::Divergence;

/// A distinguishability notion with a classical and a quantum evaluator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DistanceNotion {
    /// Kolmogorov (L1) distance; trace distance on states.
    Kolmogorov,
    /// Probability of error `½ - ½K`.
    ProbError,
    /// Bhattacharyya coefficient; root fidelity on states.
    Bhattacharyya,
    /// Relative entropy in bits.
    RelativeEntropy,
    /// Jensen-Shannon divergence in bits.
    Qjsd,
}

/// Which way a measurement optimization pushes `D(P || p × q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Max,
    Min,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Max => "max",
            Direction::Min => "min",
        })
    }
}

impl DistanceNotion {
    pub const ALL: [DistanceNotion; 5] = [
        DistanceNotion::Kolmogorov,
        DistanceNotion::ProbError,
        DistanceNotion::Bhattacharyya,
        DistanceNotion::RelativeEntropy,
        DistanceNotion::Qjsd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DistanceNotion::Kolmogorov => "kolmogorov",
            DistanceNotion::ProbError => "prob-error",
            DistanceNotion::Bhattacharyya => "bhattacharyya",
            DistanceNotion::RelativeEntropy => "relative-entropy",
            DistanceNotion::Qjsd => "qjsd",
        }
    }

    /// Probability of error and Bhattacharyya are overlaps: larger means
    /// closer. Their associated distances (`K` and Bures²) are decreasing
    /// functions of them.
    pub fn is_similarity(self) -> bool {
        matches!(self, DistanceNotion::ProbError | DistanceNotion::Bhattacharyya)
    }

    /// Direction of the extremum over measurements that defines the
    /// accessible quantity: the one that maximizes the underlying distance.
    pub fn direction(self) -> Direction {
        if self.is_similarity() {
            Direction::Min
        } else {
            Direction::Max
        }
    }

    /// Value of the notion between two states.
    pub fn quantum(self, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<Divergence> {
        Ok(match self {
            DistanceNotion::Kolmogorov => Divergence::Finite(trace_distance(rho, sigma)?),
            DistanceNotion::ProbError => {
                Divergence::Finite(0.5 - 0.5 * trace_distance(rho, sigma)?)
            }
            DistanceNotion::Bhattacharyya => Divergence::Finite(bhattacharyya_q(rho, sigma)?),
            DistanceNotion::RelativeEntropy => relative_entropy_q(rho, sigma)?,
            DistanceNotion::Qjsd => Divergence::Finite(qjsd(rho, sigma)?),
        })
    }

    /// Value of the notion between two probability vectors.
    pub fn classical(self, p: &ProbVector, q: &ProbVector) -> Result<Divergence> {
        Ok(match self {
            DistanceNotion::Kolmogorov => Divergence::Finite(kolmogorov_c(p, q)?),
            DistanceNotion::ProbError => Divergence::Finite(prob_error_c(p, q)?),
            DistanceNotion::Bhattacharyya => Divergence::Finite(bhattacharyya_c(p, q)?),
            DistanceNotion::RelativeEntropy => relative_entropy_c(p, q)?,
            DistanceNotion::Qjsd => Divergence::Finite(jensen_shannon_c(p, q)?),
        })
    }
}

impl fmt::Display for DistanceNotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownNotion(pub String);

impl fmt::Display for UnknownNotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown notion '{}' (expected one of kolmogorov, prob-error, bhattacharyya, \
             relative-entropy, qjsd)",
            self.0
        )
    }
}

impl std::error::Error for UnknownNotion {}

impl FromStr for DistanceNotion {
    type Err = UnknownNotion;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        DistanceNotion::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| UnknownNotion(s.to_string()))
    }
}

impl Serialize for DistanceNotion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}
