//! Generalized Holevo quantities and generalized accessible information.
//!
//! For an ensemble `{p_i, ρ_i}` with average `ρ = Σ p_i ρ_i` and a distance
//! notion `d`, the distance-based Holevo quantity is
//! `X_d = Σ p_i d(ρ_i || ρ)`. Measuring the ensemble with a POVM `{M_j}`
//! produces a joint table `P_ij = p_i Tr(M_j ρ_i)`; the generalized
//! accessible information `I_d` is the best value of `d(P || p×q)` over
//! measurements. For dissimilarities `I_d ≤ X_d`; for similarity measures
//! (Bhattacharyya, probability of error) the inequality flips.
//!
//! ```
//! use holevo::{dbhq, gai, qubit, DistanceNotion, OptimizerConfig};
//!
//! let params = qubit::ExampleParams::new(std::f64::consts::FRAC_PI_4, 0.5).unwrap();
//! let e = qubit::example_ensemble(&params);
//! let x = dbhq(&e, DistanceNotion::RelativeEntropy).value();
//! let i = gai(&e, DistanceNotion::RelativeEntropy, &OptimizerConfig::default()).unwrap();
//! assert!(i.value <= x + 1e-9);
//! ```

pub mod classical;
pub mod ensemble;
pub mod error;
pub mod experiments;
pub mod io;
pub mod linalg;
pub mod measurement;
pub mod notion;
pub mod optimize;
pub mod qdistance;
pub mod qubit;
pub mod random;
pub mod value;

pub use classical::{JointDistribution, ProbVector};
pub use ensemble::{dbhq, non_commutativity, purity, verify_property_f, Ensemble};
pub use error::{Error, Result};
pub use linalg::{DensityMatrix, HermitianMatrix};
pub use measurement::{check_holevo_bound, check_purity_bound, gai, BoundCheck, GaiResult, Povm};
pub use notion::{Direction, DistanceNotion};
pub use optimize::OptimizerConfig;
pub use qdistance::{KrausChannel, QuantumDistance};
pub use value::Divergence;
