//! Ensembles `{p_i, ρ_i}` and the quantities that depend only on them.

use crate::classical::ProbVector;
use crate::error::{Error, Result};
use crate::linalg::{c, hs_norm, kron, von_neumann_entropy, CMatrix, DensityMatrix, HermitianMatrix};
use crate::notion::DistanceNotion;
use crate::value::Divergence;

/// Largest block matrix [`verify_property_f`] will build.
pub const BLOCK_DIM_CAP: usize = 32;

/// A finite ensemble of states with prior weights and the cached average state.
#[derive(Clone, Debug)]
pub struct Ensemble {
    weights: ProbVector,
    states: Vec<DensityMatrix>,
    average: DensityMatrix,
}

impl Ensemble {
    pub fn new(weights: ProbVector, states: Vec<DensityMatrix>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        if weights.len() != states.len() {
            return Err(Error::DimensionMismatch(weights.len(), states.len()));
        }
        let average = DensityMatrix::mixture(weights.as_slice(), &states)?;
        Ok(Self {
            weights,
            states,
            average,
        })
    }

    pub fn from_parts(weights: Vec<f64>, states: Vec<DensityMatrix>) -> Result<Self> {
        Self::new(ProbVector::new(weights)?, states)
    }

    pub fn weights(&self) -> &ProbVector {
        &self.weights
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    /// `ρ = Σ p_i ρ_i`.
    pub fn average(&self) -> &DensityMatrix {
        &self.average
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.average.dim()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &DensityMatrix)> {
        self.weights.iter().copied().zip(self.states.iter())
    }

    /// Every state conjugated by the same unitary.
    pub fn conjugate(&self, u: &CMatrix) -> Result<Self> {
        let states = self
            .states
            .iter()
            .map(|s| s.conjugate(u))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.weights.clone(), states)
    }
}

/// Distance-based Holevo quantity `X_d = Σ p_i d(ρ_i || ρ)`.
pub fn dbhq(e: &Ensemble, notion: DistanceNotion) -> Divergence {
    let value: Divergence = e
        .iter()
        .map(|(p, rho)| {
            notion
                .quantum(rho, e.average())
                .expect("ensemble states share a dimension")
                .weighted(p)
        })
        .sum();
    if notion == DistanceNotion::RelativeEntropy && cfg!(debug_assertions) {
        debug_assert!((value.value() - holevo_entropic(e)).abs() <= 1e-9);
    }
    value
}

/// Holevo quantity through entropies: `S(ρ) - Σ p_i S(ρ_i)`.
pub fn holevo_entropic(e: &Ensemble) -> f64 {
    von_neumann_entropy(e.average())
        - e.iter()
            .map(|(p, rho)| p * von_neumann_entropy(rho))
            .sum::<f64>()
}

/// `N_c = ½ Σ_{k,l} ||[p_k ρ_k, p_l ρ_l]||_2` over all ordered pairs.
pub fn non_commutativity(e: &Ensemble) -> f64 {
    let mut total = 0.0;
    for (pk, rk) in e.iter() {
        for (pl, rl) in e.iter() {
            let a = rk.as_matrix();
            let b = rl.as_matrix();
            let commutator = a * b - b * a;
            total += 0.5 * pk * pl * hs_norm(&commutator);
        }
    }
    total
}

/// `γ = Tr ρ²`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.as_hermitian().trace_product(rho.as_hermitian())
}

/// Both sides of the block-diagonal identity
/// `d(Σ p_i |i⟩⟨i| ⊗ ρ_i || Σ p_j |j⟩⟨j| ⊗ ρ) = Σ p_i d(ρ_i || ρ)`,
/// with the left side evaluated on explicitly built `n·dim` matrices.
pub fn verify_property_f(e: &Ensemble, notion: DistanceNotion) -> Result<(Divergence, Divergence)> {
    let n = e.len();
    let big = n * e.dim();
    if big > BLOCK_DIM_CAP {
        return Err(Error::DimensionCap(big, BLOCK_DIM_CAP));
    }
    let mut correlated = HermitianMatrix::zeros(big);
    let mut uncorrelated = HermitianMatrix::zeros(big);
    for (i, (p, rho)) in e.iter().enumerate() {
        let mut marker = vec![0.0; n];
        marker[i] = p;
        let label = HermitianMatrix::from_real_diagonal(&marker);
        correlated = &correlated + &kron(&label, rho.as_hermitian());
        uncorrelated = &uncorrelated + &kron(&label, e.average().as_hermitian());
    }
    let lhs = notion.quantum(
        &DensityMatrix::from_hermitian(correlated)?,
        &DensityMatrix::from_hermitian(uncorrelated)?,
    )?;
    let rhs = e
        .iter()
        .map(|(p, rho)| Ok(notion.quantum(rho, e.average())?.weighted(p)))
        .sum::<Result<Divergence>>()?;
    Ok((lhs, rhs))
}

/// The correlated preparation state `ρ_c = Σ p_i |i⟩⟨i| ⊗ ρ_i`.
pub fn correlated_state(e: &Ensemble) -> Result<DensityMatrix> {
    let n = e.len();
    let mut acc = CMatrix::zeros(n * e.dim(), n * e.dim());
    for (i, (p, rho)) in e.iter().enumerate() {
        let mut label = CMatrix::zeros(n, n);
        label[(i, i)] = c(p, 0.0);
        acc += label.kronecker(rho.as_matrix());
    }
    DensityMatrix::new(acc)
}
