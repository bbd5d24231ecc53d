//! Seeded random ensembles, states, unitaries and channels.
//!
//! Everything draws from a caller-supplied RNG; [`rng_from_seed`] gives the
//! ChaCha8 stream used by the experiments, so a seed reproduces a run
//! exactly on every platform.

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal, UnitBall, UnitSphere};

use crate::ensemble::Ensemble;
use crate::linalg::{c, CMatrix, DensityMatrix, HermitianMatrix};
use crate::measurement::Povm;
use crate::qdistance::KrausChannel;
use crate::qubit::{bloch_to_density, BlochVector};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform (flat Dirichlet) weights on `n` outcomes.
pub fn dirichlet_weights<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let draws: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = draws.iter().sum();
    draws.into_iter().map(|x: f64| x / total).collect()
}

/// Uniform point of the closed unit ball.
pub fn bloch_in_ball<R: Rng + ?Sized>(rng: &mut R) -> BlochVector {
    let v: [f64; 3] = UnitBall.sample(rng);
    BlochVector::from_array(v).expect("sample lies in the unit ball")
}

/// Uniform unit vector.
pub fn random_axis<R: Rng + ?Sized>(rng: &mut R) -> Vector3<f64> {
    let v: [f64; 3] = UnitSphere.sample(rng);
    Vector3::from(v).normalize()
}

/// `n` qubit states with Bloch vectors uniform in the ball and flat
/// Dirichlet weights.
pub fn random_qubit_ensemble<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Ensemble {
    let weights = dirichlet_weights(rng, n);
    let states = (0..n).map(|_| bloch_to_density(&bloch_in_ball(rng))).collect();
    Ensemble::from_parts(weights, states).expect("valid by construction")
}

fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        c(re, im)
    })
}

/// Full-rank state `G G† / Tr(G G†)` from a complex Gaussian `G`.
pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityMatrix {
    let g = ginibre(rng, dim, dim);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::from_hermitian(HermitianMatrix::hermitian_part(m / c(tr, 0.0)))
        .expect("Wishart matrices are states after normalization")
}

/// Haar-random unitary (QR of a Gaussian matrix with the phases of `R` fixed).
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    let qr = ginibre(rng, dim, dim).qr();
    let q = qr.q();
    let r = qr.r();
    let mut u = q;
    for k in 0..dim {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 { d / c(d.norm(), 0.0) } else { c(1.0, 0.0) };
        let mut col = u.column_mut(k);
        col *= phase;
    }
    u
}

/// Ensemble of `n` random full-rank states of dimension `dim`.
pub fn random_ensemble<R: Rng + ?Sized>(rng: &mut R, n: usize, dim: usize) -> Ensemble {
    let weights = dirichlet_weights(rng, n);
    let states = (0..n).map(|_| random_density_matrix(rng, dim)).collect();
    Ensemble::from_parts(weights, states).expect("valid by construction")
}

/// Ensemble of states diagonal in the computational basis.
pub fn random_diagonal_ensemble<R: Rng + ?Sized>(rng: &mut R, n: usize, dim: usize) -> Ensemble {
    let weights = dirichlet_weights(rng, n);
    let states = (0..n)
        .map(|_| DensityMatrix::diagonal(&dirichlet_weights(rng, dim)).expect("probabilities"))
        .collect();
    Ensemble::from_parts(weights, states).expect("valid by construction")
}

/// Rank-one projective measurement in a Haar-random basis.
pub fn random_projective_measurement<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Povm {
    Povm::from_basis(&random_unitary(rng, dim)).expect("unitary columns are orthonormal")
}

/// Channel with `ops` Kraus operators cut from a random isometry
/// `C^dim → C^(ops·dim)`.
pub fn random_channel<R: Rng + ?Sized>(rng: &mut R, dim: usize, ops: usize) -> KrausChannel {
    let ops = ops.max(1);
    let u = random_unitary(rng, ops * dim);
    let kraus = (0..ops)
        .map(|k| u.view((k * dim, 0), (dim, dim)).into_owned())
        .collect();
    KrausChannel::new(kraus).expect("blocks of an isometry are trace preserving")
}
