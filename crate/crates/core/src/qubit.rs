//! Closed forms for qubit ensembles in the Bloch representation.
//!
//! With `ρ_i = ½(I + β_i·σ)`, `ρ = ½(I + β_m·σ)` and a measurement along the
//! unit axis `z`, every quantity in this crate reduces to dot and cross
//! products of Bloch vectors. These expressions are independent of the
//! matrix path (eigendecompositions, joint tables) and the two are
//! cross-checked in the test suite.
//!
//! Two of the expressions are easy to get wrong:
//!
//! - The Kolmogorov distance of the joint table keeps the prior weight:
//!   `K(P || p×q) = ½ Σ_i p_i |(β_i - β_m)·z|`.
//! - The Bhattacharyya coefficient of the joint table mixes the state and
//!   the average in the inner root:
//!   `Σ_i (p_i/√2) sqrt(1 + a_i b + sqrt((1 - a_i²)(1 - b²)))` with
//!   `a_i = β_i·z`, `b = β_m·z`.

use std::f64::consts::SQRT_2;

use nalgebra::Vector3;

use crate::ensemble::Ensemble;
use crate::error::{Error, Result};
use crate::linalg::{c, pauli, CMatrix, DensityMatrix, HermitianMatrix};

/// Slack on `|β| ≤ 1`.
pub const BALL_TOL: f64 = 1e-10;

/// A point of the closed unit ball; the Bloch vector of a qubit state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochVector(Vector3<f64>);

impl BlochVector {
    /// Rejects `|v| > 1 + BALL_TOL`; anything in `(1, 1 + BALL_TOL]` is
    /// rescaled onto the sphere.
    pub fn new(v: Vector3<f64>) -> Result<Self> {
        let norm = v.norm();
        if !norm.is_finite() || norm > 1.0 + BALL_TOL {
            return Err(Error::OutsideBlochBall(norm));
        }
        if norm > 1.0 {
            return Ok(Self(v / norm));
        }
        Ok(Self(v))
    }

    pub fn from_array(v: [f64; 3]) -> Result<Self> {
        Self::new(Vector3::from(v))
    }

    pub fn vector(&self) -> &Vector3<f64> {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.0.x, self.0.y, self.0.z]
    }
}

/// `½(I + β·σ)`.
pub fn bloch_to_density(b: &BlochVector) -> DensityMatrix {
    let v = b.vector();
    let m = CMatrix::from_row_slice(
        2,
        2,
        &[
            c(0.5 * (1.0 + v.z), 0.0),
            c(0.5 * v.x, -0.5 * v.y),
            c(0.5 * v.x, 0.5 * v.y),
            c(0.5 * (1.0 - v.z), 0.0),
        ],
    );
    DensityMatrix::new(m).expect("Bloch ball points are states")
}

/// `β_k = Tr(ρ σ_k)`.
pub fn density_to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::UnsupportedDimension(rho.dim()));
    }
    let [x, y, z] = pauli().map(|s| s.trace_product(rho.as_hermitian()));
    BlochVector::new(Vector3::new(x, y, z))
}

/// Builds an ensemble of qubit states from Bloch vectors.
pub fn qubit_ensemble(weights: Vec<f64>, blochs: &[BlochVector]) -> Result<Ensemble> {
    Ensemble::from_parts(weights, blochs.iter().map(bloch_to_density).collect())
}

/// Bloch data of a qubit ensemble: weights, `β_i` and `β_m = Σ p_i β_i`.
#[derive(Clone, Debug)]
pub struct BlochEnsemble {
    pub weights: Vec<f64>,
    pub vectors: Vec<Vector3<f64>>,
    pub mean: Vector3<f64>,
}

impl BlochEnsemble {
    pub fn from_ensemble(e: &Ensemble) -> Result<Self> {
        if e.dim() != 2 {
            return Err(Error::UnsupportedDimension(e.dim()));
        }
        let vectors = e
            .states()
            .iter()
            .map(|s| density_to_bloch(s).map(|b| *b.vector()))
            .collect::<Result<Vec<_>>>()?;
        let weights = e.weights().as_slice().to_vec();
        let mean = weights
            .iter()
            .zip(&vectors)
            .fold(Vector3::zeros(), |acc, (p, v)| acc + v * *p);
        Ok(Self {
            weights,
            vectors,
            mean,
        })
    }

    fn iter(&self) -> impl Iterator<Item = (f64, &Vector3<f64>)> {
        self.weights.iter().copied().zip(self.vectors.iter())
    }
}

/// `f(x) = (1+x) log2(1+x) + (1-x) log2(1-x)` on `[0, 1]`, minus twice the
/// binary entropy shifted by one: `f(x) = 2(1 - h((1+x)/2))`. `f(1) = 2`.
pub fn binary_f(x: f64) -> f64 {
    let x = x.abs().min(1.0);
    let xlogx = |t: f64| if t > 0.0 { t * t.log2() } else { 0.0 };
    xlogx(1.0 + x) + xlogx(1.0 - x)
}

/// `X_K = ½ Σ p_i |β_i - β_m|`.
pub fn xk_closed(e: &BlochEnsemble) -> f64 {
    0.5 * e.iter().map(|(p, b)| p * (b - e.mean).norm()).sum::<f64>()
}

/// `K(P || p×q) = ½ Σ p_i |(β_i - β_m)·z|`.
pub fn k_joint_closed(e: &BlochEnsemble, z: &Vector3<f64>) -> f64 {
    0.5 * e.iter().map(|(p, b)| p * (b - e.mean).dot(z).abs()).sum::<f64>()
}

fn root_fidelity(dot: f64, norm_sq_a: f64, norm_sq_b: f64) -> f64 {
    let mixed = ((1.0 - norm_sq_a).max(0.0) * (1.0 - norm_sq_b).max(0.0)).sqrt();
    (1.0 + dot + mixed).max(0.0).sqrt() / SQRT_2
}

/// `X_B = Σ p_i B(ρ_i, ρ)` with the qubit fidelity formula.
pub fn xb_closed(e: &BlochEnsemble) -> f64 {
    let m2 = e.mean.norm_squared();
    e.iter()
        .map(|(p, b)| p * root_fidelity(b.dot(&e.mean), b.norm_squared(), m2))
        .sum()
}

/// `B(P || p×q)` for the measurement along `z`.
pub fn b_joint_closed(e: &BlochEnsemble, z: &Vector3<f64>) -> f64 {
    let bm = e.mean.dot(z);
    e.iter()
        .map(|(p, b)| {
            let a = b.dot(z);
            p * root_fidelity(a * bm, a * a, bm * bm)
        })
        .sum()
}

/// `X_Sr = ½ Σ p_i f(|β_i|) - ½ f(|β_m|)`, the Holevo quantity in bits.
pub fn xsr_closed(e: &BlochEnsemble) -> f64 {
    0.5 * e.iter().map(|(p, b)| p * binary_f(b.norm())).sum::<f64>() - 0.5 * binary_f(e.mean.norm())
}

/// `H_r(P || p×q) = ½ Σ p_i f(|β_i·z|) - ½ f(|β_m·z|)`, the mutual information.
pub fn hr_joint_closed(e: &BlochEnsemble, z: &Vector3<f64>) -> f64 {
    0.5 * e.iter().map(|(p, b)| p * binary_f(b.dot(z))).sum::<f64>() - 0.5 * binary_f(e.mean.dot(z))
}

/// `N_c = Σ_{k,l} p_k p_l |β_k × β_l| / (2√2)`.
pub fn nc_closed(e: &BlochEnsemble) -> f64 {
    let mut total = 0.0;
    for (pk, bk) in e.iter() {
        for (pl, bl) in e.iter() {
            total += pk * pl * bk.cross(bl).norm();
        }
    }
    total / (2.0 * SQRT_2)
}

/// `γ = ½(1 + |β_m|²)`.
pub fn purity_closed(e: &BlochEnsemble) -> f64 {
    0.5 * (1.0 + e.mean.norm_squared())
}

/// Direction of `β_m`, i.e. the eigenbasis of the average state; `+z` when
/// the average is maximally mixed.
pub fn average_axis(e: &BlochEnsemble) -> Vector3<f64> {
    let n = e.mean.norm();
    if n > 1e-12 {
        e.mean / n
    } else {
        Vector3::z()
    }
}

/// Optimal Kolmogorov measurement for a two-state qubit ensemble.
///
/// The axis `z = (β_0 - β_1)/|β_0 - β_1|` attains
/// `K(P || p×q) = p̂(1-p̂)|β_0 - β_1| = X_K`.
pub fn two_state_kolmogorov_optimum(e: &Ensemble) -> Result<(Vector3<f64>, f64)> {
    let b = BlochEnsemble::from_ensemble(e)?;
    if b.vectors.len() != 2 {
        return Err(Error::DegenerateEnsemble(format!(
            "expected two states, got {}",
            b.vectors.len()
        )));
    }
    let diff = b.vectors[0] - b.vectors[1];
    let len = diff.norm();
    if len <= 1e-12 {
        return Err(Error::DegenerateEnsemble("the two states coincide".into()));
    }
    let p = b.weights[0];
    Ok((diff / len, p * (1.0 - p) * len))
}

/// Parameters of the two-pure-state family `{p̂: |0⟩, 1-p̂: cos θ|0⟩ + sin θ|1⟩}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExampleParams {
    theta: f64,
    p_hat: f64,
}

impl ExampleParams {
    pub fn new(theta: f64, p_hat: f64) -> Result<Self> {
        let half_pi = std::f64::consts::FRAC_PI_2;
        if !(0.0..=half_pi + 1e-12).contains(&theta) {
            return Err(Error::OutOfRange(format!("theta = {theta} not in [0, π/2]")));
        }
        if !(0.0..=1.0).contains(&p_hat) {
            return Err(Error::OutOfRange(format!("p_hat = {p_hat} not in [0, 1]")));
        }
        Ok(Self {
            theta: theta.min(half_pi),
            p_hat,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn p_hat(&self) -> f64 {
        self.p_hat
    }

    /// `β_0 = (0, 0, 1)`.
    pub fn bloch_0(&self) -> Vector3<f64> {
        Vector3::z()
    }

    /// `β_1 = (sin 2θ, 0, cos 2θ)`.
    pub fn bloch_1(&self) -> Vector3<f64> {
        let (s, c) = (2.0 * self.theta).sin_cos();
        Vector3::new(s, 0.0, c)
    }

    /// `β_m = ((1-p̂) sin 2θ, 0, p̂ + (1-p̂) cos 2θ)`.
    pub fn bloch_mean(&self) -> Vector3<f64> {
        let (s, c) = (2.0 * self.theta).sin_cos();
        Vector3::new((1.0 - self.p_hat) * s, 0.0, self.p_hat + (1.0 - self.p_hat) * c)
    }

    /// `N_c = p̂(1-p̂)|sin 2θ|/√2`.
    pub fn non_commutativity(&self) -> f64 {
        self.p_hat * (1.0 - self.p_hat) * (2.0 * self.theta).sin().abs() / SQRT_2
    }

    /// `γ = 1 - 2p̂(1-p̂) sin²θ`.
    pub fn purity(&self) -> f64 {
        1.0 - 2.0 * self.p_hat * (1.0 - self.p_hat) * self.theta.sin().powi(2)
    }

    /// `X_K = I_K = 2p̂(1-p̂)|sin θ|`.
    pub fn xk(&self) -> f64 {
        2.0 * self.p_hat * (1.0 - self.p_hat) * self.theta.sin().abs()
    }
}

/// The two-pure-state ensemble, built from the state matrices directly.
pub fn example_ensemble(params: &ExampleParams) -> Ensemble {
    let (s, co) = params.theta.sin_cos();
    let rho0 = DensityMatrix::from_hermitian(HermitianMatrix::from_real_diagonal(&[1.0, 0.0]))
        .expect("|0><0| is a state");
    let rho1 = DensityMatrix::new(CMatrix::from_row_slice(
        2,
        2,
        &[c(co * co, 0.0), c(co * s, 0.0), c(co * s, 0.0), c(s * s, 0.0)],
    ))
    .expect("pure state");
    Ensemble::from_parts(vec![params.p_hat, 1.0 - params.p_hat], vec![rho0, rho1])
        .expect("weights sum to one")
}
