//! Experiment drivers: inequality fuzzing, axiom checks and figure data.
//!
//! Every randomized driver takes one seed. Trial `k` draws from the ChaCha8
//! stream `k` of that seed, so a trial's inputs do not depend on how many
//! other trials ran before it.

use std::f64::consts::FRAC_PI_2;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ensemble::{dbhq, non_commutativity, purity, verify_property_f, Ensemble};
use crate::error::{Error, Result};
use crate::io::ensemble_digest;
use crate::linalg::{kron, DensityMatrix};
use crate::measurement::{
    check_purity_bound, check_with_tol, effects_from_axis, gai, joint_distribution, Povm,
};
use crate::classical::d_of_joint;
use crate::notion::{Direction, DistanceNotion};
use crate::optimize::OptimizerConfig;
use crate::qdistance::{apply_channel, QuantumDistance};
use crate::qubit::{example_ensemble, ExampleParams};
use crate::random::{
    random_axis, random_channel, random_density_matrix, random_ensemble, random_projective_measurement,
    random_qubit_ensemble, rng_from_seed,
};
use crate::value::Divergence;

/// Default slack for inequality checks.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Slack for the block-diagonal identity, which sums several evaluations.
pub const PROPERTY_F_TOL: f64 = 1e-8;

/// One checked inequality or identity.
#[derive(Clone, Debug, Serialize)]
pub struct Record {
    /// SHA-256 of the ensemble, or a label for non-ensemble checks.
    pub ensemble: String,
    pub notion: String,
    pub lhs: Divergence,
    pub rhs: Divergence,
    pub ok: bool,
    /// Signed slack; negative means the check failed before tolerance.
    /// Identities store `-|lhs - rhs|`.
    pub gap: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub records: usize,
    pub violations: usize,
    /// Smallest signed slack over all records.
    pub worst_gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_secs: Option<f64>,
}

/// Machine-readable result of a CLI run.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl RunReport {
    pub fn new(command: Vec<String>, records: Vec<Record>) -> Self {
        let summary = Summary {
            records: records.len(),
            violations: records.iter().filter(|r| !r.ok).count(),
            worst_gap: records.iter().map(|r| r.gap).min_by(f64::total_cmp),
            wall_time_secs: None,
        };
        Self {
            command,
            records,
            summary,
        }
    }

    pub fn with_wall_time(mut self, secs: f64) -> Self {
        self.summary.wall_time_secs = Some(secs);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = rng_from_seed(seed);
    rng.set_stream(trial as u64);
    rng
}

fn slack(lhs: Divergence, rhs: Divergence, direction: Direction) -> f64 {
    match (direction, lhs, rhs) {
        (Direction::Max, _, Divergence::Infinite) => f64::INFINITY,
        (Direction::Max, Divergence::Infinite, _) => f64::NEG_INFINITY,
        (Direction::Max, l, r) => r.value() - l.value(),
        (Direction::Min, l, r) => l.value() - r.value(),
    }
}

fn bound_record(
    digest: &str,
    label: &str,
    lhs: Divergence,
    rhs: Divergence,
    direction: Direction,
    tol: f64,
) -> Record {
    let check = check_with_tol(lhs, rhs, direction, tol);
    Record {
        ensemble: digest.to_string(),
        notion: label.to_string(),
        lhs,
        rhs,
        ok: check.ok,
        gap: slack(lhs, rhs, direction),
        iterations: None,
    }
}

fn identity_record(label: &str, notion: &str, lhs: Divergence, rhs: Divergence, tol: f64) -> Record {
    let diff = match (lhs, rhs) {
        (Divergence::Infinite, Divergence::Infinite) => 0.0,
        (l, r) => (l.value() - r.value()).abs(),
    };
    Record {
        ensemble: label.to_string(),
        notion: notion.to_string(),
        lhs,
        rhs,
        ok: diff <= tol,
        gap: -diff,
        iterations: None,
    }
}

/// Settings for [`fuzz`].
#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub trials: usize,
    pub seed: u64,
    pub notions: Vec<DistanceNotion>,
    /// Qubit trials sample measurement axes; larger dimensions sample
    /// Haar-random projective measurements.
    pub dim: usize,
    pub measurements_per_ensemble: usize,
    pub tol: f64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            trials: 1000,
            seed: 42,
            notions: DistanceNotion::ALL.to_vec(),
            dim: 2,
            measurements_per_ensemble: 5,
            tol: DEFAULT_TOL,
        }
    }
}

/// Checks the generalized Holevo inequalities and the purity bound on
/// random ensembles and measurements.
///
/// Each trial draws 2 to 4 states with flat Dirichlet weights (qubits: Bloch
/// vectors uniform in the ball).
pub fn fuzz(cfg: &FuzzConfig) -> Result<Vec<Record>> {
    if cfg.dim < 2 {
        return Err(Error::OutOfRange(format!("dim = {} must be at least 2", cfg.dim)));
    }
    let mut records = Vec::with_capacity(cfg.trials * cfg.measurements_per_ensemble * (cfg.notions.len() + 1));
    for trial in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, trial);
        let n = rng.random_range(2..=4);
        let e = if cfg.dim == 2 {
            random_qubit_ensemble(&mut rng, n)
        } else {
            random_ensemble(&mut rng, n, cfg.dim)
        };
        let digest = ensemble_digest(&e);
        let bounds: Vec<(DistanceNotion, Divergence)> = cfg.notions.iter().map(|&d| (d, dbhq(&e, d))).collect();
        for _ in 0..cfg.measurements_per_ensemble {
            let povm: Povm = if cfg.dim == 2 {
                effects_from_axis(&random_axis(&mut rng))?
            } else {
                random_projective_measurement(&mut rng, cfg.dim)
            };
            let joint = joint_distribution(&e, &povm)?;
            for &(notion, rhs) in &bounds {
                let lhs = d_of_joint(notion, &joint);
                records.push(bound_record(&digest, notion.name(), lhs, rhs, notion.direction(), cfg.tol));
            }
            let purity_check = check_purity_bound(&e, &povm)?;
            records.push(bound_record(
                &digest,
                "purity",
                purity_check.lhs,
                purity_check.rhs,
                Direction::Min,
                cfg.tol,
            ));
        }
    }
    Ok(records)
}

/// Distances checked for monotonicity under channels.
pub const DPI_DISTANCES: [QuantumDistance; 5] = [
    QuantumDistance::TRACE,
    QuantumDistance::BuresSq,
    QuantumDistance::RELATIVE_ENTROPY,
    QuantumDistance::QJSD,
    QuantumDistance::Notion(DistanceNotion::Bhattacharyya),
];

/// Every implemented distance and overlap.
pub const ALL_DISTANCES: [QuantumDistance; 7] = [
    QuantumDistance::TRACE,
    QuantumDistance::Notion(DistanceNotion::ProbError),
    QuantumDistance::Notion(DistanceNotion::Bhattacharyya),
    QuantumDistance::RELATIVE_ENTROPY,
    QuantumDistance::QJSD,
    QuantumDistance::BuresSq,
    QuantumDistance::HellingerSq,
];

/// Data processing: `d(Eρ, Eσ) ≤ d(ρ, σ)` for random states of dimension
/// 2 to 4 and random channels with 2 to 4 Kraus operators.
pub fn dpi_fuzz(d: QuantumDistance, trials: usize, seed: u64, tol: f64) -> Result<Vec<Record>> {
    let direction = if d.is_similarity() { Direction::Min } else { Direction::Max };
    let label = format!("dpi/{}", d.name());
    (0..trials)
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let dim = rng.random_range(2..=4);
            let ops = rng.random_range(2..=4);
            let rho = random_density_matrix(&mut rng, dim);
            let sigma = random_density_matrix(&mut rng, dim);
            let ch = random_channel(&mut rng, dim, ops);
            let before = d.evaluate(&rho, &sigma)?;
            let after = d.evaluate(&apply_channel(&ch, &rho)?, &apply_channel(&ch, &sigma)?)?;
            Ok(bound_record("channel", &label, after, before, direction, tol))
        })
        .collect()
}

/// Restricted additivity: `d(ρ₁⊗σ, ρ₂⊗σ) = d(ρ₁, ρ₂)`.
pub fn additivity_check(d: QuantumDistance, trials: usize, seed: u64, tol: f64) -> Result<Vec<Record>> {
    let label = format!("additivity/{}", d.name());
    (0..trials)
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let dim = rng.random_range(2..=3);
            let ancilla = rng.random_range(2..=3);
            let r1 = random_density_matrix(&mut rng, dim);
            let r2 = random_density_matrix(&mut rng, dim);
            let sigma = random_density_matrix(&mut rng, ancilla);
            let t1 = DensityMatrix::from_hermitian(kron(r1.as_hermitian(), sigma.as_hermitian()))?;
            let t2 = DensityMatrix::from_hermitian(kron(r2.as_hermitian(), sigma.as_hermitian()))?;
            let lhs = d.evaluate(&t1, &t2)?;
            let rhs = d.evaluate(&r1, &r2)?;
            Ok(identity_record("tensor", &label, lhs, rhs, tol))
        })
        .collect()
}

/// The block-diagonal identity on random qubit ensembles of 2 to 3 states.
pub fn property_f_check(notion: DistanceNotion, trials: usize, seed: u64, tol: f64) -> Result<Vec<Record>> {
    let label = format!("property-f/{}", notion.name());
    (0..trials)
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let n = rng.random_range(2..=3);
            let e = random_qubit_ensemble(&mut rng, n);
            let (lhs, rhs) = verify_property_f(&e, notion)?;
            Ok(identity_record(&ensemble_digest(&e), &label, lhs, rhs, tol))
        })
        .collect()
}

/// Axiom suite: data processing for every monotone distance, restricted
/// additivity for every notion, and the block-diagonal identity.
pub fn verify_properties(trials: usize, seed: u64, tol: f64) -> Result<Vec<Record>> {
    let mut records = Vec::new();
    for d in DPI_DISTANCES {
        records.extend(dpi_fuzz(d, trials, seed, tol)?);
    }
    for d in ALL_DISTANCES {
        records.extend(additivity_check(d, trials, seed, tol)?);
    }
    for notion in DistanceNotion::ALL {
        records.extend(property_f_check(notion, trials, seed, tol.max(PROPERTY_F_TOL))?);
    }
    Ok(records)
}

/// `steps` evenly spaced angles covering `[0, π/2]`.
pub fn theta_grid(steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::OutOfRange(format!("theta steps = {steps} must be at least 2")));
    }
    Ok((0..steps)
        .map(|k| if k + 1 == steps { FRAC_PI_2 } else { FRAC_PI_2 * k as f64 / (steps - 1) as f64 })
        .collect())
}

/// Relative-entropy curves over the two-pure-state family.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Figure1Row {
    pub theta: f64,
    pub i_sr: f64,
    pub x_sr: f64,
    pub n_c: f64,
    /// `X_Sr - I_Sr`.
    pub gap: f64,
}

/// Bhattacharyya curves over the two-pure-state family.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Figure2Row {
    pub theta: f64,
    pub i_b: f64,
    pub x_b: f64,
    pub gamma: f64,
    pub n_c: f64,
    /// `I_B - X_B`.
    pub gap: f64,
    /// `(1 - γ) N_c`.
    pub scaled: f64,
}

fn family(theta: f64, p_hat: f64) -> Result<Ensemble> {
    Ok(example_ensemble(&ExampleParams::new(theta, p_hat)?))
}

pub fn figure1(p_hat: f64, steps: usize, opt: &OptimizerConfig) -> Result<Vec<Figure1Row>> {
    theta_grid(steps)?
        .into_iter()
        .map(|theta| {
            let e = family(theta, p_hat)?;
            let i_sr = gai(&e, DistanceNotion::RelativeEntropy, opt)?.value;
            let x_sr = dbhq(&e, DistanceNotion::RelativeEntropy).value();
            Ok(Figure1Row {
                theta,
                i_sr,
                x_sr,
                n_c: non_commutativity(&e),
                gap: x_sr - i_sr,
            })
        })
        .collect()
}

pub fn figure2(p_hat: f64, steps: usize, opt: &OptimizerConfig) -> Result<Vec<Figure2Row>> {
    theta_grid(steps)?
        .into_iter()
        .map(|theta| {
            let e = family(theta, p_hat)?;
            let i_b = gai(&e, DistanceNotion::Bhattacharyya, opt)?.value;
            let x_b = dbhq(&e, DistanceNotion::Bhattacharyya).value();
            let gamma = purity(e.average());
            let n_c = non_commutativity(&e);
            Ok(Figure2Row {
                theta,
                i_b,
                x_b,
                gamma,
                n_c,
                gap: i_b - x_b,
                scaled: (1.0 - gamma) * n_c,
            })
        })
        .collect()
}

fn csv(header: &str, rows: impl Iterator<Item = Vec<f64>>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn figure1_csv(rows: &[Figure1Row]) -> String {
    csv(
        "theta,I_Sr,X_Sr,N_c,gap",
        rows.iter().map(|r| vec![r.theta, r.i_sr, r.x_sr, r.n_c, r.gap]),
    )
}

pub fn figure2_csv(rows: &[Figure2Row]) -> String {
    csv(
        "theta,I_B,X_B,gamma,N_c,gap,scaled",
        rows.iter().map(|r| vec![r.theta, r.i_b, r.x_b, r.gamma, r.n_c, r.gap, r.scaled]),
    )
}

/// Pearson correlation of two equally long samples; `None` if either is
/// constant.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len().min(ys.len());
    if n < 2 {
        return None;
    }
    let mean = |v: &[f64]| v[..n].iter().sum::<f64>() / n as f64;
    let (mx, my) = (mean(xs), mean(ys));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs[..n].iter().zip(&ys[..n]) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx).powi(2);
        syy += (y - my).powi(2);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}
