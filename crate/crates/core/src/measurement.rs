//! Measurements, outcome statistics and the accessible-information optimum.
//!
//! A qubit von Neumann measurement is fixed by an axis `z` on the Bloch
//! sphere: `E_j = ½(I + (-1)^j z·σ)`. The axis can also be generated from a
//! unit quaternion `s` (the unitary `V = s·(I, iσ)` rotating the
//! computational basis), which is how [`axis_from_s`] parametrizes it.
//!
//! [`gai`] searches the sphere of axes for the extremum of
//! `D(P || p × q)`: the maximum for distances and the minimum for overlaps
//! (probability of error, Bhattacharyya), since those move opposite to their
//! associated distance.

use nalgebra::Vector3;
use serde::Serialize;

use crate::classical::{d_of_joint, JointDistribution};
use crate::ensemble::{dbhq, purity, Ensemble};
use crate::error::{Error, Result};
use crate::linalg::{eig, hs_norm, mat_sqrt, pauli, CMatrix, DensityMatrix, HermitianMatrix, PSD_TOL};
use crate::notion::{Direction, DistanceNotion};
use crate::optimize::{maximize_on_sphere, Axis, OptimizerConfig};
use crate::value::Divergence;

/// `Σ M_j = I` within this (Hilbert-Schmidt norm of the deviation).
pub const COMPLETENESS_TOL: f64 = 1e-10;
/// Slack for the generalized Holevo inequalities.
pub const BOUND_TOL: f64 = 1e-9;
const UNIT_TOL: f64 = 1e-10;

/// A positive-operator valued measure.
#[derive(Clone, Debug)]
pub struct Povm {
    effects: Vec<HermitianMatrix>,
}

impl Povm {
    pub fn new(effects: Vec<HermitianMatrix>) -> Result<Self> {
        let first = effects
            .first()
            .ok_or_else(|| Error::Format("POVM needs at least one effect".into()))?;
        let n = first.dim();
        let mut sum = CMatrix::zeros(n, n);
        for m in &effects {
            if m.dim() != n {
                return Err(Error::DimensionMismatch(m.dim(), n));
            }
            let lowest = eig(m)?.min();
            if lowest < -PSD_TOL {
                return Err(Error::NotPsd(lowest));
            }
            sum += m.as_matrix();
        }
        let deviation = hs_norm(&(sum - CMatrix::identity(n, n)));
        if deviation > COMPLETENESS_TOL {
            return Err(Error::NotComplete(deviation));
        }
        Ok(Self { effects })
    }

    /// Skips validation; for effects that are valid by construction.
    pub(crate) fn new_unchecked(effects: Vec<HermitianMatrix>) -> Self {
        Self { effects }
    }

    /// Rank-one projectors onto the columns of a unitary.
    pub fn from_basis(u: &CMatrix) -> Result<Self> {
        let n = u.nrows();
        let effects = (0..n)
            .map(|k| {
                let v = u.column(k);
                HermitianMatrix::hermitian_part(v * v.adjoint())
            })
            .collect();
        Self::new(effects)
    }

    pub fn effects(&self) -> &[HermitianMatrix] {
        &self.effects
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.effects[0].dim()
    }
}

/// A two-outcome projective qubit measurement along `axis`.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitVonNeumann {
    axis: Vector3<f64>,
    generator: Option<[f64; 4]>,
}

impl QubitVonNeumann {
    pub fn from_axis(axis: Vector3<f64>) -> Result<Self> {
        check_unit(axis.norm(), 1e-12)?;
        Ok(Self {
            axis,
            generator: None,
        })
    }

    pub fn from_generator(s: [f64; 4]) -> Result<Self> {
        Ok(Self {
            axis: axis_from_s(s)?,
            generator: Some(s),
        })
    }

    pub fn axis(&self) -> Vector3<f64> {
        self.axis
    }

    pub fn generator(&self) -> Option<[f64; 4]> {
        self.generator
    }

    pub fn povm(&self) -> Povm {
        effects_from_axis(&self.axis).expect("axis is unit by construction")
    }
}

fn check_unit(norm: f64, tol: f64) -> Result<()> {
    if (norm - 1.0).abs() > tol {
        return Err(Error::NotUnit(norm));
    }
    Ok(())
}

/// Measurement axis generated by the unit quaternion `s`.
pub fn axis_from_s(s: [f64; 4]) -> Result<Vector3<f64>> {
    let norm = s.iter().map(|x| x * x).sum::<f64>().sqrt();
    check_unit(norm, UNIT_TOL)?;
    let [s0, s1, s2, s3] = s;
    Ok(Vector3::new(
        2.0 * (-s0 * s2 + s1 * s3),
        2.0 * (s0 * s1 + s2 * s3),
        s0 * s0 + s3 * s3 - s1 * s1 - s2 * s2,
    ))
}

/// `E_j = ½(I + (-1)^j z·σ)`, j = 0, 1.
pub fn effects_from_axis(z: &Vector3<f64>) -> Result<Povm> {
    check_unit(z.norm(), UNIT_TOL)?;
    let [sx, sy, sz] = pauli();
    let zs = &(&(&sx * z.x) + &(&sy * z.y)) + &(&sz * z.z);
    let id = HermitianMatrix::identity(2);
    Ok(Povm::new_unchecked(vec![
        (&id + &zs).scale(0.5),
        (&id - &zs).scale(0.5),
    ]))
}

/// `P_ij = p_i Tr(M_j ρ_i)`.
pub fn joint_distribution(e: &Ensemble, m: &Povm) -> Result<JointDistribution> {
    if e.dim() != m.dim() {
        return Err(Error::DimensionMismatch(e.dim(), m.dim()));
    }
    let cols = m.len();
    let mut entries = Vec::with_capacity(e.len() * cols);
    for (p, rho) in e.iter() {
        for effect in m.effects() {
            entries.push(p * effect.trace_product(rho.as_hermitian()));
        }
    }
    JointDistribution::new(e.len(), cols, entries)
}

/// Generalized accessible information: the optimal value and where it is
/// attained.
#[derive(Clone, Debug, Serialize)]
pub struct GaiResult {
    pub notion: DistanceNotion,
    pub value: f64,
    pub axis: [f64; 3],
    pub direction: Direction,
    pub iterations: usize,
    pub evaluations: usize,
}

/// `D(P || p × q)` for the measurement along `z`.
pub fn d_along_axis(e: &Ensemble, notion: DistanceNotion, z: &Axis) -> Result<Divergence> {
    let povm = effects_from_axis(z)?;
    Ok(d_of_joint(notion, &joint_distribution(e, &povm)?))
}

/// Extremum of `D(P || p × q)` over qubit von Neumann measurements.
pub fn gai(e: &Ensemble, notion: DistanceNotion, opt: &OptimizerConfig) -> Result<GaiResult> {
    if e.dim() != 2 {
        return Err(Error::UnsupportedDimension(e.dim()));
    }
    let direction = notion.direction();
    let sign = match direction {
        Direction::Max => 1.0,
        Direction::Min => -1.0,
    };
    let objective = |z: &Axis| {
        let unit = z.normalize();
        sign * d_along_axis(e, notion, &unit)
            .map(Divergence::value)
            .unwrap_or(f64::NAN)
    };
    let best = maximize_on_sphere(objective, opt);
    Ok(GaiResult {
        notion,
        value: sign * best.value,
        axis: best.axis,
        direction,
        iterations: best.iterations,
        evaluations: best.evaluations,
    })
}

/// Both sides of a generalized Holevo inequality for one measurement.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundCheck {
    pub lhs: Divergence,
    pub rhs: Divergence,
    pub ok: bool,
}

impl BoundCheck {
    /// Signed slack: positive when the inequality holds strictly.
    pub fn gap(&self, direction: Direction) -> f64 {
        match direction {
            Direction::Max => self.rhs.value() - self.lhs.value(),
            Direction::Min => self.lhs.value() - self.rhs.value(),
        }
    }
}

/// `D(P || p × q)` against `X_d`: `≤` for distances, `≥` for overlaps.
pub fn check_holevo_bound(e: &Ensemble, m: &Povm, notion: DistanceNotion) -> Result<BoundCheck> {
    let lhs = d_of_joint(notion, &joint_distribution(e, m)?);
    let rhs = dbhq(e, notion);
    Ok(check_with_tol(lhs, rhs, notion.direction(), BOUND_TOL))
}

/// Compares precomputed sides of a bound with slack `tol`.
pub fn check_with_tol(lhs: Divergence, rhs: Divergence, direction: Direction, tol: f64) -> BoundCheck {
    let ok = match direction {
        Direction::Max => match (lhs, rhs) {
            (_, Divergence::Infinite) => true,
            (Divergence::Infinite, _) => false,
            (Divergence::Finite(l), Divergence::Finite(r)) => l <= r + tol,
        },
        Direction::Min => lhs.value() >= rhs.value() - tol,
    };
    BoundCheck { lhs, rhs, ok }
}

/// `B(P || p × q) ≥ Tr ρ²`.
pub fn check_purity_bound(e: &Ensemble, m: &Povm) -> Result<BoundCheck> {
    let lhs = d_of_joint(DistanceNotion::Bhattacharyya, &joint_distribution(e, m)?);
    let rhs = Divergence::Finite(purity(e.average()));
    Ok(check_with_tol(lhs, rhs, Direction::Min, BOUND_TOL))
}

/// `Tr(√M ρ √M)`, the outcome probability before the cyclic-trace shortcut.
pub fn outcome_probability_sandwich(effect: &HermitianMatrix, rho: &DensityMatrix) -> Result<f64> {
    let root = mat_sqrt(effect)?;
    let m = root.as_matrix() * rho.as_matrix() * root.as_matrix();
    Ok(m.trace().re)
}

/// Projective measurement in the computational basis.
pub fn computational_basis(n: usize) -> Povm {
    Povm::from_basis(&CMatrix::identity(n, n)).expect("identity columns are orthonormal")
}
