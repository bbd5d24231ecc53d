//! Distances and overlaps between density matrices, and Kraus channels to
//! test their monotonicity.

use crate::error::{Error, Result};
use crate::linalg::{
    c, hs_norm, trace_norm, trace_sqrt, von_neumann_entropy, CMatrix, DensityMatrix,
    HermitianMatrix, LOG_CUTOFF,
};
use crate::notion::DistanceNotion;
use crate::value::Divergence;

/// `||(I - Π_σ) ρ (I - Π_σ)||_2` above this means `ρ` leaks out of `supp σ`.
pub const SUPPORT_TOL: f64 = 1e-10;
/// Slack allowed by [`check_dpi`].
pub const DPI_TOL: f64 = 1e-9;
/// `Σ K†K = I` within this.
pub const TRACE_PRESERVING_TOL: f64 = 1e-10;

fn same_dim(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    Ok(())
}

/// `½ Tr|ρ - σ|`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    same_dim(rho, sigma)?;
    let diff = rho.as_hermitian() - sigma.as_hermitian();
    Ok((0.5 * trace_norm(&diff)?).min(1.0))
}

/// Root fidelity `Tr sqrt(√σ ρ √σ)`.
pub fn bhattacharyya_q(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    same_dim(rho, sigma)?;
    let root = sigma.sqrt();
    let inner = root.as_matrix() * rho.as_matrix() * root.as_matrix();
    let b = trace_sqrt(&HermitianMatrix::hermitian_part(inner))?;
    Ok(b.clamp(0.0, 1.0))
}

/// Squared Bures distance `2(1 - B(ρ, σ))`.
pub fn bures_sq(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(2.0 * (1.0 - bhattacharyya_q(rho, sigma)?))
}

/// Squared Hellinger distance `2(1 - Tr √ρ √σ)`.
pub fn hellinger_sq(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    same_dim(rho, sigma)?;
    let affinity = rho.sqrt().trace_product(&sigma.sqrt());
    Ok((2.0 * (1.0 - affinity)).max(0.0))
}

/// `true` when `supp ρ ⊆ supp σ` (support of σ taken above [`LOG_CUTOFF`]).
pub fn support_contained(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<bool> {
    same_dim(rho, sigma)?;
    let n = rho.dim();
    let kernel = CMatrix::identity(n, n) - sigma.spectrum().support_projector(LOG_CUTOFF).into_matrix();
    let leak = &kernel * rho.as_matrix() * &kernel;
    Ok(hs_norm(&leak) <= SUPPORT_TOL)
}

/// `Tr ρ (log2 ρ - log2 σ)`, infinite when `supp ρ ⊄ supp σ`.
pub fn relative_entropy_q(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<Divergence> {
    if !support_contained(rho, sigma)? {
        return Ok(Divergence::Infinite);
    }
    let spectrum = sigma.spectrum();
    let mut cross = 0.0;
    for (k, &lambda) in spectrum.values.iter().enumerate() {
        if lambda <= LOG_CUTOFF {
            continue;
        }
        let v = spectrum.vectors.column(k);
        let weight = (v.adjoint() * rho.as_matrix() * v)[(0, 0)].re;
        cross += weight * lambda.log2();
    }
    let value = -von_neumann_entropy(rho) - cross;
    Ok(Divergence::Finite(value.max(0.0)))
}

/// Quantum Jensen-Shannon divergence `S((ρ+σ)/2) - ½S(ρ) - ½S(σ)` in bits.
pub fn qjsd(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    same_dim(rho, sigma)?;
    let mid = DensityMatrix::mixture(&[0.5, 0.5], &[rho.clone(), sigma.clone()])?;
    let value =
        von_neumann_entropy(&mid) - 0.5 * von_neumann_entropy(rho) - 0.5 * von_neumann_entropy(sigma);
    Ok(value.clamp(0.0, 1.0))
}

/// A quantum distance (or overlap) used in axiom checks.
///
/// Covers the five [`DistanceNotion`]s plus the squared Bures and Hellinger
/// distances, which are the metric companions of the Bhattacharyya overlap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuantumDistance {
    Notion(DistanceNotion),
    BuresSq,
    HellingerSq,
}

impl QuantumDistance {
    pub const TRACE: QuantumDistance = QuantumDistance::Notion(DistanceNotion::Kolmogorov);
    pub const RELATIVE_ENTROPY: QuantumDistance =
        QuantumDistance::Notion(DistanceNotion::RelativeEntropy);
    pub const QJSD: QuantumDistance = QuantumDistance::Notion(DistanceNotion::Qjsd);

    pub fn evaluate(self, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<Divergence> {
        match self {
            QuantumDistance::Notion(n) => n.quantum(rho, sigma),
            QuantumDistance::BuresSq => Ok(Divergence::Finite(bures_sq(rho, sigma)?)),
            QuantumDistance::HellingerSq => Ok(Divergence::Finite(hellinger_sq(rho, sigma)?)),
        }
    }

    /// Overlaps grow as states get closer; everything else shrinks.
    pub fn is_similarity(self) -> bool {
        matches!(self, QuantumDistance::Notion(n) if n.is_similarity())
    }

    pub fn is_symmetric(self) -> bool {
        self != QuantumDistance::RELATIVE_ENTROPY
    }

    pub fn name(self) -> &'static str {
        match self {
            QuantumDistance::Notion(n) => n.name(),
            QuantumDistance::BuresSq => "bures-sq",
            QuantumDistance::HellingerSq => "hellinger-sq",
        }
    }
}

/// A completely positive trace-preserving map in Kraus form.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    ops: Vec<CMatrix>,
    dim_in: usize,
    dim_out: usize,
}

impl KrausChannel {
    pub fn new(ops: Vec<CMatrix>) -> Result<Self> {
        let first = ops
            .first()
            .ok_or_else(|| Error::Format("channel needs at least one Kraus operator".into()))?;
        let (dim_out, dim_in) = first.shape();
        let mut sum = CMatrix::zeros(dim_in, dim_in);
        for k in &ops {
            if k.shape() != (dim_out, dim_in) {
                return Err(Error::DimensionMismatch(k.nrows(), dim_out));
            }
            sum += k.adjoint() * k;
        }
        let deviation = hs_norm(&(sum - CMatrix::identity(dim_in, dim_in)));
        if deviation > TRACE_PRESERVING_TOL {
            return Err(Error::NotTracePreserving(deviation));
        }
        Ok(Self {
            ops,
            dim_in,
            dim_out,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::new(vec![CMatrix::identity(n, n)]).expect("identity is trace preserving")
    }

    /// Complete dephasing in the computational basis.
    pub fn dephasing(n: usize) -> Self {
        let ops = (0..n)
            .map(|k| {
                let mut p = CMatrix::zeros(n, n);
                p[(k, k)] = c(1.0, 0.0);
                p
            })
            .collect();
        Self::new(ops).expect("projectors sum to identity")
    }

    /// `ρ_AB ↦ Tr_B ρ_AB`, Kraus operators `I_A ⊗ ⟨k|_B`.
    pub fn partial_trace_second(dim_a: usize, dim_b: usize) -> Self {
        let ops = (0..dim_b)
            .map(|k| {
                CMatrix::from_fn(dim_a, dim_a * dim_b, |i, col| {
                    if col == i * dim_b + k {
                        c(1.0, 0.0)
                    } else {
                        c(0.0, 0.0)
                    }
                })
            })
            .collect();
        Self::new(ops).expect("partial trace is trace preserving")
    }

    pub fn kraus_ops(&self) -> &[CMatrix] {
        &self.ops
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }
}

/// `Σ_k K_k ρ K_k†`.
pub fn apply_channel(ch: &KrausChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != ch.dim_in {
        return Err(Error::DimensionMismatch(rho.dim(), ch.dim_in));
    }
    let mut out = CMatrix::zeros(ch.dim_out, ch.dim_out);
    for k in &ch.ops {
        out += k * rho.as_matrix() * k.adjoint();
    }
    DensityMatrix::from_hermitian(HermitianMatrix::hermitian_part(out))
}

/// Monotonicity under `ch`: `d(Eρ, Eσ) ≤ d(ρ, σ)` (reversed for overlaps),
/// with [`DPI_TOL`] slack.
pub fn check_dpi(
    d: QuantumDistance,
    ch: &KrausChannel,
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
) -> Result<bool> {
    let before = d.evaluate(rho, sigma)?;
    let after = d.evaluate(&apply_channel(ch, rho)?, &apply_channel(ch, sigma)?)?;
    if d.is_similarity() {
        return Ok(after.value() >= before.value() - DPI_TOL);
    }
    Ok(match (before, after) {
        (Divergence::Infinite, _) => true,
        (Divergence::Finite(_), Divergence::Infinite) => false,
        (Divergence::Finite(b), Divergence::Finite(a)) => a <= b + DPI_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kron;

    fn diag(p: &[f64]) -> DensityMatrix {
        DensityMatrix::diagonal(p).unwrap()
    }

    fn plus() -> DensityMatrix {
        DensityMatrix::new(CMatrix::from_element(2, 2, c(0.5, 0.0))).unwrap()
    }

    fn mixed() -> DensityMatrix {
        DensityMatrix::new(CMatrix::from_row_slice(
            2,
            2,
            &[c(0.7, 0.0), c(0.1, -0.2), c(0.1, 0.2), c(0.3, 0.0)],
        ))
        .unwrap()
    }

    #[test]
    fn trace_distance_examples() {
        let r = mixed();
        assert!(trace_distance(&r, &r).unwrap().abs() < 1e-15);
        assert!((trace_distance(&diag(&[1.0, 0.0]), &diag(&[0.0, 1.0])).unwrap() - 1.0).abs() < 1e-15);
        assert!(trace_distance(&r, &DensityMatrix::maximally_mixed(3)).is_err());
    }

    #[test]
    fn bhattacharyya_examples() {
        let r = mixed();
        assert!((bhattacharyya_q(&r, &r).unwrap() - 1.0).abs() < 1e-12);
        assert!(bhattacharyya_q(&diag(&[1.0, 0.0]), &diag(&[0.0, 1.0])).unwrap().abs() < 1e-15);
        // pure-state overlap |<0|+>| = 1/√2
        let b = bhattacharyya_q(&diag(&[1.0, 0.0]), &plus()).unwrap();
        assert!((b - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn bures_examples() {
        let r = mixed();
        assert!(bures_sq(&r, &r).unwrap().abs() < 1e-12);
        assert!((bures_sq(&diag(&[1.0, 0.0]), &diag(&[0.0, 1.0])).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn relative_entropy_examples() {
        let r = mixed();
        assert!(relative_entropy_q(&r, &r).unwrap().value().abs() < 1e-12);
        assert_eq!(
            relative_entropy_q(&diag(&[1.0, 0.0]), &diag(&[0.0, 1.0])).unwrap(),
            Divergence::Infinite
        );
        let v = relative_entropy_q(&diag(&[0.5, 0.5]), &diag(&[0.25, 0.75])).unwrap();
        assert!((v.value() - 0.207_518_749_639_421_9).abs() < 1e-14);
        // pure state inside a full-rank state's support is finite
        assert!(relative_entropy_q(&plus(), &r).unwrap().is_finite());
        // full-rank state against a pure one is not
        assert_eq!(relative_entropy_q(&r, &plus()).unwrap(), Divergence::Infinite);
    }

    #[test]
    fn qjsd_examples() {
        let r = mixed();
        assert!(qjsd(&r, &r).unwrap().abs() < 1e-12);
        assert!((qjsd(&diag(&[1.0, 0.0]), &diag(&[0.0, 1.0])).unwrap() - 1.0).abs() < 1e-14);
        let a = qjsd(&r, &plus()).unwrap();
        let b = qjsd(&plus(), &r).unwrap();
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn hellinger_examples() {
        let r = mixed();
        assert!(hellinger_sq(&r, &r).unwrap().abs() < 1e-12);
        assert!((hellinger_sq(&diag(&[1.0, 0.0]), &diag(&[0.0, 1.0])).unwrap() - 2.0).abs() < 1e-15);
        let (a, b): (f64, f64) = (0.3, 0.8);
        let expected = 2.0 * (1.0 - (a * b).sqrt() - ((1.0 - a) * (1.0 - b)).sqrt());
        let h = hellinger_sq(&diag(&[a, 1.0 - a]), &diag(&[b, 1.0 - b])).unwrap();
        assert!((h - expected).abs() < 1e-14);
        let bures = bures_sq(&diag(&[a, 1.0 - a]), &diag(&[b, 1.0 - b])).unwrap();
        assert!((h - bures).abs() < 1e-9);
    }

    #[test]
    fn channel_examples() {
        let r = mixed();
        let out = apply_channel(&KrausChannel::identity(2), &r).unwrap();
        assert!(hs_norm(&(out.as_matrix() - r.as_matrix())) < 1e-15);

        let out = apply_channel(&KrausChannel::dephasing(2), &plus()).unwrap();
        assert!(hs_norm(&(out.as_matrix() - DensityMatrix::maximally_mixed(2).as_matrix())) < 1e-15);

        let b = diag(&[0.2, 0.3, 0.5]);
        let joint = DensityMatrix::from_hermitian(kron(r.as_hermitian(), b.as_hermitian())).unwrap();
        let out = apply_channel(&KrausChannel::partial_trace_second(2, 3), &joint).unwrap();
        assert!(hs_norm(&(out.as_matrix() - r.as_matrix())) < 1e-14);
    }

    #[test]
    fn channel_validation() {
        let bad = vec![CMatrix::identity(2, 2), CMatrix::identity(2, 2)];
        assert!(matches!(KrausChannel::new(bad), Err(Error::NotTracePreserving(_))));
        assert!(apply_channel(&KrausChannel::identity(3), &mixed()).is_err());
    }

    #[test]
    fn dpi_identity_channel_is_equality() {
        let id = KrausChannel::identity(2);
        for d in [
            QuantumDistance::TRACE,
            QuantumDistance::BuresSq,
            QuantumDistance::RELATIVE_ENTROPY,
            QuantumDistance::QJSD,
            QuantumDistance::Notion(DistanceNotion::Bhattacharyya),
        ] {
            assert!(check_dpi(d, &id, &mixed(), &plus()).unwrap(), "{}", d.name());
        }
    }
}
