//! Dense complex-Hermitian matrix algebra.
//!
//! Everything downstream works on small (dimension ≲ 32) dense matrices, so the
//! eigensolver is nalgebra's Householder tridiagonalization + implicit QR and
//! nothing here tries to be clever about sparsity or blocking.
//!
//! Two matrix types carry the invariants:
//!
//! - [`HermitianMatrix`]: square, `a_ij = conj(a_ji)` within [`HERMITIAN_TOL`].
//!   The stored entries are exactly Hermitian (the anti-Hermitian residue is
//!   projected out on construction).
//! - [`DensityMatrix`]: a Hermitian matrix with unit trace and no eigenvalue
//!   below `-`[`PSD_TOL`]. Its spectrum is computed once and cached, since
//!   almost every quantity we evaluate on a state (entropy, logarithm, square
//!   root, support projector) is a spectral function.

use std::ops::{Add, Mul, Sub};

use nalgebra::{Complex, DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Absolute tolerance on `|a_ij - conj(a_ji)|`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Absolute tolerance on `Tr ρ - 1`.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues in `[-PSD_TOL, 0)` are roundoff and get clamped to zero.
pub const PSD_TOL: f64 = 1e-10;
/// Eigenvalues at or below this value are outside the support for logarithms.
pub const LOG_CUTOFF: f64 = 1e-12;

const EIG_MAX_SWEEPS: usize = 10_000;

/// Eigenvalues this close to zero (relative to the largest one) cannot be told
/// apart from zero in double precision; spectral functions with an infinite
/// slope at zero (square root) treat them as exact zeros.
fn roundoff_floor(dim: usize, largest: f64) -> f64 {
    8.0 * dim as f64 * f64::EPSILON * largest.abs().max(1.0)
}

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `-x log2 x` with the `0 log 0 = 0` convention; non-positive inputs give 0.
#[inline]
pub(crate) fn neg_xlog2x(x: f64) -> f64 {
    if x > 0.0 {
        -x * x.log2()
    } else {
        0.0
    }
}

/// A square complex matrix equal to its conjugate transpose.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    /// Validates hermiticity within [`HERMITIAN_TOL`] and stores the exact
    /// Hermitian part.
    pub fn new(m: CMatrix) -> Result<Self> {
        let defect = hermiticity_defect(&m)?;
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian(defect));
        }
        Ok(Self::hermitian_part(m))
    }

    /// Keeps `(m + m†)/2` without checking how far `m` was from Hermitian.
    ///
    /// For products such as `√σ ρ √σ` that are Hermitian in exact arithmetic
    /// but pick up roundoff asymmetry.
    pub(crate) fn hermitian_part(m: CMatrix) -> Self {
        assert!(m.is_square(), "hermitian_part on non-square matrix");
        let h = (&m + m.adjoint()).scale(0.5);
        Self(h)
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self(CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                c(diag[i], 0.0)
            } else {
                C64::default()
            }
        }))
    }

    /// Row-major real entries; must be symmetric.
    pub fn from_real(n: usize, row_major: &[f64]) -> Result<Self> {
        if row_major.len() != n * n {
            return Err(Error::DimensionMismatch(row_major.len(), n * n));
        }
        Self::new(CMatrix::from_fn(n, n, |i, j| c(row_major[i * n + j], 0.0)))
    }

    pub fn identity(n: usize) -> Self {
        Self(CMatrix::identity(n, n))
    }

    pub fn zeros(n: usize) -> Self {
        Self(CMatrix::zeros(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    /// Real part of the trace (the imaginary part is zero by construction).
    pub fn trace(&self) -> f64 {
        self.0.diagonal().iter().map(|z| z.re).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    /// `Tr(A B)` for Hermitian `A`, `B` (always real).
    pub fn trace_product(&self, other: &HermitianMatrix) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.0[(i, j)] * other.0[(j, i)]).re;
            }
        }
        acc
    }

    pub fn eig(&self) -> Result<Spectrum> {
        eig(self)
    }
}

impl Add for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn add(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn sub(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix(&self.0 - &rhs.0)
    }
}

impl Mul<f64> for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn mul(self, rhs: f64) -> HermitianMatrix {
        self.scale(rhs)
    }
}

fn hermiticity_defect(m: &CMatrix) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.nrows(), m.ncols()));
    }
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            worst = worst.max(d);
        }
    }
    Ok(worst)
}

/// Eigenvalues sorted descending with the matching orthonormal eigenvectors
/// stored as the columns of `vectors`.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `U f(Λ) U†`.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> HermitianMatrix {
        let n = self.dim();
        let mut scaled = self.vectors.clone();
        for (k, &lambda) in self.values.iter().enumerate() {
            let fk = f(lambda);
            scaled.column_mut(k).iter_mut().for_each(|z| *z *= fk);
        }
        let m = &scaled * self.vectors.adjoint();
        debug_assert_eq!(m.nrows(), n);
        HermitianMatrix::hermitian_part(m)
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        self.map(|x| x)
    }

    /// Projector onto the span of eigenvectors with eigenvalue above `cutoff`.
    pub fn support_projector(&self, cutoff: f64) -> HermitianMatrix {
        self.map(|x| if x > cutoff { 1.0 } else { 0.0 })
    }

    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
pub fn eig(a: &HermitianMatrix) -> Result<Spectrum> {
    let n = a.dim();
    if n == 0 {
        return Ok(Spectrum {
            values: Vec::new(),
            vectors: CMatrix::zeros(0, 0),
        });
    }
    let decomposition = SymmetricEigen::try_new(a.0.clone(), f64::EPSILON, EIG_MAX_SWEEPS)
        .ok_or_else(|| {
            let diag: Vec<f64> = a.0.diagonal().iter().map(|z| z.re).collect();
            let hi = diag.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let lo = diag.iter().cloned().fold(f64::INFINITY, f64::min);
            Error::NoConvergence {
                dim: n,
                frobenius: hs_norm(&a.0),
                spread: hi - lo,
            }
        })?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        decomposition.eigenvalues[j]
            .partial_cmp(&decomposition.eigenvalues[i])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&k| decomposition.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| decomposition.eigenvectors[(i, order[j])]);
    Ok(Spectrum { values, vectors })
}

/// Principal square root of a PSD Hermitian matrix.
///
/// Eigenvalues in `[-PSD_TOL, roundoff floor]` are treated as zero.
pub fn mat_sqrt(a: &HermitianMatrix) -> Result<HermitianMatrix> {
    let spectrum = eig(a)?;
    sqrt_of_spectrum(&spectrum)
}

pub(crate) fn sqrt_of_spectrum(spectrum: &Spectrum) -> Result<HermitianMatrix> {
    let lowest = spectrum.min();
    if lowest < -PSD_TOL {
        return Err(Error::NotPsd(lowest));
    }
    let floor = roundoff_floor(spectrum.dim(), spectrum.max());
    Ok(spectrum.map(|x| if x > floor { x.sqrt() } else { 0.0 }))
}

/// `Σ_k sqrt(λ_k)` over the PSD spectrum of `a`, with the same zero floor as
/// [`mat_sqrt`]. Equals `Tr mat_sqrt(a)` without forming the matrix.
pub(crate) fn trace_sqrt(a: &HermitianMatrix) -> Result<f64> {
    let spectrum = eig(a)?;
    let lowest = spectrum.min();
    if lowest < -PSD_TOL {
        return Err(Error::NotPsd(lowest));
    }
    let floor = roundoff_floor(spectrum.dim(), spectrum.max());
    Ok(spectrum
        .values
        .iter()
        .filter(|&&x| x > floor)
        .map(|x| x.sqrt())
        .sum())
}

/// `log2` on the support of `rho` (eigenvalues above [`LOG_CUTOFF`]), zero on
/// the kernel.
pub fn mat_log2_on_support(rho: &DensityMatrix) -> HermitianMatrix {
    rho.spectrum
        .map(|x| if x > LOG_CUTOFF { x.log2() } else { 0.0 })
}

/// Sum of absolute eigenvalues.
pub fn trace_norm(a: &HermitianMatrix) -> Result<f64> {
    Ok(eig(a)?.values.iter().map(|x| x.abs()).sum())
}

/// Hilbert-Schmidt (Frobenius) norm `sqrt(Tr A†A)` of any complex matrix.
pub fn hs_norm(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Kronecker product; row index `i*db + k`, column index `j*db + l`.
pub fn kron(a: &HermitianMatrix, b: &HermitianMatrix) -> HermitianMatrix {
    HermitianMatrix(a.0.kronecker(&b.0))
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.spectrum.values.iter().map(|&x| neg_xlog2x(x)).sum()
}

/// The Pauli matrices σ_x, σ_y, σ_z.
pub fn pauli() -> [HermitianMatrix; 3] {
    let z = C64::default();
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    [
        HermitianMatrix(CMatrix::from_row_slice(2, 2, &[z, one, one, z])),
        HermitianMatrix(CMatrix::from_row_slice(2, 2, &[z, -i, i, z])),
        HermitianMatrix(CMatrix::from_row_slice(2, 2, &[one, z, z, -one])),
    ]
}

/// A quantum state: Hermitian, positive semi-definite, unit trace.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: HermitianMatrix,
    spectrum: Spectrum,
}

impl DensityMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        Self::from_hermitian(HermitianMatrix::new(m)?)
    }

    /// Checks the trace and spectrum. Eigenvalues in `[-PSD_TOL, 0)` are
    /// clamped to zero and the result renormalized.
    pub fn from_hermitian(h: HermitianMatrix) -> Result<Self> {
        let tr = h.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidTrace(tr));
        }
        let mut spectrum = eig(&h)?;
        let lowest = spectrum.min();
        if lowest < -PSD_TOL {
            return Err(Error::NotPsd(lowest));
        }
        if lowest < 0.0 {
            spectrum.values.iter_mut().for_each(|x| *x = x.max(0.0));
            let total: f64 = spectrum.values.iter().sum();
            spectrum.values.iter_mut().for_each(|x| *x /= total);
            let matrix = spectrum.reconstruct();
            return Ok(Self { matrix, spectrum });
        }
        Ok(Self {
            matrix: h,
            spectrum,
        })
    }

    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        Self::from_hermitian(HermitianMatrix::from_real_diagonal(probs))
    }

    pub fn maximally_mixed(n: usize) -> Self {
        Self::diagonal(&vec![1.0 / n as f64; n]).expect("maximally mixed state is valid")
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) nonzero vector.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let norm_sqr: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if norm_sqr <= 0.0 {
            return Err(Error::NotUnit(0.0));
        }
        let n = psi.len();
        let s = 1.0 / norm_sqr;
        let m = CMatrix::from_fn(n, n, |i, j| psi[i] * psi[j].conj() * s);
        Self::from_hermitian(HermitianMatrix::hermitian_part(m))
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn as_matrix(&self) -> &CMatrix {
        self.matrix.as_matrix()
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.spectrum.values
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    pub fn sqrt(&self) -> HermitianMatrix {
        sqrt_of_spectrum(&self.spectrum).expect("density matrix spectrum is non-negative")
    }

    /// `U ρ U†`.
    pub fn conjugate(&self, u: &CMatrix) -> Result<Self> {
        if u.nrows() != self.dim() || u.ncols() != self.dim() {
            return Err(Error::DimensionMismatch(u.nrows(), self.dim()));
        }
        let m = u * self.as_matrix() * u.adjoint();
        Self::from_hermitian(HermitianMatrix::hermitian_part(m))
    }

    /// Probability-weighted sum of states.
    pub fn mixture(weights: &[f64], states: &[DensityMatrix]) -> Result<Self> {
        let first = states.first().ok_or(Error::EmptyEnsemble)?;
        if weights.len() != states.len() {
            return Err(Error::DimensionMismatch(weights.len(), states.len()));
        }
        let n = first.dim();
        let mut acc = CMatrix::zeros(n, n);
        for (w, s) in weights.iter().zip(states) {
            if s.dim() != n {
                return Err(Error::DimensionMismatch(s.dim(), n));
            }
            acc += s.as_matrix() * c(*w, 0.0);
        }
        Self::from_hermitian(HermitianMatrix::hermitian_part(acc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn plus_x() -> HermitianMatrix {
        HermitianMatrix::from_real(2, &[0.5, 0.5, 0.5, 0.5]).unwrap()
    }

    #[test]
    fn eig_identity() {
        let s = eig(&HermitianMatrix::identity(2)).unwrap();
        assert!(approx(s.values[0], 1.0, 1e-14) && approx(s.values[1], 1.0, 1e-14));
    }

    #[test]
    fn eig_pauli_z() {
        let [_, _, z] = pauli();
        let s = eig(&z).unwrap();
        assert!(approx(s.values[0], 1.0, 1e-14));
        assert!(approx(s.values[1], -1.0, 1e-14));
        // eigenvectors are e_0, e_1 up to phase
        assert!(approx(s.vectors[(0, 0)].norm(), 1.0, 1e-12));
        assert!(approx(s.vectors[(1, 1)].norm(), 1.0, 1e-12));
    }

    #[test]
    fn eig_projector_onto_plus() {
        let s = eig(&plus_x()).unwrap();
        assert!(approx(s.values[0], 1.0, 1e-14));
        assert!(approx(s.values[1], 0.0, 1e-14));
        let v = s.vectors.column(0);
        assert!(approx(v[0].norm(), 1.0 / 2f64.sqrt(), 1e-12));
        assert!(approx(v[1].norm(), 1.0 / 2f64.sqrt(), 1e-12));
    }

    #[test]
    fn sqrt_examples() {
        let id = mat_sqrt(&HermitianMatrix::identity(2)).unwrap();
        assert!(hs_norm(&(id.as_matrix() - CMatrix::identity(2, 2))) < 1e-14);

        let d = HermitianMatrix::from_real_diagonal(&[0.8, 0.2]);
        let r = mat_sqrt(&d).unwrap();
        let five = 5f64.sqrt();
        assert!(approx(r.get(0, 0).re, 2.0 / five, 1e-14));
        assert!(approx(r.get(1, 1).re, 1.0 / five, 1e-14));

        let p = plus_x();
        let r = mat_sqrt(&p).unwrap();
        assert!(hs_norm(&(r.as_matrix() - p.as_matrix())) < 1e-14);
    }

    #[test]
    fn sqrt_rejects_negative_definite() {
        let d = HermitianMatrix::from_real_diagonal(&[1.0, -0.5]);
        assert!(matches!(mat_sqrt(&d), Err(Error::NotPsd(_))));
    }

    #[test]
    fn log2_examples() {
        let l = mat_log2_on_support(&DensityMatrix::maximally_mixed(2));
        assert!(hs_norm(&(l.as_matrix() + CMatrix::identity(2, 2))) < 1e-14);

        let l = mat_log2_on_support(&DensityMatrix::diagonal(&[1.0, 0.0]).unwrap());
        assert!(hs_norm(l.as_matrix()) < 1e-14);

        let l = mat_log2_on_support(&DensityMatrix::diagonal(&[0.25, 0.75]).unwrap());
        assert!(approx(l.get(0, 0).re, -2.0, 1e-14));
        assert!(approx(l.get(1, 1).re, 0.75f64.log2(), 1e-14));
    }

    #[test]
    fn trace_norm_examples() {
        assert_eq!(trace_norm(&HermitianMatrix::zeros(2)).unwrap(), 0.0);
        let [x, _, z] = pauli();
        assert!(approx(trace_norm(&z).unwrap(), 2.0, 1e-14));
        assert!(approx(trace_norm(&(&x - &z)).unwrap(), 2.0 * 2f64.sqrt(), 1e-14));
    }

    #[test]
    fn hs_norm_examples() {
        assert_eq!(hs_norm(&CMatrix::zeros(2, 2)), 0.0);
        assert!(approx(hs_norm(&CMatrix::identity(2, 2)), 2f64.sqrt(), 1e-15));
        let [x, _, _] = pauli();
        assert!(approx(hs_norm(x.as_matrix()), 2f64.sqrt(), 1e-15));
    }

    #[test]
    fn kron_examples() {
        let i4 = kron(&HermitianMatrix::identity(2), &HermitianMatrix::identity(2));
        assert_eq!(i4, HermitianMatrix::identity(4));

        let [x, _, _] = pauli();
        let p0 = HermitianMatrix::from_real_diagonal(&[1.0, 0.0]);
        let k = kron(&p0, &x);
        assert_eq!(k.dim(), 4);
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i < 2 && j < 2 { x.get(i, j) } else { C64::default() };
                assert_eq!(k.get(i, j), expected);
            }
        }
    }

    #[test]
    fn entropy_examples() {
        let psi = [c(0.6, 0.0), c(0.0, 0.8)];
        assert!(von_neumann_entropy(&DensityMatrix::pure(&psi).unwrap()).abs() < 1e-12);
        assert!(approx(
            von_neumann_entropy(&DensityMatrix::maximally_mixed(2)),
            1.0,
            1e-15
        ));
        let rho = DensityMatrix::diagonal(&[0.25, 0.75]).unwrap();
        assert!(approx(von_neumann_entropy(&rho), 0.811_278_124_459_132_9, 1e-14));
    }

    #[test]
    fn density_matrix_validation() {
        assert!(matches!(
            DensityMatrix::diagonal(&[0.5, 0.6]),
            Err(Error::InvalidTrace(_))
        ));
        assert!(matches!(
            DensityMatrix::diagonal(&[1.5, -0.5]),
            Err(Error::NotPsd(_))
        ));
        let tiny = DensityMatrix::diagonal(&[1.0 + 5e-11, -5e-11]).unwrap();
        assert!(tiny.eigenvalues().iter().all(|&x| x >= 0.0));
        assert!(approx(tiny.trace(), 1.0, 1e-14));

        let m = CMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.1, 0.1), c(0.1, 0.1), c(0.5, 0.0)]);
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotHermitian(_))));
        let m = CMatrix::zeros(2, 3);
        assert!(matches!(HermitianMatrix::new(m), Err(Error::NotSquare(2, 3))));
    }
}
