//! Derivative-free maximization of a function on the unit sphere S².
//!
//! Two stages:
//!
//! 1. A full scan of a polar × azimuth grid (both poles included, each
//!    evaluated once).
//! 2. Nelder-Mead refinement from the best few, well-separated grid points.
//!    The simplex lives in the tangent plane of the start point and is mapped
//!    back to the sphere by normalization, so there is no coordinate
//!    singularity at the poles.
//!
//! Refinement only ever accepts improvements, so the result is never worse
//! than the best grid point. Objectives with `|·|` kinks (Kolmogorov) are
//! handled because neither stage needs derivatives.

use nalgebra::Vector3;
use serde::Serialize;

pub type Axis = Vector3<f64>;

/// Values closer than this are ties; ties go to the lexicographically
/// smallest axis.
const TIE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimizerConfig {
    /// Grid points around the equator.
    pub azimuth_steps: usize,
    /// Grid rings from pole to pole, inclusive.
    pub polar_steps: usize,
    /// Spread of simplex values at convergence.
    pub f_tol: f64,
    /// Simplex radius at convergence.
    pub x_tol: f64,
    /// Cap on Nelder-Mead iterations per start.
    pub max_steps: usize,
    /// Number of grid candidates refined.
    pub starts: usize,
    /// Rotates the initial simplex in the tangent plane; 0 means no rotation.
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            azimuth_steps: 128,
            polar_steps: 64,
            f_tol: 1e-10,
            x_tol: 1e-6,
            max_steps: 200,
            starts: 4,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SphereOptimum {
    pub axis: [f64; 3],
    pub value: f64,
    /// Nelder-Mead iterations summed over all starts.
    pub iterations: usize,
    pub evaluations: usize,
}

pub fn spherical(polar: f64, azimuth: f64) -> Axis {
    let (st, ct) = polar.sin_cos();
    let (sp, cp) = azimuth.sin_cos();
    Axis::new(st * cp, st * sp, ct)
}

/// All grid axes, poles once each, in deterministic order.
pub fn sphere_grid(azimuth_steps: usize, polar_steps: usize) -> Vec<Axis> {
    let polar_steps = polar_steps.max(2);
    let azimuth_steps = azimuth_steps.max(1);
    let mut out = Vec::with_capacity(azimuth_steps * polar_steps);
    for a in 0..polar_steps {
        let polar = std::f64::consts::PI * a as f64 / (polar_steps - 1) as f64;
        if a == 0 || a == polar_steps - 1 {
            out.push(Axis::new(0.0, 0.0, polar.cos().signum()));
            continue;
        }
        for b in 0..azimuth_steps {
            let azimuth = std::f64::consts::TAU * b as f64 / azimuth_steps as f64;
            out.push(spherical(polar, azimuth));
        }
    }
    out
}

fn lex_less(a: &Axis, b: &Axis) -> bool {
    for k in 0..3 {
        if a[k] != b[k] {
            return a[k] < b[k];
        }
    }
    false
}

/// Axes closer than this are the same optimum for tie-breaking purposes.
const SAME_POINT: f64 = 1e-3;

/// `true` if `(va, a)` should replace the incumbent `(vb, b)`.
///
/// Within `TIE_TOL`, two distinct optima resolve to the lexicographically
/// smaller axis, while two estimates of the same optimum keep the higher value.
fn better(va: f64, a: &Axis, vb: f64, b: &Axis) -> bool {
    if va > vb + TIE_TOL {
        return true;
    }
    if (va - vb).abs() > TIE_TOL {
        return false;
    }
    if (a - b).norm() < SAME_POINT {
        return va > vb;
    }
    lex_less(a, b)
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::NEG_INFINITY
    } else {
        v
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn tangent_basis(z: &Axis, seed: u64) -> (Axis, Axis) {
    let helper = if z.x.abs() <= z.y.abs() && z.x.abs() <= z.z.abs() {
        Axis::x()
    } else if z.y.abs() <= z.z.abs() {
        Axis::y()
    } else {
        Axis::z()
    };
    let e1 = (helper - z * z.dot(&helper)).normalize();
    let e2 = z.cross(&e1);
    if seed == 0 {
        return (e1, e2);
    }
    let angle = (splitmix(seed) as f64 / u64::MAX as f64) * std::f64::consts::TAU;
    let (s, c) = angle.sin_cos();
    (e1 * c + e2 * s, e2 * c - e1 * s)
}

struct Refined {
    axis: Axis,
    value: f64,
    iterations: usize,
    evaluations: usize,
}

/// Nelder-Mead maximization in the tangent plane at `start`.
fn refine<F: Fn(&Axis) -> f64>(f: &F, start: Axis, step: f64, cfg: &OptimizerConfig) -> Refined {
    let (e1, e2) = tangent_basis(&start, cfg.seed);
    let lift = |u: [f64; 2]| (start + e1 * u[0] + e2 * u[1]).normalize();
    let mut evaluations = 0usize;
    let mut eval = |u: [f64; 2]| {
        evaluations += 1;
        sanitize(f(&lift(u)))
    };

    let mut simplex: Vec<([f64; 2], f64)> = [[0.0, 0.0], [step, 0.0], [0.0, step]]
        .into_iter()
        .map(|u| (u, eval(u)))
        .collect();

    let mut iterations = 0usize;
    while iterations < cfg.max_steps {
        // best first (maximization)
        simplex.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal));
        let spread = simplex[0].1 - simplex[2].1;
        let radius = simplex[1..]
            .iter()
            .map(|(u, _)| ((u[0] - simplex[0].0[0]).powi(2) + (u[1] - simplex[0].0[1]).powi(2)).sqrt())
            .fold(0.0, f64::max);
        if spread.abs() <= cfg.f_tol && radius <= cfg.x_tol {
            break;
        }
        iterations += 1;

        let centroid = [
            0.5 * (simplex[0].0[0] + simplex[1].0[0]),
            0.5 * (simplex[0].0[1] + simplex[1].0[1]),
        ];
        let worst = simplex[2];
        let along = |t: f64| {
            [
                centroid[0] + t * (worst.0[0] - centroid[0]),
                centroid[1] + t * (worst.0[1] - centroid[1]),
            ]
        };

        let reflected = along(-1.0);
        let fr = eval(reflected);
        if fr > simplex[0].1 {
            let expanded = along(-2.0);
            let fe = eval(expanded);
            simplex[2] = if fe > fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr > simplex[1].1 {
            simplex[2] = (reflected, fr);
            continue;
        }
        let (contracted, fc) = if fr > worst.1 {
            let u = along(-0.5);
            (u, eval(u))
        } else {
            let u = along(0.5);
            (u, eval(u))
        };
        if fc > worst.1.max(fr) {
            simplex[2] = (contracted, fc);
            continue;
        }
        // shrink toward the best vertex
        let best = simplex[0].0;
        for vertex in simplex.iter_mut().skip(1) {
            let u = [
                best[0] + 0.5 * (vertex.0[0] - best[0]),
                best[1] + 0.5 * (vertex.0[1] - best[1]),
            ];
            *vertex = (u, eval(u));
        }
    }
    simplex.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal));
    Refined {
        axis: lift(simplex[0].0),
        value: simplex[0].1,
        iterations,
        evaluations,
    }
}

/// Maximizes `f` over unit vectors.
pub fn maximize_on_sphere<F: Fn(&Axis) -> f64>(f: F, cfg: &OptimizerConfig) -> SphereOptimum {
    let grid = sphere_grid(cfg.azimuth_steps, cfg.polar_steps);
    let mut scored: Vec<(f64, Axis)> = grid.iter().map(|z| (sanitize(f(z)), *z)).collect();
    let mut evaluations = scored.len();
    scored.sort_by(|a, b| {
        b.0.total_cmp(&a.0)
            .then_with(|| a.1.iter().zip(b.1.iter()).fold(std::cmp::Ordering::Equal, |o, (x, y)| {
                o.then(x.total_cmp(y))
            }))
    });

    let spacing = std::f64::consts::PI / (cfg.polar_steps.max(2) - 1) as f64;
    let mut starts: Vec<(f64, Axis)> = Vec::new();
    for &(v, z) in &scored {
        if starts.len() >= cfg.starts.max(1) {
            break;
        }
        let separated = starts
            .iter()
            .all(|(_, s)| s.dot(&z).clamp(-1.0, 1.0).acos() > 2.0 * spacing);
        if separated {
            starts.push((v, z));
        }
    }

    let (mut best_value, mut best_axis) = scored[0];
    for &(v, z) in &scored[1..] {
        if v < best_value - TIE_TOL {
            break;
        }
        if better(v, &z, best_value, &best_axis) {
            best_value = v;
            best_axis = z;
        }
    }
    let mut iterations = 0usize;
    for &(v0, z0) in &starts {
        let mut r = refine(&f, z0, spacing, cfg);
        // restart once from the converged point with a fresh simplex
        let again = refine(&f, r.axis, (spacing * 1e-2).max(100.0 * cfg.x_tol), cfg);
        r.iterations += again.iterations;
        r.evaluations += again.evaluations;
        if again.value >= r.value {
            r.axis = again.axis;
            r.value = again.value;
        }
        iterations += r.iterations;
        evaluations += r.evaluations;
        let (v, z) = if r.value >= v0 { (r.value, r.axis) } else { (v0, z0) };
        if better(v, &z, best_value, &best_axis) {
            best_value = v;
            best_axis = z;
        }
    }

    SphereOptimum {
        axis: [best_axis.x, best_axis.y, best_axis.z],
        value: best_value,
        iterations,
        evaluations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_has_single_poles() {
        let g = sphere_grid(8, 5);
        assert_eq!(g.len(), 2 + 3 * 8);
        assert!(g.iter().all(|z| (z.norm() - 1.0).abs() < 1e-15));
        assert_eq!(g[0], Axis::new(0.0, 0.0, 1.0));
        assert_eq!(*g.last().unwrap(), Axis::new(0.0, 0.0, -1.0));
    }

    #[test]
    fn finds_smooth_maximum_off_grid() {
        let target = Axis::new(0.3, -0.5, 0.7).normalize();
        let opt = maximize_on_sphere(|z| z.dot(&target), &OptimizerConfig::default());
        let axis = Axis::from(opt.axis);
        assert!((axis - target).norm() < 1e-5, "{:?}", opt);
        assert!((opt.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn finds_kinked_maximum() {
        let target = Axis::new(-0.2, 0.9, 0.1).normalize();
        let opt = maximize_on_sphere(|z| z.dot(&target).abs(), &OptimizerConfig::default());
        let axis = Axis::from(opt.axis);
        assert!((axis - target).norm().min((axis + target).norm()) < 1e-5);
    }

    #[test]
    fn maximum_at_pole() {
        let opt = maximize_on_sphere(|z| z.z * z.z, &OptimizerConfig::default());
        assert!((opt.value - 1.0).abs() < 1e-15, "{opt:?}");
        // ±z tie resolves to the lexicographically smaller axis
        assert_eq!(opt.axis, [0.0, 0.0, -1.0]);
    }

    #[test]
    fn deterministic() {
        let f = |z: &Axis| (3.0 * z.x).sin() + z.y * z.z;
        let a = maximize_on_sphere(f, &OptimizerConfig::default());
        let b = maximize_on_sphere(f, &OptimizerConfig::default());
        assert_eq!(a, b);
    }
}
