//! Acceptance suite: one pass/fail line per criterion, non-zero exit if any
//! criterion fails. Runs without the libtest harness so the lines always
//! print.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};
use std::process::ExitCode;
use std::time::Instant;

use holevo::experiments::{
    figure1, figure2, fuzz, pearson, verify_properties, FuzzConfig, RunReport, DEFAULT_TOL,
};
use holevo::measurement::{check_purity_bound, d_along_axis, effects_from_axis, gai};
use holevo::optimize::OptimizerConfig;
use holevo::qubit::{
    b_joint_closed, binary_f, example_ensemble, hr_joint_closed, k_joint_closed, nc_closed, purity_closed,
    xb_closed, xk_closed, xsr_closed, BlochEnsemble, ExampleParams,
};
use holevo::random::{random_axis, random_diagonal_ensemble, random_qubit_ensemble, rng_from_seed};
use holevo::{dbhq, non_commutativity, purity, DistanceNotion};
use nalgebra::Vector3;
use rand::Rng;

const SEED: u64 = 42;
const THETA_STEPS: usize = 181;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn inequality_fuzz() -> Outcome {
    let cfg = FuzzConfig {
        trials: 1000,
        seed: SEED,
        measurements_per_ensemble: 5,
        tol: DEFAULT_TOL,
        ..FuzzConfig::default()
    };
    let report = RunReport::new(vec![], fuzz(&cfg).expect("fuzz runs"));
    outcome(
        report.summary.violations == 0 && report.summary.records == 1000 * 5 * 6,
        format!(
            "{} checks, {} violations, worst slack {:e}",
            report.summary.records,
            report.summary.violations,
            report.summary.worst_gap.unwrap_or(0.0)
        ),
    )
}

fn two_state_kolmogorov() -> Outcome {
    let opt = OptimizerConfig::default();
    let mut rng = rng_from_seed(SEED);
    let (mut worst_value, mut worst_axis): (f64, f64) = (0.0, 0.0);
    for _ in 0..200 {
        let e = random_qubit_ensemble(&mut rng, 2);
        let b = BlochEnsemble::from_ensemble(&e).unwrap();
        let r = gai(&e, DistanceNotion::Kolmogorov, &opt).unwrap();
        worst_value = worst_value.max((r.value - dbhq(&e, DistanceNotion::Kolmogorov).value()).abs());
        let d = (b.vectors[0] - b.vectors[1]).normalize();
        let found = Vector3::from(r.axis);
        worst_axis = worst_axis.max((found - d).norm().min((found + d).norm()));
    }
    outcome(
        worst_value <= 1e-6 && worst_axis <= 1e-4,
        format!("max |I_K - X_K| = {worst_value:e}, max axis error = {worst_axis:e}"),
    )
}

fn commuting_equality() -> Outcome {
    let opt = OptimizerConfig::default();
    let mut rng = rng_from_seed(SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.random_range(2..=4);
        let e = random_diagonal_ensemble(&mut rng, n, 2);
        for notion in DistanceNotion::ALL {
            let i = gai(&e, notion, &opt).unwrap().value;
            worst = worst.max((i - dbhq(&e, notion).value()).abs());
        }
    }
    outcome(worst <= 1e-6, format!("max |I_d - X_d| = {worst:e} over 100 ensembles x 5 notions"))
}

fn closed_form_equivalence() -> Outcome {
    let mut rng = rng_from_seed(SEED);
    let mut worst: f64 = 0.0;
    let mut worst_oracle: f64 = 0.0;
    for _ in 0..500 {
        let n = rng.random_range(2..=4);
        let e = random_qubit_ensemble(&mut rng, n);
        let z = random_axis(&mut rng);
        let b = BlochEnsemble::from_ensemble(&e).unwrap();

        // the Bhattacharyya closed form is validated first against the
        // outcome-probability definition
        let q0: f64 = b.weights.iter().zip(&b.vectors).map(|(p, v)| p * (1.0 + v.dot(&z)) / 2.0).sum();
        let brute: f64 = b
            .weights
            .iter()
            .zip(&b.vectors)
            .map(|(p, v)| {
                let c0 = (1.0 + v.dot(&z)) / 2.0;
                p * ((c0 * q0).sqrt() + ((1.0 - c0) * (1.0 - q0)).sqrt())
            })
            .sum();
        worst_oracle = worst_oracle.max((b_joint_closed(&b, &z) - brute).abs());

        let pairs = [
            (xk_closed(&b), dbhq(&e, DistanceNotion::Kolmogorov).value()),
            (xb_closed(&b), dbhq(&e, DistanceNotion::Bhattacharyya).value()),
            (xsr_closed(&b), dbhq(&e, DistanceNotion::RelativeEntropy).value()),
            (k_joint_closed(&b, &z), d_along_axis(&e, DistanceNotion::Kolmogorov, &z).unwrap().value()),
            (b_joint_closed(&b, &z), d_along_axis(&e, DistanceNotion::Bhattacharyya, &z).unwrap().value()),
            (hr_joint_closed(&b, &z), d_along_axis(&e, DistanceNotion::RelativeEntropy, &z).unwrap().value()),
            (nc_closed(&b), non_commutativity(&e)),
            (purity_closed(&b), purity(e.average())),
        ];
        for (closed, matrix) in pairs {
            worst = worst.max((closed - matrix).abs());
        }
    }
    outcome(
        worst <= 1e-9 && worst_oracle <= 1e-9,
        format!("max closed-vs-matrix deviation {worst:e}, Bhattacharyya form vs brute force {worst_oracle:e}"),
    )
}

fn point_values() -> Outcome {
    let quarter = ExampleParams::new(FRAC_PI_4, 0.5).unwrap();
    let eq = example_ensemble(&quarter);
    let nc = non_commutativity(&eq);
    let gamma = purity(eq.average());
    let xsr = dbhq(&eq, DistanceNotion::RelativeEntropy).value();

    let half = example_ensemble(&ExampleParams::new(FRAC_PI_2, 0.5).unwrap());
    let xsr_half = dbhq(&half, DistanceNotion::RelativeEntropy).value();
    let isr_half = gai(&half, DistanceNotion::RelativeEntropy, &OptimizerConfig::default()).unwrap().value;
    let xk_half = dbhq(&half, DistanceNotion::Kolmogorov).value();

    let checks = [
        (nc - 1.0 / (4.0 * SQRT_2)).abs() <= 1e-12,
        (gamma - 0.75).abs() <= 1e-12,
        (xsr - (1.0 - 0.5 * binary_f(1.0 / SQRT_2))).abs() <= 1e-9,
        (xsr_half - 1.0).abs() <= 1e-6 && (isr_half - 1.0).abs() <= 1e-6,
        (xk_half - 0.5).abs() <= 1e-12,
    ];
    outcome(
        checks.iter().all(|c| *c),
        format!(
            "N_c = {nc:.15}, gamma = {gamma:.15}, X_Sr(pi/4) = {xsr:.12}, X_Sr(pi/2) = {xsr_half:.12}, \
             I_Sr(pi/2) = {isr_half:.12}, X_K(pi/2) = {xk_half:.15}"
        ),
    )
}

fn argmax(v: &[f64]) -> usize {
    v.iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, _)| k)
        .unwrap()
}

fn figure1_properties() -> Outcome {
    let rows = figure1(0.5, THETA_STEPS, &OptimizerConfig::default()).unwrap();
    let gaps: Vec<f64> = rows.iter().map(|r| r.gap).collect();
    let min_gap = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    let ends = gaps[0].abs().max(gaps[gaps.len() - 1].abs());
    let peak = argmax(&gaps);
    let quarter = (THETA_STEPS - 1) / 2;
    outcome(
        min_gap >= -1e-9 && ends <= 1e-6 && peak.abs_diff(quarter) <= 1,
        format!(
            "min gap {min_gap:e}, endpoint gap {ends:e}, peak at theta = {:.6} (pi/4 = {:.6})",
            rows[peak].theta, FRAC_PI_4
        ),
    )
}

fn figure2_properties() -> Outcome {
    let rows = figure2(0.5, THETA_STEPS, &OptimizerConfig::default()).unwrap();
    let gaps: Vec<f64> = rows.iter().map(|r| r.gap).collect();
    let min_gap = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    let ends = gaps[0].abs().max(gaps[gaps.len() - 1].abs());

    let mut rng = rng_from_seed(SEED);
    let mut purity_violations = 0;
    let mut sampled = 0;
    for r in &rows {
        let e = example_ensemble(&ExampleParams::new(r.theta, 0.5).unwrap());
        for _ in 0..64 {
            let povm = effects_from_axis(&random_axis(&mut rng)).unwrap();
            sampled += 1;
            if !check_purity_bound(&e, &povm).unwrap().ok {
                purity_violations += 1;
            }
        }
    }

    let scaled: Vec<f64> = rows.iter().map(|r| r.scaled).collect();
    let nc: Vec<f64> = rows.iter().map(|r| r.n_c).collect();
    let with_purity = pearson(&gaps, &scaled).unwrap_or(f64::NAN);
    let nc_alone = pearson(&gaps, &nc).unwrap_or(f64::NAN);
    outcome(
        min_gap >= -1e-9 && ends <= 1e-6 && purity_violations == 0 && with_purity > nc_alone,
        format!(
            "min gap {min_gap:e}, endpoint gap {ends:e}, purity bound {purity_violations}/{sampled} violations, \
             corr(gap, (1-gamma) N_c) = {with_purity:.4} > corr(gap, N_c) = {nc_alone:.4}"
        ),
    )
}

fn axiom_suite() -> Outcome {
    let records = verify_properties(1000, SEED, DEFAULT_TOL).unwrap();
    let report = RunReport::new(vec![], records);
    outcome(
        report.summary.violations == 0,
        format!("{} checks, {} violations", report.summary.records, report.summary.violations),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("inequality fuzz, 1000 ensembles x 5 axes", inequality_fuzz),
        ("two-state Kolmogorov optimum, 200 ensembles", two_state_kolmogorov),
        ("commuting ensembles attain the bound, 100 ensembles", commuting_equality),
        ("closed forms match the matrix path, 500 inputs", closed_form_equivalence),
        ("point values of the two-pure-state family", point_values),
        ("relative-entropy figure properties", figure1_properties),
        ("Bhattacharyya figure properties", figure2_properties),
        ("axiom suite", axiom_suite),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let status = if result.ok { "PASS" } else { "FAIL" };
        if !result.ok {
            failed += 1;
        }
        println!(
            "criterion {}: {status} {name} ({}; {:.1}s)",
            k + 1,
            result.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        return ExitCode::FAILURE;
    }
    println!("all criteria passed");
    ExitCode::SUCCESS
}
