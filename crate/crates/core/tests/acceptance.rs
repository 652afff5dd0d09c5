//! Acceptance gate. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use polycm_core::bounds::{bound_table, endpoint_constants};
use polycm_core::cm::{cm_scan, lemma21_condition, lemma22_ratio, q_ratio, signed_derivative};
use polycm_core::cm::{RatioParams, ShiftParams};
use polycm_core::constants::zeta_int;
use polycm_core::oracle::{
    digamma_series, polygamma_integral, polygamma_series, shift_integral, QuadratureSpec,
    SeriesSpec,
};
use polycm_core::{factorial_over_power, polygamma, GridSpec, PolygammaOrder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const A_VALUES: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
const EVEN_K: [u32; 3] = [0, 2, 4];
const ODD_K: [u32; 3] = [1, 3, 5];
const SEED: u64 = 0x5eed_2024;

type Outcome = Result<String, String>;

fn order(n: u32) -> PolygammaOrder {
    PolygammaOrder::new(n).unwrap()
}

fn within_budget(elapsed: Duration, budget: Duration, detail: String) -> Outcome {
    if elapsed <= budget {
        Ok(format!("{detail}; {:.2?} (budget {:?})", elapsed, budget))
    } else {
        Err(format!(
            "{detail}; took {:.2?}, budget {:?}",
            elapsed, budget
        ))
    }
}

fn functional_equation() -> Outcome {
    let start = Instant::now();
    let xs = GridSpec::logarithmic(1e-2, 1e4, 60).unwrap().points();
    let mut worst = 0.0f64;
    for n in 0..=10 {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        for &x in &xs {
            let lo = polygamma(order(n), x).map_err(|e| e.to_string())?.value;
            let hi = polygamma(order(n), x + 1.0)
                .map_err(|e| e.to_string())?
                .value;
            let step = sign * factorial_over_power(n, x).unwrap();
            let rel = (hi - lo - step).abs() / (1.0 + lo.abs());
            worst = worst.max(rel);
            if rel > 1e-11 {
                return Err(format!("n={n} x={x}: relative residual {rel:e} > 1e-11"));
            }
        }
    }
    within_budget(
        start.elapsed(),
        Duration::from_secs(1),
        format!("max relative residual {worst:.2e} <= 1e-11"),
    )
}

fn three_representations() -> Outcome {
    let start = Instant::now();
    let xs = GridSpec::logarithmic(0.1, 100.0, 50).unwrap().points();
    let series = SeriesSpec::default();
    let quad = QuadratureSpec::default();
    let mut checked = 0;
    for n in 0..=8u32 {
        for &x in &xs {
            let engine = polygamma(order(n), x).map_err(|e| e.to_string())?;
            let s = if n == 0 {
                digamma_series(x, &series)
            } else {
                polygamma_series(n, x, &series)
            }
            .map_err(|e| e.to_string())?;
            let q = polygamma_integral(n, x, &quad).map_err(|e| e.to_string())?;
            for (name, u, v) in [
                ("engine/series", engine, s),
                ("engine/quad", engine, q),
                ("series/quad", s, q),
            ] {
                if !u.agrees_with(&v) {
                    return Err(format!(
                        "{name} n={n} x={x}: {} vs {} (|diff| {:e}, allowed {:e})",
                        u.value,
                        v.value,
                        (u.value - v.value).abs(),
                        u.abs_error_estimate + v.abs_error_estimate
                    ));
                }
            }
            checked += 1;
        }
    }
    within_budget(
        start.elapsed(),
        Duration::from_secs(30),
        format!("{checked} (n, x) points agree pairwise"),
    )
}

fn cm_family(ks: &[u32], budget: Duration) -> Outcome {
    let start = Instant::now();
    let grid = GridSpec::logarithmic(0.1, 100.0, 60).unwrap();
    let mut tightest = f64::INFINITY;
    for &a in &A_VALUES {
        for &k in ks {
            let p = ShiftParams::new(a, k).unwrap();
            let r = cm_scan(&p, 8, &grid).map_err(|e| e.to_string())?;
            if !r.passed || r.min_signed_value <= r.witness_error {
                return Err(format!("a={a} k={k}: {r:?}"));
            }
            tightest = tightest.min(r.min_signed_value / r.witness_error.max(f64::MIN_POSITIVE));
        }
    }
    within_budget(
        start.elapsed(),
        budget,
        format!(
            "{} scans passed; smallest value/error ratio {tightest:.2e}",
            A_VALUES.len() * ks.len()
        ),
    )
}

fn lemma22_squeeze() -> Outcome {
    let a_grid = GridSpec::linear(0.05, 0.95, 30).unwrap().points();
    let t_grid = GridSpec::logarithmic(1e-4, 50.0, 30).unwrap().points();
    let mut min_lower = f64::INFINITY;
    let mut limit_points = 0;
    for &a in &a_grid {
        for &t in &t_grid {
            let r = lemma22_ratio(a, t).map_err(|e| e.to_string())?;
            // 1 − ratio = q_{a,1}(t), evaluated without cancellation.
            let upper_gap = q_ratio(&RatioParams::new(a, 1.0).unwrap(), t).unwrap();
            let lower_gap = r - a;
            min_lower = min_lower.min(lower_gap);
            if lower_gap <= 1e-12 {
                return Err(format!("a={a} t={t}: ratio − a = {lower_gap:e}"));
            }
            if upper_gap <= 0.0 || r > 1.0 {
                return Err(format!("a={a} t={t}: ratio {r} not below 1"));
            }
            if upper_gap > 1e-11 {
                if 1.0 - r <= 1e-12 {
                    return Err(format!("a={a} t={t}: 1 − ratio = {:e}", 1.0 - r));
                }
            } else {
                // Within rounding of the t → ∞ limit.
                limit_points += 1;
            }
        }
    }
    Ok(format!(
        "900 points; min(ratio − a) = {min_lower:.2e}; {limit_points} points at the t→∞ limit checked via 1 − ratio = q_(a,1)(t) > 0"
    ))
}

fn lemma21_iff() -> Outcome {
    let ts = GridSpec::logarithmic(1e-3, 60.0, 200).unwrap().points();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut true_pairs, mut false_pairs) = (0, 0);
    let mut attempts = 0;
    while (true_pairs < 20 || false_pairs < 10) && attempts < 100_000 {
        attempts += 1;
        let alpha: f64 = rng.gen_range(-1.0..2.0);
        let beta: f64 = rng.gen_range(-1.0..2.0);
        let Ok(p) = RatioParams::new(alpha, beta) else {
            continue;
        };
        let q: Vec<f64> = ts.iter().map(|&t| q_ratio(&p, t).unwrap()).collect();
        if lemma21_condition(&p) {
            if true_pairs == 20 {
                continue;
            }
            for (i, w) in q.windows(2).enumerate() {
                if w[1] < w[0] - 4.0 * f64::EPSILON * w[0].abs() {
                    return Err(format!(
                        "({alpha}, {beta}) satisfies the condition but q drops at t={}",
                        ts[i]
                    ));
                }
            }
            true_pairs += 1;
        } else {
            if false_pairs == 10 {
                continue;
            }
            if !q.windows(2).any(|w| w[1] < w[0]) {
                return Err(format!(
                    "({alpha}, {beta}) fails the condition but q never drops on the grid"
                ));
            }
            false_pairs += 1;
        }
    }
    if true_pairs < 20 || false_pairs < 10 {
        return Err(format!(
            "sampling exhausted: {true_pairs} true, {false_pairs} false"
        ));
    }
    Ok(format!("{true_pairs} condition-true pairs nondecreasing, {false_pairs} condition-false pairs decrease"))
}

fn remark_constants() -> Outcome {
    let pi = std::f64::consts::PI;
    let series = SeriesSpec::default();
    let half = 0.5;
    let cases: [(u32, &str, f64, f64); 4] = [
        (0, "3/2 − 2 ln 2", 1.5 - 2.0 * std::f64::consts::LN_2, 1e-12),
        (2, "15 − 12ζ(3)", 15.0 - 12.0 * zeta_int(3).unwrap(), 1e-9),
        (1, "π²/3 − 9/2", pi * pi / 3.0 - 4.5, 1e-9),
        (3, "14π⁴/15 − 99", 14.0 * pi.powi(4) / 15.0 - 99.0, 1e-8),
    ];
    let mut lines = Vec::new();
    for (k, label, symbolic, tol) in cases {
        let p = ShiftParams::new(half, k).unwrap();
        let engine = endpoint_constants(&p).map_err(|e| e.to_string())?;
        // ψ^(k)(3/2) − ψ^(k)(1) − k!/2 from the series representation alone.
        let kf = (1..=k).product::<u32>() as f64;
        let oracle = if k == 0 {
            digamma_series(1.5, &series).unwrap().value
                - digamma_series(1.0, &series).unwrap().value
                - 0.5
        } else {
            polygamma_series(k, 1.5, &series).unwrap().value
                - polygamma_series(k, 1.0, &series).unwrap().value
                - 0.5 * kf
        };
        let de = (engine.value - symbolic).abs();
        let doe = (oracle - symbolic).abs();
        if de > tol || doe > tol {
            return Err(format!(
                "{label}: engine {} oracle {oracle} symbolic {symbolic}",
                engine.value
            ));
        }
        lines.push(format!("{label} = {:.12}", engine.value));
    }
    Ok(lines.join(", "))
}

fn corollary_bounds() -> Outcome {
    let grid = GridSpec::logarithmic(1.001, 1000.0, 50).unwrap();
    let mut tables = 0;
    let mut tightest = f64::INFINITY;
    for &a in &A_VALUES {
        for &k in EVEN_K.iter().chain(ODD_K.iter()) {
            let p = ShiftParams::new(a, k).unwrap();
            let t = bound_table(&p, &grid).map_err(|e| e.to_string())?;
            if !t.passed() {
                return Err(format!("a={a} k={k}: a bound fails"));
            }
            for c in &t.checks {
                if !c.clears(10.0) {
                    return Err(format!(
                        "a={a} k={k}: margins within 10x error at x={}: {c:?}",
                        c.x
                    ));
                }
                let m = (c.lower_margin / c.lower_margin_error)
                    .min(c.upper_margin / c.upper_margin_error);
                tightest = tightest.min(m);
            }
            tables += 1;
        }
    }
    Ok(format!(
        "{tables} tables x 50 points strict; smallest margin/error {tightest:.2e}"
    ))
}

fn proof_integrand() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let spec = QuadratureSpec::default();
    let mut lines = Vec::new();
    for _ in 0..5 {
        let a = A_VALUES[rng.gen_range(0..A_VALUES.len())];
        let k = EVEN_K[rng.gen_range(0..EVEN_K.len())];
        let n: u32 = rng.gen_range(0..=8);
        let x = 10f64.powf(rng.gen_range(-1.0..2.0));
        let p = ShiftParams::new(a, k).unwrap();
        let engine = signed_derivative(&p, n, x).map_err(|e| e.to_string())?;
        let integral = shift_integral(&p, n, x, &spec).map_err(|e| e.to_string())?;
        if !engine.agrees_with(&integral) {
            return Err(format!(
                "a={a} k={k} n={n} x={x}: {} vs {} (allowed {:e})",
                engine.value,
                integral.value,
                engine.abs_error_estimate + integral.abs_error_estimate
            ));
        }
        lines.push(format!("(a={a},k={k},n={n},x={x:.3})"));
    }
    within_budget(
        start.elapsed(),
        Duration::from_secs(20),
        format!("agree at {}", lines.join(" ")),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("1 functional equation residual", functional_equation),
        ("2 three-representation agreement", three_representations),
        ("3 even-k complete monotonicity", || {
            cm_family(&EVEN_K, Duration::from_secs(10))
        }),
        ("4 odd-k complete monotonicity of -h", || {
            cm_family(&ODD_K, Duration::from_secs(10))
        }),
        ("5 exponential-ratio squeeze", lemma22_squeeze),
        ("6 ratio monotonicity iff condition", lemma21_iff),
        ("7 endpoint constants", remark_constants),
        ("8 two-sided bounds on (1.001, 1000]", corollary_bounds),
        ("9 proof integrand spot check", proof_integrand),
    ];
    let total = Instant::now();
    let mut failures = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS [{name}] {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL [{name}] {detail}");
            }
        }
    }
    let elapsed = total.elapsed();
    println!(
        "acceptance: {} of 9 criteria passed in {elapsed:.2?}",
        9 - failures
    );
    if failures == 0 && elapsed < Duration::from_secs(120) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
