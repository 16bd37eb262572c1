use ratideal::degeneration::limit_scan_with;
use ratideal::hyperbolic::{gamma_h, GammaMode, OmegaPair};
use ratideal::numeric::{ComplexValue, GaussianRational, Mode, Scalar};
use ratideal::par::Execution;
use ratideal::rational::{
    e7_transform, example_a, example_b, example_c, verify_theorem1_with, verify_theorem2_with, ExampleOutcome,
    ParameterSet, VerificationReport,
};
use ratideal::sampling::{
    case_rng, example_points, ChaCha20Rng, random_beta_params, random_theorem1_set, random_theorem2_set, random_v_identity_params,
    random_v_params, sample_until,
};
use ratideal::verifier::{verify_hyperbolic_beta_with, verify_v_transform_with, HyperbolicParams};
use ratideal::{Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Command, Repr, RunConfig, VerifyKind, Which};
use crate::report::{Case, ReportEnvelope, Verdict};

/// Periods used wherever the user gives none.
pub fn default_omega(cfg: &RunConfig) -> OmegaPair {
    OmegaPair::conjugate_unit(cfg.precision, 1, 8).expect("e^{±iπ/8} are valid periods")
}

/// δ values of the default limit scan.
pub const DEFAULT_DELTAS: [f64; 4] = [1e-2, 5e-3, 2e-3, 1e-3];

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

pub fn dispatch(command: &Command, cfg: RunConfig) -> Result<ReportEnvelope> {
    let cases = match command {
        Command::GammaEval { u, omega1, omega2, repr } => gamma_eval(&cfg, u, omega1.as_deref(), omega2.as_deref(), *repr)?,
        Command::Verify { kind, count } => verify(&cfg, *kind, *count)?,
        Command::LimitScan { n, y, delta } => limit_scan(&cfg, n, y, delta)?,
        Command::Examples { which, a } => examples(&cfg, *which, a)?,
    };
    Ok(ReportEnvelope::from_cases(cfg, cases))
}

fn gamma_eval(cfg: &RunConfig, u: &str, omega1: Option<&str>, omega2: Option<&str>, repr: Repr) -> Result<Vec<Case>> {
    let p = cfg.precision;
    let u = ComplexValue::parse(u, p)?;
    let w = match (omega1, omega2) {
        (Some(a), Some(b)) => OmegaPair::new_unordered(ComplexValue::parse(a, p)?, ComplexValue::parse(b, p)?)?,
        _ => default_omega(cfg),
    };
    let input = json!({ "u": to_value(&u), "omega": to_value(&w) });
    let modes: &[GammaMode] = match repr {
        Repr::Auto => &[GammaMode::Auto],
        Repr::Product => &[GammaMode::Product],
        Repr::Integral => &[GammaMode::Integral],
        Repr::Both => &[GammaMode::Product, GammaMode::Integral],
    };
    let mut values = Vec::new();
    for mode in modes {
        // A pole or domain violation aborts the whole command with its error.
        values.push(gamma_h(&u, &w, *mode)?);
    }
    let mut cases: Vec<Case> = values
        .iter()
        .enumerate()
        .map(|(i, v)| Case::new(i, format!("{:?}", v.representation_used).to_lowercase(), input.clone()).with_report(Verdict::Pass, to_value(v)))
        .collect();
    if let [a, b] = values.as_slice() {
        let diff = a.value.relative_distance(&b.value).to_f64();
        let allowed = cfg.tolerance.max(a.estimated_error + b.estimated_error);
        let verdict = if diff <= allowed { Verdict::Pass } else { Verdict::Fail };
        cases.push(Case::new(2, "difference", input).with_report(verdict, json!({ "relative_difference": diff })));
    }
    Ok(cases)
}

fn exact_set_valid(p: &ParameterSet<GaussianRational>) -> bool {
    ParameterSet::new(p.n().to_vec(), p.a().to_vec()).is_ok()
}

fn hyperbolic_valid(h: &HyperbolicParams) -> bool {
    HyperbolicParams::new(h.g().to_vec(), h.omega().clone()).is_ok()
}

fn rational_report<S: Scalar + Serialize>(r: &VerificationReport<S>) -> (Verdict, Value) {
    ((&r.status).into(), to_value(r))
}

/// Runs one identity on an exact set, converting to floats in float mode.
fn run_rational(
    cfg: &RunConfig,
    p: &ParameterSet<GaussianRational>,
    exact: impl Fn(&ParameterSet<GaussianRational>, f64, Execution) -> Result<VerificationReport<GaussianRational>>,
    float: impl Fn(&ParameterSet<ComplexValue>, f64, Execution) -> Result<VerificationReport<ComplexValue>>,
) -> Result<(Verdict, Value)> {
    match cfg.mode {
        Mode::Exact => exact(p, 0.0, Execution::Sequential).map(|r| rational_report(&r)),
        Mode::Float => float(&p.to_float(cfg.precision), cfg.tolerance, Execution::Sequential).map(|r| rational_report(&r)),
    }
}

/// Case for a seeded draw: resamples on degenerate inputs, then re-validates.
fn random_case<T: Serialize>(
    index: usize,
    label: &str,
    seed: u64,
    draw: impl FnMut(&mut ChaCha20Rng) -> Result<T>,
    run: impl FnMut(&T) -> Result<(Verdict, Value)>,
    valid: impl Fn(&T) -> bool,
    extra: impl Fn(&T) -> Value,
) -> Case {
    let mut rng = case_rng(seed, index as u64);
    match sample_until(&mut rng, draw, run) {
        Err(e) => Case::new(index, label, Value::Null).with_error(e),
        Ok((input, outcome, resamples)) => {
            let mut case = Case::new(index, label, json!({ "parameters": to_value(&input), "derived": extra(&input) }));
            case.resamples = resamples;
            case.input_valid = valid(&input);
            match outcome {
                Ok((verdict, report)) => case.with_report(verdict, report),
                Err(e) => case.with_error(e),
            }
        }
    }
}

fn verify(cfg: &RunConfig, kind: VerifyKind, count: Option<u64>) -> Result<Vec<Case>> {
    let default = match kind {
        VerifyKind::Ratbeta => 25,
        VerifyKind::RatTrafo => 10,
        VerifyKind::HypBeta => 5,
        VerifyKind::VTrafo => 3,
    };
    let count = count.unwrap_or(default) as usize;
    let seed = cfg.seed;
    let w = default_omega(cfg);
    let indices: Vec<usize> = match kind {
        // Case 0 of v-trafo is the ξ = 0 identity point.
        VerifyKind::VTrafo => (0..=count).collect(),
        _ => (0..count).collect(),
    };
    let cases = Execution::Parallel.map(&indices, |&i| match kind {
        VerifyKind::Ratbeta => random_case(
            i,
            if i % 2 == 1 { "ratbeta-half" } else { "ratbeta-int" },
            seed,
            |r| random_theorem1_set(r, i % 2 == 1),
            |p| run_rational(cfg, p, verify_theorem1_with, verify_theorem1_with),
            exact_set_valid,
            |_| Value::Null,
        ),
        VerifyKind::RatTrafo => random_case(
            i,
            if i % 2 == 0 { "rat-trafo-L-even" } else { "rat-trafo-L-odd" },
            seed,
            |r| random_theorem2_set(r, (i / 2) % 2 == 1, Some(i % 2 == 0)),
            |p| run_rational(cfg, p, verify_theorem2_with, verify_theorem2_with),
            exact_set_valid,
            |p| match e7_transform(p) {
                Ok(t) => json!({
                    "L": t.l,
                    "nu": p.nu().to_string(),
                    "mu": t.mu.to_string(),
                    "mu_equals_nu_for_even_L": t.l % 2 != 0 || t.mu == p.nu(),
                }),
                Err(e) => json!({ "error": e.to_string() }),
            },
        ),
        VerifyKind::HypBeta => random_case(
            i,
            "hyp-beta",
            seed,
            |r| random_beta_params(r, &w),
            |h| {
                let r = verify_hyperbolic_beta_with(h, cfg.tolerance, Execution::Sequential)?;
                Ok(rational_report(&r))
            },
            hyperbolic_valid,
            |_| Value::Null,
        ),
        VerifyKind::VTrafo => {
            let identity = i == 0;
            let tol = if identity { cfg.tolerance.min(1e-8) } else { cfg.tolerance };
            random_case(
                i,
                if identity { "v-trafo-xi-zero" } else { "v-trafo" },
                seed,
                |r| if identity { random_v_identity_params(r, &w) } else { random_v_params(r, &w) },
                |h| {
                    let r = verify_v_transform_with(h, tol, Execution::Sequential)?;
                    Ok(rational_report(&r))
                },
                hyperbolic_valid,
                |_| json!({ "tolerance": tol }),
            )
        }
    });
    Ok(cases)
}

fn limit_scan(cfg: &RunConfig, n: &[i64], y: &[String], delta: &[f64]) -> Result<Vec<Case>> {
    let ns: Vec<i64> = if n.is_empty() { (-2..=2).collect() } else { n.to_vec() };
    let ys: Vec<ComplexValue> = if y.is_empty() {
        vec![ComplexValue::parse("0.7", cfg.precision)?]
    } else {
        y.iter().map(|s| ComplexValue::parse(s, cfg.precision)).collect::<Result<_>>()?
    };
    let deltas: Vec<f64> = if delta.is_empty() { DEFAULT_DELTAS.to_vec() } else { delta.to_vec() };
    if let Some(bad) = deltas.iter().find(|d| !(**d > 0.0)) {
        return Err(Error::InvalidScan(format!("δ = {bad} must be positive")));
    }
    let grid: Vec<(i64, ComplexValue)> = ys.iter().flat_map(|y| ns.iter().map(move |&n| (n, y.clone()))).collect();
    let reports = Execution::Parallel.map(&grid, |(n, y)| limit_scan_with(*n, y, &deltas, Execution::Sequential));
    let mut cases = Vec::new();
    for (i, ((n, y), report)) in grid.iter().zip(reports).enumerate() {
        let case = Case::new(i, format!("n={n}"), json!({ "n": n, "y": to_value(y), "deltas": deltas }));
        // Usage problems such as an out-of-range n abort the command.
        let report = report?;
        let ok = report.rows.iter().all(|r| r.error.is_none()) && report.decreasing != Some(false);
        let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        cases.push(case.with_report(verdict, to_value(&report)));
    }
    Ok(cases)
}

fn example_case<S: Scalar + Serialize>(index: usize, label: &str, input: Value, out: Result<ExampleOutcome<S>>) -> Case {
    let case = Case::new(index, label, input);
    match out {
        Ok(o) => case.with_report((&o.status).into(), to_value(&o)),
        Err(e) => case.with_error(e),
    }
}

fn run_example<S: Scalar>(which: Which, a: &[S], tol: f64) -> Result<ExampleOutcome<S>> {
    match which {
        Which::A => example_a(a, tol),
        Which::B => example_b(a, tol),
        Which::C => example_c(a, tol),
    }
}

fn example(cfg: &RunConfig, index: usize, which: Which, a: &[GaussianRational]) -> Case {
    let label = format!("{which:?}");
    let input = json!({ "a": to_value(&a) });
    match cfg.mode {
        Mode::Exact => example_case(index, &label, input, run_example(which, a, 0.0)),
        Mode::Float => {
            let af: Vec<ComplexValue> = a.iter().map(|x| ComplexValue::from_gaussian(cfg.precision, x)).collect();
            example_case(index, &label, input, run_example(which, &af, cfg.tolerance))
        }
    }
}

fn examples(cfg: &RunConfig, which: Option<Which>, a: &[String]) -> Result<Vec<Case>> {
    if let Some(which) = which {
        let a: Vec<GaussianRational> = a.iter().map(|s| s.parse()).collect::<Result<_>>()?;
        let case = example(cfg, 0, which, &a);
        // A user-supplied collision is a usage problem, reported with the pair.
        if let Some(e) = case.failure.clone() {
            return Err(e);
        }
        return Ok(vec![case]);
    }
    let points = example_points();
    let jobs: Vec<(Which, &Vec<GaussianRational>)> = [Which::A, Which::B, Which::C]
        .into_iter()
        .zip(points.iter())
        .flat_map(|(w, pts)| pts.iter().map(move |p| (w, p)))
        .collect();
    let idx: Vec<usize> = (0..jobs.len()).collect();
    Ok(Execution::Parallel.map(&idx, |&i| example(cfg, i, jobs[i].0, jobs[i].1)))
}
