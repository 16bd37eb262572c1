//! End-to-end acceptance run: one line per criterion, exit status nonzero if
//! any criterion misses. Two literal targets that the mathematics contradicts
//! are printed as separate lines and must keep failing.

use std::time::{Duration, Instant};

use clap::Parser;
use ratideal::degeneration::limit_scan;
use ratideal::hyperbolic::{gamma_h, gamma_h_product, GammaMode, OmegaPair};
use ratideal::numeric::{ComplexValue, GaussianRational as Q, HalfInteger, Precision};
use ratideal::par::Execution;
use ratideal::rational::{bilateral_sum, build_term, e7_transform, example_a, Contribution, ParameterSet};
use ratideal::sampling::{case_rng, random_beta_params};
use ratideal::verifier::measure_tail_exponent;
use ratideal_cli::commands::DEFAULT_DELTAS;
use ratideal_cli::{execute, without_timestamp, Cli, ReportEnvelope};
use serde_json::Value;

struct Line {
    id: &'static str,
    pass: bool,
    /// The line records a stated target the implementation cannot meet.
    known_gap: bool,
    text: String,
}

impl Line {
    fn ok(&self) -> bool {
        self.pass != self.known_gap
    }
}

fn run_cli(args: &[&str]) -> ReportEnvelope {
    let mut full = vec!["ratideal"];
    full.extend_from_slice(args);
    execute(&Cli::try_parse_from(full).expect("valid arguments"))
}

fn all_status(env: &ReportEnvelope, want: &str) -> (usize, usize) {
    let want = format!("\"{want}\"");
    let passed = env
        .cases
        .iter()
        .filter(|c| serde_json::to_string(&c.status).unwrap() == want && c.input_valid)
        .count();
    (passed, env.cases.len())
}

fn exact_set(case: &Value) -> ParameterSet<Q> {
    let p = &case["input"]["parameters"];
    let n: Vec<HalfInteger> = serde_json::from_value(p["n"].clone()).unwrap();
    let a: Vec<Q> = serde_json::from_value(p["a"].clone()).unwrap();
    ParameterSet::new(n, a).expect("reported sets satisfy their invariants")
}

fn reported_sets(env: &ReportEnvelope) -> Vec<ParameterSet<Q>> {
    let v = serde_json::to_value(env).unwrap();
    v["cases"].as_array().unwrap().iter().map(exact_set).collect()
}

/// Plus-family sum + Minus-family sum over every contributing term; counts terms.
fn residue_consistent(p: &ParameterSet<Q>) -> (bool, usize) {
    let sum = bilateral_sum(p, Execution::Sequential).expect("bilateral sum");
    let mut checked = 0;
    let mut ok = true;
    for t in sum.terms.iter().filter(|t| t.contribution == Contribution::Contributing) {
        let (plus, minus) = build_term(p, t.n).unwrap().family_sums().unwrap();
        ok &= (plus + &minus).is_zero();
        checked += 1;
    }
    (ok, checked)
}

fn secs(d: Duration) -> String {
    format!("{:.1} s", d.as_secs_f64())
}

fn criterion_1_4_5(lines: &mut Vec<Line>) -> (Vec<ParameterSet<Q>>, Vec<ParameterSet<Q>>) {
    let start = Instant::now();
    let env = run_cli(&["verify", "ratbeta", "--count", "25", "--mode", "exact"]);
    let elapsed = start.elapsed();
    let (passed, total) = all_status(&env, "ExactPass");
    let sets = reported_sets(&env);
    let negative = sets.iter().filter(|p| p.n().iter().any(|n| n.to_f64() < 0.0)).count();
    let halves = sets.iter().filter(|p| !p.nu().is_integer()).count();
    let pass = passed == 25 && total == 25 && negative >= 5 && halves > 0 && halves < 25 && elapsed.as_secs() < 30;
    lines.push(Line {
        id: "1",
        pass,
        known_gap: false,
        text: format!(
            "Theorem 1 on 25 seeded exact sets: {passed}/{total} ExactPass, {negative} with a negative N_k, {halves} with ν = ½, {}",
            secs(elapsed)
        ),
    });

    let start = Instant::now();
    let env = run_cli(&["verify", "rat-trafo", "--count", "10", "--mode", "exact"]);
    let elapsed = start.elapsed();
    let (passed, total) = all_status(&env, "ExactPass");
    let sets2 = reported_sets(&env);
    let mut parities = [0usize; 2];
    let mut mu_rule = true;
    for p in &sets2 {
        let t = e7_transform(p).unwrap();
        parities[t.l.rem_euclid(2) as usize] += 1;
        if t.l % 2 == 0 {
            mu_rule &= t.mu == p.nu();
        }
    }
    lines.push(Line {
        id: "2",
        pass: passed == 10 && total == 10 && parities[0] > 0 && parities[1] > 0 && mu_rule && elapsed.as_secs() < 60,
        known_gap: false,
        text: format!(
            "Theorem 2 on 10 seeded exact sets: {passed}/{total} ExactPass, L even/odd = {}/{}, μ = ν for even L: {mu_rule}, {}",
            parities[0],
            parities[1],
            secs(elapsed)
        ),
    });
    (sets, sets2)
}

fn criterion_3(lines: &mut Vec<Line>) -> Vec<ParameterSet<Q>> {
    let env = run_cli(&["examples"]);
    let (passed, total) = all_status(&env, "ExactPass");
    lines.push(Line {
        id: "3",
        pass: passed == 15 && total == 15,
        known_gap: false,
        text: format!("closed forms A, B, C at 5 exact points each: {passed}/{total} ExactPass"),
    });

    let a = [Q::from_parts(0, -1, 1), Q::from_parts(0, -2, 1), Q::from_parts(0, -3, 1), Q::from_parts(0, -4, 1)];
    let out = example_a(&a, 0.0).unwrap();
    // Direct residue oracle: Σ_j a_j / ∏_{k≠j}(a_k² − a_j²).
    let mut oracle = Q::zero();
    for j in 0..4 {
        let mut den = Q::one();
        for k in (0..4).filter(|&k| k != j) {
            den = den * (&a[k] * &a[k] - &a[j] * &a[j]);
        }
        oracle = oracle + a[j].checked_div(&den).unwrap();
    }
    lines.push(Line {
        id: "3",
        pass: out.engine == oracle && out.closed_form == oracle,
        known_gap: false,
        text: format!(
            "A at (−i, −2i, −3i, −4i): engine {}, closed form {}, residue oracle {}",
            out.engine, out.closed_form, oracle
        ),
    });
    let stated = Q::from_parts(0, -1, 630);
    lines.push(Line {
        id: "3",
        pass: out.engine == stated,
        known_gap: true,
        text: format!("A at (−i, −2i, −3i, −4i) equals the stated −i/630: engine gives {}", out.engine),
    });

    // Parameter sets behind the 15 example cases, for the residue check.
    let v = serde_json::to_value(&env).unwrap();
    v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            let r = &c["report"];
            let n: Vec<HalfInteger> = serde_json::from_value(r["n"].clone()).unwrap();
            let a: Vec<Q> = serde_json::from_value(r["a"].clone()).unwrap();
            ParameterSet::new(n, a).unwrap()
        })
        .collect()
}

fn criterion_4_5(lines: &mut Vec<Line>, t1: &[ParameterSet<Q>], t2: &[ParameterSet<Q>], ex: &[ParameterSet<Q>]) {
    let mut all: Vec<ParameterSet<Q>> = t1.to_vec();
    for p in t2 {
        all.push(p.clone());
        all.push(e7_transform(p).unwrap().to_parameters().unwrap());
    }
    let mut ok = true;
    let mut terms = 0;
    for p in all.iter().chain(ex) {
        let (good, n) = residue_consistent(p);
        ok &= good;
        terms += n;
    }
    lines.push(Line {
        id: "4",
        pass: ok && terms > 0,
        known_gap: false,
        text: format!("Plus-family residues = −(Minus-family residues) exactly on {terms} contributing terms"),
    });

    let mut closed = true;
    let mut vanishing = 0;
    for p in t1 {
        let sum = bilateral_sum(p, Execution::Sequential).unwrap();
        let edge = p.max_abs_n() + 2;
        for t in sum.terms.iter().filter(|t| t.n.abs() >= edge) {
            closed &= t.contribution == Contribution::Vanishing;
            vanishing += 1;
        }
        closed &= sum.closed_beyond_max_plus_two;
    }
    lines.push(Line {
        id: "5",
        pass: closed && vanishing > 0,
        known_gap: false,
        text: format!("window closure on the 25 Theorem 1 sets: {vanishing} terms with |N| ≥ max|N_k| + 2, all vanishing: {closed}"),
    });
}

fn criterion_6(lines: &mut Vec<Line>) {
    let prec = Precision::DEFAULT;
    let w = OmegaPair::conjugate_unit(prec, 1, 6).unwrap();
    let mut worst_cross = 0f64;
    let mut worst_swap = 0f64;
    let mut count = 0;
    for re in [0.2, 0.55, 0.9, 1.25, 1.55] {
        for im in [-0.4, -0.1, 0.2, 0.5] {
            let u = ComplexValue::from_f64(prec, re, im);
            let product = gamma_h(&u, &w, GammaMode::Product).unwrap().value;
            let integral = gamma_h(&u, &w, GammaMode::Integral).unwrap().value;
            let swapped = gamma_h_product(&u, &w.swapped()).unwrap().value;
            worst_cross = worst_cross.max(product.relative_distance(&integral).to_f64());
            worst_swap = worst_swap.max(product.relative_distance(&swapped).to_f64());
            count += 1;
        }
    }
    lines.push(Line {
        id: "6",
        pass: count == 20 && worst_cross <= 1e-10 && worst_swap <= 1e-10,
        known_gap: false,
        text: format!(
            "γ⁽²⁾ at {count} strip points, ω₁/ω₂ = e^(iπ/3): product vs integral ≤ {worst_cross:.1e}, ω-swap ≤ {worst_swap:.1e}"
        ),
    });
}

fn criterion_7(lines: &mut Vec<Line>) {
    let start = Instant::now();
    let prec = Precision::DEFAULT;
    let mut decreasing = true;
    let mut worst = 0f64;
    let mut count = 0;
    for y in ["0.3", "0.7", "1+0.5i"] {
        let y = ComplexValue::parse(y, prec).unwrap();
        for n in -2..=2 {
            let r = limit_scan(n, &y, &DEFAULT_DELTAS).unwrap();
            decreasing &= r.decreasing == Some(true);
            worst = worst.max(r.final_deviation().unwrap_or(f64::INFINITY));
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    lines.push(Line {
        id: "7",
        pass: decreasing && worst <= 0.05 && elapsed.as_secs() < 300,
        known_gap: false,
        text: format!(
            "degeneration limit on {count} (n, y) pairs, δ = 1e-2 → 1e-3: decreasing {decreasing}, worst |ratio − 1| at 1e-3 = {worst:.2e}, {}",
            secs(elapsed)
        ),
    });
}

fn criterion_8(lines: &mut Vec<Line>) {
    let start = Instant::now();
    let env = run_cli(&["verify", "hyp-beta", "--count", "5", "--tol", "1e-6"]);
    let elapsed = start.elapsed();
    let (passed, total) = all_status(&env, "Pass");
    lines.push(Line {
        id: "8",
        pass: passed == 5 && total == 5 && elapsed.as_secs() < 300,
        known_gap: false,
        text: format!("hyperbolic beta integral, 5 seeded balanced sets at 1e-6: {passed}/{total} Pass, {}", secs(elapsed)),
    });

    let w = OmegaPair::conjugate_unit(Precision::DEFAULT, 1, 8).unwrap();
    let h = random_beta_params(&mut case_rng(2024, 0), &w).unwrap();
    let fit = measure_tail_exponent(&h, 2.0, 5.0, 13).unwrap();
    lines.push(Line {
        id: "8",
        pass: fit.deviation_from_derived <= 0.05,
        known_gap: false,
        text: format!(
            "kernel tail rate {:.6} vs 2π·Re((ω₁+ω₂)/(ω₁ω₂)) = {:.6}: {:.2e} relative",
            fit.measured, fit.derived, fit.deviation_from_derived
        ),
    });
    lines.push(Line {
        id: "8",
        pass: fit.deviation_from_stated <= 0.05,
        known_gap: true,
        text: format!(
            "kernel tail rate {:.6} within 5% of the stated 6π·Re((ω₁+ω₂)/(ω₁ω₂)) = {:.6}: off by {:.1}%",
            fit.measured,
            fit.stated,
            100.0 * fit.deviation_from_stated
        ),
    });
}

fn criterion_9(lines: &mut Vec<Line>) {
    let env = run_cli(&["verify", "v-trafo", "--count", "3", "--tol", "1e-6"]);
    let v = serde_json::to_value(&env).unwrap();
    let cases = v["cases"].as_array().unwrap();
    let pass_at = |c: &Value, tol: f64| {
        c["status"] == "Pass" && c["input_valid"] == true && c["report"]["relative_error"].as_f64().is_some_and(|e| e <= tol)
    };
    let identity = cases.first().is_some_and(|c| c["label"] == "v-trafo-xi-zero" && pass_at(c, 1e-8));
    let random = cases.iter().skip(1).filter(|c| pass_at(c, 1e-6)).count();
    lines.push(Line {
        id: "9",
        pass: identity && random == 3 && cases.len() == 4,
        known_gap: false,
        text: format!("V-transformation: ξ = 0 case at 1e-8 {identity}, random admissible sets at 1e-6 {random}/3"),
    });
}

fn criterion_10(lines: &mut Vec<Line>) {
    let run = |args: &[&str]| {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_ratideal"))
            .args(args)
            .output()
            .expect("binary runs");
        (out.status.code(), String::from_utf8(out.stdout).unwrap())
    };
    let mut same = true;
    let mut codes = Vec::new();
    for args in [
        &["verify", "ratbeta", "--seed", "99", "--json"][..],
        &["verify", "hyp-beta", "--count", "2", "--seed", "99", "--json"][..],
    ] {
        let (c1, a) = run(args);
        let (c2, b) = run(args);
        same &= without_timestamp(&a) == without_timestamp(&b);
        codes.push(c1);
        codes.push(c2);
    }
    lines.push(Line {
        id: "10",
        pass: same && codes.iter().all(|c| *c == Some(0)),
        known_gap: false,
        text: format!("repeated CLI runs with a fixed seed give identical JSON apart from the timestamp: {same}"),
    });
}

fn main() {
    let start = Instant::now();
    let mut lines = Vec::new();
    let (t1, t2) = criterion_1_4_5(&mut lines);
    let ex = criterion_3(&mut lines);
    criterion_4_5(&mut lines, &t1, &t2, &ex);
    criterion_6(&mut lines);
    criterion_7(&mut lines);
    criterion_8(&mut lines);
    criterion_9(&mut lines);
    criterion_10(&mut lines);
    lines.sort_by_key(|l| l.id.parse::<u32>().unwrap());

    println!("\nacceptance criteria");
    for l in &lines {
        let verdict = match (l.pass, l.known_gap) {
            (true, false) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "FAIL (known gap)",
            (true, true) => "PASS (known gap closed?)",
        };
        println!("criterion {:>2}  {verdict:<17} {}", l.id, l.text);
    }
    let bad = lines.iter().filter(|l| !l.ok()).count();
    println!("acceptance: {} lines, {bad} unexpected, {}\n", lines.len(), secs(start.elapsed()));
    if bad > 0 {
        std::process::exit(1);
    }
}
