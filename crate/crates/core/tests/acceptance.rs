//! Acceptance criteria, one line each. Runs with a plain `main` so the
//! lines are printed even when everything passes.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fockeq::equivalence::{
    antisymmetric_subspace_dimension, check_anticommutators, check_one_body_equivalence_with,
    check_round_trip, check_two_body_equivalence_with, check_worked_example, sweep_identity_a,
    sweep_identity_b, to_fock, CheckResult,
};
use fockeq::first_quant::{apply_one_body, FirstQuantTensor, ProductState};
use fockeq::fock::{binomial, enumerate_basis};
use fockeq::random::{
    random_hermitian_one_body, random_hermitian_two_body, random_one_body, random_two_body,
    seeded_rng,
};
use fockeq::spectrum::{spectrum_deviation, Hamiltonian, Representation};
use fockeq::{AnnihilatorOrder, OperatorBuilder, Result, SignConvention, C64};

const EQUIVALENCE_TOL: f64 = 1e-12;
const ROUND_TRIP_TOL: f64 = 1e-12;
const SPECTRUM_TOL: f64 = 1e-10;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn reference_states(m: usize, n: usize) -> Result<Vec<ProductState>> {
    enumerate_basis(m, n)?
        .states()
        .iter()
        .map(|&s| ProductState::from_occupation(s))
        .collect()
}

fn max_dev(results: impl IntoIterator<Item = CheckResult>) -> (f64, usize) {
    results
        .into_iter()
        .fold((0.0, 0), |(d, n), r| (d.max(r.deviation), n + r.cases))
}

fn anticommutators() -> Result<Outcome> {
    let mut cases = 0;
    let mut worst: f64 = 0.0;
    for m in 1..=8 {
        let r = check_anticommutators(m, SignConvention::Standard)?;
        worst = worst.max(r.deviation);
        cases += r.cases;
    }
    Ok(Outcome::new(
        worst == 0.0,
        format!("M=1..8, {cases} cases, max |dev|={worst}, exact"),
    ))
}

fn worked_example() -> Result<Outcome> {
    let mut rng = seeded_rng(2);
    let states = reference_states(3, 2)?;
    let mut results = Vec::new();
    for _ in 0..10 {
        let f = random_one_body::<C64, _>(3, &mut rng)?;
        for p in &states {
            results.push(check_worked_example(&f, p)?);
        }
    }
    let (dev, cases) = max_dev(results);
    Ok(Outcome::new(
        dev <= EQUIVALENCE_TOL,
        format!(
            "M=3 N=2, 10 random f, {cases} cases, max dev={dev:.3e} (tol {EQUIVALENCE_TOL:.0e})"
        ),
    ))
}

/// Largest deviation of the one-body protocol over every sector with
/// `M <= 4`, 100 random `f` per sector.
fn one_body_protocol(builder: OperatorBuilder, seed: u64) -> Result<(f64, usize)> {
    let mut results = Vec::new();
    for m in 1..=4 {
        for n in 0..=m {
            let mut rng = seeded_rng(seed + (10 * m + n) as u64);
            let states = reference_states(m, n).ok();
            for _ in 0..100 {
                let f = random_one_body::<C64, _>(m, &mut rng)?;
                match &states {
                    Some(states) => {
                        for p in states {
                            results.push(check_one_body_equivalence_with(builder, &f, p)?);
                        }
                    }
                    None => {
                        // vacuum: rank-0 tensor against the vacuum vector
                        let psi = FirstQuantTensor::scalar(m, C64::new(1.0, 0.0))?;
                        let lhs = to_fock(&apply_one_body(&f, &psi)?)?;
                        let basis = enumerate_basis(m, 0)?;
                        let rhs = builder.build_one_body(&f, &basis)?.apply(&to_fock(&psi)?)?;
                        results.push(CheckResult::new("vacuum", lhs.max_deviation(&rhs)?, 0.0, 1));
                    }
                }
            }
        }
    }
    Ok(max_dev(results))
}

fn two_body_protocol(builder: OperatorBuilder, seed: u64) -> Result<(f64, usize)> {
    let mut results = Vec::new();
    for m in 2..=4 {
        for n in 2..=m {
            let mut rng = seeded_rng(seed + (10 * m + n) as u64);
            let states = reference_states(m, n)?;
            for _ in 0..100 {
                let g = random_two_body::<C64, _>(m, &mut rng)?;
                for p in &states {
                    results.push(check_two_body_equivalence_with(builder, &g, p)?);
                }
            }
        }
    }
    Ok(max_dev(results))
}

fn one_body_equivalence() -> Result<Outcome> {
    let (dev, cases) = one_body_protocol(OperatorBuilder::default(), 300)?;
    Ok(Outcome::new(
        dev <= EQUIVALENCE_TOL,
        format!("all sectors M<=4, 100 f each, {cases} cases, max dev={dev:.3e} (tol {EQUIVALENCE_TOL:.0e})"),
    ))
}

fn two_body_equivalence() -> Result<Outcome> {
    let (dev, cases) = two_body_protocol(OperatorBuilder::default(), 400)?;
    Ok(Outcome::new(
        dev <= EQUIVALENCE_TOL,
        format!("sectors M<=4 N>=2, 100 g each, {cases} cases, max dev={dev:.3e} (tol {EQUIVALENCE_TOL:.0e})"),
    ))
}

fn identity_sweeps(convention: SignConvention) -> Result<Vec<CheckResult>> {
    Ok(vec![
        sweep_identity_a(5, 3, convention)?,
        sweep_identity_b(5, 3, convention)?,
        sweep_identity_b(6, 3, convention)?,
    ])
}

fn replacement_identities() -> Result<Outcome> {
    let results = identity_sweeps(SignConvention::Standard)?;
    let pass = results.iter().all(|r| r.pass && r.deviation == 0.0);
    let detail = format!(
        "single M=5 N=3: {} cases, double M=5 N=3: {} cases, double M=6 N=3: {} cases, exact",
        results[0].cases, results[1].cases, results[2].cases
    );
    Ok(Outcome::new(pass, detail))
}

fn isomorphism() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let mut vectors = 0;
    let mut dims_ok = true;
    for m in 1..=5 {
        for n in 0..=m {
            let mut rng = seeded_rng(600 + (10 * m + n) as u64);
            let r = check_round_trip::<C64, _>(m, n, 50, &mut rng)?;
            worst = worst.max(r.deviation);
            vectors += 50;
        }
        for n in 0..=5 {
            dims_ok &= antisymmetric_subspace_dimension(m, n)? == binomial(m, n);
        }
    }
    Ok(Outcome::new(
        worst <= ROUND_TRIP_TOL && dims_ok && vectors == 1000,
        format!(
            "{vectors} random vectors over 20 sectors, max dev={worst:.3e} (tol {ROUND_TRIP_TOL:.0e}); dim = C(M,N) for M<=5: {dims_ok}"
        ),
    ))
}

fn spectrum_agreement() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let mut models = 0;
    for (m, n) in [(3, 2), (4, 2), (4, 3), (5, 2)] {
        let mut rng = seeded_rng(700 + (10 * m + n) as u64);
        for _ in 0..20 {
            let h = Hamiltonian::new(
                random_hermitian_one_body(m, &mut rng)?,
                random_hermitian_two_body(m, &mut rng)?,
            )?;
            let a = h.spectrum(n, Representation::FirstQuantized)?;
            let b = h.spectrum(n, Representation::SecondQuantized)?;
            worst = worst.max(spectrum_deviation(&a, &b));
            models += 1;
        }
    }
    Ok(Outcome::new(
        worst <= SPECTRUM_TOL,
        format!(
            "{models} hermitian models, max eigenvalue dev={worst:.3e} (tol {SPECTRUM_TOL:.0e})"
        ),
    ))
}

fn negative_controls() -> Result<Outcome> {
    let swapped = OperatorBuilder {
        annihilator_order: AnnihilatorOrder::Swapped,
        ..OperatorBuilder::default()
    };
    let (dev, _) = two_body_protocol(swapped, 400)?;
    let two_body_fails = dev > EQUIVALENCE_TOL;

    let corrupted = identity_sweeps(SignConvention::AnnihilationOffByOne)?;
    let identities_fail = corrupted.iter().any(|r| !r.pass);

    Ok(Outcome::new(
        two_body_fails && identities_fail,
        format!(
            "swapped annihilators: two-body dev={dev:.3e} ({}); corrupted sign: identities {}",
            if two_body_fails { "fails" } else { "PASSES" },
            if identities_fail { "fail" } else { "PASS" }
        ),
    ))
}

type Criterion = (&'static str, Duration, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "anticommutator algebra",
            Duration::from_secs(5),
            anticommutators,
        ),
        (
            "two-particle worked example",
            Duration::from_secs(1),
            worked_example,
        ),
        (
            "one-body equivalence",
            Duration::from_secs(10),
            one_body_equivalence,
        ),
        (
            "two-body equivalence",
            Duration::from_secs(30),
            two_body_equivalence,
        ),
        (
            "replacement identities",
            Duration::from_secs(30),
            replacement_identities,
        ),
        ("isomorphism", Duration::from_secs(60), isomorphism),
        (
            "spectrum agreement",
            Duration::from_secs(60),
            spectrum_agreement,
        ),
        (
            "negative controls",
            Duration::from_secs(60),
            negative_controls,
        ),
    ];
    let mut failures = 0;
    for (k, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let pass = outcome.pass && in_time;
        failures += usize::from(!pass);
        println!(
            "criterion {}: {} {name}: {} [{:.2}s / {}s budget{}]",
            k + 1,
            if pass { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64(),
            budget.as_secs(),
            if in_time { "" } else { ", over budget" }
        );
    }
    if failures == 0 {
        println!("acceptance: all 8 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
