//! The full verification suite for one `(M, N)` sector.

use std::fmt::Write as _;

use crate::equivalence::{
    check_adjointness, check_anticommutators, check_number_operator,
    check_one_body_equivalence_with, check_pauli, check_permuted_correspondence, check_round_trip,
    check_subspace_dimension, check_two_body_equivalence_with, check_vacuum_annihilation,
    check_worked_example, sweep_identity_a, sweep_identity_b, to_fock, CheckResult,
    EquivalenceReport,
};
use crate::error::Result;
use crate::first_quant::{apply_one_body, FirstQuantTensor, ProductState};
use crate::fock::{enumerate_basis, SignConvention};
use crate::operator::{AnnihilatorOrder, OperatorBuilder};
use crate::random::{
    random_hermitian_one_body, random_hermitian_two_body, random_one_body, random_two_body,
    seeded_rng, SeededRng,
};
use crate::scalar::scaled_tolerance;
use crate::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub orbitals: usize,
    pub particles: usize,
    pub seed: u64,
    pub trials: usize,
    pub convention: SignConvention,
    pub annihilator_order: AnnihilatorOrder,
}

impl VerifyConfig {
    pub fn new(orbitals: usize, particles: usize, seed: u64, trials: usize) -> Self {
        VerifyConfig {
            orbitals,
            particles,
            seed,
            trials,
            convention: SignConvention::Standard,
            annihilator_order: AnnihilatorOrder::Standard,
        }
    }

    fn builder(&self) -> OperatorBuilder {
        OperatorBuilder {
            convention: self.convention,
            annihilator_order: self.annihilator_order,
        }
    }
}

#[derive(Default)]
struct Worst {
    deviation: f64,
    tolerance: f64,
    cases: usize,
    failure: Option<CheckResult>,
}

impl Worst {
    fn record(&mut self, r: CheckResult) {
        self.cases += r.cases;
        if r.pass {
            if self.failure.is_none() && r.deviation >= self.deviation {
                self.deviation = r.deviation;
                self.tolerance = r.tolerance;
            }
        } else if self
            .failure
            .as_ref()
            .is_none_or(|f| r.deviation > f.deviation)
        {
            self.failure = Some(r);
        }
    }

    fn finish(self, name: &str) -> CheckResult {
        let (deviation, tolerance) = match &self.failure {
            Some(f) => (f.deviation, f.tolerance),
            None => (self.deviation, self.tolerance),
        };
        let mut r = CheckResult::new(name, deviation, tolerance, self.cases);
        r.pass = self.failure.is_none();
        r
    }
}

fn reference_states(cfg: &VerifyConfig) -> Result<Vec<ProductState>> {
    enumerate_basis(cfg.orbitals, cfg.particles)?
        .states()
        .iter()
        .map(|&s| ProductState::from_occupation(s))
        .collect()
}

fn one_body_sweep(cfg: &VerifyConfig, rng: &mut SeededRng) -> Result<CheckResult> {
    let mut worst = Worst::default();
    if cfg.particles == 0 {
        // the vacuum has no product-state form; compare on the rank-0 tensor
        let basis = enumerate_basis(cfg.orbitals, 0)?;
        let psi = FirstQuantTensor::scalar(cfg.orbitals, C64::new(1.0, 0.0))?;
        for _ in 0..cfg.trials {
            let f = random_one_body::<C64, _>(cfg.orbitals, rng)?;
            let lhs = to_fock(&apply_one_body(&f, &psi)?)?;
            let rhs = cfg
                .builder()
                .build_one_body(&f, &basis)?
                .apply(&to_fock(&psi)?)?;
            worst.record(CheckResult::new("", lhs.max_deviation(&rhs)?, 0.0, 1));
        }
        return Ok(worst.finish("one_body_equivalence"));
    }
    let states = reference_states(cfg)?;
    for _ in 0..cfg.trials {
        let f = random_one_body::<C64, _>(cfg.orbitals, rng)?;
        for p in &states {
            worst.record(check_one_body_equivalence_with(cfg.builder(), &f, p)?);
        }
    }
    Ok(worst.finish("one_body_equivalence"))
}

fn two_body_sweep(cfg: &VerifyConfig, rng: &mut SeededRng) -> Result<CheckResult> {
    let mut worst = Worst::default();
    if cfg.particles < 2 {
        // no pair to act on: the assembled operator must vanish
        let basis = enumerate_basis(cfg.orbitals, cfg.particles)?;
        for _ in 0..cfg.trials {
            let g = random_two_body::<C64, _>(cfg.orbitals, rng)?;
            let op = cfg.builder().build_two_body(&g, &basis)?;
            worst.record(CheckResult::new("", op.max_modulus(), 0.0, 1));
        }
        return Ok(worst.finish("two_body_equivalence"));
    }
    let states = reference_states(cfg)?;
    for _ in 0..cfg.trials {
        let g = random_two_body::<C64, _>(cfg.orbitals, rng)?;
        for p in &states {
            worst.record(check_two_body_equivalence_with(cfg.builder(), &g, p)?);
        }
    }
    Ok(worst.finish("two_body_equivalence"))
}

fn worked_example_sweep(cfg: &VerifyConfig, rng: &mut SeededRng) -> Result<CheckResult> {
    let states = reference_states(cfg)?;
    let mut worst = Worst::default();
    for _ in 0..cfg.trials {
        let f = random_one_body::<C64, _>(cfg.orbitals, rng)?;
        for p in &states {
            worst.record(check_worked_example(&f, p)?);
        }
    }
    Ok(worst.finish("worked_example"))
}

/// Hermitian `f` and `g` must assemble to hermitian `F̂1` and `F̂2`.
fn hermiticity_sweep(cfg: &VerifyConfig, rng: &mut SeededRng) -> Result<CheckResult> {
    let basis = enumerate_basis(cfg.orbitals, cfg.particles)?;
    let mut worst = Worst::default();
    for _ in 0..cfg.trials {
        let f = random_hermitian_one_body::<C64, _>(cfg.orbitals, rng)?;
        let g = random_hermitian_two_body::<C64, _>(cfg.orbitals, rng)?;
        for op in [
            cfg.builder().build_one_body(&f, &basis)?,
            cfg.builder().build_two_body(&g, &basis)?,
        ] {
            let tol = scaled_tolerance::<C64>(op.max_modulus());
            worst.record(CheckResult::new("", op.hermitian_deviation(), tol, 1));
        }
    }
    Ok(worst.finish("hermiticity"))
}

/// The restricted `γ < δ` sum without ½ must equal the full ½ sum, so
/// each unordered pair is counted exactly once.
fn double_counting_sweep(cfg: &VerifyConfig, rng: &mut SeededRng) -> Result<CheckResult> {
    let basis = enumerate_basis(cfg.orbitals, cfg.particles)?;
    let mut worst = Worst::default();
    for _ in 0..cfg.trials {
        let g = random_two_body::<C64, _>(cfg.orbitals, rng)?;
        let full = cfg.builder().build_two_body(&g, &basis)?;
        let restricted = cfg.builder().build_two_body_pair_restricted(&g, &basis)?;
        let tol = scaled_tolerance::<C64>(full.max_modulus());
        worst.record(CheckResult::new(
            "",
            full.max_deviation(&restricted)?,
            tol,
            1,
        ));
    }
    Ok(worst.finish("pair_counting"))
}

/// Runs every check on the sector. A check that cannot run (for example
/// the full-space algebra above eight orbitals) is reported as failed with
/// its error; the remaining checks still run.
pub fn run_verification(cfg: &VerifyConfig) -> EquivalenceReport {
    let (m, n, conv) = (cfg.orbitals, cfg.particles, cfg.convention);
    let mut report = EquivalenceReport::new(cfg.seed);
    // each randomized check draws from its own stream so that adding or
    // skipping one never changes the inputs of another
    let stream = |k: u64| stream_rng(cfg.seed, k);

    report.push(CheckResult::catch("anticommutators", || {
        check_anticommutators(m, conv)
    }));
    report.push(CheckResult::catch("pauli", || check_pauli(m, conv)));
    report.push(CheckResult::catch("adjointness", || {
        check_adjointness(m, conv)
    }));
    report.push(CheckResult::catch("vacuum_annihilation", || {
        check_vacuum_annihilation(m, conv)
    }));
    report.push(CheckResult::catch("number_operator", || {
        check_number_operator(m, n, conv)
    }));
    report.push(CheckResult::catch("one_body_equivalence", || {
        one_body_sweep(cfg, &mut stream(1))
    }));
    report.push(CheckResult::catch("two_body_equivalence", || {
        two_body_sweep(cfg, &mut stream(2))
    }));
    if n == 2 {
        report.push(CheckResult::catch("worked_example", || {
            worked_example_sweep(cfg, &mut stream(3))
        }));
    }
    if n >= 1 {
        report.push(CheckResult::catch("identity_a", || {
            sweep_identity_a(m, n, conv)
        }));
    }
    if n >= 2 {
        report.push(CheckResult::catch("identity_b", || {
            sweep_identity_b(m, n, conv)
        }));
    }
    report.push(CheckResult::catch("permuted_correspondence", || {
        check_permuted_correspondence(m, n, conv)
    }));
    report.push(CheckResult::catch("subspace_dimension", || {
        check_subspace_dimension(m, n)
    }));
    report.push(CheckResult::catch("round_trip", || {
        check_round_trip::<C64, _>(m, n, cfg.trials, &mut stream(4))
    }));
    report.push(CheckResult::catch("hermiticity", || {
        hermiticity_sweep(cfg, &mut stream(5))
    }));
    report.push(CheckResult::catch("pair_counting", || {
        double_counting_sweep(cfg, &mut stream(6))
    }));
    report
}

/// One line per check plus a summary line.
pub fn render_text(report: &EquivalenceReport) -> String {
    let width = report
        .checks
        .iter()
        .map(|c| c.name.len())
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    for c in &report.checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        let _ = write!(
            out,
            "{status}  {:<width$}  max_dev={:.3e}  tol={:.1e}  cases={}",
            c.name, c.deviation, c.tolerance, c.cases
        );
        if let Some(e) = &c.error {
            let _ = write!(out, "  error: {e}");
        }
        out.push('\n');
    }
    let failed = report.checks.iter().filter(|c| !c.pass).count();
    let _ = writeln!(
        out,
        "seed={}  {} checks, {} failed",
        report.seed,
        report.checks.len(),
        failed
    );
    out
}

/// Generator for stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> SeededRng {
    let mut rng = seeded_rng(seed);
    rng.set_stream(stream);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_sector_passes() {
        let report = run_verification(&VerifyConfig::new(4, 2, 7, 5));
        assert!(report.all_pass(), "{}", render_text(&report));
        assert!(report.get("worked_example").is_some());
        assert!(report.get("identity_b").is_some());
    }

    #[test]
    fn single_orbital_passes() {
        let report = run_verification(&VerifyConfig::new(1, 1, 0, 3));
        assert!(report.all_pass(), "{}", render_text(&report));
    }

    #[test]
    fn vacuum_and_full_sectors_pass() {
        for (m, n) in [(3, 0), (3, 3), (2, 1)] {
            let report = run_verification(&VerifyConfig::new(m, n, 1, 3));
            assert!(report.all_pass(), "M={m} N={n}\n{}", render_text(&report));
        }
    }

    #[test]
    fn corrupted_signs_fail() {
        let mut cfg = VerifyConfig::new(4, 2, 7, 3);
        cfg.convention = SignConvention::AnnihilationOffByOne;
        let report = run_verification(&cfg);
        assert!(!report.all_pass());
        assert!(!report.get("anticommutators").unwrap().pass);
        assert!(!report.get("identity_a").unwrap().pass);
    }

    #[test]
    fn swapped_annihilators_fail_two_body_only() {
        let mut cfg = VerifyConfig::new(4, 2, 7, 3);
        cfg.annihilator_order = AnnihilatorOrder::Swapped;
        let report = run_verification(&cfg);
        assert!(!report.get("two_body_equivalence").unwrap().pass);
        assert!(report.get("one_body_equivalence").unwrap().pass);
    }

    #[test]
    fn large_sector_reports_capacity_per_check() {
        let report = run_verification(&VerifyConfig::new(9, 1, 0, 1));
        let anti = report.get("anticommutators").unwrap();
        assert!(!anti.pass);
        assert!(anti.error.as_deref().unwrap().contains("capacity"));
        assert!(report.get("one_body_equivalence").unwrap().pass);
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = VerifyConfig::new(3, 2, 99, 4);
        assert_eq!(
            render_text(&run_verification(&cfg)),
            render_text(&run_verification(&cfg))
        );
    }
}
