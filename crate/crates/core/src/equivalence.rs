//! Executable cross-checks between the two descriptions.
//!
//! The correspondence maps an antisymmetric tensor `t` to the Fock vector
//! whose amplitude on `{i1 < ... < iN}` is `sqrt(N!) · t(i1, ..., iN)`, so a
//! normalized Slater determinant lands on a unit basis state. The
//! unnormalized variants drop the `sqrt(N!)` and send the bare
//! antisymmetrized product to the unit state instead, which keeps every
//! check in exact arithmetic.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_rational::Rational64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::first_quant::{
    antisymmetrize, apply_one_body, apply_to_slot, apply_two_body, factorial, product_state_tensor,
    signed_permutations, slater_state, FirstQuantTensor, OneBodyMatrix, ProductState,
    TwoBodyTensor,
};
use crate::fock::{
    apply_ladder_string_to_state, apply_ladder_string_with, binomial, check_orbitals,
    enumerate_basis, full_space, vacuum, FockVector, Ladder, OccupationState, OrbitalIndex,
    SignConvention, SignedState,
};
use crate::operator::OperatorBuilder;
use crate::random::{random_fock_vector, random_tensor};
use crate::scalar::{scaled_tolerance, FloatScalar, Scalar};

/// Largest orbital count for checks over the full `2^M` space.
pub const MAX_FULL_SPACE_ORBITALS: usize = 8;

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub cases: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, deviation: f64, tolerance: f64, cases: usize) -> Self {
        CheckResult {
            name: name.into(),
            deviation,
            tolerance,
            cases,
            // NaN never passes
            pass: deviation <= tolerance,
            error: None,
        }
    }

    pub fn failed(name: impl Into<String>, error: &Error) -> Self {
        CheckResult {
            name: name.into(),
            deviation: f64::INFINITY,
            tolerance: 0.0,
            cases: 0,
            pass: false,
            error: Some(error.to_string()),
        }
    }

    /// Runs `check`, turning an error into a failed result.
    pub fn catch(name: &str, check: impl FnOnce() -> Result<CheckResult>) -> Self {
        check().unwrap_or_else(|e| CheckResult::failed(name, &e))
    }
}

/// A list of checks plus the seed that produced any random inputs.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl EquivalenceReport {
    pub fn new(seed: u64) -> Self {
        EquivalenceReport {
            seed,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn merge(mut self, other: EquivalenceReport) -> Self {
        self.checks.extend(other.checks);
        self
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn max_deviation(&self) -> f64 {
        self.checks.iter().map(|c| c.deviation).fold(0.0, f64::max)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Largest deviation across cases; an accumulator for sweep checks.
#[derive(Clone, Copy, Debug, Default)]
struct Worst {
    deviation: f64,
    scale: f64,
    cases: usize,
}

impl Worst {
    fn record(&mut self, deviation: f64, scale: f64) {
        self.deviation = self.deviation.max(deviation);
        self.scale = self.scale.max(scale);
        self.cases += 1;
    }

    fn result<S: Scalar>(self, name: &str) -> CheckResult {
        CheckResult::new(
            name,
            self.deviation,
            scaled_tolerance::<S>(self.scale),
            self.cases,
        )
    }
}

fn combination_index(state: OccupationState) -> Vec<usize> {
    state.occupied().map(OrbitalIndex::position).collect()
}

/// Amplitude on `{i1 < ... < iN}` is `t(i1, ..., iN)`.
pub fn to_fock_unnormalized<S: Scalar>(t: &FirstQuantTensor<S>) -> Result<FockVector<S>> {
    let deviation = t.antisymmetry_deviation();
    if deviation > scaled_tolerance::<S>(t.max_modulus()) {
        return Err(Error::NotAntisymmetric(deviation));
    }
    let (m, n) = (t.orbitals(), t.particles());
    if n > m {
        return FockVector::zero(m, n as isize);
    }
    let basis = enumerate_basis(m, n)?;
    FockVector::from_amplitudes(
        m,
        n,
        basis.states().iter().map(|&s| {
            let amp = t.get(&combination_index(s)).expect("index within tensor");
            (s, amp)
        }),
    )
}

/// Inverse of [`to_fock_unnormalized`]: spreads each amplitude over all
/// orderings of its occupied orbitals with permutation signs.
pub fn from_fock_unnormalized<S: Scalar>(v: &FockVector<S>) -> Result<FirstQuantTensor<S>> {
    let n = usize::try_from(v.particles())
        .map_err(|_| Error::Capacity(format!("no tensor space for {} particles", v.particles())))?;
    let mut t = FirstQuantTensor::zeros(v.orbitals(), n)?;
    let perms = signed_permutations(n);
    let mut idx = vec![0; n];
    for (state, amp) in v.iter() {
        let positions = combination_index(state);
        for (perm, sign) in &perms {
            for (slot, &k) in perm.iter().enumerate() {
                idx[slot] = positions[k];
            }
            let flat = t.flat_index(&idx);
            t.coeffs_mut()[flat] = sign.to_scalar::<S>() * amp;
        }
    }
    Ok(t)
}

/// Antisymmetric tensor to Fock vector, mapping Slater determinants to unit
/// basis states. Norm-preserving.
pub fn to_fock<S: FloatScalar>(t: &FirstQuantTensor<S>) -> Result<FockVector<S>> {
    let root = S::from_f64((factorial(t.particles()) as f64).sqrt());
    Ok(to_fock_unnormalized(t)?.scaled(root))
}

/// Inverse of [`to_fock`]. A vacuum-sector vector becomes a rank-0 tensor.
pub fn from_fock<S: FloatScalar>(v: &FockVector<S>) -> Result<FirstQuantTensor<S>> {
    let t = from_fock_unnormalized(v)?;
    let root = S::from_f64((factorial(t.particles()) as f64).sqrt());
    Ok(t.scaled(S::one() / root))
}

fn compare<S: Scalar>(name: &str, lhs: &FockVector<S>, rhs: &FockVector<S>) -> Result<CheckResult> {
    let scale = lhs.max_modulus().max(rhs.max_modulus());
    Ok(CheckResult::new(
        name,
        lhs.max_deviation(rhs)?,
        scaled_tolerance::<S>(scale),
        1,
    ))
}

/// Compares `to_fock(F|ψ_f>)` with `F̂ |ψ_Fock>` for the one-body operator
/// `f` and the Slater determinant of the reference state `p`.
pub fn check_one_body_equivalence<S: FloatScalar>(
    f: &OneBodyMatrix<S>,
    p: &ProductState,
) -> Result<CheckResult> {
    check_one_body_equivalence_with(OperatorBuilder::default(), f, p)
}

pub fn check_one_body_equivalence_with<S: FloatScalar>(
    builder: OperatorBuilder,
    f: &OneBodyMatrix<S>,
    p: &ProductState,
) -> Result<CheckResult> {
    let m = f.orbitals();
    let psi = slater_state(p, m)?;
    let lhs = to_fock(&apply_one_body(f, &psi)?)?;
    let basis = enumerate_basis(m, p.len())?;
    let rhs = builder.build_one_body(f, &basis)?.apply(&to_fock(&psi)?)?;
    compare("one_body_equivalence", &lhs, &rhs)
}

/// Two-body analogue of [`check_one_body_equivalence`]; needs `N >= 2`.
pub fn check_two_body_equivalence<S: FloatScalar>(
    g: &TwoBodyTensor<S>,
    p: &ProductState,
) -> Result<CheckResult> {
    check_two_body_equivalence_with(OperatorBuilder::default(), g, p)
}

pub fn check_two_body_equivalence_with<S: FloatScalar>(
    builder: OperatorBuilder,
    g: &TwoBodyTensor<S>,
    p: &ProductState,
) -> Result<CheckResult> {
    let m = g.orbitals();
    let psi = slater_state(p, m)?;
    let lhs = to_fock(&apply_two_body(g, &psi)?)?;
    let basis = enumerate_basis(m, p.len())?;
    let rhs = builder.build_two_body(g, &basis)?.apply(&to_fock(&psi)?)?;
    compare("two_body_equivalence", &lhs, &rhs)
}

/// One-body equivalence in exact arithmetic, using the unnormalized
/// correspondence on `P_f |φ_{P1}> ... |φ_{PN}>`.
pub fn check_one_body_equivalence_exact<S: Scalar>(
    f: &OneBodyMatrix<S>,
    p: &ProductState,
) -> Result<CheckResult> {
    let m = f.orbitals();
    let (psi, unit) = unnormalized_pair(p, m)?;
    let lhs = to_fock_unnormalized(&apply_one_body(f, &psi)?)?;
    let basis = enumerate_basis(m, p.len())?;
    let rhs = OperatorBuilder::default()
        .build_one_body(f, &basis)?
        .apply(&unit)?;
    compare("one_body_equivalence_exact", &lhs, &rhs)
}

pub fn check_two_body_equivalence_exact<S: Scalar>(
    g: &TwoBodyTensor<S>,
    p: &ProductState,
) -> Result<CheckResult> {
    let m = g.orbitals();
    let (psi, unit) = unnormalized_pair(p, m)?;
    let lhs = to_fock_unnormalized(&apply_two_body(g, &psi)?)?;
    let basis = enumerate_basis(m, p.len())?;
    let rhs = OperatorBuilder::default()
        .build_two_body(g, &basis)?
        .apply(&unit)?;
    compare("two_body_equivalence_exact", &lhs, &rhs)
}

fn unnormalized_pair<S: Scalar>(
    p: &ProductState,
    m: usize,
) -> Result<(FirstQuantTensor<S>, FockVector<S>)> {
    if !p.is_reference() {
        return Err(Error::ReferenceOrder(p.indices()));
    }
    let psi = antisymmetrize(&product_state_tensor(p, m)?);
    let state = OccupationState::from_orbitals(&p.indices(), m)?;
    Ok((psi, FockVector::basis_state(state)))
}

/// The worked two-particle identity: for `N = 2`,
/// `F|ψ> = sqrt(1/2) [P_f (f_1|φ_{P1}>)|φ_{P2}> + P_f |φ_{P1}>(f_2|φ_{P2}>)]`,
/// with both sides also compared against the explicit four-term expansion.
pub fn check_worked_example<S: FloatScalar>(
    f: &OneBodyMatrix<S>,
    p: &ProductState,
) -> Result<CheckResult> {
    if p.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.len(),
        });
    }
    let m = f.orbitals();
    let root_half = S::from_f64(0.5f64.sqrt());
    let lhs = apply_one_body(f, &slater_state(p, m)?)?;

    let product = product_state_tensor::<S>(p, m)?;
    let slot_sum = antisymmetrize(&apply_to_slot(f, &product, 0)?)
        .add(&antisymmetrize(&apply_to_slot(f, &product, 1)?))?
        .scaled(root_half);

    let (p1, p2) = (p.orbitals()[0].position(), p.orbitals()[1].position());
    let delta = |a: usize, b: usize| if a == b { S::one() } else { S::zero() };
    let mut expanded = FirstQuantTensor::<S>::zeros(m, 2)?;
    for a in 0..m {
        for b in 0..m {
            let value = f.at(a, p1) * delta(b, p2) - f.at(a, p2) * delta(b, p1)
                + delta(a, p1) * f.at(b, p2)
                - delta(a, p2) * f.at(b, p1);
            let flat = expanded.flat_index(&[a, b]);
            expanded.coeffs_mut()[flat] = root_half * value;
        }
    }

    let deviation = lhs
        .max_deviation(&slot_sum)?
        .max(lhs.max_deviation(&expanded)?)
        .max(slot_sum.max_deviation(&expanded)?);
    let scale = lhs.max_modulus().max(expanded.max_modulus());
    Ok(CheckResult::new(
        "worked_example",
        deviation,
        scaled_tolerance::<S>(scale),
        1,
    ))
}

type ExactVector = FockVector<Rational64>;

fn creators(p: &ProductState) -> Vec<Ladder> {
    p.orbitals().iter().map(|&a| Ladder::Create(a)).collect()
}

fn on_vacuum(convention: SignConvention, ops: &[Ladder], m: usize) -> Result<ExactVector> {
    apply_ladder_string_with(convention, ops, &vacuum(m)?)
}

fn check_slot(slot: usize, p: &ProductState) -> Result<usize> {
    if slot == 0 || slot > p.len() {
        return Err(Error::InvalidSlot {
            slot,
            particles: p.len(),
        });
    }
    Ok(slot - 1)
}

fn check_reference(p: &ProductState, m: usize) -> Result<()> {
    if !p.is_reference() {
        return Err(Error::ReferenceOrder(p.indices()));
    }
    p.orbitals().iter().try_for_each(|a| a.within(m).map(drop))
}

/// Both sides of the single-replacement identity, for one-based slot `slot`:
///
/// ```text
/// a†_{P1} .. a†_Q .. a†_{PN} |0>  =  a†_Q a_{P_i} a†_{P1} .. a†_{PN} |0>
/// ```
pub fn identity_a_sides(
    convention: SignConvention,
    m: usize,
    p: &ProductState,
    slot: usize,
    q: OrbitalIndex,
) -> Result<(ExactVector, ExactVector)> {
    check_reference(p, m)?;
    q.within(m)?;
    let i = check_slot(slot, p)?;
    let lhs = on_vacuum(convention, &creators(&p.with_slot(i, q)?), m)?;
    let mut ops = vec![Ladder::Create(q), Ladder::Annihilate(p.orbitals()[i])];
    ops.extend(creators(p));
    let rhs = on_vacuum(convention, &ops, m)?;
    Ok((lhs, rhs))
}

pub fn check_identity_a(m: usize, p: &ProductState, slot: usize, q: OrbitalIndex) -> Result<bool> {
    let (lhs, rhs) = identity_a_sides(SignConvention::Standard, m, p, slot, q)?;
    Ok(lhs == rhs)
}

/// Both sides of the double-replacement identity, for one-based slots `i < l`:
///
/// ```text
/// a†_{P1} .. a†_{Qi} .. a†_{Ql} .. a†_{PN} |0>
///     =  a†_{Qi} a†_{Ql} a_{Pl} a_{Pi} a†_{P1} .. a†_{PN} |0>
/// ```
pub fn identity_b_sides(
    convention: SignConvention,
    m: usize,
    p: &ProductState,
    (i, l): (usize, usize),
    (qi, ql): (OrbitalIndex, OrbitalIndex),
) -> Result<(ExactVector, ExactVector)> {
    if i >= l {
        return Err(Error::SlotOrder {
            first: i,
            second: l,
        });
    }
    check_reference(p, m)?;
    qi.within(m)?;
    ql.within(m)?;
    let (i0, l0) = (check_slot(i, p)?, check_slot(l, p)?);
    let replaced = p.with_slot(i0, qi)?.with_slot(l0, ql)?;
    let lhs = on_vacuum(convention, &creators(&replaced), m)?;
    let mut ops = vec![
        Ladder::Create(qi),
        Ladder::Create(ql),
        Ladder::Annihilate(p.orbitals()[l0]),
        Ladder::Annihilate(p.orbitals()[i0]),
    ];
    ops.extend(creators(p));
    let rhs = on_vacuum(convention, &ops, m)?;
    Ok((lhs, rhs))
}

pub fn check_identity_b(
    m: usize,
    p: &ProductState,
    slots: (usize, usize),
    replacements: (OrbitalIndex, OrbitalIndex),
) -> Result<bool> {
    let (lhs, rhs) = identity_b_sides(SignConvention::Standard, m, p, slots, replacements)?;
    Ok(lhs == rhs)
}

fn reference_states(m: usize, n: usize) -> Result<Vec<ProductState>> {
    enumerate_basis(m, n)?
        .states()
        .iter()
        .map(|&s| ProductState::from_occupation(s))
        .collect()
}

fn all_orbitals(m: usize) -> Result<Vec<OrbitalIndex>> {
    (1..=m).map(OrbitalIndex::new).collect()
}

/// Single-replacement identity for every reference state of `(M, N)`, every
/// slot and every replacement orbital.
pub fn sweep_identity_a(m: usize, n: usize, convention: SignConvention) -> Result<CheckResult> {
    let mut worst = Worst::default();
    for p in reference_states(m, n)? {
        for slot in 1..=n {
            for q in all_orbitals(m)? {
                let (lhs, rhs) = identity_a_sides(convention, m, &p, slot, q)?;
                worst.record(lhs.max_deviation(&rhs)?, 0.0);
            }
        }
    }
    Ok(worst.result::<Rational64>("identity_a"))
}

/// Double-replacement identity for every reference state of `(M, N)`, every
/// slot pair `i < l` and every pair of replacement orbitals.
pub fn sweep_identity_b(m: usize, n: usize, convention: SignConvention) -> Result<CheckResult> {
    let mut worst = Worst::default();
    let orbitals = all_orbitals(m)?;
    for p in reference_states(m, n)? {
        for (i, l) in (1..=n).tuple_combinations() {
            for (&qi, &ql) in orbitals.iter().cartesian_product(&orbitals) {
                let (lhs, rhs) = identity_b_sides(convention, m, &p, (i, l), (qi, ql))?;
                worst.record(lhs.max_deviation(&rhs)?, 0.0);
            }
        }
    }
    Ok(worst.result::<Rational64>("identity_b"))
}

type IntegerAction = BTreeMap<OccupationState, i64>;

fn act(
    convention: SignConvention,
    ops: &[Ladder],
    s: OccupationState,
    out: &mut IntegerAction,
) -> Result<()> {
    if let SignedState::Signed { sign, state } = apply_ladder_string_to_state(convention, ops, s)? {
        *out.entry(state).or_insert(0) += sign.value();
    }
    Ok(())
}

fn deviation_from(action: &IntegerAction, expected: &IntegerAction) -> f64 {
    action
        .keys()
        .chain(expected.keys())
        .map(|k| {
            let a = action.get(k).copied().unwrap_or(0);
            let b = expected.get(k).copied().unwrap_or(0);
            (a - b).abs() as f64
        })
        .fold(0.0, f64::max)
}

fn check_full_space(m: usize) -> Result<()> {
    check_orbitals(m)?;
    if m > MAX_FULL_SPACE_ORBITALS {
        return Err(Error::Capacity(format!(
            "full-space checks need M <= {MAX_FULL_SPACE_ORBITALS}, got {m}"
        )));
    }
    Ok(())
}

/// `{a†_α, a†_β} = 0`, `{a_α, a_β} = 0` and `{a_α, a†_β} = δ_{αβ}` as exact
/// integer matrices on the full `2^M` space.
pub fn check_anticommutators(m: usize, convention: SignConvention) -> Result<CheckResult> {
    check_full_space(m)?;
    let mut worst = Worst::default();
    let orbitals = all_orbitals(m)?;
    for s in full_space(m)? {
        for (&alpha, &beta) in orbitals.iter().cartesian_product(&orbitals) {
            let pairs = [
                (Ladder::Create(alpha), Ladder::Create(beta), false),
                (Ladder::Annihilate(alpha), Ladder::Annihilate(beta), false),
                (
                    Ladder::Annihilate(alpha),
                    Ladder::Create(beta),
                    alpha == beta,
                ),
            ];
            for (x, y, unit) in pairs {
                let mut action = IntegerAction::new();
                act(convention, &[x, y], s, &mut action)?;
                act(convention, &[y, x], s, &mut action)?;
                let expected = if unit {
                    IntegerAction::from([(s, 1)])
                } else {
                    IntegerAction::new()
                };
                worst.record(deviation_from(&action, &expected), 0.0);
            }
        }
    }
    Ok(worst.result::<Rational64>("anticommutators"))
}

/// `(a†_α)^2 = 0` and `(a_α)^2 = 0` on the full space.
pub fn check_pauli(m: usize, convention: SignConvention) -> Result<CheckResult> {
    check_full_space(m)?;
    let mut worst = Worst::default();
    for s in full_space(m)? {
        for alpha in all_orbitals(m)? {
            for op in [Ladder::Create(alpha), Ladder::Annihilate(alpha)] {
                let mut action = IntegerAction::new();
                act(convention, &[op, op], s, &mut action)?;
                worst.record(deviation_from(&action, &IntegerAction::new()), 0.0);
            }
        }
    }
    Ok(worst.result::<Rational64>("pauli"))
}

/// Matrix of `a_α` equals the transpose of the matrix of `a†_α`.
pub fn check_adjointness(m: usize, convention: SignConvention) -> Result<CheckResult> {
    check_full_space(m)?;
    let mut worst = Worst::default();
    for s in full_space(m)? {
        for alpha in all_orbitals(m)? {
            // every nonzero <t|a†|s> must reappear as <s|a|t>, and vice versa
            for (up, down) in [
                (Ladder::Create(alpha), Ladder::Annihilate(alpha)),
                (Ladder::Annihilate(alpha), Ladder::Create(alpha)),
            ] {
                let deviation = match up.act(convention, s)? {
                    SignedState::Zero => 0.0,
                    SignedState::Signed { sign, state } => match down.act(convention, state)? {
                        SignedState::Signed {
                            sign: back,
                            state: origin,
                        } if origin == s && back == sign => 0.0,
                        _ => 2.0,
                    },
                };
                worst.record(deviation, 0.0);
            }
        }
    }
    Ok(worst.result::<Rational64>("adjointness"))
}

/// `Σ_α a†_α a_α` acts as `N` on every state of the `(M, N)` sector.
pub fn check_number_operator(
    m: usize,
    n: usize,
    convention: SignConvention,
) -> Result<CheckResult> {
    let mut worst = Worst::default();
    for &s in enumerate_basis(m, n)?.states() {
        let mut action = IntegerAction::new();
        for alpha in all_orbitals(m)? {
            act(
                convention,
                &[Ladder::Create(alpha), Ladder::Annihilate(alpha)],
                s,
                &mut action,
            )?;
        }
        worst.record(
            deviation_from(&action, &IntegerAction::from([(s, n as i64)])),
            0.0,
        );
    }
    Ok(worst.result::<Rational64>("number_operator"))
}

/// `a_α |0> = 0` for every `α`.
pub fn check_vacuum_annihilation(m: usize, convention: SignConvention) -> Result<CheckResult> {
    let mut worst = Worst::default();
    for alpha in all_orbitals(m)? {
        let out = on_vacuum(convention, &[Ladder::Annihilate(alpha)], m)?;
        worst.record(if out.is_zero() { 0.0 } else { 1.0 }, 0.0);
    }
    Ok(worst.result::<Rational64>("vacuum_annihilation"))
}

/// For every orbital list in `{1..M}^N` (all permutations of every
/// reference state, plus lists with repeats), the antisymmetrized product
/// corresponds to the creator string in the same order. Exact.
pub fn check_permuted_correspondence(
    m: usize,
    n: usize,
    convention: SignConvention,
) -> Result<CheckResult> {
    let mut worst = Worst::default();
    if n == 0 {
        return Ok(worst.result::<Rational64>("permuted_correspondence"));
    }
    let orbitals: Vec<usize> = (1..=m).collect();
    for list in (0..n)
        .map(|_| orbitals.iter().copied())
        .multi_cartesian_product()
    {
        let p = ProductState::new(&list)?;
        // sqrt(1/N!) and sqrt(N!) cancel, so the unnormalized map is exact here
        let lhs =
            to_fock_unnormalized(&antisymmetrize(&product_state_tensor::<Rational64>(&p, m)?))?;
        let rhs = on_vacuum(convention, &creators(&p), m)?;
        worst.record(lhs.max_deviation(&rhs)?, 0.0);
    }
    Ok(worst.result::<Rational64>("permuted_correspondence"))
}

/// Dimension of the antisymmetric subspace of the `M^N` space, as the trace
/// of the projector `P_f / N!`.
pub fn antisymmetric_subspace_dimension(m: usize, n: usize) -> Result<usize> {
    let probe = FirstQuantTensor::<Rational64>::zeros(m, n)?;
    let perms = signed_permutations(n);
    let mut idx = vec![0; n];
    let mut trace: i64 = 0;
    for flat in 0..probe.len() {
        probe.decode(flat, &mut idx);
        for (perm, sign) in &perms {
            if perm.iter().enumerate().all(|(k, &j)| idx[j] == idx[k]) {
                trace += sign.value();
            }
        }
    }
    Ok((trace / factorial(n) as i64) as usize)
}

pub fn check_subspace_dimension(m: usize, n: usize) -> Result<CheckResult> {
    let dim = antisymmetric_subspace_dimension(m, n)?;
    let expected = binomial(m, n);
    Ok(CheckResult::new(
        "subspace_dimension",
        (dim as f64 - expected as f64).abs(),
        0.0,
        1,
    ))
}

/// Round trips on random inputs: `to_fock(from_fock(v)) = v` for Fock
/// vectors, `from_fock(to_fock(t)) = t` for antisymmetric tensors, and norm
/// preservation in both directions.
pub fn check_round_trip<S: FloatScalar, R: Rng + ?Sized>(
    m: usize,
    n: usize,
    trials: usize,
    rng: &mut R,
) -> Result<CheckResult> {
    let basis = enumerate_basis(m, n)?;
    let mut worst = Worst::default();
    for _ in 0..trials {
        let v: FockVector<S> = random_fock_vector(&basis, rng)?;
        let t = from_fock(&v)?;
        let back = to_fock(&t)?;
        let scale = v.max_modulus().max(v.norm());
        worst.record(
            back.max_deviation(&v)?.max((t.norm() - v.norm()).abs()),
            scale,
        );
        if t.antisymmetry_deviation() > scaled_tolerance::<S>(scale) {
            worst.record(t.antisymmetry_deviation(), scale);
        }

        let a = antisymmetrize(&random_tensor::<S, _>(m, n, rng)?);
        let w = to_fock(&a)?;
        let again = from_fock(&w)?;
        let scale = a.max_modulus().max(a.norm());
        worst.record(
            again.max_deviation(&a)?.max((w.norm() - a.norm()).abs()),
            scale,
        );
    }
    Ok(worst.result::<S>("round_trip"))
}
