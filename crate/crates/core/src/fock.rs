//! Occupation-number states, fermionic ladder operators and sector bases.
//!
//! Orbitals are labelled `1..=M` externally and stored as bit `α - 1` of a
//! bitmask. The ladder operators carry the sign `(-1)^k`, where `k` counts
//! occupied orbitals strictly below `α`; with this choice the ascending
//! creator string `a†_{P1} ... a†_{PN}` applied to the vacuum gives
//! `+|P1, ..., PN>`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest supported orbital count.
pub const MAX_ORBITALS: usize = 24;

pub fn check_orbitals(orbitals: usize) -> Result<()> {
    if orbitals == 0 || orbitals > MAX_ORBITALS {
        return Err(Error::InvalidDimension {
            orbitals,
            max: MAX_ORBITALS,
        });
    }
    Ok(())
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// One-based orbital label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitalIndex(u8);

impl OrbitalIndex {
    pub fn new(index: usize) -> Result<Self> {
        if index == 0 || index > MAX_ORBITALS {
            return Err(Error::InvalidOrbital {
                index,
                orbitals: MAX_ORBITALS,
            });
        }
        Ok(OrbitalIndex(index as u8))
    }

    /// From a zero-based bit position.
    pub fn from_position(position: usize) -> Result<Self> {
        Self::new(position + 1)
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    /// Zero-based bit position.
    pub fn position(self) -> usize {
        self.0 as usize - 1
    }

    /// Checks the index against an ambient orbital count.
    pub fn within(self, orbitals: usize) -> Result<Self> {
        if self.get() > orbitals {
            return Err(Error::InvalidOrbital {
                index: self.get(),
                orbitals,
            });
        }
        Ok(self)
    }

    fn mask(self) -> u32 {
        1 << self.position()
    }
}

impl fmt::Display for OrbitalIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A `±1` phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^count`.
    pub fn from_parity(count: u32) -> Self {
        if count.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_scalar<S: Scalar>(self) -> S {
        match self {
            Sign::Plus => S::one(),
            Sign::Minus => -S::one(),
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Fock basis label `|N_1, ..., N_M>` as a bitmask, together with `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OccupationState {
    bits: u32,
    orbitals: u8,
}

impl OccupationState {
    pub fn new(bits: u32, orbitals: usize) -> Result<Self> {
        check_orbitals(orbitals)?;
        if orbitals < 32 && bits >> orbitals != 0 {
            return Err(Error::InvalidBitmask {
                bits: bits as u64,
                orbitals,
            });
        }
        Ok(OccupationState {
            bits,
            orbitals: orbitals as u8,
        })
    }

    /// The empty state (no particles) on `orbitals` orbitals.
    pub fn empty(orbitals: usize) -> Result<Self> {
        Self::new(0, orbitals)
    }

    /// State with the listed one-based orbitals occupied.
    pub fn from_orbitals(occupied: &[usize], orbitals: usize) -> Result<Self> {
        check_orbitals(orbitals)?;
        let mut bits = 0u32;
        for &index in occupied {
            let alpha = OrbitalIndex::new(index)?.within(orbitals)?;
            if bits & alpha.mask() != 0 {
                return Err(Error::RepeatedOrbital { index });
            }
            bits |= alpha.mask();
        }
        Ok(OccupationState {
            bits,
            orbitals: orbitals as u8,
        })
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn orbitals(self) -> usize {
        self.orbitals as usize
    }

    pub fn particle_count(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_occupied(self, alpha: OrbitalIndex) -> bool {
        self.bits & alpha.mask() != 0
    }

    /// Number of occupied orbitals with index strictly below `alpha`.
    pub fn occupied_below(self, alpha: OrbitalIndex) -> u32 {
        (self.bits & (alpha.mask() - 1)).count_ones()
    }

    /// Occupied orbitals in ascending order.
    pub fn occupied(self) -> impl Iterator<Item = OrbitalIndex> {
        let bits = self.bits;
        (0..self.orbitals as usize)
            .filter(move |&p| bits & (1 << p) != 0)
            .map(|p| OrbitalIndex(p as u8 + 1))
    }

    /// Occupied orbitals as one-based integers, e.g. `[1, 3]`.
    pub fn occupied_indices(self) -> Vec<usize> {
        self.occupied().map(OrbitalIndex::get).collect()
    }

    /// Set notation, e.g. `{1,3}`.
    pub fn label(self) -> String {
        let items: Vec<String> = self.occupied().map(|a| a.to_string()).collect();
        format!("{{{}}}", items.join(","))
    }

    fn with_bits(self, bits: u32) -> Self {
        OccupationState { bits, ..self }
    }
}

/// Bit string with orbital 1 as the rightmost digit, e.g. `011` for `{1,2}`.
impl fmt::Display for OccupationState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.bits, width = self.orbitals as usize)
    }
}

/// Result of a ladder operator on a basis state: a signed basis state or zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignedState {
    Zero,
    Signed { sign: Sign, state: OccupationState },
}

impl SignedState {
    pub fn plus(state: OccupationState) -> Self {
        SignedState::Signed {
            sign: Sign::Plus,
            state,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SignedState::Zero)
    }

    pub fn state(&self) -> Option<OccupationState> {
        match *self {
            SignedState::Zero => None,
            SignedState::Signed { state, .. } => Some(state),
        }
    }

    pub fn sign(&self) -> Option<Sign> {
        match *self {
            SignedState::Zero => None,
            SignedState::Signed { sign, .. } => Some(sign),
        }
    }

    /// Applies `op` to the carried state, multiplying the phases.
    pub fn then(self, op: Ladder, convention: SignConvention) -> Result<SignedState> {
        match self {
            SignedState::Zero => Ok(SignedState::Zero),
            SignedState::Signed { sign, state } => Ok(match op.act(convention, state)? {
                SignedState::Zero => SignedState::Zero,
                SignedState::Signed { sign: inner, state } => SignedState::Signed {
                    sign: sign * inner,
                    state,
                },
            }),
        }
    }
}

/// Phase rule used by the ladder operators.
///
/// Only `Standard` satisfies the canonical anticommutation relations. The
/// other variants exist as negative controls for the verification suites.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SignConvention {
    #[default]
    Standard,
    /// Annihilation counts occupied orbitals up to and including `α`, so
    /// `{a_α, a†_α} = -1`.
    AnnihilationOffByOne,
    /// Every phase is `+1` (hard-core bosons).
    Unsigned,
}

impl SignConvention {
    pub fn create(self, alpha: OrbitalIndex, state: OccupationState) -> Result<SignedState> {
        alpha.within(state.orbitals())?;
        if state.is_occupied(alpha) {
            return Ok(SignedState::Zero);
        }
        let sign = match self {
            SignConvention::Standard | SignConvention::AnnihilationOffByOne => {
                Sign::from_parity(state.occupied_below(alpha))
            }
            SignConvention::Unsigned => Sign::Plus,
        };
        Ok(SignedState::Signed {
            sign,
            state: state.with_bits(state.bits | alpha.mask()),
        })
    }

    pub fn annihilate(self, alpha: OrbitalIndex, state: OccupationState) -> Result<SignedState> {
        alpha.within(state.orbitals())?;
        if !state.is_occupied(alpha) {
            return Ok(SignedState::Zero);
        }
        let sign = match self {
            SignConvention::Standard => Sign::from_parity(state.occupied_below(alpha)),
            SignConvention::AnnihilationOffByOne => {
                Sign::from_parity(state.occupied_below(alpha) + 1)
            }
            SignConvention::Unsigned => Sign::Plus,
        };
        Ok(SignedState::Signed {
            sign,
            state: state.with_bits(state.bits & !alpha.mask()),
        })
    }
}

/// `a†_α` on a basis state with the standard phase convention.
pub fn apply_creation(alpha: OrbitalIndex, state: OccupationState) -> Result<SignedState> {
    SignConvention::Standard.create(alpha, state)
}

/// `a_α` on a basis state with the standard phase convention.
pub fn apply_annihilation(alpha: OrbitalIndex, state: OccupationState) -> Result<SignedState> {
    SignConvention::Standard.annihilate(alpha, state)
}

/// A single creation or annihilation operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ladder {
    Create(OrbitalIndex),
    Annihilate(OrbitalIndex),
}

impl Ladder {
    pub fn create(index: usize) -> Result<Self> {
        Ok(Ladder::Create(OrbitalIndex::new(index)?))
    }

    pub fn annihilate(index: usize) -> Result<Self> {
        Ok(Ladder::Annihilate(OrbitalIndex::new(index)?))
    }

    pub fn orbital(self) -> OrbitalIndex {
        match self {
            Ladder::Create(a) | Ladder::Annihilate(a) => a,
        }
    }

    pub fn particle_change(self) -> isize {
        match self {
            Ladder::Create(_) => 1,
            Ladder::Annihilate(_) => -1,
        }
    }

    pub fn act(self, convention: SignConvention, state: OccupationState) -> Result<SignedState> {
        match self {
            Ladder::Create(a) => convention.create(a, state),
            Ladder::Annihilate(a) => convention.annihilate(a, state),
        }
    }
}

impl fmt::Display for Ladder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ladder::Create(a) => write!(f, "a†{a}"),
            Ladder::Annihilate(a) => write!(f, "a{a}"),
        }
    }
}

/// Applies an operator product to a basis state. `ops` is written as in
/// the algebra, so the rightmost operator acts first.
pub fn apply_ladder_string_to_state(
    convention: SignConvention,
    ops: &[Ladder],
    state: OccupationState,
) -> Result<SignedState> {
    ops.iter()
        .rev()
        .try_fold(SignedState::plus(state), |acc, &op| {
            acc.then(op, convention)
        })
}

/// Sparse amplitude map over occupation states of one particle-number sector.
///
/// The particle count is signed: a string of ladder operators may map a
/// sector to `N < 0` or `N > M`, where the only vector is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector<S> {
    orbitals: usize,
    particles: isize,
    amplitudes: BTreeMap<OccupationState, S>,
}

impl<S: Scalar> FockVector<S> {
    pub fn zero(orbitals: usize, particles: isize) -> Result<Self> {
        check_orbitals(orbitals)?;
        Ok(FockVector {
            orbitals,
            particles,
            amplitudes: BTreeMap::new(),
        })
    }

    /// Unit amplitude on `state`.
    pub fn basis_state(state: OccupationState) -> Self {
        FockVector {
            orbitals: state.orbitals(),
            particles: state.particle_count() as isize,
            amplitudes: BTreeMap::from([(state, S::one())]),
        }
    }

    /// Sums the given amplitudes; every state must lie in sector `(orbitals, particles)`.
    pub fn from_amplitudes(
        orbitals: usize,
        particles: usize,
        amplitudes: impl IntoIterator<Item = (OccupationState, S)>,
    ) -> Result<Self> {
        let mut v = Self::zero(orbitals, particles as isize)?;
        for (state, amp) in amplitudes {
            v.check_member(state)?;
            v.accumulate(state, amp);
        }
        Ok(v)
    }

    /// Builds a vector from coefficients listed in basis order.
    pub fn from_dense(basis: &FockBasis, coeffs: &[S]) -> Result<Self> {
        if coeffs.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: coeffs.len(),
            });
        }
        Self::from_amplitudes(
            basis.orbitals(),
            basis.particles(),
            basis.states().iter().copied().zip(coeffs.iter().copied()),
        )
    }

    pub fn orbitals(&self) -> usize {
        self.orbitals
    }

    pub fn particles(&self) -> isize {
        self.particles
    }

    pub fn amplitude(&self, state: &OccupationState) -> S {
        self.amplitudes.get(state).copied().unwrap_or_else(S::zero)
    }

    /// Stored entries in ascending bitmask order.
    pub fn iter(&self) -> impl Iterator<Item = (OccupationState, S)> + '_ {
        self.amplitudes.iter().map(|(s, a)| (*s, *a))
    }

    /// Number of stored entries.
    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.amplitudes.values().all(|a| a.is_zero())
    }

    pub fn to_dense(&self, basis: &FockBasis) -> Result<Vec<S>> {
        self.check_sector(basis.orbitals(), basis.particles() as isize)?;
        Ok(basis.states().iter().map(|s| self.amplitude(s)).collect())
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<S> {
        self.check_same_sector(other)?;
        Ok(self
            .amplitudes
            .iter()
            .filter_map(|(s, a)| other.amplitudes.get(s).map(|b| a.conj() * *b))
            .fold(S::zero(), |acc, x| acc + x))
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .values()
            .map(|a| a.modulus().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn scaled(&self, factor: S) -> Self {
        let mut out = Self {
            amplitudes: BTreeMap::new(),
            ..*self
        };
        for (s, a) in self.iter() {
            out.accumulate(s, factor * a);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_sector(other)?;
        let mut out = self.clone();
        for (s, a) in other.iter() {
            out.accumulate(s, a);
        }
        Ok(out)
    }

    /// Largest amplitude-wise modulus of `self - other`.
    pub fn max_deviation(&self, other: &Self) -> Result<f64> {
        self.check_same_sector(other)?;
        let keys = self.amplitudes.keys().chain(other.amplitudes.keys());
        Ok(keys
            .map(|s| (self.amplitude(s) - other.amplitude(s)).modulus())
            .fold(0.0, f64::max))
    }

    /// Largest stored amplitude modulus.
    pub fn max_modulus(&self) -> f64 {
        crate::scalar::max_modulus(self.amplitudes.values().copied())
    }

    pub(crate) fn check_sector(&self, orbitals: usize, particles: isize) -> Result<()> {
        if self.orbitals != orbitals || self.particles != particles {
            return Err(Error::SectorMismatch {
                expected_orbitals: orbitals,
                expected_particles: particles,
                found_orbitals: self.orbitals,
                found_particles: self.particles,
            });
        }
        Ok(())
    }

    fn check_same_sector(&self, other: &Self) -> Result<()> {
        other.check_sector(self.orbitals, self.particles)
    }

    fn check_member(&self, state: OccupationState) -> Result<()> {
        if state.orbitals() != self.orbitals || state.particle_count() as isize != self.particles {
            return Err(Error::SectorMismatch {
                expected_orbitals: self.orbitals,
                expected_particles: self.particles,
                found_orbitals: state.orbitals(),
                found_particles: state.particle_count() as isize,
            });
        }
        Ok(())
    }

    /// Adds `amp` to the entry for `state`, dropping it if the sum is zero.
    pub(crate) fn accumulate(&mut self, state: OccupationState, amp: S) {
        let slot = self.amplitudes.entry(state).or_insert_with(S::zero);
        *slot = *slot + amp;
        if slot.is_zero() {
            self.amplitudes.remove(&state);
        }
    }
}

/// The vacuum `|0, ..., 0>` on `orbitals` orbitals.
pub fn vacuum<S: Scalar>(orbitals: usize) -> Result<FockVector<S>> {
    Ok(FockVector::basis_state(OccupationState::empty(orbitals)?))
}

/// Linear extension of the ladder operators to a vector; the rightmost
/// operator in `ops` acts first.
pub fn apply_ladder_string<S: Scalar>(ops: &[Ladder], v: &FockVector<S>) -> Result<FockVector<S>> {
    apply_ladder_string_with(SignConvention::Standard, ops, v)
}

pub fn apply_ladder_string_with<S: Scalar>(
    convention: SignConvention,
    ops: &[Ladder],
    v: &FockVector<S>,
) -> Result<FockVector<S>> {
    for op in ops {
        op.orbital().within(v.orbitals())?;
    }
    let change: isize = ops.iter().map(|op| op.particle_change()).sum();
    let mut out = FockVector::zero(v.orbitals(), v.particles() + change)?;
    for (state, amp) in v.iter() {
        if let SignedState::Signed { sign, state } =
            apply_ladder_string_to_state(convention, ops, state)?
        {
            out.accumulate(state, sign.to_scalar::<S>() * amp);
        }
    }
    Ok(out)
}

/// All occupation states of a fixed-`N` sector, in ascending bitmask order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockBasis {
    orbitals: usize,
    particles: usize,
    states: Vec<OccupationState>,
}

impl FockBasis {
    pub fn orbitals(&self) -> usize {
        self.orbitals
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn states(&self) -> &[OccupationState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, position: usize) -> Option<OccupationState> {
        self.states.get(position).copied()
    }

    /// Position of `state` in the basis.
    pub fn position(&self, state: &OccupationState) -> Option<usize> {
        if state.orbitals() != self.orbitals {
            return None;
        }
        self.states.binary_search(state).ok()
    }
}

/// Lists the `C(M, N)` states with `N` particles in `M` orbitals, ascending.
pub fn enumerate_basis(orbitals: usize, particles: usize) -> Result<FockBasis> {
    check_orbitals(orbitals)?;
    if particles > orbitals {
        return Err(Error::EmptySector {
            orbitals,
            particles,
        });
    }
    let mut states = Vec::with_capacity(binomial(orbitals, particles));
    let limit = 1u64 << orbitals;
    let mut bits: u64 = (1u64 << particles) - 1;
    loop {
        states.push(OccupationState {
            bits: bits as u32,
            orbitals: orbitals as u8,
        });
        if bits == 0 {
            break;
        }
        // next integer with the same popcount
        let lowest = bits & bits.wrapping_neg();
        let ripple = bits + lowest;
        bits = (((ripple ^ bits) >> 2) / lowest) | ripple;
        if bits >= limit {
            break;
        }
    }
    Ok(FockBasis {
        orbitals,
        particles,
        states,
    })
}

/// Every one of the `2^M` occupation states, ascending.
pub fn full_space(orbitals: usize) -> Result<impl Iterator<Item = OccupationState>> {
    check_orbitals(orbitals)?;
    Ok((0..1u32 << orbitals).map(move |bits| OccupationState {
        bits,
        orbitals: orbitals as u8,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(occ: &[usize], m: usize) -> OccupationState {
        OccupationState::from_orbitals(occ, m).unwrap()
    }

    fn idx(i: usize) -> OrbitalIndex {
        OrbitalIndex::new(i).unwrap()
    }

    #[test]
    fn vacuum_is_single_unit_amplitude() {
        let v = vacuum::<f64>(3).unwrap();
        assert_eq!(v.particles(), 0);
        assert_eq!(v.iter().collect::<Vec<_>>(), vec![(st(&[], 3), 1.0)]);
        assert_eq!(v.iter().next().unwrap().0.to_string(), "000");
        let v1 = vacuum::<f64>(1).unwrap();
        assert_eq!(v1.iter().next().unwrap().0.to_string(), "0");
        let v4 = vacuum::<f64>(4).unwrap();
        assert_eq!(v4.inner(&v4).unwrap(), 1.0);
    }

    #[test]
    fn vacuum_rejects_bad_dimension() {
        assert!(matches!(
            vacuum::<f64>(0),
            Err(Error::InvalidDimension { .. })
        ));
        assert!(vacuum::<f64>(MAX_ORBITALS + 1).is_err());
    }

    #[test]
    fn creation_examples() {
        assert_eq!(
            apply_creation(idx(1), st(&[], 3)).unwrap(),
            SignedState::plus(st(&[1], 3))
        );
        assert_eq!(
            apply_creation(idx(2), st(&[1, 3], 3)).unwrap(),
            SignedState::Signed {
                sign: Sign::Minus,
                state: st(&[1, 2, 3], 3)
            }
        );
        assert_eq!(
            apply_creation(idx(3), st(&[3], 3)).unwrap(),
            SignedState::Zero
        );
    }

    #[test]
    fn annihilation_examples() {
        assert_eq!(
            apply_annihilation(idx(1), st(&[], 3)).unwrap(),
            SignedState::Zero
        );
        assert_eq!(
            apply_annihilation(idx(1), st(&[1], 3)).unwrap(),
            SignedState::plus(st(&[], 3))
        );
        assert_eq!(
            apply_annihilation(idx(3), st(&[1, 3], 3)).unwrap(),
            SignedState::Signed {
                sign: Sign::Minus,
                state: st(&[1], 3)
            }
        );
    }

    #[test]
    fn out_of_range_orbital_is_rejected() {
        let err = apply_creation(idx(4), st(&[1], 3)).unwrap_err();
        assert_eq!(
            err,
            Error::InvalidOrbital {
                index: 4,
                orbitals: 3
            }
        );
        assert!(apply_annihilation(idx(5), st(&[], 3)).is_err());
        assert!(OrbitalIndex::new(0).is_err());
    }

    #[test]
    fn creator_order_gives_relative_sign() {
        let vac = vacuum::<f64>(3).unwrap();
        let c1 = Ladder::create(1).unwrap();
        let c2 = Ladder::create(2).unwrap();
        let ab = apply_ladder_string(&[c1, c2], &vac).unwrap();
        let ba = apply_ladder_string(&[c2, c1], &vac).unwrap();
        assert_eq!(ab.amplitude(&st(&[1, 2], 3)), 1.0);
        assert!(ab.add(&ba).unwrap().is_zero());
        assert_eq!(ab.particles(), 2);
    }

    #[test]
    fn repeated_creator_kills_any_vector() {
        let basis = enumerate_basis(4, 1).unwrap();
        let v = FockVector::from_dense(&basis, &[0.5, -1.0, 2.0, 0.25]).unwrap();
        for a in 1..=4 {
            let c = Ladder::create(a).unwrap();
            let out = apply_ladder_string(&[c, c], &v).unwrap();
            assert!(out.is_empty());
            assert_eq!(out.particles(), 3);
        }
    }

    #[test]
    fn number_operator_on_occupied_orbital() {
        let v = FockVector::<f64>::basis_state(st(&[1, 2], 3));
        let ops = [Ladder::create(2).unwrap(), Ladder::annihilate(2).unwrap()];
        assert_eq!(apply_ladder_string(&ops, &v).unwrap(), v);
    }

    #[test]
    fn annihilating_the_vacuum_leaves_unphysical_zero() {
        let v = vacuum::<f64>(2).unwrap();
        let out = apply_ladder_string(&[Ladder::annihilate(1).unwrap()], &v).unwrap();
        assert!(out.is_zero());
        assert_eq!(out.particles(), -1);
    }

    #[test]
    fn basis_enumeration() {
        let b = enumerate_basis(3, 2).unwrap();
        let labels: Vec<String> = b.states().iter().map(|s| s.to_string()).collect();
        assert_eq!(labels, ["011", "101", "110"]);
        assert_eq!(b.state(1).unwrap().occupied_indices(), vec![1, 3]);

        let b = enumerate_basis(4, 0).unwrap();
        assert_eq!(b.states(), &[st(&[], 4)]);

        assert_eq!(enumerate_basis(6, 3).unwrap().len(), 20);
        assert_eq!(enumerate_basis(24, 24).unwrap().len(), 1);
        assert!(matches!(
            enumerate_basis(3, 4),
            Err(Error::EmptySector { .. })
        ));
    }

    #[test]
    fn enumeration_matches_filtered_full_space() {
        for m in 1..=8 {
            for n in 0..=m {
                let listed = enumerate_basis(m, n).unwrap();
                let filtered: Vec<_> = full_space(m)
                    .unwrap()
                    .filter(|s| s.particle_count() == n)
                    .collect();
                assert_eq!(listed.states(), filtered.as_slice());
                assert_eq!(listed.len(), binomial(m, n));
            }
        }
    }

    #[test]
    fn position_inverts_enumeration() {
        let b = enumerate_basis(6, 3).unwrap();
        for (i, s) in b.states().iter().enumerate() {
            assert_eq!(b.position(s), Some(i));
        }
        assert_eq!(b.position(&st(&[1], 6)), None);
    }

    #[test]
    fn from_amplitudes_checks_sector() {
        let bad = FockVector::from_amplitudes(3, 2, [(st(&[1], 3), 1.0)]);
        assert!(matches!(bad, Err(Error::SectorMismatch { .. })));
    }

    #[test]
    fn labels() {
        assert_eq!(st(&[1, 3], 4).label(), "{1,3}");
        assert_eq!(st(&[], 4).label(), "{}");
        assert_eq!(st(&[1, 3], 4).to_string(), "0101");
    }
}
