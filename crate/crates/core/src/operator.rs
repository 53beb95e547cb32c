//! Second-quantized one- and two-body operators as sparse matrices on a
//! fixed-`N` Fock basis.
//!
//! ```text
//! F1 = Σ_{αβ}   f(α,β)       a†_α a_β
//! F2 = ½ Σ_{αβγδ} g(α,β,γ,δ) a†_α a†_β a_δ a_γ
//! ```
//!
//! Assembly runs column by column: for each basis state only annihilators on
//! occupied orbitals are tried, since the remaining terms vanish.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::first_quant::{OneBodyMatrix, TwoBodyTensor};
use crate::fock::{
    apply_ladder_string_to_state, FockBasis, FockVector, Ladder, OccupationState, OrbitalIndex,
    SignConvention, SignedState,
};
use crate::scalar::{max_modulus, scaled_tolerance, Scalar};

/// Order of the two annihilators in the quartic term.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum AnnihilatorOrder {
    /// `a†_α a†_β a_δ a_γ`.
    #[default]
    Standard,
    /// `a†_α a†_β a_γ a_δ`, which negates every term. Negative control only.
    Swapped,
}

/// Matrix on an enumerated Fock basis, stored as a row-major entry map.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator<S> {
    basis: FockBasis,
    entries: BTreeMap<(usize, usize), S>,
}

impl<S: Scalar> SparseOperator<S> {
    pub fn zero(basis: FockBasis) -> Self {
        SparseOperator {
            basis,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(basis: FockBasis) -> Self {
        let entries = (0..basis.len()).map(|i| ((i, i), S::one())).collect();
        SparseOperator { basis, entries }
    }

    /// Sums `(row, col, value)` triples; exact zeros are dropped.
    pub fn from_entries(
        basis: FockBasis,
        entries: impl IntoIterator<Item = (usize, usize, S)>,
    ) -> Result<Self> {
        let mut op = Self::zero(basis);
        let dim = op.dim();
        for (row, col, value) in entries {
            for index in [row, col] {
                if index >= dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: index,
                    });
                }
            }
            op.accumulate(row, col, value);
        }
        Ok(op)
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> S {
        self.entries
            .get(&(row, col))
            .copied()
            .unwrap_or_else(S::zero)
    }

    /// Stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, S)> + '_ {
        self.entries.iter().map(|(&(r, c), &v)| (r, c, v))
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<S> {
        let n = self.dim();
        let mut out = vec![S::zero(); n * n];
        for (r, c, v) in self.entries() {
            out[r * n + c] = v;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.accumulate(r, c, v);
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: S) -> Self {
        let mut out = Self::zero(self.basis.clone());
        for (r, c, v) in self.entries() {
            out.accumulate(r, c, factor * v);
        }
        out
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_deviation(&self, other: &Self) -> Result<f64> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        let keys = self.entries.keys().chain(other.entries.keys());
        Ok(keys
            .map(|&(r, c)| (self.get(r, c) - other.get(r, c)).modulus())
            .fold(0.0, f64::max))
    }

    pub fn max_modulus(&self) -> f64 {
        max_modulus(self.entries.values().copied())
    }

    /// Largest `|A(r,c) - conj(A(c,r))|`.
    pub fn hermitian_deviation(&self) -> f64 {
        self.entries()
            .map(|(r, c, v)| (v - self.get(c, r).conj()).modulus())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_deviation() <= scaled_tolerance::<S>(self.max_modulus())
    }

    /// Sparse matrix-vector product.
    pub fn apply(&self, v: &FockVector<S>) -> Result<FockVector<S>> {
        let x = v.to_dense(&self.basis)?;
        let mut y = vec![S::zero(); self.dim()];
        for (r, c, a) in self.entries() {
            y[r] = y[r] + a * x[c];
        }
        FockVector::from_dense(&self.basis, &y)
    }

    fn accumulate(&mut self, row: usize, col: usize, value: S) {
        let slot = self.entries.entry((row, col)).or_insert_with(S::zero);
        *slot = *slot + value;
        if slot.is_zero() {
            self.entries.remove(&(row, col));
        }
    }
}

/// `a + b`, entrywise.
pub fn add<S: Scalar>(a: &SparseOperator<S>, b: &SparseOperator<S>) -> Result<SparseOperator<S>> {
    a.add(b)
}

/// `op · v`.
pub fn apply<S: Scalar>(op: &SparseOperator<S>, v: &FockVector<S>) -> Result<FockVector<S>> {
    op.apply(v)
}

/// Assembles one- and two-body operators with a chosen phase convention
/// and annihilator order. The default is the physical one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OperatorBuilder {
    pub convention: SignConvention,
    pub annihilator_order: AnnihilatorOrder,
}

impl OperatorBuilder {
    pub fn build_one_body<S: Scalar>(
        &self,
        f: &OneBodyMatrix<S>,
        basis: &FockBasis,
    ) -> Result<SparseOperator<S>> {
        check_dims(f.orbitals(), basis.orbitals())?;
        let m = basis.orbitals();
        let mut op = SparseOperator::zero(basis.clone());
        for (col, &state) in basis.states().iter().enumerate() {
            for beta in state.occupied() {
                for alpha in orbitals(m) {
                    let string = [Ladder::Create(alpha), Ladder::Annihilate(beta)];
                    if let Some((row, sign)) = self.target::<S>(&string, state, basis)? {
                        op.accumulate(row, col, sign * f.get(alpha, beta));
                    }
                }
            }
        }
        Ok(op)
    }

    pub fn build_two_body<S: Scalar>(
        &self,
        g: &TwoBodyTensor<S>,
        basis: &FockBasis,
    ) -> Result<SparseOperator<S>> {
        let half = S::one() / S::from_i64(2);
        self.assemble_two_body(g, basis, |gamma, delta| (gamma != delta).then_some(half))
    }

    /// `Σ_{γ<δ} Σ_{αβ} g(α,β,γ,δ) a†_α a†_β a_δ a_γ` without the ½; equal to
    /// [`build_two_body`](Self::build_two_body) when `g` has exchange symmetry.
    pub fn build_two_body_pair_restricted<S: Scalar>(
        &self,
        g: &TwoBodyTensor<S>,
        basis: &FockBasis,
    ) -> Result<SparseOperator<S>> {
        self.assemble_two_body(g, basis, |gamma, delta| (gamma < delta).then_some(S::one()))
    }

    fn assemble_two_body<S: Scalar>(
        &self,
        g: &TwoBodyTensor<S>,
        basis: &FockBasis,
        weight: impl Fn(OrbitalIndex, OrbitalIndex) -> Option<S>,
    ) -> Result<SparseOperator<S>> {
        check_dims(g.orbitals(), basis.orbitals())?;
        let m = basis.orbitals();
        let mut op = SparseOperator::zero(basis.clone());
        for (col, &state) in basis.states().iter().enumerate() {
            for gamma in state.occupied() {
                for delta in state.occupied() {
                    let Some(w) = weight(gamma, delta) else {
                        continue;
                    };
                    let lowered = match self.annihilator_order {
                        AnnihilatorOrder::Standard => {
                            [Ladder::Annihilate(delta), Ladder::Annihilate(gamma)]
                        }
                        AnnihilatorOrder::Swapped => {
                            [Ladder::Annihilate(gamma), Ladder::Annihilate(delta)]
                        }
                    };
                    for alpha in orbitals(m) {
                        for beta in orbitals(m) {
                            let string = [
                                Ladder::Create(alpha),
                                Ladder::Create(beta),
                                lowered[0],
                                lowered[1],
                            ];
                            if let Some((row, sign)) = self.target::<S>(&string, state, basis)? {
                                op.accumulate(
                                    row,
                                    col,
                                    sign * w * g.get(alpha, beta, gamma, delta),
                                );
                            }
                        }
                    }
                }
            }
        }
        Ok(op)
    }

    fn target<S: Scalar>(
        &self,
        string: &[Ladder],
        state: OccupationState,
        basis: &FockBasis,
    ) -> Result<Option<(usize, S)>> {
        Ok(
            match apply_ladder_string_to_state(self.convention, string, state)? {
                SignedState::Zero => None,
                SignedState::Signed { sign, state } => {
                    let row = basis
                        .position(&state)
                        .expect("number-conserving string left its sector");
                    Some((row, sign.to_scalar()))
                }
            },
        )
    }
}

/// `Σ_{αβ} f(α,β) a†_α a_β` on `basis`.
pub fn build_one_body<S: Scalar>(
    f: &OneBodyMatrix<S>,
    basis: &FockBasis,
) -> Result<SparseOperator<S>> {
    OperatorBuilder::default().build_one_body(f, basis)
}

/// `½ Σ_{αβγδ} g(α,β,γ,δ) a†_α a†_β a_δ a_γ` on `basis`.
pub fn build_two_body<S: Scalar>(
    g: &TwoBodyTensor<S>,
    basis: &FockBasis,
) -> Result<SparseOperator<S>> {
    OperatorBuilder::default().build_two_body(g, basis)
}

fn orbitals(m: usize) -> impl Iterator<Item = OrbitalIndex> {
    (0..m).map(|p| OrbitalIndex::from_position(p).expect("orbital count already validated"))
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{apply_ladder_string, enumerate_basis};
    use num_complex::Complex64;
    use num_rational::Rational64;

    /// Brute-force matrix of `Σ coeff · string` over every index tuple,
    /// built from vector-level ladder strings with no skipping.
    fn brute_force<S: Scalar>(basis: &FockBasis, terms: &[(S, Vec<Ladder>)]) -> SparseOperator<S> {
        let mut entries = Vec::new();
        for (col, &s) in basis.states().iter().enumerate() {
            let v = FockVector::<S>::basis_state(s);
            for (coeff, string) in terms {
                let out = apply_ladder_string(string, &v).unwrap();
                for (t, amp) in out.iter() {
                    entries.push((basis.position(&t).unwrap(), col, *coeff * amp));
                }
            }
        }
        SparseOperator::from_entries(basis.clone(), entries).unwrap()
    }

    fn idx(i: usize) -> OrbitalIndex {
        OrbitalIndex::from_position(i).unwrap()
    }

    fn one_body_terms<S: Scalar>(f: &OneBodyMatrix<S>) -> Vec<(S, Vec<Ladder>)> {
        let m = f.orbitals();
        let mut terms = Vec::new();
        for a in 0..m {
            for b in 0..m {
                terms.push((
                    f.at(a, b),
                    vec![Ladder::Create(idx(a)), Ladder::Annihilate(idx(b))],
                ));
            }
        }
        terms
    }

    fn two_body_terms<S: Scalar>(g: &TwoBodyTensor<S>) -> Vec<(S, Vec<Ladder>)> {
        let m = g.orbitals();
        let half = S::one() / S::from_i64(2);
        let mut terms = Vec::new();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    for d in 0..m {
                        terms.push((
                            half * g.at(a, b, c, d),
                            vec![
                                Ladder::Create(idx(a)),
                                Ladder::Create(idx(b)),
                                Ladder::Annihilate(idx(d)),
                                Ladder::Annihilate(idx(c)),
                            ],
                        ));
                    }
                }
            }
        }
        terms
    }

    fn sample_one_body(m: usize) -> OneBodyMatrix<Rational64> {
        OneBodyMatrix::from_fn(m, |a, b| {
            Rational64::new((3 * a + 7 * b) as i64 % 5 - 2, 1 + b as i64)
        })
        .unwrap()
    }

    fn sample_two_body(m: usize) -> TwoBodyTensor<Rational64> {
        TwoBodyTensor::symmetrized_from_fn(m, |a, b, c, d| {
            Rational64::from_integer(((a * 11 + b * 7 + c * 5 + d * 3) % 9) as i64 - 4)
        })
        .unwrap()
    }

    #[test]
    fn one_body_matches_brute_force_exactly() {
        for m in 1..=5 {
            let f = sample_one_body(m);
            for n in 0..=m {
                let basis = enumerate_basis(m, n).unwrap();
                let fast = build_one_body(&f, &basis).unwrap();
                assert_eq!(
                    fast,
                    brute_force(&basis, &one_body_terms(&f)),
                    "M={m} N={n}"
                );
            }
        }
    }

    #[test]
    fn two_body_matches_brute_force_exactly() {
        for m in 1..=4 {
            let g = sample_two_body(m);
            for n in 0..=m {
                let basis = enumerate_basis(m, n).unwrap();
                let fast = build_two_body(&g, &basis).unwrap();
                assert_eq!(
                    fast,
                    brute_force(&basis, &two_body_terms(&g)),
                    "M={m} N={n}"
                );
            }
        }
    }

    #[test]
    fn single_particle_sector_reproduces_f() {
        let f = OneBodyMatrix::from_fn(4, |a, b| {
            Complex64::new(a as f64 - b as f64, (a * b) as f64)
        })
        .unwrap();
        let basis = enumerate_basis(4, 1).unwrap();
        let op = build_one_body(&f, &basis).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(op.get(a, b), f.at(a, b));
            }
        }
    }

    #[test]
    fn identity_gives_number_operator() {
        for n in 0..=4 {
            let basis = enumerate_basis(4, n).unwrap();
            let op = build_one_body(&OneBodyMatrix::<f64>::identity(4).unwrap(), &basis).unwrap();
            let expected = SparseOperator::identity(basis).scaled(n as f64);
            assert_eq!(op, expected);
        }
    }

    #[test]
    fn hop_from_orbital_one_to_three() {
        // ⟨{2,3}| a†_3 a_1 |{1,2}⟩: a_1 has no orbital below (+), a†_3 passes orbital 2 (-)
        let f = OneBodyMatrix::from_fn(3, |a, b| {
            Rational64::from_integer(((a, b) == (2, 0)) as i64)
        })
        .unwrap();
        let basis = enumerate_basis(3, 2).unwrap();
        let op = build_one_body(&f, &basis).unwrap();
        let src = basis
            .position(&OccupationState::from_orbitals(&[1, 2], 3).unwrap())
            .unwrap();
        let dst = basis
            .position(&OccupationState::from_orbitals(&[2, 3], 3).unwrap())
            .unwrap();
        assert_eq!(op.get(dst, src), Rational64::from_integer(-1));
        let column: Vec<_> = op.entries().filter(|&(_, c, _)| c == src).collect();
        assert_eq!(column.len(), 1);
    }

    #[test]
    fn pair_identity_counts_pairs() {
        for n in [2, 3] {
            let basis = enumerate_basis(4, n).unwrap();
            let g = TwoBodyTensor::<Rational64>::pair_identity(4).unwrap();
            let op = build_two_body(&g, &basis).unwrap();
            let pairs = Rational64::from_integer((n * (n - 1) / 2) as i64);
            assert_eq!(op, SparseOperator::identity(basis).scaled(pairs));
        }
    }

    #[test]
    fn two_body_vanishes_below_two_particles() {
        let g = sample_two_body(3);
        for n in [0, 1] {
            let basis = enumerate_basis(3, n).unwrap();
            assert_eq!(build_two_body(&g, &basis).unwrap().nnz(), 0);
        }
    }

    #[test]
    fn swapped_annihilators_negate() {
        let g = sample_two_body(4);
        let basis = enumerate_basis(4, 3).unwrap();
        let good = build_two_body(&g, &basis).unwrap();
        let swapped = OperatorBuilder {
            annihilator_order: AnnihilatorOrder::Swapped,
            ..Default::default()
        }
        .build_two_body(&g, &basis)
        .unwrap();
        assert!(good.nnz() > 0);
        assert_eq!(swapped, good.scaled(Rational64::from_integer(-1)));
    }

    #[test]
    fn restricted_pair_sum_equals_half_full_sum() {
        let g = sample_two_body(5);
        for n in 0..=5 {
            let basis = enumerate_basis(5, n).unwrap();
            let full = build_two_body(&g, &basis).unwrap();
            let restricted = OperatorBuilder::default()
                .build_two_body_pair_restricted(&g, &basis)
                .unwrap();
            assert_eq!(full, restricted);
        }
    }

    #[test]
    fn add_apply_and_identities() {
        let basis = enumerate_basis(4, 2).unwrap();
        let f = build_one_body(&sample_one_body(4), &basis).unwrap();
        let g = build_two_body(&sample_two_body(4), &basis).unwrap();
        let zero = SparseOperator::zero(basis.clone());
        assert_eq!(f.add(&zero).unwrap(), f);

        let v = FockVector::from_dense(
            &basis,
            &(0..6)
                .map(|i| Rational64::new(i as i64 - 2, 3))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let h = add(&f, &g).unwrap();
        let lhs = apply(&h, &v).unwrap();
        let rhs = f.apply(&v).unwrap().add(&g.apply(&v).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(
            SparseOperator::identity(basis.clone()).apply(&v).unwrap(),
            v
        );
        assert!(zero.apply(&v).unwrap().is_zero());

        let other = SparseOperator::<Rational64>::zero(enumerate_basis(4, 3).unwrap());
        assert_eq!(f.add(&other).unwrap_err(), Error::BasisMismatch);
        assert!(matches!(
            f.apply(&FockVector::basis_state(
                OccupationState::from_orbitals(&[1], 4).unwrap()
            )),
            Err(Error::SectorMismatch { .. })
        ));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let basis = enumerate_basis(3, 1).unwrap();
        assert!(matches!(
            build_one_body(&OneBodyMatrix::<f64>::identity(4).unwrap(), &basis),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            build_two_body(&TwoBodyTensor::<f64>::zeros(2).unwrap(), &basis),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
