//! Labelled-particle description: dense `N`-slot tensors over `M` orbitals,
//! the antisymmetrizer, Slater determinants, and slot-wise operators.
//!
//! A [`FirstQuantTensor`] stores the coefficient of every product state
//! `|φ_{i1}>_1 ... |φ_{iN}>_N`, with slot 1 as the most significant index.
//! Indices into the tensor are zero-based orbital positions.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::fock::{check_orbitals, OccupationState, OrbitalIndex, Sign};
use crate::scalar::{max_modulus, scaled_tolerance, FloatScalar, Scalar};

/// Largest particle count for dense tensors.
pub const MAX_PARTICLES: usize = 8;

/// Largest dense tensor size `M^N`.
pub const MAX_TENSOR_LEN: usize = 10_000_000;

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Sign of a permutation of `0..n`, by counting the transpositions that sort it.
pub fn permutation_sign(perm: &[usize]) -> Sign {
    let mut work = perm.to_vec();
    let mut swaps = 0u32;
    for i in 0..work.len() {
        while work[i] != i {
            let j = work[i];
            work.swap(i, j);
            swaps += 1;
        }
    }
    Sign::from_parity(swaps)
}

/// All `n!` permutations of `0..n` with their signs.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, Sign)> {
    (0..n)
        .permutations(n)
        .map(|p| {
            let sign = permutation_sign(&p);
            (p, sign)
        })
        .collect()
}

/// Orbital assignment `(P_1, ..., P_N)`, one entry per particle slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductState {
    orbitals: Vec<OrbitalIndex>,
}

impl ProductState {
    pub fn new(indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptyProductState);
        }
        let orbitals = indices
            .iter()
            .map(|&i| OrbitalIndex::new(i))
            .collect::<Result<Vec<_>>>()?;
        Ok(ProductState { orbitals })
    }

    /// A reference state: strictly increasing orbitals.
    pub fn reference(indices: &[usize]) -> Result<Self> {
        let p = Self::new(indices)?;
        if !p.is_reference() {
            return Err(Error::ReferenceOrder(indices.to_vec()));
        }
        Ok(p)
    }

    /// Reference state listing the occupied orbitals of `state`.
    pub fn from_occupation(state: OccupationState) -> Result<Self> {
        Self::new(&state.occupied_indices())
    }

    pub fn orbitals(&self) -> &[OrbitalIndex] {
        &self.orbitals
    }

    pub fn indices(&self) -> Vec<usize> {
        self.orbitals.iter().map(|a| a.get()).collect()
    }

    pub fn len(&self) -> usize {
        self.orbitals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbitals.is_empty()
    }

    pub fn is_reference(&self) -> bool {
        self.orbitals.windows(2).all(|w| w[0] < w[1])
    }

    /// Copy with slot `slot` (zero-based) reassigned to orbital `q`.
    pub fn with_slot(&self, slot: usize, q: OrbitalIndex) -> Result<Self> {
        if slot >= self.len() {
            return Err(Error::InvalidSlot {
                slot,
                particles: self.len(),
            });
        }
        let mut orbitals = self.orbitals.clone();
        orbitals[slot] = q;
        Ok(ProductState { orbitals })
    }

    /// The state with slots reordered so that slot `k` holds entry `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        ProductState {
            orbitals: perm.iter().map(|&k| self.orbitals[k]).collect(),
        }
    }

    pub(crate) fn check_within(&self, orbitals: usize) -> Result<()> {
        for a in &self.orbitals {
            a.within(orbitals)?;
        }
        Ok(())
    }
}

/// Dense coefficients over the `M^N` labelled product states.
#[derive(Clone, Debug, PartialEq)]
pub struct FirstQuantTensor<S> {
    orbitals: usize,
    particles: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> FirstQuantTensor<S> {
    pub fn zeros(orbitals: usize, particles: usize) -> Result<Self> {
        let len = Self::checked_len(orbitals, particles)?;
        Ok(FirstQuantTensor {
            orbitals,
            particles,
            coeffs: vec![S::zero(); len],
        })
    }

    pub fn from_coeffs(orbitals: usize, particles: usize, coeffs: Vec<S>) -> Result<Self> {
        let len = Self::checked_len(orbitals, particles)?;
        if coeffs.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: coeffs.len(),
            });
        }
        Ok(FirstQuantTensor {
            orbitals,
            particles,
            coeffs,
        })
    }

    /// Rank-0 tensor holding a single amplitude.
    pub fn scalar(orbitals: usize, value: S) -> Result<Self> {
        Self::from_coeffs(orbitals, 0, vec![value])
    }

    fn checked_len(orbitals: usize, particles: usize) -> Result<usize> {
        check_orbitals(orbitals)?;
        if particles > MAX_PARTICLES {
            return Err(Error::Capacity(format!(
                "{particles} particles exceeds the dense limit of {MAX_PARTICLES}"
            )));
        }
        orbitals
            .checked_pow(particles as u32)
            .filter(|&len| len <= MAX_TENSOR_LEN)
            .ok_or_else(|| {
                Error::Capacity(format!(
                    "{orbitals}^{particles} coefficients exceeds the dense limit of {MAX_TENSOR_LEN}"
                ))
            })
    }

    pub fn orbitals(&self) -> usize {
        self.orbitals
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at zero-based multi-index `index`.
    pub fn get(&self, index: &[usize]) -> Option<S> {
        if index.len() != self.particles || index.iter().any(|&i| i >= self.orbitals) {
            return None;
        }
        Some(self.coeffs[self.flat_index(index)])
    }

    pub fn flat_index(&self, index: &[usize]) -> usize {
        index.iter().fold(0, |acc, &i| acc * self.orbitals + i)
    }

    /// Writes the multi-index of `flat` into `out`.
    pub fn decode(&self, mut flat: usize, out: &mut [usize]) {
        for slot in (0..self.particles).rev() {
            out[slot] = flat % self.orbitals;
            flat /= self.orbitals;
        }
    }

    /// Flat-index step for incrementing slot `slot` by one.
    pub fn stride(&self, slot: usize) -> usize {
        self.orbitals.pow((self.particles - 1 - slot) as u32)
    }

    fn strides(&self) -> Vec<usize> {
        (0..self.particles).map(|k| self.stride(k)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn norm(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.modulus().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_modulus(&self) -> f64 {
        max_modulus(self.coeffs.iter().copied())
    }

    pub fn scaled(&self, factor: S) -> Self {
        self.map(|c| factor * c)
    }

    fn map(&self, f: impl Fn(S) -> S) -> Self {
        FirstQuantTensor {
            coeffs: self.coeffs.iter().map(|&c| f(c)).collect(),
            ..*self
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(S, S) -> S) -> Self {
        FirstQuantTensor {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            ..*self
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_deviation(&self, other: &Self) -> Result<f64> {
        self.check_shape(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a - b).modulus())
            .fold(0.0, f64::max))
    }

    /// Tensor with slots `a` and `b` exchanged.
    pub fn swap_slots(&self, a: usize, b: usize) -> Result<Self> {
        for slot in [a, b] {
            if slot >= self.particles {
                return Err(Error::InvalidSlot {
                    slot,
                    particles: self.particles,
                });
            }
        }
        let mut out = self.clone();
        let mut idx = vec![0; self.particles];
        for flat in 0..self.len() {
            self.decode(flat, &mut idx);
            idx.swap(a, b);
            out.coeffs[self.flat_index(&idx)] = self.coeffs[flat];
        }
        Ok(out)
    }

    /// Largest `|t(.., i_a, .., i_b, ..) + t(.., i_b, .., i_a, ..)|` over all
    /// entries and slot pairs; zero for an antisymmetric tensor.
    pub fn antisymmetry_deviation(&self) -> f64 {
        let strides = self.strides();
        let mut idx = vec![0; self.particles];
        let mut worst = 0.0f64;
        for flat in 0..self.len() {
            self.decode(flat, &mut idx);
            for (a, b) in (0..self.particles).tuple_combinations() {
                let swapped = flat + idx[b] * strides[a] + idx[a] * strides[b]
                    - idx[a] * strides[a]
                    - idx[b] * strides[b];
                worst = worst.max((self.coeffs[flat] + self.coeffs[swapped]).modulus());
            }
        }
        worst
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetry_deviation() <= scaled_tolerance::<S>(self.max_modulus())
    }

    pub(crate) fn check_shape(&self, other: &Self) -> Result<()> {
        if self.orbitals != other.orbitals {
            return Err(Error::DimensionMismatch {
                expected: self.orbitals,
                found: other.orbitals,
            });
        }
        if self.particles != other.particles {
            return Err(Error::DimensionMismatch {
                expected: self.particles,
                found: other.particles,
            });
        }
        Ok(())
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [S] {
        &mut self.coeffs
    }
}

/// Unit tensor on the product state `p`.
pub fn product_state_tensor<S: Scalar>(
    p: &ProductState,
    orbitals: usize,
) -> Result<FirstQuantTensor<S>> {
    p.check_within(orbitals)?;
    let mut t = FirstQuantTensor::zeros(orbitals, p.len())?;
    let index: Vec<usize> = p.orbitals().iter().map(|a| a.position()).collect();
    let flat = t.flat_index(&index);
    t.coeffs[flat] = S::one();
    Ok(t)
}

/// The antisymmetrizer: `result(i) = Σ_π sign(π) t(i_{π(1)}, ..., i_{π(N)})`,
/// summed over all `N!` permutations.
pub fn antisymmetrize<S: Scalar>(t: &FirstQuantTensor<S>) -> FirstQuantTensor<S> {
    let n = t.particles();
    let perms = signed_permutations(n);
    let strides = t.strides();
    let mut out = FirstQuantTensor {
        coeffs: vec![S::zero(); t.len()],
        ..*t
    };
    let mut idx = vec![0; n];
    for flat in 0..t.len() {
        t.decode(flat, &mut idx);
        let mut acc = S::zero();
        for (perm, sign) in &perms {
            let src: usize = perm
                .iter()
                .zip(&strides)
                .map(|(&k, &stride)| idx[k] * stride)
                .sum();
            acc = match sign {
                Sign::Plus => acc + t.coeffs[src],
                Sign::Minus => acc - t.coeffs[src],
            };
        }
        out.coeffs[flat] = acc;
    }
    out
}

/// `sqrt(1/N!)` times the antisymmetrized product state. Any orbital order
/// is accepted; repeated orbitals give the zero tensor.
pub fn antisymmetrized_product<S: FloatScalar>(
    p: &ProductState,
    orbitals: usize,
) -> Result<FirstQuantTensor<S>> {
    let raw = antisymmetrize(&product_state_tensor::<S>(p, orbitals)?);
    Ok(raw.scaled(S::from_f64(1.0 / (factorial(p.len()) as f64).sqrt())))
}

/// Normalized Slater determinant of a reference state.
pub fn slater_state<S: FloatScalar>(
    p: &ProductState,
    orbitals: usize,
) -> Result<FirstQuantTensor<S>> {
    if !p.is_reference() {
        return Err(Error::ReferenceOrder(p.indices()));
    }
    antisymmetrized_product(p, orbitals)
}

/// Matrix elements `<φ_α| f |φ_β>` of a one-body operator.
#[derive(Clone, Debug, PartialEq)]
pub struct OneBodyMatrix<S> {
    orbitals: usize,
    elements: Vec<S>,
}

impl<S: Scalar> OneBodyMatrix<S> {
    /// Row-major `M × M` elements.
    pub fn new(orbitals: usize, elements: Vec<S>) -> Result<Self> {
        check_orbitals(orbitals)?;
        if elements.len() != orbitals * orbitals {
            return Err(Error::DimensionMismatch {
                expected: orbitals * orbitals,
                found: elements.len(),
            });
        }
        Ok(OneBodyMatrix { orbitals, elements })
    }

    /// Elements from a function of zero-based `(row, col)`.
    pub fn from_fn(orbitals: usize, f: impl Fn(usize, usize) -> S) -> Result<Self> {
        let elements = (0..orbitals * orbitals)
            .map(|k| f(k / orbitals, k % orbitals))
            .collect();
        Self::new(orbitals, elements)
    }

    pub fn zeros(orbitals: usize) -> Result<Self> {
        Self::from_fn(orbitals, |_, _| S::zero())
    }

    pub fn identity(orbitals: usize) -> Result<Self> {
        Self::from_fn(orbitals, |a, b| if a == b { S::one() } else { S::zero() })
    }

    pub fn orbitals(&self) -> usize {
        self.orbitals
    }

    /// Zero-based element access.
    #[inline]
    pub fn at(&self, row: usize, col: usize) -> S {
        self.elements[row * self.orbitals + col]
    }

    pub fn get(&self, alpha: OrbitalIndex, beta: OrbitalIndex) -> S {
        self.at(alpha.position(), beta.position())
    }

    pub fn elements(&self) -> &[S] {
        &self.elements
    }

    pub fn hermitian_deviation(&self) -> f64 {
        let m = self.orbitals;
        (0..m)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .map(|(a, b)| (self.at(a, b) - self.at(b, a).conj()).modulus())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_deviation()
            <= scaled_tolerance::<S>(max_modulus(self.elements.iter().copied()))
    }
}

/// Matrix elements `<φ_α|<φ_β| f |φ_γ>|φ_δ>` of a two-body operator, where
/// `α, γ` belong to the first particle and `β, δ` to the second.
///
/// Construction enforces `g(α,β,γ,δ) = g(β,α,δ,γ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoBodyTensor<S> {
    orbitals: usize,
    elements: Vec<S>,
}

impl<S: Scalar> TwoBodyTensor<S> {
    /// Row-major `M^4` elements, validated for exchange symmetry.
    pub fn new(orbitals: usize, elements: Vec<S>) -> Result<Self> {
        check_orbitals(orbitals)?;
        let len = orbitals.pow(4);
        if elements.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: elements.len(),
            });
        }
        let g = TwoBodyTensor { orbitals, elements };
        let tol = scaled_tolerance::<S>(max_modulus(g.elements.iter().copied()));
        for [a, b, c, d] in g.index_tuples() {
            let dev = (g.at(a, b, c, d) - g.at(b, a, d, c)).modulus();
            if dev > tol {
                return Err(Error::SymmetryViolation {
                    indices: [a + 1, b + 1, c + 1, d + 1],
                    deviation: dev,
                });
            }
        }
        Ok(g)
    }

    /// Elements from a function of zero-based `(α, β, γ, δ)`, validated.
    pub fn from_fn(orbitals: usize, f: impl Fn(usize, usize, usize, usize) -> S) -> Result<Self> {
        let m = orbitals;
        let elements = (0..m.pow(4))
            .map(|k| f(k / (m * m * m), (k / (m * m)) % m, (k / m) % m, k % m))
            .collect();
        Self::new(orbitals, elements)
    }

    /// Averages `f` with its exchange image, so the result always validates.
    pub fn symmetrized_from_fn(
        orbitals: usize,
        f: impl Fn(usize, usize, usize, usize) -> S,
    ) -> Result<Self> {
        let two = S::from_i64(2);
        Self::from_fn(orbitals, |a, b, c, d| (f(a, b, c, d) + f(b, a, d, c)) / two)
    }

    pub fn zeros(orbitals: usize) -> Result<Self> {
        Self::from_fn(orbitals, |_, _, _, _| S::zero())
    }

    /// `δ_{αγ} δ_{βδ}`: the identity on each particle pair.
    pub fn pair_identity(orbitals: usize) -> Result<Self> {
        Self::from_fn(orbitals, |a, b, c, d| {
            if a == c && b == d {
                S::one()
            } else {
                S::zero()
            }
        })
    }

    pub fn orbitals(&self) -> usize {
        self.orbitals
    }

    /// Zero-based element access.
    #[inline]
    pub fn at(&self, a: usize, b: usize, c: usize, d: usize) -> S {
        let m = self.orbitals;
        self.elements[((a * m + b) * m + c) * m + d]
    }

    pub fn get(&self, a: OrbitalIndex, b: OrbitalIndex, c: OrbitalIndex, d: OrbitalIndex) -> S {
        self.at(a.position(), b.position(), c.position(), d.position())
    }

    pub fn elements(&self) -> &[S] {
        &self.elements
    }

    fn index_tuples(&self) -> impl Iterator<Item = [usize; 4]> {
        let m = self.orbitals;
        (0..m.pow(4)).map(move |k| [k / (m * m * m), (k / (m * m)) % m, (k / m) % m, k % m])
    }

    /// Largest `|g(α,β,γ,δ) - conj(g(γ,δ,α,β))|`.
    pub fn hermitian_deviation(&self) -> f64 {
        self.index_tuples()
            .map(|[a, b, c, d]| (self.at(a, b, c, d) - self.at(c, d, a, b).conj()).modulus())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_deviation()
            <= scaled_tolerance::<S>(max_modulus(self.elements.iter().copied()))
    }
}

/// `f` acting on slot `slot` (zero-based) only.
pub fn apply_to_slot<S: Scalar>(
    f: &OneBodyMatrix<S>,
    t: &FirstQuantTensor<S>,
    slot: usize,
) -> Result<FirstQuantTensor<S>> {
    check_dims(f.orbitals(), t.orbitals())?;
    if slot >= t.particles() {
        return Err(Error::InvalidSlot {
            slot,
            particles: t.particles(),
        });
    }
    let m = t.orbitals();
    let stride = t.stride(slot);
    let mut out = FirstQuantTensor::zeros(m, t.particles())?;
    for flat in 0..t.len() {
        let q = (flat / stride) % m;
        let base = flat - q * stride;
        let mut acc = S::zero();
        for p in 0..m {
            acc = acc + f.at(q, p) * t.coeffs[base + p * stride];
        }
        out.coeffs[flat] = acc;
    }
    Ok(out)
}

/// `F = Σ_i f_i`: the one-body operator summed over every particle slot.
pub fn apply_one_body<S: Scalar>(
    f: &OneBodyMatrix<S>,
    t: &FirstQuantTensor<S>,
) -> Result<FirstQuantTensor<S>> {
    check_dims(f.orbitals(), t.orbitals())?;
    let mut out = FirstQuantTensor::zeros(t.orbitals(), t.particles())?;
    for slot in 0..t.particles() {
        out = out.add(&apply_to_slot(f, t, slot)?)?;
    }
    Ok(out)
}

/// `g` acting on the slot pair `(i, l)` (zero-based, `i < l`).
pub fn apply_to_slot_pair<S: Scalar>(
    g: &TwoBodyTensor<S>,
    t: &FirstQuantTensor<S>,
    i: usize,
    l: usize,
) -> Result<FirstQuantTensor<S>> {
    check_dims(g.orbitals(), t.orbitals())?;
    if i >= l {
        return Err(Error::SlotOrder {
            first: i,
            second: l,
        });
    }
    if l >= t.particles() {
        return Err(Error::InvalidSlot {
            slot: l,
            particles: t.particles(),
        });
    }
    let m = t.orbitals();
    let (si, sl) = (t.stride(i), t.stride(l));
    let mut out = FirstQuantTensor::zeros(m, t.particles())?;
    for flat in 0..t.len() {
        let qi = (flat / si) % m;
        let ql = (flat / sl) % m;
        let base = flat - qi * si - ql * sl;
        let mut acc = S::zero();
        for pi in 0..m {
            for pl in 0..m {
                acc = acc + g.at(qi, ql, pi, pl) * t.coeffs[base + pi * si + pl * sl];
            }
        }
        out.coeffs[flat] = acc;
    }
    Ok(out)
}

/// `F = Σ_{i<l} f_{il}`: the two-body operator summed over slot pairs.
pub fn apply_two_body<S: Scalar>(
    g: &TwoBodyTensor<S>,
    t: &FirstQuantTensor<S>,
) -> Result<FirstQuantTensor<S>> {
    check_dims(g.orbitals(), t.orbitals())?;
    if t.particles() < 2 {
        return Err(Error::Arity(t.particles()));
    }
    let mut out = FirstQuantTensor::zeros(t.orbitals(), t.particles())?;
    for (i, l) in (0..t.particles()).tuple_combinations() {
        out = out.add(&apply_to_slot_pair(g, t, i, l)?)?;
    }
    Ok(out)
}

/// `<s|t> = Σ conj(s) t` over all `M^N` entries.
pub fn inner_product<S: Scalar>(s: &FirstQuantTensor<S>, t: &FirstQuantTensor<S>) -> Result<S> {
    s.check_shape(t)?;
    Ok(s.coeffs
        .iter()
        .zip(&t.coeffs)
        .fold(S::zero(), |acc, (&a, &b)| acc + a.conj() * b))
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
    use num_complex::Complex64;

    fn ps(p: &[usize]) -> ProductState {
        ProductState::new(p).unwrap()
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), Sign::Plus);
        assert_eq!(permutation_sign(&[1, 0, 2]), Sign::Minus);
        assert_eq!(permutation_sign(&[1, 2, 0]), Sign::Plus);
        assert_eq!(permutation_sign(&[2, 1, 0]), Sign::Minus);
        let perms = signed_permutations(4);
        assert_eq!(perms.len(), 24);
        let even = perms.iter().filter(|(_, s)| *s == Sign::Plus).count();
        assert_eq!(even, 12);
    }

    #[test]
    fn product_tensor_is_a_unit_basis_tensor() {
        let t = product_state_tensor::<f64>(&ps(&[1, 2]), 3).unwrap();
        assert_eq!(t.get(&[0, 1]), Some(1.0));
        assert_eq!(t.coeffs().iter().filter(|c| **c != 0.0).count(), 1);
        assert_eq!(t.norm(), 1.0);

        let t = product_state_tensor::<f64>(&ps(&[2, 2]), 3).unwrap();
        assert_eq!(t.get(&[1, 1]), Some(1.0));
        assert_eq!(t.coeffs().iter().filter(|c| **c != 0.0).count(), 1);

        assert!(matches!(
            product_state_tensor::<f64>(&ps(&[1, 4]), 3),
            Err(Error::InvalidOrbital { .. })
        ));
    }

    #[test]
    fn antisymmetrize_two_particles() {
        let a = antisymmetrize(&product_state_tensor::<f64>(&ps(&[1, 2]), 3).unwrap());
        assert_eq!(a.get(&[0, 1]), Some(1.0));
        assert_eq!(a.get(&[1, 0]), Some(-1.0));
        assert_eq!(a.coeffs().iter().filter(|c| **c != 0.0).count(), 2);

        let a = antisymmetrize(&product_state_tensor::<f64>(&ps(&[2, 2]), 3).unwrap());
        assert!(a.is_zero());
    }

    #[test]
    fn antisymmetrize_twice_scales_by_two_for_pairs() {
        // brute force over every basis tensor of the 3^2 space
        for a in 1..=3 {
            for b in 1..=3 {
                let t = product_state_tensor::<f64>(&ps(&[a, b]), 3).unwrap();
                let once = antisymmetrize(&t);
                let twice = antisymmetrize(&once);
                assert_eq!(twice, once.scaled(2.0));
            }
        }
    }

    #[test]
    fn slater_two_particles() {
        let s = slater_state::<f64>(&ps(&[1, 2]), 3).unwrap();
        let h = 0.5f64.sqrt();
        assert!((s.get(&[0, 1]).unwrap() - h).abs() < 1e-15);
        assert!((s.get(&[1, 0]).unwrap() + h).abs() < 1e-15);
        let s13 = slater_state::<f64>(&ps(&[1, 3]), 3).unwrap();
        assert!((s13.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn slater_three_particles_matches_determinant_expansion() {
        // 3x3 determinant: entry (i,j,k) is sign(i,j,k)/sqrt(6) for permutations of (0,1,2)
        let s = slater_state::<f64>(&ps(&[1, 2, 3]), 3).unwrap();
        let expected: [([usize; 3], f64); 6] = [
            ([0, 1, 2], 1.0),
            ([0, 2, 1], -1.0),
            ([1, 0, 2], -1.0),
            ([1, 2, 0], 1.0),
            ([2, 0, 1], 1.0),
            ([2, 1, 0], -1.0),
        ];
        let norm = 6f64.sqrt().recip();
        for (idx, sign) in expected {
            assert!((s.get(&idx).unwrap() - sign * norm).abs() < 1e-15);
        }
        assert_eq!(s.coeffs().iter().filter(|c| c.abs() > 0.0).count(), 6);
    }

    #[test]
    fn slater_requires_reference_order() {
        assert!(matches!(
            slater_state::<f64>(&ps(&[2, 1]), 3),
            Err(Error::ReferenceOrder(_))
        ));
        assert!(matches!(
            slater_state::<f64>(&ps(&[2, 2]), 3),
            Err(Error::ReferenceOrder(_))
        ));
        assert!(ProductState::reference(&[1, 3, 2]).is_err());
    }

    #[test]
    fn slater_is_antisymmetric_in_slots_and_labels() {
        let s = slater_state::<f64>(&ps(&[1, 2, 4]), 4).unwrap();
        assert!(s.antisymmetry_deviation() < 1e-15);
        let swapped = s.swap_slots(0, 2).unwrap();
        assert!(swapped.add(&s).unwrap().max_modulus() < 1e-15);
        let relabelled = antisymmetrized_product::<f64>(&ps(&[4, 2, 1]), 4).unwrap();
        assert!(relabelled.add(&s).unwrap().max_modulus() < 1e-15);
    }

    #[test]
    fn repeated_orbitals_give_zero() {
        let t = antisymmetrized_product::<f64>(&ps(&[3, 1, 3]), 4).unwrap();
        assert!(t.is_zero());
    }

    #[test]
    fn capacity_limits() {
        assert!(matches!(
            FirstQuantTensor::<f64>::zeros(2, 9),
            Err(Error::Capacity(_))
        ));
        assert!(matches!(
            FirstQuantTensor::<f64>::zeros(8, 8),
            Err(Error::Capacity(_))
        ));
        assert!(FirstQuantTensor::<f64>::zeros(7, 8).is_ok());
    }

    #[test]
    fn one_body_identity_and_zero() {
        let t = slater_state::<f64>(&ps(&[1, 3, 4]), 4).unwrap();
        let id = OneBodyMatrix::identity(4).unwrap();
        assert!(
            apply_one_body(&id, &t)
                .unwrap()
                .max_deviation(&t.scaled(3.0))
                .unwrap()
                < 1e-15
        );
        let zero = OneBodyMatrix::zeros(4).unwrap();
        assert!(apply_one_body(&zero, &t).unwrap().is_zero());
        let small = OneBodyMatrix::<f64>::identity(3).unwrap();
        assert!(matches!(
            apply_one_body(&small, &t),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn one_body_hop_on_slater_pair() {
        // f(3,1) = 1: F |ψ_{12}> = sqrt(1/2) P_f |φ3>_1 |φ2>_2
        let f = OneBodyMatrix::from_fn(3, |a, b| if (a, b) == (2, 0) { 1.0 } else { 0.0 }).unwrap();
        let lhs = apply_one_body(&f, &slater_state(&ps(&[1, 2]), 3).unwrap()).unwrap();
        let rhs = antisymmetrized_product::<f64>(&ps(&[3, 2]), 3).unwrap();
        assert!(lhs.max_deviation(&rhs).unwrap() < 1e-15);
        let h = 0.5f64.sqrt();
        assert!((lhs.get(&[2, 1]).unwrap() - h).abs() < 1e-15);
        assert!((lhs.get(&[1, 2]).unwrap() + h).abs() < 1e-15);
    }

    #[test]
    fn two_body_pair_identity_counts_pairs() {
        for n in 2..=4 {
            let occ: Vec<usize> = (1..=n).collect();
            let t = slater_state::<f64>(&ps(&occ), 4).unwrap();
            let g = TwoBodyTensor::pair_identity(4).unwrap();
            let pairs = (n * (n - 1) / 2) as f64;
            let out = apply_two_body(&g, &t).unwrap();
            assert!(out.max_deviation(&t.scaled(pairs)).unwrap() < 1e-14);
        }
        let g = TwoBodyTensor::<f64>::zeros(3).unwrap();
        let t = slater_state::<f64>(&ps(&[1, 2]), 3).unwrap();
        assert!(apply_two_body(&g, &t).unwrap().is_zero());
    }

    #[test]
    fn two_body_single_pair_contraction() {
        // N=2, M=2, product (1,2): result(a,b) = g(a+1, b+1, 1, 2)
        let g = TwoBodyTensor::symmetrized_from_fn(2, |a, b, c, d| {
            Complex64::new((a * 8 + b * 4 + c * 2 + d) as f64, (a + 2 * d) as f64 - 1.5)
        })
        .unwrap();
        let t = product_state_tensor(&ps(&[1, 2]), 2).unwrap();
        let out = apply_two_body(&g, &t).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(out.get(&[a, b]).unwrap(), g.at(a, b, 0, 1));
            }
        }
    }

    #[test]
    fn two_body_needs_two_particles() {
        let g = TwoBodyTensor::<f64>::pair_identity(3).unwrap();
        let t = slater_state::<f64>(&ps(&[2]), 3).unwrap();
        assert_eq!(apply_two_body(&g, &t).unwrap_err(), Error::Arity(1));
        assert!(matches!(
            apply_to_slot_pair(&g, &t, 1, 0),
            Err(Error::SlotOrder { .. })
        ));
    }

    #[test]
    fn exchange_symmetry_is_enforced() {
        let bad = TwoBodyTensor::from_fn(2, |a, b, c, d| {
            if (a, b, c, d) == (0, 1, 0, 1) {
                1.0
            } else {
                0.0
            }
        });
        assert!(matches!(bad, Err(Error::SymmetryViolation { .. })));
        let fixed = TwoBodyTensor::symmetrized_from_fn(2, |a, b, c, d| {
            if (a, b, c, d) == (0, 1, 0, 1) {
                1.0
            } else {
                0.0
            }
        })
        .unwrap();
        assert_eq!(fixed.at(0, 1, 0, 1), 0.5);
        assert_eq!(fixed.at(1, 0, 1, 0), 0.5);
    }

    #[test]
    fn inner_products() {
        let a = slater_state::<f64>(&ps(&[1, 2]), 3).unwrap();
        let b = slater_state::<f64>(&ps(&[1, 3]), 3).unwrap();
        assert!((inner_product(&a, &a).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(inner_product(&a, &b).unwrap(), 0.0);
        let p = product_state_tensor::<f64>(&ps(&[1, 2]), 3).unwrap();
        let q = product_state_tensor::<f64>(&ps(&[2, 1]), 3).unwrap();
        assert_eq!(inner_product(&p, &q).unwrap(), 0.0);
        let c = slater_state::<f64>(&ps(&[1, 2, 3]), 3).unwrap();
        assert!(inner_product(&a, &c).is_err());
    }

    #[test]
    fn complex_inner_product_conjugates_left() {
        let i = Complex64::new(0.0, 1.0);
        let s = product_state_tensor::<Complex64>(&ps(&[1]), 2)
            .unwrap()
            .scaled(i);
        let t = product_state_tensor::<Complex64>(&ps(&[1]), 2).unwrap();
        assert_eq!(inner_product(&s, &t).unwrap(), -i);
        assert_eq!(inner_product(&t, &s).unwrap(), i);
    }
}
