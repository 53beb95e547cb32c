//! Seeded random inputs for the property suites. Real and imaginary parts
//! are uniform in `[-1, 1]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::first_quant::{FirstQuantTensor, OneBodyMatrix, TwoBodyTensor};
use crate::fock::{FockBasis, FockVector};
use crate::scalar::FloatScalar;

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar<S: FloatScalar, R: Rng + ?Sized>(rng: &mut R) -> S {
    let re = rng.random_range(-1.0..=1.0);
    let im = rng.random_range(-1.0..=1.0);
    S::from_parts(re, im)
}

fn random_vec<S: FloatScalar, R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<S> {
    (0..len).map(|_| random_scalar(rng)).collect()
}

pub fn random_one_body<S: FloatScalar, R: Rng + ?Sized>(
    orbitals: usize,
    rng: &mut R,
) -> Result<OneBodyMatrix<S>> {
    OneBodyMatrix::new(orbitals, random_vec(orbitals * orbitals, rng))
}

pub fn random_hermitian_one_body<S: FloatScalar, R: Rng + ?Sized>(
    orbitals: usize,
    rng: &mut R,
) -> Result<OneBodyMatrix<S>> {
    let raw = random_one_body::<S, _>(orbitals, rng)?;
    let two = S::from_i64(2);
    OneBodyMatrix::from_fn(orbitals, |a, b| (raw.at(a, b) + raw.at(b, a).conj()) / two)
}

fn raw_two_body<S: FloatScalar, R: Rng + ?Sized>(
    orbitals: usize,
    rng: &mut R,
) -> impl Fn(usize, usize, usize, usize) -> S {
    let m = orbitals;
    let raw: Vec<S> = random_vec(m.pow(4), rng);
    move |a, b, c, d| raw[((a * m + b) * m + c) * m + d]
}

/// Random two-body elements with exchange symmetry imposed by averaging.
pub fn random_two_body<S: FloatScalar, R: Rng + ?Sized>(
    orbitals: usize,
    rng: &mut R,
) -> Result<TwoBodyTensor<S>> {
    TwoBodyTensor::symmetrized_from_fn(orbitals, raw_two_body(orbitals, rng))
}

/// Random two-body elements with exchange symmetry and
/// `g(α,β,γ,δ) = conj(g(γ,δ,α,β))`, averaged over both maps.
pub fn random_hermitian_two_body<S: FloatScalar, R: Rng + ?Sized>(
    orbitals: usize,
    rng: &mut R,
) -> Result<TwoBodyTensor<S>> {
    let g = raw_two_body::<S, _>(orbitals, rng);
    let four = S::from_i64(4);
    TwoBodyTensor::from_fn(orbitals, |a, b, c, d| {
        (g(a, b, c, d) + g(b, a, d, c) + g(c, d, a, b).conj() + g(d, c, b, a).conj()) / four
    })
}

pub fn random_tensor<S: FloatScalar, R: Rng + ?Sized>(
    orbitals: usize,
    particles: usize,
    rng: &mut R,
) -> Result<FirstQuantTensor<S>> {
    let len = FirstQuantTensor::<S>::zeros(orbitals, particles)?.len();
    FirstQuantTensor::from_coeffs(orbitals, particles, random_vec(len, rng))
}

pub fn random_fock_vector<S: FloatScalar, R: Rng + ?Sized>(
    basis: &FockBasis,
    rng: &mut R,
) -> Result<FockVector<S>> {
    FockVector::from_dense(basis, &random_vec::<S, _>(basis.len(), rng))
}
