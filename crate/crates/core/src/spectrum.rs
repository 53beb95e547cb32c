//! Dense diagonalization of `H = F1 + F2` on one particle-number sector,
//! in either representation.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::equivalence::from_fock;
use crate::error::{Error, Result};
use crate::first_quant::{
    apply_one_body, apply_two_body, inner_product, OneBodyMatrix, TwoBodyTensor,
};
use crate::fock::{enumerate_basis, FockBasis, FockVector};
use crate::model::ModelFile;
use crate::operator::{OperatorBuilder, SparseOperator};
use crate::scalar::{max_modulus, scaled_tolerance};
use crate::C64;

/// Largest sector dimension handled by the dense eigensolver.
pub const MAX_SPECTRUM_DIM: usize = 2000;

/// Entrywise agreement required between the two representations.
pub const AGREEMENT_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Representation {
    FirstQuantized,
    SecondQuantized,
}

impl Representation {
    pub fn label(self) -> &'static str {
        match self {
            Representation::FirstQuantized => "first-quantized",
            Representation::SecondQuantized => "second-quantized",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumResult {
    pub orbitals: usize,
    pub particles: usize,
    pub representation: Representation,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
}

/// Hamiltonian data with the preconditions for diagonalization checked.
#[derive(Clone, Debug)]
pub struct Hamiltonian {
    one_body: OneBodyMatrix<C64>,
    two_body: TwoBodyTensor<C64>,
}

impl Hamiltonian {
    pub fn new(one_body: OneBodyMatrix<C64>, two_body: TwoBodyTensor<C64>) -> Result<Self> {
        if one_body.orbitals() != two_body.orbitals() {
            return Err(Error::DimensionMismatch {
                expected: one_body.orbitals(),
                found: two_body.orbitals(),
            });
        }
        let dev = one_body.hermitian_deviation();
        if !one_body.is_hermitian() {
            return Err(Error::NotHermitian("one-body matrix", dev));
        }
        let dev = two_body.hermitian_deviation();
        if !two_body.is_hermitian() {
            return Err(Error::NotHermitian("two-body tensor", dev));
        }
        Ok(Hamiltonian { one_body, two_body })
    }

    pub fn from_model(model: &ModelFile) -> Result<Self> {
        Self::new(model.one_body_matrix()?, model.two_body_tensor()?)
    }

    pub fn orbitals(&self) -> usize {
        self.one_body.orbitals()
    }

    pub fn one_body(&self) -> &OneBodyMatrix<C64> {
        &self.one_body
    }

    pub fn two_body(&self) -> &TwoBodyTensor<C64> {
        &self.two_body
    }

    fn sector(&self, particles: usize) -> Result<FockBasis> {
        let basis = enumerate_basis(self.orbitals(), particles)?;
        if basis.len() > MAX_SPECTRUM_DIM {
            return Err(Error::Capacity(format!(
                "sector dimension {} exceeds {MAX_SPECTRUM_DIM}",
                basis.len()
            )));
        }
        Ok(basis)
    }

    /// `F̂1 + F̂2` assembled on the `N`-particle Fock basis.
    pub fn fock_operator(&self, particles: usize) -> Result<SparseOperator<C64>> {
        let basis = self.sector(particles)?;
        let builder = OperatorBuilder::default();
        builder
            .build_one_body(&self.one_body, &basis)?
            .add(&builder.build_two_body(&self.two_body, &basis)?)
    }

    /// Matrix of `H` in the second-quantized representation, row-major.
    pub fn second_quantized_matrix(&self, particles: usize) -> Result<DMatrix<C64>> {
        let op = self.fock_operator(particles)?;
        let n = op.dim();
        Ok(DMatrix::from_row_slice(n, n, &op.to_dense()))
    }

    /// `<ψ_i| H |ψ_j>` where `ψ_j` is the antisymmetric tensor corresponding
    /// to the `j`th Fock basis state and `H` acts slot by slot.
    pub fn first_quantized_matrix(&self, particles: usize) -> Result<DMatrix<C64>> {
        let basis = self.sector(particles)?;
        let n = basis.len();
        let images = basis
            .states()
            .iter()
            .map(|&s| from_fock(&FockVector::basis_state(s)))
            .collect::<Result<Vec<_>>>()?;
        let mut h = DMatrix::zeros(n, n);
        for (j, psi) in images.iter().enumerate() {
            let mut h_psi = apply_one_body(&self.one_body, psi)?;
            if particles >= 2 {
                h_psi = h_psi.add(&apply_two_body(&self.two_body, psi)?)?;
            }
            for (i, phi) in images.iter().enumerate() {
                h[(i, j)] = inner_product(phi, &h_psi)?;
            }
        }
        Ok(h)
    }

    pub fn spectrum(&self, particles: usize, rep: Representation) -> Result<SpectrumResult> {
        let matrix = match rep {
            Representation::FirstQuantized => self.first_quantized_matrix(particles)?,
            Representation::SecondQuantized => self.second_quantized_matrix(particles)?,
        };
        let dev = hermitian_deviation(&matrix);
        if dev > scaled_tolerance::<C64>(max_modulus(matrix.iter().copied())) * 1e2 {
            return Err(Error::NotHermitian("assembled Hamiltonian", dev));
        }
        Ok(SpectrumResult {
            orbitals: self.orbitals(),
            particles,
            representation: rep,
            eigenvalues: eigenvalues(matrix),
        })
    }
}

fn hermitian_deviation(a: &DMatrix<C64>) -> f64 {
    let n = a.nrows();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            dev = dev.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Ascending eigenvalues of a hermitian matrix.
pub fn eigenvalues(matrix: DMatrix<C64>) -> Vec<f64> {
    if matrix.is_empty() {
        return Vec::new();
    }
    let mut values: Vec<f64> = matrix.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

pub fn spectrum(
    model: &ModelFile,
    particles: usize,
    rep: Representation,
) -> Result<SpectrumResult> {
    Hamiltonian::from_model(model)?.spectrum(particles, rep)
}

/// Largest entrywise difference between two eigenvalue lists.
pub fn spectrum_deviation(a: &SpectrumResult, b: &SpectrumResult) -> f64 {
    if a.eigenvalues.len() != b.eigenvalues.len() {
        return f64::INFINITY;
    }
    a.eigenvalues
        .iter()
        .zip(&b.eigenvalues)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
