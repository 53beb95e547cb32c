//! Fermionic Fock-space algebra with a first-quantized counterpart and
//! executable checks that the two agree.
//!
//! The core is generic over the scalar type. Floating-point work uses
//! [`C64`]; exact sign and identity checks use [`Exact`].

pub mod dump;
pub mod equivalence;
pub mod error;
pub mod first_quant;
pub mod fock;
pub mod model;
pub mod operator;
pub mod random;
pub mod scalar;
pub mod spectrum;
pub mod verify;

pub use num_complex::Complex64;
pub use num_rational::Rational64;

pub use equivalence::{
    check_one_body_equivalence, check_two_body_equivalence, from_fock, to_fock, CheckResult,
    EquivalenceReport,
};
pub use error::{Error, Result};
pub use first_quant::{
    antisymmetrize, apply_one_body, apply_two_body, slater_state, FirstQuantTensor, OneBodyMatrix,
    ProductState, TwoBodyTensor,
};
pub use fock::{
    apply_annihilation, apply_creation, apply_ladder_string, enumerate_basis, vacuum, FockBasis,
    FockVector, Ladder, OccupationState, OrbitalIndex, Sign, SignConvention, SignedState,
};
pub use model::{load_model, ModelFile};
pub use operator::{
    build_one_body, build_two_body, AnnihilatorOrder, OperatorBuilder, SparseOperator,
};
pub use scalar::{FloatScalar, Scalar};
pub use spectrum::{Hamiltonian, Representation, SpectrumResult};
pub use verify::{run_verification, VerifyConfig};

/// Complex double precision, the default numeric scalar.
pub type C64 = Complex64;
/// Exact rationals for sign-sensitive checks.
pub type Exact = Rational64;
pub type ExactComplex = num_complex::Complex<Rational64>;

pub type FockVector64 = FockVector<C64>;
pub type Tensor64 = FirstQuantTensor<C64>;
pub type OneBody64 = OneBodyMatrix<C64>;
pub type TwoBody64 = TwoBodyTensor<C64>;
pub type Operator64 = SparseOperator<C64>;
pub type ExactVector = FockVector<Exact>;
pub type ExactTensor = FirstQuantTensor<Exact>;
