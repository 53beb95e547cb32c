use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid orbital count {orbitals}: must be in 1..={max}")]
    InvalidDimension { orbitals: usize, max: usize },

    #[error("orbital index {index} out of range 1..={orbitals}")]
    InvalidOrbital { index: usize, orbitals: usize },

    #[error("bitmask {bits:#b} does not fit in {orbitals} orbitals")]
    InvalidBitmask { bits: u64, orbitals: usize },

    #[error("a product state needs at least one particle")]
    EmptyProductState,

    #[error("orbital {index} listed twice")]
    RepeatedOrbital { index: usize },

    #[error("empty sector: {particles} particles in {orbitals} orbitals")]
    EmptySector { orbitals: usize, particles: usize },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("orbitals {0:?} are not strictly increasing")]
    ReferenceOrder(Vec<usize>),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("sector mismatch: expected (M={expected_orbitals}, N={expected_particles}), found (M={found_orbitals}, N={found_particles})")]
    SectorMismatch {
        expected_orbitals: usize,
        expected_particles: isize,
        found_orbitals: usize,
        found_particles: isize,
    },

    #[error("operators are defined on different bases")]
    BasisMismatch,

    #[error("two-body operator needs at least 2 particles, got {0}")]
    Arity(usize),

    #[error("slot positions must satisfy i < l, got i={first}, l={second}")]
    SlotOrder { first: usize, second: usize },

    #[error("slot {slot} out of range for {particles} particles")]
    InvalidSlot { slot: usize, particles: usize },

    #[error(
        "two-body elements violate exchange symmetry at {indices:?} (deviation {deviation:e})"
    )]
    SymmetryViolation { indices: [usize; 4], deviation: f64 },

    #[error("tensor is not antisymmetric (deviation {0:e})")]
    NotAntisymmetric(f64),

    #[error("{0} is not hermitian (deviation {1:e})")]
    NotHermitian(&'static str, f64),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: index {index} out of range 1..={orbitals}")]
    IndexRange {
        line: usize,
        index: usize,
        orbitals: usize,
    },

    #[error("line {line}: duplicate entry {indices:?}")]
    DuplicateEntry { line: usize, indices: Vec<usize> },

    #[error("line {line}: exchange partner of {indices:?} given with a different value")]
    SymmetryConflict { line: usize, indices: [usize; 4] },

    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
