//! Prime-qudit stabilizer codes as quantum secret sharing schemes:
//! access structures, measurement-free reconstruction circuits and exact
//! state-vector verification.

pub mod catalog;
pub mod circuit;
pub mod code;
pub mod codefile;
pub mod dense;
pub mod encoding;
pub mod error;
pub mod field;
pub mod pauli;
pub mod statevector;
pub mod symplectic;
pub mod synthesis;

pub use circuit::{emit_circuit, parse_circuit, Circuit, Gate, Role};
pub use code::{
    random_self_orthogonal_code, self_dual_completion, LogicalPair, ShadowDecomposition, StabilizerCodeSpec,
};
pub use codefile::{parse_code_spec, CodeSpecDocument};
pub use dense::DenseMatrix;
pub use encoding::{encode_secret, logical_zero, random_secret, verify_reconstruction, ReconstructionReport};
pub use error::{Error, Result};
pub use field::{fp_inv, intersect_spans, rref, solve_linear, FpMatrix, PrimeField};
pub use pauli::{
    commutation_phase, dense_matrix, eta_eigenvalue, pauli_mul, pauli_pow, relative_phase, PhaseExponent,
    PhasedGeneratorSet, PhasedPauli,
};
pub use statevector::{apply_gate, circuit_unitary, fidelity_with_pure, purity, SimLimits, StateVector};
pub use symplectic::{symplectic_product, CodeSpace, ShareIndexSet, SymplecticVector};
pub use synthesis::{
    controlled_pauli_decompose, plan_reconstruction, synthesize_dealer, synthesize_reconstruction, EncodingConvention,
    LogicalReconstruction, ReconstructionPlan,
};
