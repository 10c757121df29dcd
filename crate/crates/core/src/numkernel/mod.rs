//! Dense numerical substrate: fixed-size complex matrices, a Jacobi
//! eigensolver for Hermitian matrices, a 3×3 SVD with proper-rotation
//! factors, and the SO(3) → SU(2) lift.

pub mod complex;
pub mod eigen;
pub mod real3;
pub mod spin;

pub use complex::{
    bloch_operator, inner, kron, kron_vec, pauli, pauli_pair, vec_norm, CMatrix, CMatrix2,
    CMatrix4, CMatrix8, CVector, C64,
};
pub use eigen::{hermitian_eig, HermitianEigen};
pub use real3::{cross, dot, norm, svd3_special, Matrix3, Rotation3, SpecialSvd, Vector3};
pub use spin::{adjoint_action, rotation_to_spin, spin_relation_residual, SpinUnitary};
