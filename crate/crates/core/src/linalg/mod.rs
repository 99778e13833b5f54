//! Dense complex linear algebra kernel.

mod decomp;
mod matrix;
mod ops;
mod subspace;

pub use decomp::{complete_orthonormal, full_svd, hermitian_eigen, svd, HermitianEigen, Svd};
pub use matrix::Matrix;
pub use ops::{
    adjoint, distance_to_identity, min_eigenvalue, null_space, numerical_rank, numerical_rank_of,
    pseudoinverse, psd_order_holds, range_basis, range_projection, spectral_norm, sqrt_psd,
    Tolerance,
};
pub(crate) use ops::hermitian_from_eigen;
pub use subspace::Subspace;
