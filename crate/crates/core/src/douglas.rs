//! Range inclusion, majorization and factorization.
//!
//! For square `A`, `B` the following are equivalent: `ker B ⊆ ker A`;
//! `A*A ≤ λ² B*B` for some `λ ≥ 0`; `A = CB` for some `C`. The factor is
//! built exactly as in the constructive argument: `C` sends `Bf ↦ Af` on
//! `ran B` and vanishes on `ran(B)^⊥`, which in matrix terms is `C = A B⁺`.
//! The smallest admissible `λ` is then `‖A B⁺‖`.

use crate::error::{Error, Result};
use crate::linalg::{full_svd, numerical_rank_of, pseudoinverse, spectral_norm, sqrt_psd, svd, Matrix, Tolerance};
use crate::scalar::Real;

/// Outcome of a successful factorization `A = CB`.
#[derive(Debug, Clone)]
pub struct FactorizationResult<T: Real> {
    /// The factor `C`.
    pub factor: Matrix<T>,
    /// Smallest `λ` with `A*A ≤ λ² B*B`.
    pub lambda_min: T,
    /// `‖A − CB‖`.
    pub residual: T,
    pub is_partial_isometry: bool,
}

fn check_pair<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Result<()> {
    a.require_square("A")?;
    b.require_square("B")?;
    a.same_shape(b)
}

/// `‖A|_{ker B}‖`, computed on an orthonormal basis of the numerical kernel.
fn kernel_leak<T: Real>(a: &Matrix<T>, b: &Matrix<T>, tol: &Tolerance<T>) -> T {
    let n = b.cols();
    let (_, s, x) = full_svd(b);
    let r = numerical_rank_of(&s, b.rows(), n, tol);
    if r == n {
        return T::zero();
    }
    spectral_norm(&(a * &x.block(0, r, n, n - r)))
}

/// Kernel inclusion test plus `B⁺`, shared by the public entry points.
fn majorize<T: Real>(a: &Matrix<T>, b: &Matrix<T>, tol: &Tolerance<T>) -> Option<(T, Matrix<T>)> {
    let a_norm = spectral_norm(a);
    if kernel_leak(a, b, tol) > tol.residual_rel * T::one().max(a_norm) {
        return None;
    }
    let b_pinv = pseudoinverse(b, tol);
    let lambda = spectral_norm(&(a * &b_pinv));
    Some((lambda, b_pinv))
}

/// Minimal `λ ≥ 0` with `A*A ≤ λ² B*B`, or `None` when `ker B ⊄ ker A`.
pub fn majorization_lambda<T: Real>(a: &Matrix<T>, b: &Matrix<T>, tol: &Tolerance<T>) -> Result<Option<T>> {
    check_pair(a, b)?;
    Ok(majorize(a, b, tol).map(|(l, _)| l))
}

fn is_projection<T: Real>(p: &Matrix<T>, tol: &Tolerance<T>) -> bool {
    let defect = spectral_norm(&(&(p * p) - p)).max(p.hermitian_defect());
    defect <= tol.residual_rel * T::one().max(spectral_norm(p))
}

/// Factor `A = CB` with `C = A B⁺`, or `None` when no factorization exists.
pub fn douglas_factor<T: Real>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    tol: &Tolerance<T>,
) -> Result<Option<FactorizationResult<T>>> {
    check_pair(a, b)?;
    let Some((lambda, b_pinv)) = majorize(a, b, tol) else {
        return Ok(None);
    };
    let c = a * &b_pinv;
    let residual = spectral_norm(&(a - &(&c * b)));
    let is_partial_isometry = is_projection(&c.gram(), tol);
    Ok(Some(FactorizationResult { factor: c, lambda_min: lambda, residual, is_partial_isometry }))
}

/// Partial-isometry factor for `A*A = B*B`: `C*C` is the range projection of
/// `B` and `CC*` that of `A`.
///
/// The raw factor `A B⁺` is already a partial isometry in exact arithmetic;
/// its singular values are snapped to one so the projection identities hold
/// to working precision.
pub fn douglas_factor_isometric<T: Real>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    tol: &Tolerance<T>,
) -> Result<FactorizationResult<T>> {
    check_pair(a, b)?;
    let bb = b.gram();
    let defect = spectral_norm(&(&a.gram() - &bb));
    if defect > tol.residual_rel * T::one().max(spectral_norm(&bb)) {
        return Err(Error::NotEqualGram { defect: defect.as_f64() });
    }
    let n = b.rows();
    let b_svd = svd(b);
    let rank = numerical_rank_of(&b_svd.s, n, n, tol);
    let raw = a * &pseudoinverse(b, tol);
    let lambda = spectral_norm(&raw);
    let r = svd(&raw);
    let mut c = Matrix::zeros(n, n);
    for k in 0..rank {
        for i in 0..n {
            let uik = r.u[(i, k)];
            for j in 0..n {
                c[(i, j)] += uik * r.v[(j, k)].conj();
            }
        }
    }
    let residual = spectral_norm(&(a - &(&c * b)));
    Ok(FactorizationResult { factor: c, lambda_min: lambda, residual, is_partial_isometry: true })
}

/// `A = V P` with `P = √(A*A)` and `V` a partial isometry from the range
/// of `P` onto the range of `A`, obtained by factoring `A` through `P`.
pub fn polar_decomposition<T: Real>(a: &Matrix<T>, tol: &Tolerance<T>) -> Result<(Matrix<T>, Matrix<T>)> {
    a.require_square("A")?;
    let p = sqrt_psd(&a.gram().hermitian_part(), tol)?;
    let f = douglas_factor_isometric(a, &p, tol)?;
    Ok((f.factor, p))
}
