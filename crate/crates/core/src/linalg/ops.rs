//! Operations consumed by the constructive proofs: pseudoinverse, positive
//! square root, range projections, Loewner order, numerical rank.

use num_traits::Zero;

use super::decomp::{full_svd, hermitian_eigen, svd, Svd};
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Relative tolerances used throughout.
///
/// * `rank_cutoff_rel`: singular values below
///   `rank_cutoff_rel · σ_max · max(rows, cols)` count as zero.
/// * `psd_slack_rel`: eigenvalues down to `−psd_slack_rel · ‖M‖` are
///   accepted (and clamped) as nonnegative.
/// * `residual_rel`: acceptance threshold for identities such as `A = CB`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<T: Real> {
    pub rank_cutoff_rel: T,
    pub psd_slack_rel: T,
    pub residual_rel: T,
}

impl<T: Real> Default for Tolerance<T> {
    /// `1e-12 / 1e-9 / 1e-9` in double precision; widened in proportion to
    /// machine epsilon for `f32`.
    fn default() -> Self {
        let eps = T::epsilon();
        Self {
            rank_cutoff_rel: T::lit(1e-12).max(eps * T::lit(10.0)),
            psd_slack_rel: T::lit(1e-9).max(eps * T::lit(100.0)),
            residual_rel: T::lit(1e-9).max(eps * T::lit(1000.0)),
        }
    }
}

impl<T: Real> Tolerance<T> {
    pub fn new(rank_cutoff_rel: T, psd_slack_rel: T, residual_rel: T) -> Result<Self> {
        let tol = Self { rank_cutoff_rel, psd_slack_rel, residual_rel };
        tol.validate()?;
        Ok(tol)
    }

    /// Default tolerance with a different residual threshold.
    pub fn with_residual(residual_rel: T) -> Result<Self> {
        Self::new(Self::default().rank_cutoff_rel, Self::default().psd_slack_rel, residual_rel)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("rank_cutoff_rel", self.rank_cutoff_rel),
            ("psd_slack_rel", self.psd_slack_rel),
            ("residual_rel", self.residual_rel),
        ] {
            if !(v >= T::zero() && v < T::one()) {
                return Err(Error::InvalidTolerance(format!("{name} = {v} not in [0, 1)")));
            }
        }
        Ok(())
    }

    /// Absolute singular-value cutoff for a matrix of the given shape.
    pub fn sv_cutoff(&self, smax: T, rows: usize, cols: usize) -> T {
        self.rank_cutoff_rel * smax * T::from_usize(rows.max(cols)).unwrap()
    }
}

/// Spectral norm (largest singular value).
pub fn spectral_norm<T: Real>(m: &Matrix<T>) -> T {
    if m.rows() == 0 || m.cols() == 0 || m.max_abs() == T::zero() {
        return T::zero();
    }
    svd(m).s[0]
}

pub fn adjoint<T: Real>(m: &Matrix<T>) -> Matrix<T> {
    m.adjoint()
}

/// Number of singular values above the rank cutoff.
pub fn numerical_rank_of<T: Real>(s: &[T], rows: usize, cols: usize, tol: &Tolerance<T>) -> usize {
    let smax = s.first().copied().unwrap_or_else(T::zero);
    if smax == T::zero() {
        return 0;
    }
    let cut = tol.sv_cutoff(smax, rows, cols);
    s.iter().filter(|&&x| x > cut).count()
}

pub fn numerical_rank<T: Real>(m: &Matrix<T>, tol: &Tolerance<T>) -> usize {
    let d = svd(m);
    numerical_rank_of(&d.s, m.rows(), m.cols(), tol)
}

/// Moore–Penrose pseudoinverse with the rank cutoff applied.
pub fn pseudoinverse<T: Real>(m: &Matrix<T>, tol: &Tolerance<T>) -> Matrix<T> {
    let d = svd(m);
    pinv_from_svd(&d, m.rows(), m.cols(), tol)
}

pub(crate) fn pinv_from_svd<T: Real>(d: &Svd<T>, rows: usize, cols: usize, tol: &Tolerance<T>) -> Matrix<T> {
    let r = numerical_rank_of(&d.s, rows, cols, tol);
    let mut out = Matrix::zeros(cols, rows);
    for k in 0..r {
        let inv = T::one() / d.s[k];
        for i in 0..cols {
            let vik = d.v[(i, k)] * inv;
            if vik.is_zero() {
                continue;
            }
            for j in 0..rows {
                out[(i, j)] += vik * d.u[(j, k)].conj();
            }
        }
    }
    out
}

/// Orthogonal projection onto the column space of `m`.
pub fn range_projection<T: Real>(m: &Matrix<T>, tol: &Tolerance<T>) -> Matrix<T> {
    let d = svd(m);
    let r = numerical_rank_of(&d.s, m.rows(), m.cols(), tol);
    projector_from_columns(&d.u, r)
}

/// Orthonormal basis (as columns) of the column space of `m`.
pub fn range_basis<T: Real>(m: &Matrix<T>, tol: &Tolerance<T>) -> Matrix<T> {
    let d = svd(m);
    let r = numerical_rank_of(&d.s, m.rows(), m.cols(), tol);
    d.u.block(0, 0, m.rows(), r)
}

/// Orthonormal basis (as columns) of the numerical kernel of `m`.
pub fn null_space<T: Real>(m: &Matrix<T>, tol: &Tolerance<T>) -> Matrix<T> {
    let n = m.cols();
    let (_, s, x) = full_svd(m);
    let r = numerical_rank_of(&s, m.rows(), n, tol);
    x.block(0, r, n, n - r)
}

/// `Σ_{k<r} u_k u_k*` for the leading `r` columns of `u`.
pub(crate) fn projector_from_columns<T: Real>(u: &Matrix<T>, r: usize) -> Matrix<T> {
    let n = u.rows();
    let mut e = Matrix::zeros(n, n);
    for k in 0..r {
        for i in 0..n {
            let uik = u[(i, k)];
            for j in 0..n {
                e[(i, j)] += uik * u[(j, k)].conj();
            }
        }
    }
    e.hermitian_part()
}

fn check_hermitian<T: Real>(m: &Matrix<T>, tol: &Tolerance<T>) -> Result<()> {
    m.require_square("operand")?;
    let defect = m.hermitian_defect();
    let scale = T::one().max(m.fro_norm());
    if defect > tol.residual_rel * scale {
        return Err(Error::NotHermitian { defect: defect.as_f64() });
    }
    Ok(())
}

/// Positive square root of a Hermitian PSD matrix.
///
/// Eigenvalues in `[−psd_slack_rel·‖M‖, 0)` are clamped to zero, as are
/// positive eigenvalues under the rank cutoff, so that the rank of the root
/// matches the numerical rank of `M`.
pub fn sqrt_psd<T: Real>(m: &Matrix<T>, tol: &Tolerance<T>) -> Result<Matrix<T>> {
    check_hermitian(m, tol)?;
    let n = m.rows();
    let e = hermitian_eigen(m);
    let norm = e.values.iter().fold(T::zero(), |a, &v| a.max(v.abs()));
    let min = e.values.last().copied().unwrap_or_else(T::zero);
    if min < -tol.psd_slack_rel * norm {
        return Err(Error::NotPositive { min_eigenvalue: min.as_f64() });
    }
    let cut = tol.sv_cutoff(norm, n, n);
    let roots: Vec<T> = e.values.iter().map(|&v| if v > cut { v.sqrt() } else { T::zero() }).collect();
    Ok(hermitian_from_eigen(&e.vectors, &roots))
}

/// `W diag(values) W*`, symmetrized.
pub(crate) fn hermitian_from_eigen<T: Real>(w: &Matrix<T>, values: &[T]) -> Matrix<T> {
    let n = w.rows();
    let mut out = Matrix::zeros(n, n);
    for (k, &lam) in values.iter().enumerate() {
        if lam == T::zero() {
            continue;
        }
        for i in 0..n {
            let a = w[(i, k)] * lam;
            for j in 0..n {
                out[(i, j)] += a * w[(j, k)].conj();
            }
        }
    }
    out.hermitian_part()
}

/// Loewner order `P ≤ Q`: smallest eigenvalue of `Q − P` is at least
/// `−psd_slack_rel · max(1, ‖Q − P‖)`.
pub fn psd_order_holds<T: Real>(p: &Matrix<T>, q: &Matrix<T>, tol: &Tolerance<T>) -> Result<bool> {
    p.require_square("P")?;
    p.same_shape(q)?;
    let diff = q - p;
    let e = hermitian_eigen(&diff);
    let norm = e.values.iter().fold(T::zero(), |a, &v| a.max(v.abs()));
    let min = e.values.last().copied().unwrap_or_else(T::zero);
    Ok(min >= -tol.psd_slack_rel * T::one().max(norm))
}

/// Smallest eigenvalue of the Hermitian part.
pub fn min_eigenvalue<T: Real>(m: &Matrix<T>) -> T {
    hermitian_eigen(m).values.last().copied().unwrap_or_else(T::zero)
}

/// `‖M − I‖` for square `M`.
pub fn distance_to_identity<T: Real>(m: &Matrix<T>) -> T {
    spectral_norm(&(m - &Matrix::identity(m.rows())))
}
