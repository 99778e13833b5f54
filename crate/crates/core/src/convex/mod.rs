//! C*-convexity over the bimodule `M_d^k`.
//!
//! Elements are `k`-tuples of `d × d` matrices and the coefficient algebra
//! `M_d` acts on both sides componentwise, so a C*-convex combination
//! `Σ T_i* A_i T_i` is applied part by part. The [`segments`] submodule
//! rewrites an `n`-term combination as a program of two-term steps, and
//! [`range`] samples matrix ranges and certifies the diagonal-block example.

pub mod range;
pub mod segments;

pub use range::{
    matrix_range_sample, segment_rank_demo, verify_diagonal_blocks, DiagonalBlocksReport, SegmentRankReport,
};
pub use segments::{reduce_to_segments, replay_program, OperandRef, SegmentProgram, SegmentStep};

use crate::error::{Error, Result};
use crate::linalg::{full_svd, hermitian_from_eigen, svd, Matrix, Tolerance};
use crate::scalar::Real;

/// Element of `M_d^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BimoduleElement<T: Real> {
    dim: usize,
    parts: Vec<Matrix<T>>,
}

impl<T: Real> BimoduleElement<T> {
    pub fn new(parts: Vec<Matrix<T>>) -> Result<Self> {
        let first = parts.first().ok_or(Error::EmptyList)?;
        let dim = first.rows();
        if dim == 0 {
            return Err(Error::InvalidDimension("bimodule parts must be nonempty".into()));
        }
        for p in &parts {
            if p.shape() != (dim, dim) {
                return Err(Error::DimensionMismatch(format!(
                    "bimodule part is {}x{}, expected {dim}x{dim}",
                    p.rows(),
                    p.cols()
                )));
            }
        }
        Ok(Self { dim, parts })
    }

    /// Arity-one element.
    pub fn single(a: Matrix<T>) -> Result<Self> {
        Self::new(vec![a])
    }

    pub fn zero(dim: usize, arity: usize) -> Self {
        Self { dim, parts: vec![Matrix::zeros(dim, dim); arity] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[Matrix<T>] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Matrix<T>> {
        self.parts
    }

    /// `T* · self · T` partwise.
    pub fn compress(&self, t: &Matrix<T>) -> Self {
        let ta = t.adjoint();
        Self { dim: self.dim, parts: self.parts.iter().map(|a| &(&ta * a) * t).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { dim: self.dim, parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a + b).collect() }
    }

    /// Largest spectral norm over the parts.
    pub fn norm(&self) -> T {
        self.parts.iter().map(crate::linalg::spectral_norm).fold(T::zero(), T::max)
    }

    /// Largest spectral norm of the partwise difference.
    pub fn distance(&self, other: &Self) -> T {
        self.parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| crate::linalg::spectral_norm(&(a - b)))
            .fold(T::zero(), T::max)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.arity() != other.arity() {
            return Err(Error::DimensionMismatch(format!(
                "bimodule elements of shape (d={}, k={}) and (d={}, k={})",
                self.dim,
                self.arity(),
                other.dim,
                other.arity()
            )));
        }
        Ok(())
    }
}

/// `‖Σ T_i* T_i − I‖`.
pub fn partition_defect<T: Real>(coefficients: &[Matrix<T>]) -> T {
    let d = coefficients[0].rows();
    let mut g = Matrix::zeros(d, d);
    for t in coefficients {
        g = &g + &t.gram();
    }
    crate::linalg::distance_to_identity(&g)
}

/// `(T_1, …, T_n)` in `M_d` with `Σ T_i* T_i = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTuple<T: Real> {
    dim: usize,
    coefficients: Vec<Matrix<T>>,
}

impl<T: Real> CoefficientTuple<T> {
    /// Checks shapes and `‖Σ T_i* T_i − I‖ ≤ residual_rel`.
    pub fn new(coefficients: Vec<Matrix<T>>, tol: &Tolerance<T>) -> Result<Self> {
        let first = coefficients.first().ok_or(Error::EmptyList)?;
        let dim = first.rows();
        for t in &coefficients {
            if t.shape() != (dim, dim) {
                return Err(Error::DimensionMismatch(format!(
                    "coefficient is {}x{}, expected {dim}x{dim}",
                    t.rows(),
                    t.cols()
                )));
            }
        }
        let defect = partition_defect(&coefficients);
        if defect > tol.residual_rel {
            return Err(Error::NotPartitionOfUnity { defect: defect.as_f64() });
        }
        Ok(Self { dim, coefficients })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficients(&self) -> &[Matrix<T>] {
        &self.coefficients
    }
}

fn check_operands<T: Real>(elements: &[BimoduleElement<T>], ts: &CoefficientTuple<T>) -> Result<()> {
    let first = elements.first().ok_or(Error::EmptyList)?;
    if elements.len() != ts.len() {
        return Err(Error::DimensionMismatch(format!("{} elements but {} coefficients", elements.len(), ts.len())));
    }
    for e in elements {
        first.check_compatible(e)?;
    }
    if first.dim() != ts.dim() {
        return Err(Error::DimensionMismatch(format!("elements in M_{} but coefficients in M_{}", first.dim(), ts.dim())));
    }
    Ok(())
}

/// `Σ T_i* A_i T_i`, applied partwise.
pub fn cstar_combination<T: Real>(
    elements: &[BimoduleElement<T>],
    ts: &CoefficientTuple<T>,
) -> Result<BimoduleElement<T>> {
    check_operands(elements, ts)?;
    let mut acc = BimoduleElement::zero(ts.dim(), elements[0].arity());
    for (a, t) in elements.iter().zip(ts.coefficients()) {
        acc = acc.add(&a.compress(t));
    }
    Ok(acc)
}

/// `T = U P` with `U` unitary and `P = √(T*T)`. From the full SVD
/// `T = W Σ X*`: `U = W X*`, `P = X Σ X*`; on `ker T` the unitary is
/// whatever the SVD completion gives.
pub fn unitary_polar<T: Real>(t: &Matrix<T>) -> Result<(Matrix<T>, Matrix<T>)> {
    t.require_square("polar operand")?;
    let (w, s, x) = full_svd(t);
    let u = &w * &x.adjoint();
    let mut sx = x.clone();
    for j in 0..s.len() {
        let col: Vec<_> = x.column(j).into_iter().map(|z| z * s[j]).collect();
        sx.set_column(j, &col);
    }
    for j in s.len()..x.cols() {
        sx.set_column(j, &vec![Default::default(); x.rows()]);
    }
    let p = (&sx * &x.adjoint()).hermitian_part();
    Ok((u, p))
}

/// Output of [`prep_coefficients`]: `S_1, …, S_{n−1}` and `Q`.
#[derive(Debug, Clone)]
pub struct PrepCoefficients<T: Real> {
    pub s: Vec<Matrix<T>>,
    pub q: Matrix<T>,
}

/// `M_i = S_i Q` for a column `(M_1; …; M_k)` of contractions, read off one
/// SVD `W Σ Y*` of the stacked column: `Q = Y Σ Y*` and `S_i = W_i Y_r*`
/// on the `r` singular values above the cutoff. The stacked `S` is then a
/// partial isometry, so `Σ S_i* S_i` is the range projection of `Q` to
/// rounding even where `Q` is nearly singular.
pub(super) struct ColumnSplit<T: Real> {
    pub s: Vec<Matrix<T>>,
    /// `Y`, a `d × d` unitary.
    pub basis: Matrix<T>,
    /// `Σ`, clamped to `[0, 1]`.
    pub sigma: Vec<T>,
    pub rank: usize,
}

pub(super) fn split_column<T: Real>(ms: &[Matrix<T>], tol: &Tolerance<T>) -> ColumnSplit<T> {
    let d = ms[0].rows();
    let k = ms.len();
    let refs: Vec<&Matrix<T>> = ms.iter().collect();
    let stacked = Matrix::vstack(&refs).expect("blocks share a width");
    let t = svd(&stacked);
    let cut = tol.sv_cutoff(T::one(), k * d, d);
    let rank = t.s.iter().filter(|&&x| x > cut).count();
    let sigma: Vec<T> = t.s.iter().map(|&x| x.min(T::one())).collect();
    let yr = t.v.block(0, 0, d, rank).adjoint();
    let s = (0..k).map(|i| &t.u.block(i * d, 0, d, rank) * &yr).collect();
    ColumnSplit { s, basis: t.v, sigma, rank }
}

/// With `Q = √(I − T_n* T_n)`, returns `S_i = T_i Q⁺` for `i < n`. Then
/// `T_i = S_i Q` and `Σ S_i* S_i` is the range projection of `Q`.
///
/// `Q²` is formed as `Σ_{i<n} T_i* T_i`, equal to `I − T_n* T_n` for a
/// partition of unity but free of the cancellation in `I − T_n* T_n` where
/// `T_n` is nearly isometric.
pub fn prep_coefficients<T: Real>(ts: &CoefficientTuple<T>, tol: &Tolerance<T>) -> Result<PrepCoefficients<T>> {
    let n = ts.len();
    if n < 2 {
        return Err(Error::InvalidCount(format!("need at least two coefficients, got {n}")));
    }
    let split = split_column(&ts.coefficients()[..n - 1], tol);
    let q = hermitian_from_eigen(&split.basis, &split.sigma);
    Ok(PrepCoefficients { s: split.s, q })
}
