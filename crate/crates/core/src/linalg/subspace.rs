//! Linear subspaces of `C^n` held as orthonormal bases.

use num_traits::Zero;

use super::decomp::svd;
use super::matrix::Matrix;
use super::ops::{null_space, numerical_rank_of, Tolerance};
use crate::scalar::{Cx, Real};

#[derive(Debug, Clone)]
pub struct Subspace<T: Real> {
    ambient: usize,
    /// `ambient × dim`, orthonormal columns.
    basis: Matrix<T>,
}

impl<T: Real> Subspace<T> {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Matrix::zeros(ambient, 0) }
    }

    /// Span of the given vectors (each of length `ambient`), with rank
    /// decided by the global cutoff.
    pub fn span(ambient: usize, vectors: &[Vec<Cx<T>>], tol: &Tolerance<T>) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let m = Matrix::from_columns(ambient, vectors);
        if m.max_abs() == T::zero() {
            return Self::zero(ambient);
        }
        let d = svd(&m);
        let r = numerical_rank_of(&d.s, m.rows(), m.cols(), tol);
        Self { ambient, basis: d.u.block(0, 0, ambient, r) }
    }

    /// Span of the flattened matrices.
    pub fn span_of_matrices(mats: &[Matrix<T>], tol: &Tolerance<T>) -> Self {
        let ambient = mats.first().map_or(0, |m| m.rows() * m.cols());
        let vecs: Vec<_> = mats.iter().map(Matrix::to_vector).collect();
        Self::span(ambient, &vecs, tol)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Cx<T>>> {
        (0..self.dim()).map(|j| self.basis.column(j)).collect()
    }

    /// Basis vectors reshaped as `rows × cols` matrices.
    pub fn basis_matrices(&self, rows: usize, cols: usize) -> Vec<Matrix<T>> {
        self.basis_vectors().iter().map(|v| Matrix::from_vector(rows, cols, v)).collect()
    }

    pub fn sum(&self, other: &Self, tol: &Tolerance<T>) -> Self {
        let mut vecs = self.basis_vectors();
        vecs.extend(other.basis_vectors());
        Self::span(self.ambient, &vecs, tol)
    }

    /// Intersection via the kernel of `[U | −W]`.
    pub fn intersection(&self, other: &Self, tol: &Tolerance<T>) -> Self {
        let (p, q) = (self.dim(), other.dim());
        if p == 0 || q == 0 {
            return Self::zero(self.ambient);
        }
        let n = self.ambient;
        let stacked = Matrix::from_fn(n, p + q, |i, j| {
            if j < p {
                self.basis[(i, j)]
            } else {
                -other.basis[(i, j - p)]
            }
        });
        let ker = null_space(&stacked, tol);
        let vecs: Vec<Vec<Cx<T>>> = (0..ker.cols())
            .map(|k| {
                let coeffs: Vec<Cx<T>> = (0..p).map(|j| ker[(j, k)]).collect();
                self.basis.apply(&coeffs)
            })
            .collect();
        Self::span(n, &vecs, tol)
    }

    /// `dim U = dim W = dim (U + W)`.
    pub fn equals(&self, other: &Self, tol: &Tolerance<T>) -> bool {
        self.dim() == other.dim() && self.sum(other, tol).dim() == self.dim()
    }

    /// Norm of the component of `v` orthogonal to the subspace.
    pub fn residual(&self, v: &[Cx<T>]) -> T {
        let mut r = v.to_vec();
        for j in 0..self.dim() {
            let c = self.basis.column(j);
            let proj = c.iter().zip(v).fold(Cx::zero(), |acc: Cx<T>, (a, b)| acc + a.conj() * b);
            for (x, y) in r.iter_mut().zip(&c) {
                *x -= proj * y;
            }
        }
        r.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }
}
