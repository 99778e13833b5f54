//! Principal left ideals of matrix *-algebras.
//!
//! In `M_d` the left ideal generated by `A` is `R·A = {XA : X ∈ R}`. Two
//! elements generate comparable ideals exactly when one majorizes the other,
//! and every finitely generated left ideal is principal with the positive
//! generator `√(Σ A_i* A_i)`.

use std::cmp::Ordering;

use crate::douglas::majorization_lambda;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, spectral_norm, sqrt_psd, svd, numerical_rank_of, Matrix, Subspace, Tolerance};
use crate::scalar::Real;

/// Basis of a unital *-subalgebra of `M_d`, orthonormal for the trace inner
/// product.
#[derive(Debug, Clone)]
pub struct StarAlgebraBasis<T: Real> {
    dim: usize,
    basis: Vec<Matrix<T>>,
}

impl<T: Real> StarAlgebraBasis<T> {
    /// All of `M_d`.
    pub fn full(dim: usize) -> Self {
        let basis = (0..dim * dim)
            .map(|k| {
                let mut e = Matrix::zeros(dim, dim);
                e[(k / dim, k % dim)] = crate::scalar::real(T::one());
                e
            })
            .collect();
        Self { dim, basis }
    }

    /// Diagonal matrices in `M_d`.
    pub fn diagonal(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|k| {
                let mut e = Matrix::zeros(dim, dim);
                e[(k, k)] = crate::scalar::real(T::one());
                e
            })
            .collect();
        Self { dim, basis }
    }

    fn from_subspace(dim: usize, s: &Subspace<T>) -> Self {
        Self { dim, basis: s.basis_matrices(dim, dim) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Matrix<T>] {
        &self.basis
    }

    /// Linear dimension of the algebra.
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn subspace(&self, tol: &Tolerance<T>) -> Subspace<T> {
        Subspace::span_of_matrices(&self.basis, tol)
    }

    /// Frobenius distance from `m` to the algebra.
    pub fn residual(&self, m: &Matrix<T>, tol: &Tolerance<T>) -> T {
        self.subspace(tol).residual(&m.to_vector())
    }

    /// `R_1 ∩ R_2`, again a unital *-subalgebra.
    pub fn intersection(&self, other: &Self, tol: &Tolerance<T>) -> Self {
        let s = self.subspace(tol).intersection(&other.subspace(tol), tol);
        Self::from_subspace(self.dim, &s)
    }

    /// Largest closure defect over adjoints and pairwise products of basis
    /// elements, and the distance of the identity from the span.
    pub fn closure_defect(&self, tol: &Tolerance<T>) -> T {
        let s = self.subspace(tol);
        let mut worst = s.residual(&Matrix::<T>::identity(self.dim).to_vector());
        for x in &self.basis {
            worst = worst.max(s.residual(&x.adjoint().to_vector()));
            for y in &self.basis {
                worst = worst.max(s.residual(&(x * y).to_vector()));
            }
        }
        worst
    }
}

/// A principal left ideal carried by its positive canonical generator.
#[derive(Debug, Clone)]
pub struct IdealDescriptor<T: Real> {
    pub generator: Matrix<T>,
    pub ambient: StarAlgebraBasis<T>,
}

impl<T: Real> IdealDescriptor<T> {
    /// The ideal `R·A` of the full matrix algebra.
    pub fn principal(a: &Matrix<T>, tol: &Tolerance<T>) -> Result<Self> {
        Ok(Self { generator: canonical_generator(a, tol)?, ambient: StarAlgebraBasis::full(a.rows()) })
    }

    /// `R·A ⊆ self`.
    pub fn contains(&self, a: &Matrix<T>, tol: &Tolerance<T>) -> Result<bool> {
        ideal_contains(a, &self.generator, tol)
    }
}

/// `R·A ⊆ R·B` in `M_d`, decided by existence of `λ` with `A*A ≤ λ² B*B`.
pub fn ideal_contains<T: Real>(a: &Matrix<T>, b: &Matrix<T>, tol: &Tolerance<T>) -> Result<bool> {
    Ok(majorization_lambda(a, b, tol)?.is_some())
}

/// `√(A*A)`, which generates the same left ideal as `A`.
pub fn canonical_generator<T: Real>(a: &Matrix<T>, tol: &Tolerance<T>) -> Result<Matrix<T>> {
    a.require_square("A")?;
    sqrt_psd(&a.gram(), tol)
}

fn total_order<T: Real>(x: &Matrix<T>, y: &Matrix<T>) -> Ordering {
    for (a, b) in x.as_slice().iter().zip(y.as_slice()) {
        let o = a.re.as_f64().total_cmp(&b.re.as_f64()).then(a.im.as_f64().total_cmp(&b.im.as_f64()));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

/// Sum of Gram matrices in a canonical order, so the result does not depend
/// on the order of the operands.
fn gram_sum<T: Real>(terms: Vec<Matrix<T>>) -> Matrix<T> {
    let mut terms = terms;
    terms.sort_by(total_order);
    let n = terms[0].rows();
    terms.iter().fold(Matrix::zeros(n, n), |acc, g| &acc + g).hermitian_part()
}

fn check_uniform<T: Real>(ms: &[Matrix<T>]) -> Result<usize> {
    let first = ms.first().ok_or(Error::EmptyList)?;
    first.require_square("generator")?;
    for m in ms {
        first.same_shape(m)?;
    }
    Ok(first.rows())
}

/// Positive generator `√(Σ A_i* A_i)` of `R A_1 + ⋯ + R A_n`.
pub fn finite_generator<T: Real>(gens: &[Matrix<T>], tol: &Tolerance<T>) -> Result<Matrix<T>> {
    check_uniform(gens)?;
    sqrt_psd(&gram_sum(gens.iter().map(Matrix::gram).collect()), tol)
}

/// Maps arbitrary generators to positive contractions generating the same
/// ideals: `A ↦ √(A*A) / max(1, ‖A‖)`.
pub fn normalize_generators<T: Real>(gens: &[Matrix<T>], tol: &Tolerance<T>) -> Result<Vec<Matrix<T>>> {
    gens.iter()
        .map(|a| {
            let g = canonical_generator(a, tol)?;
            let s = T::one().max(spectral_norm(&g));
            Ok(g.scale(T::one() / s))
        })
        .collect()
}

/// `B_n = √(Σ_{i=1}^{n} A_i² / 2^i)` for positive contractions `A_i`.
///
/// The weights `2^{-i}` make `B_n²` nondecreasing in `n` and Cauchy; the
/// limit generates the ideal spanned by all the `A_i`.
pub fn countable_generator_truncated<T: Real>(
    gens: &[Matrix<T>],
    n: usize,
    tol: &Tolerance<T>,
) -> Result<Matrix<T>> {
    let d = check_uniform(gens)?;
    if n == 0 || n > gens.len() {
        return Err(Error::InvalidCount(format!("truncation {n} with {} generators", gens.len())));
    }
    let mut terms = Vec::with_capacity(n);
    let mut weight = T::one();
    for (i, a) in gens.iter().take(n).enumerate() {
        let defect = a.hermitian_defect();
        if defect > tol.residual_rel * T::one().max(a.fro_norm()) {
            return Err(Error::NotHermitian { defect: defect.as_f64() });
        }
        let e = hermitian_eigen(a);
        let top = e.values.first().copied().unwrap_or_else(T::zero);
        let bottom = e.values.last().copied().unwrap_or_else(T::zero);
        if bottom < -tol.psd_slack_rel * T::one().max(top.abs()) {
            return Err(Error::NotPositive { min_eigenvalue: bottom.as_f64() });
        }
        if top > T::one() + tol.residual_rel {
            return Err(Error::NotContraction { index: i, norm: top.as_f64() });
        }
        weight = weight * T::lit(0.5);
        let h = a.hermitian_part();
        terms.push((&h * &h).scale(weight));
    }
    let sum = terms.iter().fold(Matrix::zeros(d, d), |acc, t| &acc + t).hermitian_part();
    sqrt_psd(&sum, tol)
}

/// Smallest unital *-subalgebra of `M_dim` containing the generators.
pub fn generate_star_algebra<T: Real>(
    generators: &[Matrix<T>],
    dim: usize,
    tol: &Tolerance<T>,
) -> Result<StarAlgebraBasis<T>> {
    for g in generators {
        if g.shape() != (dim, dim) {
            return Err(Error::DimensionMismatch(format!(
                "generator is {}x{}, expected {dim}x{dim}",
                g.rows(),
                g.cols()
            )));
        }
    }
    let mut seed = vec![Matrix::<T>::identity(dim)];
    for g in generators {
        seed.push(g.clone());
        seed.push(g.adjoint());
    }
    let mut current = Subspace::span_of_matrices(&seed, tol);
    for _ in 0..(dim * dim).max(1) {
        let basis = current.basis_matrices(dim, dim);
        let mut cand = basis.clone();
        for x in &basis {
            cand.push(x.adjoint());
            for y in &basis {
                cand.push(x * y);
            }
        }
        let next = Subspace::span_of_matrices(&cand, tol);
        let grew = next.dim() > current.dim();
        current = next;
        if !grew {
            break;
        }
    }
    Ok(StarAlgebraBasis::from_subspace(dim, &current))
}

/// Subspaces `R_1A ∩ R_2`, `R_1A ∩ R_2A` and `(R_1 ∩ R_2)A`, compared
/// pairwise.
#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionReport {
    /// Dimensions of the three subspaces, in the order above.
    pub dims: [usize; 3],
    pub first_eq_second: bool,
    pub second_eq_third: bool,
    pub first_eq_third: bool,
}

impl IntersectionReport {
    pub fn all_equal(&self) -> bool {
        self.first_eq_second && self.second_eq_third && self.first_eq_third
    }
}

fn left_ideal_span<T: Real>(alg: &[Matrix<T>], a: &Matrix<T>, tol: &Tolerance<T>) -> Subspace<T> {
    let prods: Vec<Matrix<T>> = alg.iter().map(|x| x * a).collect();
    if prods.is_empty() {
        return Subspace::zero(a.rows() * a.cols());
    }
    Subspace::span_of_matrices(&prods, tol)
}

pub fn verify_ideal_intersection<T: Real>(
    r1: &StarAlgebraBasis<T>,
    r2: &StarAlgebraBasis<T>,
    a: &Matrix<T>,
    tol: &Tolerance<T>,
) -> Result<IntersectionReport> {
    let d = r1.dim();
    if r2.dim() != d || a.shape() != (d, d) {
        return Err(Error::DimensionMismatch("algebras and operand must share M_d".into()));
    }
    let scale = T::one().max(a.fro_norm());
    let residual = r1.residual(a, tol).max(r2.residual(a, tol));
    if residual > tol.residual_rel * scale {
        return Err(Error::NotInIntersection { residual: residual.as_f64() });
    }
    let r1a = left_ideal_span(r1.basis(), a, tol);
    let r2a = left_ideal_span(r2.basis(), a, tol);
    let common = r1.intersection(r2, tol);
    let first = r1a.intersection(&r2.subspace(tol), tol);
    let second = r1a.intersection(&r2a, tol);
    let third = left_ideal_span(common.basis(), a, tol);
    Ok(IntersectionReport {
        dims: [first.dim(), second.dim(), third.dim()],
        first_eq_second: first.equals(&second, tol),
        second_eq_third: second.equals(&third, tol),
        first_eq_third: first.equals(&third, tol),
    })
}

/// Zero is always isolated in the spectrum of `A*A` for a matrix; the gap is
/// the smallest nonzero eigenvalue (`0` when `A = 0`). With `E` the support
/// projection of `A*A`, `gap·E ≤ A*A ≤ ‖A‖²·E`.
pub fn is_zero_isolated_matrix<T: Real>(a: &Matrix<T>, tol: &Tolerance<T>) -> (bool, T) {
    let s = svd(a).s;
    let r = numerical_rank_of(&s, a.rows(), a.cols(), tol);
    let gap = if r == 0 { T::zero() } else { s[r - 1] * s[r - 1] };
    (true, gap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{gaussian, seeded};

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    #[test]
    fn containment_trivial_cases() {
        let p = Matrix::<f64>::from_real_diag(&[1.0, 0.0]);
        let i = Matrix::<f64>::identity(2);
        assert!(ideal_contains(&p, &i, &tol()).unwrap());
        assert!(!ideal_contains(&i, &p, &tol()).unwrap());
    }

    #[test]
    fn canonical_generator_of_unitary_and_zero() {
        let mut rng = seeded(21, 0);
        let u: Matrix<f64> = crate::random::haar_unitary(&mut rng, 3);
        let g = canonical_generator(&u, &tol()).unwrap();
        assert!((&g - &Matrix::identity(3)).fro_norm() < 1e-13);
        let z = Matrix::<f64>::zeros(3, 3);
        assert_eq!(canonical_generator(&z, &tol()).unwrap(), z);
    }

    #[test]
    fn finite_generator_cases() {
        let g = finite_generator(
            &[Matrix::<f64>::from_real_diag(&[1.0, 0.0]), Matrix::from_real_diag(&[0.0, 1.0])],
            &tol(),
        )
        .unwrap();
        assert!((&g - &Matrix::identity(2)).fro_norm() < 1e-15);
        let mut rng = seeded(22, 0);
        let a: Matrix<f64> = gaussian(&mut rng, 3, 3);
        let single = finite_generator(std::slice::from_ref(&a), &tol()).unwrap();
        assert_eq!(single, canonical_generator(&a, &tol()).unwrap());
        assert!(matches!(finite_generator::<f64>(&[], &tol()), Err(Error::EmptyList)));
        assert!(finite_generator(&[a, Matrix::identity(2)], &tol()).is_err());
    }

    #[test]
    fn finite_generator_is_order_independent() {
        let mut rng = seeded(23, 0);
        let gens: Vec<Matrix<f64>> = (0..4).map(|_| gaussian(&mut rng, 3, 3)).collect();
        let g1 = finite_generator(&gens, &tol()).unwrap();
        let mut rev = gens.clone();
        rev.reverse();
        rev.swap(0, 2);
        assert_eq!(g1, finite_generator(&rev, &tol()).unwrap());
    }

    #[test]
    fn countable_generator_cases() {
        let i = Matrix::<f64>::identity(2);
        let b = countable_generator_truncated(std::slice::from_ref(&i), 1, &tol()).unwrap();
        assert!((&b - &i.scale(std::f64::consts::FRAC_1_SQRT_2)).fro_norm() < 1e-15);
        let z = Matrix::<f64>::zeros(2, 2);
        assert_eq!(countable_generator_truncated(&[z.clone(), z.clone()], 2, &tol()).unwrap(), z);
        assert!(matches!(
            countable_generator_truncated(&[i.scale(2.0)], 1, &tol()),
            Err(Error::NotContraction { index: 0, .. })
        ));
        assert!(countable_generator_truncated(std::slice::from_ref(&i), 2, &tol()).is_err());
        let neg = Matrix::<f64>::from_real_diag(&[0.5, -0.5]);
        assert!(matches!(
            countable_generator_truncated(&[neg], 1, &tol()),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn generated_algebras() {
        let empty = generate_star_algebra::<f64>(&[], 3, &tol()).unwrap();
        assert_eq!(empty.len(), 1);
        let d = generate_star_algebra(&[Matrix::<f64>::from_real_diag(&[1.0, 2.0])], 2, &tol()).unwrap();
        assert_eq!(d.len(), 2);
        let e12 = Matrix::<f64>::from_real(2, 2, &[0., 1., 0., 0.]).unwrap();
        let full = generate_star_algebra(&[e12], 2, &tol()).unwrap();
        assert_eq!(full.len(), 4);
        assert!(full.closure_defect(&tol()) < 1e-12);
        assert!(generate_star_algebra(&[Matrix::<f64>::identity(3)], 2, &tol()).is_err());
    }

    #[test]
    fn intersection_examples() {
        let full = StarAlgebraBasis::<f64>::full(2);
        let r = verify_ideal_intersection(&full, &full, &Matrix::identity(2), &tol()).unwrap();
        assert_eq!(r.dims, [4, 4, 4]);
        assert!(r.all_equal());
        let diag = StarAlgebraBasis::<f64>::diagonal(2);
        let r = verify_ideal_intersection(&full, &diag, &Matrix::from_real_diag(&[1.0, 0.0]), &tol()).unwrap();
        assert_eq!(r.dims, [1, 1, 1]);
        assert!(r.all_equal());
        let off = Matrix::<f64>::from_real(2, 2, &[0., 1., 1., 0.]).unwrap();
        assert!(matches!(
            verify_ideal_intersection(&full, &diag, &off, &tol()),
            Err(Error::NotInIntersection { .. })
        ));
    }

    #[test]
    fn isolated_zero_examples() {
        let (iso, gap) = is_zero_isolated_matrix(&Matrix::<f64>::zeros(2, 2), &tol());
        assert!(iso);
        assert_eq!(gap, 0.0);
        let (iso, gap) = is_zero_isolated_matrix(&Matrix::<f64>::from_real_diag(&[1.0, 0.0]), &tol());
        assert!(iso);
        assert!((gap - 1.0).abs() < 1e-15);
    }
}
