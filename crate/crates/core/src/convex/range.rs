//! Matrix ranges and the two worked `M_n` examples: diagonal blocks of a
//! normal matrix as C*-convex combinations of eigenvalue diagonals, and the
//! rank obstruction showing a C*-segment need not be convex.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{distance_to_identity, hermitian_eigen, numerical_rank, spectral_norm, Matrix, Tolerance};
use crate::random::{coefficient_tuple, haar_isometry, seeded};
use crate::scalar::{cx, Cx, Real};

/// `count` samples `Φ(T) = Σ_j K_j* T K_j` of the matrix range `W_n(T)`.
/// The Kraus operators are the `d × n` blocks of a Haar isometry
/// `C^n → C^{d·m}`; sample `k` uses stream `k` of `seed`, so the output does
/// not depend on evaluation order.
pub fn matrix_range_sample<T: Real>(
    t: &Matrix<T>,
    n: usize,
    kraus_count: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<Matrix<T>>> {
    t.require_square("matrix range operand")?;
    let d = t.rows();
    if n == 0 || kraus_count == 0 {
        return Err(Error::InvalidDimension("n and kraus_count must be positive".into()));
    }
    if d * kraus_count < n {
        return Err(Error::InvalidDimension(format!("no isometry C^{n} -> C^{}", d * kraus_count)));
    }
    let samples = (0..count)
        .into_par_iter()
        .map(|k| {
            let mut rng = seeded(seed, k as u64);
            let v: Matrix<T> = haar_isometry(&mut rng, d * kraus_count, n);
            let mut acc = Matrix::zeros(n, n);
            for j in 0..kraus_count {
                let kj = v.block(j * d, 0, d, n);
                acc = &acc + &(&(&kj.adjoint() * t) * &kj);
            }
            acc
        })
        .collect();
    Ok(samples)
}

/// Certificate that each diagonal `n × n` block of a normal `A ∈ M_{mn}` is a
/// C*-convex combination of the eigenvalue diagonals `D_1, …, D_m`.
#[derive(Debug, Clone)]
pub struct DiagonalBlocksReport<T: Real> {
    /// `U` with `A = U* D U`.
    pub unitary: Matrix<T>,
    /// `D_i = diag(λ_{i1}, …, λ_{in})`.
    pub generators: Vec<Matrix<T>>,
    /// `coefficients[j] = (U_{1j}, …, U_{mj})`.
    pub coefficients: Vec<Vec<Matrix<T>>>,
    /// `‖A − U* D U‖`.
    pub diagonalization_residual: T,
    /// `max_j ‖Σ_i U_ij* U_ij − I‖`.
    pub isometry_residual: T,
    /// `max_j ‖A_jj − Σ_i U_ij* D_i U_ij‖`.
    pub block_residual: T,
}

impl<T: Real> DiagonalBlocksReport<T> {
    pub fn max_residual(&self) -> T {
        self.diagonalization_residual.max(self.isometry_residual).max(self.block_residual)
    }
}

/// Eigenvectors of a normal matrix, columns ordered by the row of their
/// largest entry (stable in eigenvalue order), which keeps diagonal inputs
/// diagonal.
fn normal_eigenvectors<T: Real>(a: &Matrix<T>) -> (Matrix<T>, T) {
    let n = a.rows();
    let herm = a.hermitian_part();
    let skew = (a - &a.adjoint()).scale_cx(cx(T::zero(), -T::lit(0.5)));
    let scale = T::one().max(spectral_norm(a));
    let mut best: Option<(Matrix<T>, T)> = None;
    for alpha in [0.618_033_988_749_894_9, 0.414_213_562_373_095_1, std::f64::consts::FRAC_1_PI] {
        let h = &herm + &skew.scale(T::lit(alpha));
        let w = hermitian_eigen(&h).vectors;
        let d = &(&w.adjoint() * a) * &w;
        let off = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(|(i, j)| d[(i, j)].norm())
            .fold(T::zero(), T::max);
        if best.as_ref().is_none_or(|(_, o)| off < *o) {
            best = Some((w, off));
        }
        if off <= T::epsilon().sqrt() * scale * T::lit(1e-4) {
            break;
        }
    }
    let (w, off) = best.unwrap();
    let pivot = |j: usize| {
        let c = w.column(j);
        (0..n).fold(0, |b, i| if c[i].norm() > c[b].norm() + T::epsilon() { i } else { b })
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&j| pivot(j));
    let cols: Vec<Vec<Cx<T>>> = order.iter().map(|&j| w.column(j)).collect();
    (Matrix::from_columns(n, &cols), off)
}

/// Diagonalizes the normal matrix `A = U* D U` and checks, for each `j`,
/// that `Σ_i U_ij* U_ij = I` and `A_jj = Σ_i U_ij* D_i U_ij`.
pub fn verify_diagonal_blocks<T: Real>(
    a: &Matrix<T>,
    m: usize,
    n: usize,
    tol: &Tolerance<T>,
) -> Result<DiagonalBlocksReport<T>> {
    if m == 0 || n == 0 || a.shape() != (m * n, m * n) {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, expected {}x{}",
            a.rows(),
            a.cols(),
            m * n,
            m * n
        )));
    }
    let scale = T::one().max(spectral_norm(a));
    let defect = spectral_norm(&(&a.gram() - &(a * &a.adjoint())));
    if defect > tol.residual_rel * scale * scale {
        return Err(Error::NotNormal { defect: defect.as_f64() });
    }
    let (w, _) = normal_eigenvectors(a);
    let u = w.adjoint();
    let lam = (&u * &(a * &w)).diagonal();
    let dmat = Matrix::from_diag(&lam);
    let diagonalization_residual = spectral_norm(&(a - &(&(&w * &dmat) * &u)));

    let generators: Vec<Matrix<T>> = (0..m).map(|i| Matrix::from_diag(&lam[i * n..(i + 1) * n])).collect();
    let mut coefficients = Vec::with_capacity(m);
    let mut isometry_residual = T::zero();
    let mut block_residual = T::zero();
    for j in 0..m {
        let col: Vec<Matrix<T>> = (0..m).map(|i| u.block(i * n, j * n, n, n)).collect();
        let mut gram = Matrix::zeros(n, n);
        let mut comb = Matrix::zeros(n, n);
        for (uij, di) in col.iter().zip(&generators) {
            gram = &gram + &uij.gram();
            comb = &comb + &(&(&uij.adjoint() * di) * uij);
        }
        isometry_residual = isometry_residual.max(distance_to_identity(&gram));
        block_residual = block_residual.max(spectral_norm(&(&a.block(j * n, j * n, n, n) - &comb)));
        coefficients.push(col);
    }
    Ok(DiagonalBlocksReport {
        unitary: u,
        generators,
        coefficients,
        diagonalization_residual,
        isometry_residual,
        block_residual,
    })
}

/// Outcome of sampling the C*-segment joining `A = diag(1, 0)` and `B = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentRankReport {
    pub samples: usize,
    /// Largest numerical rank among the sampled `T1* A T1 + T2* B T2`.
    pub max_rank: usize,
    /// `‖swap* A swap − C‖` for `C = diag(0, 1)`.
    pub swap_residual: f64,
    /// Rank of `(A + C)/2 = I/2`.
    pub midpoint_rank: usize,
}

impl SegmentRankReport {
    /// The segment is not convex: it has rank ≤ 1 elements only, contains
    /// `C`, and misses the rank-two midpoint.
    pub fn witnesses_nonconvexity(&self) -> bool {
        self.max_rank <= 1 && self.swap_residual == 0.0 && self.midpoint_rank == 2
    }
}

/// Samples the segment `S(A, B)` for `A = diag(1, 0)`, `B = 0` in `M_2`.
pub fn segment_rank_demo<T: Real>(samples: usize, seed: u64, tol: &Tolerance<T>) -> SegmentRankReport {
    let a = Matrix::<T>::from_real_diag(&[T::one(), T::zero()]);
    let c = Matrix::<T>::from_real_diag(&[T::zero(), T::one()]);
    let max_rank = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = seeded(seed, k as u64);
            let ts: Vec<Matrix<T>> = coefficient_tuple(&mut rng, 2, 2);
            // the B term vanishes
            numerical_rank(&(&(&ts[0].adjoint() * &a) * &ts[0]), tol)
        })
        .max()
        .unwrap_or(0);
    let swap = Matrix::<T>::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).expect("finite");
    let hit = &(&swap.adjoint() * &a) * &swap;
    let swap_residual = (&hit - &c).max_abs().as_f64();
    let midpoint_rank = numerical_rank(&(&a + &c).scale(T::lit(0.5)), tol);
    SegmentRankReport { samples, max_rank, swap_residual, midpoint_rank }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{haar_unitary, hermitian};
    use crate::scalar::cx;

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    #[test]
    fn unital_and_unitary_cases() {
        let id = Matrix::<f64>::identity(3);
        for s in matrix_range_sample(&id, 2, 2, 20, 7).unwrap() {
            assert!(distance_to_identity(&s) < 1e-13);
        }
        let mut rng = seeded(1, 0);
        let t: Matrix<f64> = hermitian(&mut rng, 3);
        let spec = hermitian_eigen(&t).values;
        for s in matrix_range_sample(&t, 3, 1, 10, 8).unwrap() {
            let got = hermitian_eigen(&s).values;
            for (x, y) in got.iter().zip(&spec) {
                assert!((x - y).abs() < 1e-12);
            }
        }
        assert!(matches!(matrix_range_sample(&id, 7, 2, 1, 0), Err(Error::InvalidDimension(_))));
    }

    #[test]
    fn sampling_is_order_independent() {
        let t = Matrix::<f64>::from_real_diag(&[0.0, 1.0]);
        let a = matrix_range_sample(&t, 1, 3, 50, 99).unwrap();
        let b = matrix_range_sample(&t, 1, 3, 10, 99).unwrap();
        assert_eq!(&a[..10], &b[..]);
        assert!(a.iter().all(|s| s[(0, 0)].re >= -1e-12 && s[(0, 0)].re <= 1.0 + 1e-12));
    }

    #[test]
    fn diagonal_input_gives_identity() {
        let a = Matrix::from_diag(&[cx(1.0, 0.0), cx(2.0, 1.0), cx(-1.0, 0.5), cx(0.5, 0.0)]);
        let r = verify_diagonal_blocks(&a, 2, 2, &tol()).unwrap();
        assert!(distance_to_identity(&r.unitary) < 1e-15);
        assert!(r.max_residual() < 1e-15);
        assert!(r.coefficients[0][1].max_abs() == 0.0);
    }

    #[test]
    fn conjugated_diagonal_certifies() {
        let mut rng = seeded(2, 0);
        let v: Matrix<f64> = haar_unitary(&mut rng, 4);
        let d = Matrix::from_diag(&[cx(1.0, 2.0), cx(-0.5, 0.1), cx(0.3, -1.0), cx(2.0, 0.0)]);
        let a = &(&v.adjoint() * &d) * &v;
        let r = verify_diagonal_blocks(&a, 2, 2, &tol()).unwrap();
        assert!(r.max_residual() < 1e-8, "{}", r.max_residual());

        let h: Matrix<f64> = hermitian(&mut rng, 6);
        let r = verify_diagonal_blocks(&h, 3, 2, &tol()).unwrap();
        assert!(r.isometry_residual < 1e-8);
        assert!(r.block_residual < 1e-8);
    }

    #[test]
    fn diagonal_blocks_errors() {
        let j = Matrix::<f64>::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(verify_diagonal_blocks(&j, 1, 2, &tol()), Err(Error::NotNormal { .. })));
        assert!(matches!(
            verify_diagonal_blocks(&Matrix::<f64>::identity(3), 2, 2, &tol()),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn nonconvex_segment() {
        let r = segment_rank_demo::<f64>(500, 3, &tol());
        assert_eq!(r.max_rank, 1);
        assert_eq!(r.swap_residual, 0.0);
        assert_eq!(r.midpoint_rank, 2);
        assert!(r.witnesses_nonconvexity());
    }
}
