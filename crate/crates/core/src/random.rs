//! Seeded random matrices: Gaussian ensembles, Haar isometries and unitaries.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::Matrix;
use crate::scalar::{cx, Cx, Real};

/// Deterministic generator for `(seed, stream)`. Distinct streams are
/// independent, which lets per-sample work run in any order.
pub fn seeded(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard complex normal entries, `E|z|² = 1`.
pub fn gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix<T> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Matrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        cx(T::lit(re * h), T::lit(im * h))
    })
}

/// Haar-distributed isometry `C^cols → C^rows` (`rows ≥ cols`): Gram–Schmidt
/// QR of a Gaussian matrix, which leaves `R` with a positive diagonal.
pub fn haar_isometry<T: Real, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix<T> {
    assert!(rows >= cols, "isometry needs rows >= cols");
    loop {
        let g = gaussian::<T, R>(rng, rows, cols);
        if let Some(q) = orthonormalize_columns(&g) {
            return q;
        }
    }
}

pub fn haar_unitary<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<T> {
    haar_isometry(rng, n, n)
}

/// Modified Gram–Schmidt with one reorthogonalization pass; `None` if the
/// columns are numerically dependent.
fn orthonormalize_columns<T: Real>(g: &Matrix<T>) -> Option<Matrix<T>> {
    let (rows, cols) = g.shape();
    let mut q: Vec<Vec<Cx<T>>> = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut v = g.column(j);
        let orig: T = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        for _ in 0..2 {
            for u in &q {
                let p = u.iter().zip(&v).fold(Cx::zero(), |a: Cx<T>, (x, y)| a + x.conj() * y);
                for (x, y) in v.iter_mut().zip(u) {
                    *x -= p * y;
                }
            }
        }
        let nrm: T = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if !(nrm > orig * T::lit(1e-6)) {
            return None;
        }
        for x in &mut v {
            *x = *x / nrm;
        }
        q.push(v);
    }
    Some(Matrix::from_columns(rows, &q))
}

/// `(G + G*) / 2` for Gaussian `G`.
pub fn hermitian<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<T> {
    gaussian::<T, R>(rng, n, n).hermitian_part()
}

/// `R* R` for Gaussian `R`.
pub fn psd<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<T> {
    gaussian::<T, R>(rng, n, n).gram()
}

/// Product of Gaussian `rows × rank` and `rank × cols` factors.
pub fn with_rank<T: Real, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, rank: usize) -> Matrix<T> {
    let a = gaussian::<T, R>(rng, rows, rank);
    let b = gaussian::<T, R>(rng, rank, cols);
    &a * &b
}

/// Random `(T_1, …, T_n)` with `Σ T_i* T_i = I_d`: the `d × d` blocks of a
/// Haar isometry `C^d → C^{nd}`.
pub fn coefficient_tuple<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize, d: usize) -> Vec<Matrix<T>> {
    let v = haar_isometry::<T, R>(rng, n * d, d);
    (0..n).map(|i| v.block(i * d, 0, d, d)).collect()
}
