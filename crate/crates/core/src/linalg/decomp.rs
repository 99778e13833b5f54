//! Jacobi-type Hermitian eigendecomposition and singular value decomposition.
//!
//! Both routines are deterministic: values come back in descending order and
//! every vector carries the phase convention "first significant component is
//! real and positive". Jacobi methods are slow for large matrices but deliver
//! small singular values to high relative accuracy, which matters for rank
//! decisions in the rest of the crate.

use num_traits::{One, Zero};

use super::matrix::Matrix;
use crate::scalar::{abs2, real, Cx, Real};

const MAX_SWEEPS: usize = 100;

/// `H = V diag(values) V*` with `values` descending.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T: Real> {
    pub values: Vec<T>,
    pub vectors: Matrix<T>,
}

/// Thin SVD `A = U diag(s) V*`; `U` is `m×k`, `V` is `n×k`, `k = min(m, n)`.
#[derive(Debug, Clone)]
pub struct Svd<T: Real> {
    pub u: Matrix<T>,
    pub s: Vec<T>,
    pub v: Matrix<T>,
}

fn norm2<T: Real>(v: &[Cx<T>]) -> T {
    v.iter().map(|&z| abs2(z)).sum()
}

fn dot<T: Real>(a: &[Cx<T>], b: &[Cx<T>]) -> Cx<T> {
    a.iter().zip(b).fold(Cx::zero(), |acc, (x, y)| acc + x.conj() * y)
}

/// Multiplies `v` by the unit phase that makes its first significant
/// component real positive; returns the phase applied.
pub(crate) fn fix_phase<T: Real>(v: &mut [Cx<T>]) -> Cx<T> {
    let max = v.iter().map(|z| z.norm()).fold(T::zero(), T::max);
    if max == T::zero() {
        return Cx::one();
    }
    let thresh = max * T::epsilon().sqrt();
    let lead = v.iter().find(|z| z.norm() > thresh).copied().unwrap_or_else(Cx::one);
    let phase = lead.conj() / lead.norm();
    for z in v.iter_mut() {
        *z *= phase;
    }
    phase
}

/// Eigendecomposition of the Hermitian part of `h` by cyclic complex Jacobi
/// rotations.
pub fn hermitian_eigen<T: Real>(h: &Matrix<T>) -> HermitianEigen<T> {
    assert!(h.is_square(), "eigendecomposition needs a square matrix");
    let n = h.rows();
    let mut a = h.hermitian_part();
    let mut v = Matrix::<T>::identity(n);
    let eps = T::epsilon();

    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        let mut total = T::zero();
        for i in 0..n {
            for j in 0..n {
                let w = abs2(a[(i, j)]);
                total += w;
                if i != j {
                    off += w;
                }
            }
        }
        if off <= eps * eps * total || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let b = apq.norm();
                if b == T::zero() {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                if b <= eps * T::lit(0.25) * (app.abs() + aqq.abs()) * eps {
                    a[(p, q)] = Cx::zero();
                    a[(q, p)] = Cx::zero();
                    continue;
                }
                let e = apq / b;
                let theta = (aqq - app) / (b + b);
                let t = if theta >= T::zero() {
                    T::one() / (theta + (theta * theta + T::one()).sqrt())
                } else {
                    -T::one() / (-theta + (theta * theta + T::one()).sqrt())
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                let ec = e.conj();
                // columns: A <- A J
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * ec * s;
                    a[(k, q)] = akp * s + akq * ec * c;
                }
                // rows: A <- J* A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * e * s;
                    a[(q, k)] = apk * s + aqk * e * c;
                }
                a[(p, q)] = Cx::zero();
                a[(q, p)] = Cx::zero();
                a[(p, p)] = real(app - t * b);
                a[(q, q)] = real(aqq + t * b);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * ec * s;
                    v[(k, q)] = vkp * s + vkq * ec * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap());
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut columns: Vec<Vec<Cx<T>>> = order.iter().map(|&i| v.column(i)).collect();
    for col in &mut columns {
        fix_phase(col);
    }
    HermitianEigen { values, vectors: Matrix::from_columns(n, &columns) }
}

/// Extends orthonormal columns of length `dim` to an orthonormal basis of
/// `C^dim`, drawing candidates from the standard basis in order.
pub fn complete_orthonormal<T: Real>(mut columns: Vec<Vec<Cx<T>>>, dim: usize) -> Vec<Vec<Cx<T>>> {
    let mut k = 0;
    while columns.len() < dim && k < dim {
        let mut e = vec![Cx::zero(); dim];
        e[k] = Cx::one();
        k += 1;
        for _ in 0..2 {
            for c in &columns {
                let proj = dot(c, &e);
                for (x, y) in e.iter_mut().zip(c) {
                    *x -= proj * y;
                }
            }
        }
        let nrm = norm2(&e).sqrt();
        if nrm > T::lit(0.5) / T::from_usize(dim).unwrap().sqrt() {
            for x in &mut e {
                *x = *x / nrm;
            }
            columns.push(e);
        }
    }
    columns
}

/// Singular value decomposition by one-sided (Hestenes) Jacobi rotations.
pub fn svd<T: Real>(a: &Matrix<T>) -> Svd<T> {
    let (m, n) = a.shape();
    if m < n {
        let t = svd_tall(&a.adjoint());
        return finish(Svd { u: t.v, s: t.s, v: t.u });
    }
    finish(svd_tall(a))
}

fn svd_tall<T: Real>(a: &Matrix<T>) -> Svd<T> {
    let (m, n) = a.shape();
    let mut g: Vec<Vec<Cx<T>>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<Cx<T>>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { Cx::one() } else { Cx::zero() }).collect())
        .collect();
    let eps = T::epsilon();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = norm2(&g[p]);
                let beta = norm2(&g[q]);
                let gamma = dot(&g[p], &g[q]);
                let gr = gamma.norm();
                if gr == T::zero() || gr <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let ec = (gamma / gr).conj();
                let zeta = (beta - alpha) / (gr + gr);
                let t = if zeta >= T::zero() {
                    T::one() / (zeta + (T::one() + zeta * zeta).sqrt())
                } else {
                    -T::one() / (-zeta + (T::one() + zeta * zeta).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for vecs in [&mut g, &mut v] {
                    let (lo, hi) = vecs.split_at_mut(q);
                    let (xp, xq) = (&mut lo[p], &mut hi[0]);
                    for (x, y) in xp.iter_mut().zip(xq.iter_mut()) {
                        let yt = *y * ec;
                        let xo = *x;
                        *x = xo * c - yt * s;
                        *y = xo * s + yt * c;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut s: Vec<T> = g.iter().map(|col| norm2(col).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| s[j].partial_cmp(&s[i]).unwrap());
    s = order.iter().map(|&i| s[i]).collect();
    let smax = s.first().copied().unwrap_or_else(T::zero);
    let tiny = smax * eps;

    let mut ucols: Vec<Vec<Cx<T>>> = Vec::with_capacity(n);
    let mut vcols: Vec<Vec<Cx<T>>> = Vec::with_capacity(n);
    for (idx, &i) in order.iter().enumerate() {
        vcols.push(v[i].clone());
        if s[idx] > tiny && s[idx] > T::zero() {
            ucols.push(g[i].iter().map(|&z| z / s[idx]).collect());
        }
    }
    let defined = ucols.len();
    let full = complete_orthonormal(ucols, m);
    let ucols: Vec<Vec<Cx<T>>> = full.into_iter().take(n.max(defined)).collect();
    Svd { u: Matrix::from_columns(m, &ucols), s, v: Matrix::from_columns(n, &vcols) }
}

/// Applies the phase convention to right singular vectors and recomputes
/// the matching left singular vectors.
fn finish<T: Real>(mut svd: Svd<T>) -> Svd<T> {
    let k = svd.s.len();
    let smax = svd.s.first().copied().unwrap_or_else(T::zero);
    for j in 0..k {
        let mut vj = svd.v.column(j);
        let phase = fix_phase(&mut vj);
        svd.v.set_column(j, &vj);
        if svd.s[j] > smax * T::epsilon() && svd.s[j] > T::zero() {
            let mut uj = svd.u.column(j);
            for z in &mut uj {
                *z *= phase;
            }
            svd.u.set_column(j, &uj);
        }
    }
    svd
}

/// Full unitary factors: `A = W Σ X*` with `W` `m×m` and `X` `n×n`.
pub fn full_svd<T: Real>(a: &Matrix<T>) -> (Matrix<T>, Vec<T>, Matrix<T>) {
    let (m, n) = a.shape();
    let t = svd(a);
    let ucols: Vec<Vec<Cx<T>>> = (0..t.u.cols()).map(|j| t.u.column(j)).collect();
    let vcols: Vec<Vec<Cx<T>>> = (0..t.v.cols()).map(|j| t.v.column(j)).collect();
    let w = Matrix::from_columns(m, &complete_orthonormal(ucols, m));
    let x = Matrix::from_columns(n, &complete_orthonormal(vcols, n));
    (w, t.s, x)
}
