//! Reference computations that avoid the library's eigen/SVD kernel:
//! Gaussian elimination, power iteration, forward-constructed instances
//! with known singular vectors, planar convex hulls.

#![allow(dead_code)]

use opalg::random::{gaussian, haar_unitary};
use opalg::{Complex64, Matrix64};
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Frobenius-norm distance; an upper bound for the spectral one.
pub fn dist(a: &Matrix64, b: &Matrix64) -> f64 {
    (a - b).fro_norm()
}

/// Row-reduces `[A | rhs]` with partial pivoting; `None` when `A` is
/// singular to working precision.
pub fn solve(a: &Matrix64, rhs: &Matrix64) -> Option<Matrix64> {
    let n = a.rows();
    assert!(a.is_square() && rhs.rows() == n);
    let m = rhs.cols();
    let mut w: Vec<Vec<Complex64>> =
        (0..n).map(|i| (0..n).map(|j| a[(i, j)]).chain((0..m).map(|j| rhs[(i, j)])).collect()).collect();
    let scale = a.max_abs().max(1e-300);
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| w[x][col].norm().total_cmp(&w[y][col].norm()))?;
        if w[piv][col].norm() <= 1e-13 * scale {
            return None;
        }
        w.swap(col, piv);
        let p = w[col][col];
        for v in w[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r != col {
                let f = w[r][col];
                if f != c(0.0, 0.0) {
                    let pivot_row = w[col].clone();
                    for (x, y) in w[r].iter_mut().zip(&pivot_row) {
                        *x -= f * y;
                    }
                }
            }
        }
    }
    Some(Matrix64::from_fn(n, m, |i, j| w[i][n + j]))
}

pub fn inverse(a: &Matrix64) -> Option<Matrix64> {
    solve(a, &Matrix64::identity(a.rows()))
}

/// Reduced row echelon form with full-column pivot search; returns the
/// pivot columns. Entries below `tol · max|a|` count as zero.
fn rref(a: &Matrix64, tol: f64) -> (Vec<Vec<Complex64>>, Vec<usize>) {
    let (rows, cols) = a.shape();
    let mut w: Vec<Vec<Complex64>> = (0..rows).map(|i| (0..cols).map(|j| a[(i, j)]).collect()).collect();
    let cut = tol * a.max_abs();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let piv = (r..rows).max_by(|&x, &y| w[x][col].norm().total_cmp(&w[y][col].norm())).unwrap();
        if w[piv][col].norm() <= cut {
            continue;
        }
        w.swap(r, piv);
        let p = w[r][col];
        for v in w[r].iter_mut() {
            *v /= p;
        }
        for k in 0..rows {
            if k != r {
                let f = w[k][col];
                let pr = w[r].clone();
                for (x, y) in w[k].iter_mut().zip(&pr) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (w, pivots)
}

/// Rank by elimination.
pub fn rank(a: &Matrix64, tol: f64) -> usize {
    rref(a, tol).1.len()
}

/// Kernel basis from the reduced row echelon form (not orthonormal).
pub fn kernel(a: &Matrix64, tol: f64) -> Vec<Vec<Complex64>> {
    let cols = a.cols();
    let (w, pivots) = rref(a, tol);
    let free: Vec<usize> = (0..cols).filter(|j| !pivots.contains(j)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![c(0.0, 0.0); cols];
            v[f] = c(1.0, 0.0);
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -w[r][f];
            }
            v
        })
        .collect()
}

/// Largest eigenvalue of a Hermitian PSD matrix by power iteration from a
/// fixed full-support start vector. Stops once the eigen-residual
/// `‖Hv − ρv‖` is below `1e-14·ρ`, which also bounds the error in `ρ`.
pub fn top_eigenvalue(h: &Matrix64, iters: usize) -> f64 {
    let n = h.rows();
    let mut v: Vec<Complex64> = (0..n).map(|i| c(1.0 + 0.37 * i as f64, 0.11 * (i * i) as f64 - 0.5)).collect();
    let mut lam = 0.0;
    for _ in 0..iters {
        let w = h.apply(&v);
        let nw = norm(&w);
        if nw == 0.0 {
            return 0.0;
        }
        let next: Vec<Complex64> = w.iter().map(|z| z / nw).collect();
        let hv = h.apply(&next);
        lam = next.iter().zip(&hv).map(|(a, b)| (a.conj() * b).re).sum();
        let resid: Vec<Complex64> = hv.iter().zip(&next).map(|(a, b)| a - b * lam).collect();
        if norm(&resid) <= 1e-14 * lam.abs() {
            return lam;
        }
        v = hv;
    }
    lam
}

/// Spectral norm by power iteration on `M*M`.
pub fn op_norm(m: &Matrix64) -> f64 {
    top_eigenvalue(&m.gram(), 20000).max(0.0).sqrt()
}

pub fn unit_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    let g: Matrix64 = gaussian(rng, n, 1);
    let v = g.column(0);
    let nv = norm(&v);
    v.iter().map(|z| z / nv).collect()
}

/// `B = X diag(s) Y*` with Haar unitaries `X`, `Y` and exactly `rank`
/// nonzero singular values drawn from `[0.5, 2]`.
pub struct KnownSvd {
    pub b: Matrix64,
    pub x: Matrix64,
    pub y: Matrix64,
    pub s: Vec<f64>,
    pub rank: usize,
}

impl KnownSvd {
    pub fn random<R: Rng>(rng: &mut R, d: usize, rank: usize) -> Self {
        let x: Matrix64 = haar_unitary(rng, d);
        let y: Matrix64 = haar_unitary(rng, d);
        let mut s: Vec<f64> = (0..d).map(|k| if k < rank { rng.random_range(0.5..2.0) } else { 0.0 }).collect();
        s.sort_by(|a, b| b.total_cmp(a));
        let b = &(&x * &Matrix64::from_real_diag(&s)) * &y.adjoint();
        Self { b, x, y, s, rank }
    }

    /// `Y diag(1/s) X*` on the support.
    pub fn pinv(&self) -> Matrix64 {
        let inv: Vec<f64> = self.s.iter().map(|&v| if v > 0.0 { 1.0 / v } else { 0.0 }).collect();
        &(&self.y * &Matrix64::from_real_diag(&inv)) * &self.x.adjoint()
    }

    /// Orthonormal kernel vectors: the trailing columns of `Y`.
    pub fn kernel(&self) -> Vec<Vec<Complex64>> {
        (self.rank..self.y.cols()).map(|j| self.y.column(j)).collect()
    }

    /// Projection onto `ran B`: leading columns of `X`.
    pub fn range_projection(&self) -> Matrix64 {
        let d = self.x.rows();
        let xr = self.x.block(0, 0, d, self.rank);
        &xr * &xr.adjoint()
    }
}

/// `‖A B⁺‖` from the known SVD, via power iteration.
pub fn lambda_oracle(a: &Matrix64, b: &KnownSvd) -> f64 {
    op_norm(&(a * &b.pinv()))
}

/// Largest sampled `‖Ax‖ / ‖Bx‖` over random unit vectors with
/// `‖Bx‖ > 1e-12`; `f64::INFINITY` if some sample has `Bx ≈ 0` but
/// `Ax ≠ 0`.
pub fn sampled_ratio<R: Rng>(rng: &mut R, a: &Matrix64, b: &Matrix64, extra: &[Vec<Complex64>], samples: usize) -> f64 {
    let n = a.cols();
    let mut best: f64 = 0.0;
    let mut test = |x: &[Complex64]| {
        let ax = norm(&a.apply(x));
        let bx = norm(&b.apply(x));
        if bx <= 1e-12 {
            if ax > 1e-8 {
                best = f64::INFINITY;
            }
        } else {
            best = best.max(ax / bx);
        }
    };
    for v in extra {
        test(v);
    }
    for _ in 0..samples {
        let x = unit_vector(rng, n);
        test(&x);
    }
    best
}

/// Convex hull of planar points (Andrew's monotone chain), counter-clockwise.
pub fn convex_hull(mut pts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Distance from `p` to a convex polygon (0 inside); handles degenerate
/// hulls (points and segments).
pub fn hull_distance(hull: &[(f64, f64)], p: (f64, f64)) -> f64 {
    let seg = |a: (f64, f64), b: (f64, f64)| {
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let len2 = dx * dx + dy * dy;
        let t = if len2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0) };
        ((p.0 - a.0 - t * dx).powi(2) + (p.1 - a.1 - t * dy).powi(2)).sqrt()
    };
    match hull.len() {
        0 => f64::INFINITY,
        1 => seg(hull[0], hull[0]),
        2 => seg(hull[0], hull[1]),
        n => {
            let inside = (0..n).all(|i| {
                let (a, b) = (hull[i], hull[(i + 1) % n]);
                (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0) >= 0.0
            });
            if inside {
                0.0
            } else {
                (0..n).map(|i| seg(hull[i], hull[(i + 1) % n])).fold(f64::INFINITY, f64::min)
            }
        }
    }
}

/// `A = C₀B` for Gaussian `C₀`, or, when `factorable` is false, that plus a
/// rank-one term `z w*` with `w ∈ ker B`, so `ker B ⊄ ker A`.
pub struct DouglasCase {
    pub a: Matrix64,
    pub c0: Matrix64,
    pub b: KnownSvd,
    pub factorable: bool,
}

pub fn douglas_case<R: Rng>(rng: &mut R, d: usize) -> DouglasCase {
    let r = rng.random_range(0..=d);
    let b = KnownSvd::random(rng, d, r);
    let c0: Matrix64 = gaussian(rng, d, d);
    let mut a = &c0 * &b.b;
    let factorable = r == d || rng.random_bool(0.6);
    if !factorable {
        let z = unit_vector(rng, d);
        let w = &b.kernel()[0];
        let leak = Matrix64::from_fn(d, d, |i, j| z[i] * w[j].conj());
        a = &a + &leak;
    }
    DouglasCase { a, c0, b, factorable }
}

/// Generators of a random unital *-subalgebra of `M_d`, conjugated by `u`:
/// scalars, a commutative algebra of spectral projections, a two-block
/// algebra, or all of `M_d`.
pub fn subalgebra_generators<R: Rng>(rng: &mut R, d: usize, u: &Matrix64) -> Vec<Matrix64> {
    let conj = |m: &Matrix64| &(u * m) * &u.adjoint();
    match rng.random_range(0..4) {
        0 => Vec::new(),
        1 => {
            let levels = rng.random_range(1..=d);
            let diag: Vec<f64> = (0..d).map(|_| rng.random_range(0..levels) as f64).collect();
            vec![conj(&Matrix64::from_real_diag(&diag))]
        }
        2 if d >= 2 => {
            let k = rng.random_range(1..d);
            (0..2)
                .map(|_| {
                    let mut m = Matrix64::zeros(d, d);
                    m.set_block(0, 0, &gaussian(rng, k, k));
                    m.set_block(k, k, &gaussian(rng, d - k, d - k));
                    conj(&m)
                })
                .collect()
        }
        _ => vec![conj(&gaussian(rng, d, d)), conj(&gaussian(rng, d, d))],
    }
}

/// `(T_1, …, T_n)` with `Σ T_i* T_i = I` where `T_n` has exactly `saturated`
/// singular values equal to one, so `I − T_n* T_n` is singular.
pub fn saturated_tuple<R: Rng>(rng: &mut R, n: usize, d: usize, saturated: usize) -> Vec<Matrix64> {
    assert!(n >= 2 && saturated <= d);
    let y: Matrix64 = haar_unitary(rng, d);
    let w: Matrix64 = haar_unitary(rng, d);
    let cvals: Vec<f64> = (0..d).map(|k| if k < saturated { 1.0 } else { rng.random_range(0.0..0.95) }).collect();
    let rest: Vec<f64> = cvals.iter().map(|c| (1.0 - c * c).sqrt()).collect();
    let last = &(&w * &Matrix64::from_real_diag(&cvals)) * &y.adjoint();
    let v: Matrix64 = opalg::random::haar_isometry(rng, (n - 1) * d, d);
    let tail = &(&v * &Matrix64::from_real_diag(&rest)) * &y.adjoint();
    let mut out: Vec<Matrix64> = (0..n - 1).map(|i| tail.block(i * d, 0, d, d)).collect();
    out.push(last);
    out
}

