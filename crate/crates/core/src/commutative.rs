//! Functions on the convergent sequence `X = {0} ∪ {1/n : n ≥ 1}`.
//!
//! A [`SequenceFunction`] stores `f(1/1), …, f(1/N)` and an optional value at
//! `0`. Continuity at `0` is the only topological content of `X`, and a
//! finite truncation can only test it heuristically. When the declared limits
//! of the inputs determine the value at `0` (a nonzero denominator, say),
//! that value is used. Otherwise a forced quotient is declared extendable
//! when its tail is explained, to within `tail_tol`, by a polynomial of
//! degree at most three in `x = 1/n`, and the extrapolated value at `x = 0` is
//! the witness limit. The raw tail oscillation is reported next to
//! the verdict so callers can judge for themselves.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{cx, real, Cx, Real};

/// Truncated model of a function in `C(X)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceFunction<T: Real> {
    samples: Vec<Cx<T>>,
    limit: Option<Cx<T>>,
    tail_window: usize,
}

impl<T: Real> SequenceFunction<T> {
    /// Samples `f(1/1), …, f(1/N)` and the declared value at `0`; the tail
    /// window defaults to `max(1, N/4)`.
    pub fn new(samples: Vec<Cx<T>>, limit: Option<Cx<T>>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidDimension("sequence depth must be positive".into()));
        }
        let finite = |z: &Cx<T>| z.re.is_finite() && z.im.is_finite();
        if let Some(k) = samples.iter().position(|z| !finite(z)) {
            return Err(Error::NonFinite { row: k, col: 0 });
        }
        if limit.as_ref().is_some_and(|z| !finite(z)) {
            return Err(Error::Format("non-finite limit".into()));
        }
        let tail_window = (samples.len() / 4).max(1);
        Ok(Self { samples, limit, tail_window })
    }

    /// `f(1/n)` from a closure over `n = 1..=depth`.
    pub fn from_fn(depth: usize, limit: Option<Cx<T>>, f: impl Fn(usize) -> Cx<T>) -> Result<Self> {
        Self::new((1..=depth).map(f).collect(), limit)
    }

    pub fn from_real_fn(depth: usize, limit: Option<f64>, f: impl Fn(usize) -> f64) -> Result<Self> {
        Self::from_fn(depth, limit.map(|l| real(T::lit(l))), |n| real(T::lit(f(n))))
    }

    pub fn with_tail_window(mut self, w: usize) -> Result<Self> {
        if w == 0 || w > self.depth() {
            return Err(Error::InvalidDimension(format!("tail window {w} for depth {}", self.depth())));
        }
        self.tail_window = w;
        Ok(self)
    }

    /// Checks the declared limit against the tail:
    /// `max_{tail} |f(1/n) − f(0)| ≤ tail_tol`.
    pub fn assert_continuous(self, tail_tol: T) -> Result<Self> {
        let Some(l) = self.limit else {
            return Err(Error::NotContinuous { deviation: f64::INFINITY });
        };
        let dev = self.tail().iter().map(|z| (*z - l).norm()).fold(T::zero(), T::max);
        if dev > tail_tol {
            return Err(Error::NotContinuous { deviation: dev.as_f64() });
        }
        Ok(self)
    }

    pub fn depth(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[Cx<T>] {
        &self.samples
    }

    pub fn limit(&self) -> Option<Cx<T>> {
        self.limit
    }

    pub fn tail_window(&self) -> usize {
        self.tail_window
    }

    /// `f(1/n)`, one-based.
    pub fn at(&self, n: usize) -> Cx<T> {
        self.samples[n - 1]
    }

    fn tail(&self) -> &[Cx<T>] {
        &self.samples[self.depth() - self.tail_window..]
    }

    /// First `depth` samples; the tail window is clamped.
    pub fn truncate(&self, depth: usize) -> Result<Self> {
        if depth == 0 || depth > self.depth() {
            return Err(Error::InvalidDimension(format!("cannot truncate depth {} to {depth}", self.depth())));
        }
        let w = self.tail_window.min(depth);
        Self::new(self.samples[..depth].to_vec(), self.limit)?.with_tail_window(w)
    }

    /// Pointwise modulus.
    pub fn abs(&self) -> Self {
        Self {
            samples: self.samples.iter().map(|z| real(z.norm())).collect(),
            limit: self.limit.map(|z| real(z.norm())),
            tail_window: self.tail_window,
        }
    }

    /// Largest pointwise distance, limits included when both are present.
    pub fn max_distance(&self, other: &Self) -> T {
        let mut d = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max);
        if let (Some(a), Some(b)) = (self.limit, other.limit) {
            d = d.max((a - b).norm());
        }
        d
    }

    fn check_depth(&self, other: &Self) -> Result<()> {
        if self.depth() != other.depth() {
            return Err(Error::DimensionMismatch(format!("depth {} vs {}", self.depth(), other.depth())));
        }
        Ok(())
    }
}

/// Whether forced values extend continuously to `0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionVerdict<T: Real> {
    pub extendable: bool,
    /// Value at `0`, declared or extrapolated; present iff `extendable`.
    pub witness_limit: Option<Cx<T>>,
    /// Largest pairwise distance among forced values in the tail window.
    pub oscillation: T,
    /// Largest deviation of the forced tail from its low-degree fit in `x`.
    pub fit_residual: T,
}

/// A constructed function together with the verdict that produced it.
/// `function` is `None` exactly when the verdict is not extendable.
#[derive(Debug, Clone)]
pub struct Extension<T: Real> {
    pub function: Option<SequenceFunction<T>>,
    pub verdict: ExtensionVerdict<T>,
}

impl<T: Real> Extension<T> {
    pub fn ok(self) -> Option<SequenceFunction<T>> {
        self.function
    }
}

fn solve_small(mut a: Vec<Vec<f64>>, mut b: Vec<[f64; 2]>) -> Option<Vec<[f64; 2]>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in (col + 1)..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r][0] -= f * b[col][0];
            b[r][1] -= f * b[col][1];
        }
    }
    let mut x = vec![[0.0; 2]; n];
    for r in (0..n).rev() {
        let mut acc = b[r];
        for c in (r + 1)..n {
            acc[0] -= a[r][c] * x[c][0];
            acc[1] -= a[r][c] * x[c][1];
        }
        x[r] = [acc[0] / a[r][r], acc[1] / a[r][r]];
    }
    Some(x)
}

/// Least-squares polynomial fit of degree `min(3, len − 3)` in `x`,
/// evaluated at `x = 0`; returns `(value at 0, max residual)`.
fn extrapolate(points: &[(f64, [f64; 2])]) -> ([f64; 2], f64) {
    let m = points.len();
    let mean = points.iter().map(|p| p.0).sum::<f64>() / m as f64;
    let spread = points.iter().map(|p| (p.0 - mean).abs()).fold(0.0, f64::max);
    let deg = if spread == 0.0 { 0 } else { m.saturating_sub(3).min(3) };
    let scale = if spread == 0.0 { 1.0 } else { spread };
    let k = deg + 1;
    let mut ata = vec![vec![0.0; k]; k];
    let mut atb = vec![[0.0; 2]; k];
    for &(x, y) in points {
        let u = (x - mean) / scale;
        let pows: Vec<f64> = (0..k).map(|e| u.powi(e as i32)).collect();
        for i in 0..k {
            for j in 0..k {
                ata[i][j] += pows[i] * pows[j];
            }
            atb[i][0] += pows[i] * y[0];
            atb[i][1] += pows[i] * y[1];
        }
    }
    let coef = solve_small(ata, atb).unwrap_or_else(|| vec![[0.0; 2]; k]);
    let eval = |u: f64| {
        let mut r = [0.0, 0.0];
        for (e, c) in coef.iter().enumerate() {
            let p = u.powi(e as i32);
            r[0] += c[0] * p;
            r[1] += c[1] * p;
        }
        r
    };
    let residual = points
        .iter()
        .map(|&(x, y)| {
            let p = eval((x - mean) / scale);
            (y[0] - p[0]).hypot(y[1] - p[1])
        })
        .fold(0.0, f64::max);
    (eval(-mean / scale), residual)
}

/// Fills free samples from forced ones and decides continuity at `0`.
///
/// Free samples take the value of the nearest forced sample (ties go to the
/// smaller `n`); with no forced samples at all everything is `fallback`.
/// A `declared` value at `0`, derived from declared limits, settles
/// continuity; otherwise the tail fit decides.
fn extend_forced<T: Real>(
    forced: &[Option<Cx<T>>],
    window: usize,
    tail_tol: T,
    fallback: Cx<T>,
    declared: Option<Cx<T>>,
) -> (ExtensionVerdict<T>, Vec<Cx<T>>) {
    let depth = forced.len();
    let tail: Vec<(usize, Cx<T>)> = (depth - window..depth).filter_map(|i| forced[i].map(|v| (i, v))).collect();
    let mut oscillation = T::zero();
    for (a, &(_, x)) in tail.iter().enumerate() {
        for &(_, y) in &tail[a + 1..] {
            oscillation = oscillation.max((x - y).norm());
        }
    }

    let filled = fill_nearest(forced, fallback);
    let (witness, fit_residual) = if tail.is_empty() {
        // the forced set stays away from 0: any value extends continuously
        (Some(filled[depth - 1]), T::zero())
    } else {
        let pts: Vec<(f64, [f64; 2])> =
            tail.iter().map(|&(i, v)| (1.0 / (i + 1) as f64, [v.re.as_f64(), v.im.as_f64()])).collect();
        let (at0, res) = extrapolate(&pts);
        (Some(cx(T::lit(at0[0]), T::lit(at0[1]))), T::lit(res))
    };
    let extendable = declared.is_some() || fit_residual <= tail_tol;
    let verdict = ExtensionVerdict {
        extendable,
        witness_limit: if extendable { declared.or(witness) } else { None },
        oscillation,
        fit_residual,
    };
    (verdict, filled)
}

fn fill_nearest<T: Real>(forced: &[Option<Cx<T>>], fallback: Cx<T>) -> Vec<Cx<T>> {
    let idx: Vec<usize> = (0..forced.len()).filter(|&i| forced[i].is_some()).collect();
    if idx.is_empty() {
        return vec![fallback; forced.len()];
    }
    let mut out = Vec::with_capacity(forced.len());
    let mut k = 0;
    for (i, v) in forced.iter().enumerate() {
        if let Some(v) = v {
            out.push(*v);
            continue;
        }
        while k + 1 < idx.len() && idx[k + 1] < i {
            k += 1;
        }
        let left = idx[k];
        let pick = if left > i {
            left
        } else if k + 1 < idx.len() && idx[k + 1] - i < i - left {
            idx[k + 1]
        } else {
            left
        };
        out.push(forced[pick].unwrap());
    }
    out
}

#[inline]
fn nonzero<T: Real>(z: Cx<T>) -> bool {
    z.norm() > T::zero()
}

fn build<T: Real>(
    verdict: ExtensionVerdict<T>,
    samples: Vec<Cx<T>>,
    window: usize,
) -> Result<Extension<T>> {
    let function = if verdict.extendable {
        Some(SequenceFunction::new(samples, verdict.witness_limit)?.with_tail_window(window)?)
    } else {
        None
    };
    Ok(Extension { function, verdict })
}

/// Weak polar factor: `v` with `f = v·|f|`, forced to `f/|f|` on the cozero
/// set of `f` and `0` when `f ≡ 0`. A nonzero declared `f(0)` gives
/// `v(0) = f(0)/|f(0)|`.
pub fn wpdp_factor<T: Real>(f: &SequenceFunction<T>, tail_tol: T) -> Result<Extension<T>> {
    let forced: Vec<Option<Cx<T>>> =
        f.samples.iter().map(|&z| if nonzero(z) { Some(z / z.norm()) } else { None }).collect();
    let declared = f.limit.filter(|&l| nonzero(l)).map(|l| l / l.norm());
    let (verdict, samples) = extend_forced(&forced, f.tail_window, tail_tol, Cx::zero(), declared);
    build(verdict, samples, f.tail_window)
}

fn check_majorized<T: Real>(f: &SequenceFunction<T>, g: &SequenceFunction<T>, tol: T) -> Result<()> {
    f.check_depth(g)?;
    if let Some(index) = f.samples.iter().zip(&g.samples).position(|(a, b)| a.norm() > b.norm() + tol) {
        return Err(Error::MajorizationFails { index: index + 1 });
    }
    Ok(())
}

/// Quotient `h` with `f = h·g`: forced to `f/g` on the cozero set of `g`,
/// returned only when the forced values extend continuously to `0`. A
/// nonzero declared `g(0)` gives `h(0) = f(0)/g(0)`.
pub fn dfp_factor<T: Real>(f: &SequenceFunction<T>, g: &SequenceFunction<T>, tail_tol: T) -> Result<Extension<T>> {
    check_majorized(f, g, tail_tol)?;
    let forced: Vec<Option<Cx<T>>> =
        f.samples.iter().zip(&g.samples).map(|(&a, &b)| if nonzero(b) { Some(a / b) } else { None }).collect();
    let declared = match (f.limit, g.limit) {
        (Some(a), Some(b)) if nonzero(b) => Some(a / b),
        _ => None,
    };
    let (verdict, samples) = extend_forced(&forced, g.tail_window, tail_tol, Cx::zero(), declared);
    build(verdict, samples, g.tail_window)
}

/// Quotient obtained only through weak polar factors: with
/// `s = |f| + i√(|g|² − |f|²)` and `s = v|s|`, `h = v_f · Re(v) · conj(v_g)`.
pub fn wpdp_to_dfp<T: Real>(f: &SequenceFunction<T>, g: &SequenceFunction<T>, tail_tol: T) -> Result<Extension<T>> {
    check_majorized(f, g, tail_tol)?;
    let lift = |a: Cx<T>, b: Cx<T>| {
        let (fa, gb) = (a.norm(), b.norm());
        cx(fa, (gb * gb - fa * fa).max(T::zero()).sqrt())
    };
    let s_samples: Vec<Cx<T>> = f.samples.iter().zip(&g.samples).map(|(&a, &b)| lift(a, b)).collect();
    let s_limit = match (f.limit, g.limit) {
        (Some(a), Some(b)) => Some(lift(a, b)),
        _ => None,
    };
    let s = SequenceFunction::new(s_samples, s_limit)?.with_tail_window(g.tail_window)?;

    let mut parts = Vec::with_capacity(3);
    for x in [&s, f, g] {
        let e = wpdp_factor(x, tail_tol)?;
        match e.function {
            Some(v) => parts.push(v),
            None => return Ok(Extension { function: None, verdict: e.verdict }),
        }
    }
    let (v, vf, vg) = (&parts[0], &parts[1], &parts[2]);
    let combine = |vs: Cx<T>, a: Cx<T>, b: Cx<T>| a * real(vs.re) * b.conj();
    let samples: Vec<Cx<T>> =
        (0..f.depth()).map(|i| combine(v.samples[i], vf.samples[i], vg.samples[i])).collect();
    let limit = match (v.limit, vf.limit, vg.limit) {
        (Some(a), Some(b), Some(c)) => Some(combine(a, b, c)),
        _ => None,
    };
    let forced: Vec<Option<Cx<T>>> =
        (0..f.depth()).map(|i| if nonzero(g.samples[i]) { Some(samples[i]) } else { None }).collect();
    let (mut verdict, _) = extend_forced(&forced, g.tail_window, tail_tol, Cx::zero(), None);
    verdict.extendable = true;
    verdict.witness_limit = limit;
    let h = SequenceFunction::new(samples, limit)?.with_tail_window(g.tail_window)?;
    Ok(Extension { function: Some(h), verdict })
}

/// For a partition of unity `t1 + t2 + t3 = 1` with values in `[0, 1]`,
/// returns `s` with `t2 = s(1 − t1)`, so that
/// `t1 f1 + t2 f2 + t3 f3 = t1 f1 + (1 − t1)(s f2 + (1 − s) f3)`.
/// Free values are filled from the nearest forced one, or `1/2` when `t1 ≡ 1`.
pub fn substonean_reduce<T: Real>(
    t1: &SequenceFunction<T>,
    t2: &SequenceFunction<T>,
    t3: &SequenceFunction<T>,
    tail_tol: T,
) -> Result<Extension<T>> {
    t1.check_depth(t2)?;
    t1.check_depth(t3)?;
    let mut defect = T::zero();
    let range_defect = |z: Cx<T>| z.im.abs().max(-z.re).max(z.re - T::one()).max(T::zero());
    for i in 0..t1.depth() {
        let (a, b, c) = (t1.samples[i], t2.samples[i], t3.samples[i]);
        defect = defect.max(range_defect(a)).max(range_defect(b)).max(range_defect(c));
        defect = defect.max((a + b + c - real(T::one())).norm());
    }
    if defect > tail_tol {
        return Err(Error::NotPartitionOfUnity { defect: defect.as_f64() });
    }
    let eps = T::epsilon() * T::lit(4.0);
    let clamp = |x: T| x.max(T::zero()).min(T::one());
    let forced: Vec<Option<Cx<T>>> = (0..t1.depth())
        .map(|i| {
            let rest = T::one() - t1.samples[i].re;
            if rest > eps {
                Some(real(clamp(t2.samples[i].re / rest)))
            } else {
                None
            }
        })
        .collect();
    let declared = match (t1.limit, t2.limit) {
        (Some(a), Some(b)) if T::one() - a.re > eps => Some(real(clamp(b.re / (T::one() - a.re)))),
        _ => None,
    };
    let (mut verdict, samples) = extend_forced(&forced, t1.tail_window, tail_tol, real(T::lit(0.5)), declared);
    verdict.witness_limit = verdict.witness_limit.map(|z| real(clamp(z.re)));
    build(verdict, samples, t1.tail_window)
}

/// Sequence analogue of the isolated-zero test for the multiplication
/// operator by `g`, whose spectrum is `{|g(1/n)|²} ∪ {|g(0)|²}`. Zero fails
/// to be isolated when the tail window carries nonzero spectral values that
/// either dip below `gap_tol` or converge to a declared `|g(0)|² ≤ gap_tol`.
/// The gap is the infimum of all nonzero spectral values.
pub fn is_zero_isolated_sequence<T: Real>(g: &SequenceFunction<T>, gap_tol: T) -> (bool, T) {
    let spec = |z: Cx<T>| z.norm_sqr();
    let mut values: Vec<T> = g.samples.iter().map(|&z| spec(z)).collect();
    if let Some(l) = g.limit {
        values.push(spec(l));
    }
    let gap = values.iter().copied().filter(|v| *v > T::zero()).fold(T::infinity(), T::min);
    if gap == T::infinity() {
        return (true, T::zero());
    }
    let tail_inf = g.tail().iter().map(|&z| spec(z)).filter(|v| *v > T::zero()).fold(T::infinity(), T::min);
    if tail_inf == T::infinity() {
        return (true, gap);
    }
    let limit_small = g.limit.is_some_and(|l| spec(l) <= gap_tol);
    (tail_inf >= gap_tol && !limit_small, gap)
}

/// `max_n |f(1/n) − h(1/n)·g(1/n)|`.
pub fn product_residual<T: Real>(f: &SequenceFunction<T>, h: &SequenceFunction<T>, g: &SequenceFunction<T>) -> T {
    (0..f.depth()).map(|i| (f.samples[i] - h.samples[i] * g.samples[i]).norm()).fold(T::zero(), T::max)
}

/// The pair `f, g` on `{0} ∪ {1/n}` with `g(x) = x` and `f(x) = x` at
/// `x = 1/(2n)`, zero elsewhere: `f̄f ≤ ḡg`, but `f/g` alternates between
/// `1` and `0` and has no continuous extension to `0`.
pub fn counterexample_pair<T: Real>(depth: usize) -> Result<(SequenceFunction<T>, SequenceFunction<T>)> {
    let f = SequenceFunction::from_real_fn(depth, Some(0.0), |n| if n % 2 == 0 { 1.0 / n as f64 } else { 0.0 })?;
    let g = SequenceFunction::from_real_fn(depth, Some(0.0), |n| 1.0 / n as f64)?;
    Ok((f, g))
}
