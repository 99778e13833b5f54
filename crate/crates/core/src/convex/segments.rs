//! Reduction of `n`-term C*-convex combinations to chains of two-term steps.
//!
//! A [`SegmentProgram`] is a straight-line program whose every step is a
//! C*-segment element `T1* L T1 + T2* R T2` with `T1*T1 + T2*T2 = I`. Since
//! each step stays inside any set closed under segments, a program that
//! reproduces `Σ T_i* A_i T_i` certifies that the combination lies in every
//! pseudo C*-convex set containing the inputs.

use std::fmt;

use super::{check_operands, partition_defect, split_column, unitary_polar, BimoduleElement, CoefficientTuple};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, hermitian_from_eigen, Matrix, Tolerance};
use crate::scalar::Real;

/// Operand of a step: an input element or the value of an earlier step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperandRef {
    Input(usize),
    Step(usize),
}

impl fmt::Display for OperandRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperandRef::Input(i) => write!(f, "in:{i}"),
            OperandRef::Step(j) => write!(f, "step:{j}"),
        }
    }
}

impl std::str::FromStr for OperandRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadReference(format!("cannot parse operand reference {s:?}"));
        let (kind, idx) = s.split_once(':').ok_or_else(bad)?;
        let idx: usize = idx.parse().map_err(|_| bad())?;
        match kind {
            "in" => Ok(OperandRef::Input(idx)),
            "step" => Ok(OperandRef::Step(idx)),
            _ => Err(bad()),
        }
    }
}

/// `T1* · left · T1 + T2* · right · T2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentStep<T: Real> {
    pub left: OperandRef,
    pub right: OperandRef,
    pub t1: Matrix<T>,
    pub t2: Matrix<T>,
}

impl<T: Real> SegmentStep<T> {
    /// `‖T1*T1 + T2*T2 − I‖`.
    pub fn defect(&self) -> T {
        partition_defect(&[self.t1.clone(), self.t2.clone()])
    }

    fn conjugation(op: OperandRef, u: Matrix<T>) -> Self {
        let z = Matrix::zeros(u.rows(), u.cols());
        Self { left: op, right: op, t1: u, t2: z }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SegmentProgram<T: Real> {
    pub steps: Vec<SegmentStep<T>>,
    pub output: OperandRef,
}

impl<T: Real> SegmentProgram<T> {
    /// Checks that every reference points at an input or an earlier step.
    pub fn validate(&self, inputs: usize) -> Result<()> {
        let check = |r: OperandRef, here: usize| match r {
            OperandRef::Input(i) if i < inputs => Ok(()),
            OperandRef::Step(j) if j < here => Ok(()),
            _ => Err(Error::BadReference(format!("{r} is not available at step {here}"))),
        };
        for (k, s) in self.steps.iter().enumerate() {
            check(s.left, k)?;
            check(s.right, k)?;
            if s.t1.rows() != s.t2.rows() || !s.t1.is_square() || !s.t2.is_square() {
                return Err(Error::DimensionMismatch(format!("step {k} coefficients are not square of equal size")));
            }
        }
        check(self.output, self.steps.len())
    }

    /// Largest step defect `‖T1*T1 + T2*T2 − I‖`.
    pub fn max_defect(&self) -> T {
        self.steps.iter().map(SegmentStep::defect).fold(T::zero(), T::max)
    }

    /// Number of steps with `T2 = 0`, i.e. pure unitary conjugations.
    pub fn conjugation_count(&self) -> usize {
        self.steps.iter().filter(|s| s.t2.max_abs() == T::zero()).count()
    }
}

/// Evaluates the program on `inputs`.
pub fn replay_program<T: Real>(
    inputs: &[BimoduleElement<T>],
    prog: &SegmentProgram<T>,
) -> Result<BimoduleElement<T>> {
    prog.validate(inputs.len())?;
    let mut values: Vec<BimoduleElement<T>> = Vec::with_capacity(prog.steps.len());
    let fetch = |r: OperandRef, values: &[BimoduleElement<T>]| match r {
        OperandRef::Input(i) => inputs[i].clone(),
        OperandRef::Step(j) => values[j].clone(),
    };
    for s in &prog.steps {
        let l = fetch(s.left, &values);
        let r = fetch(s.right, &values);
        l.check_compatible(&r)?;
        if s.t1.rows() != l.dim() {
            return Err(Error::DimensionMismatch(format!("step coefficients in M_{}, operands in M_{}", s.t1.rows(), l.dim())));
        }
        values.push(l.compress(&s.t1).add(&r.compress(&s.t2)));
    }
    Ok(fetch(prog.output, &values))
}

/// Emits a segment program whose replay equals `Σ T_i* A_i T_i`.
///
/// For `n ≥ 3`, each `T_i = U_i P_i` is split by the unitary polar
/// decomposition and `A_i` is first conjugated by `U_i`. With
/// `Q = √(I − P_n²)`, `S_i = P_i Q⁺` and `F = I − QQ⁺`, the coefficients
/// `S_i + F/√(n−1)` form a tuple of length `n − 1`; its combination `A'`
/// is built recursively and the final step joins `A'` and `U_n* A_n U_n`
/// with coefficients `(Q, P_n)`.
///
/// Numerically `Q` comes from the SVD of the stacked column
/// `(P_1; …; P_{n−1})`, whose Gram matrix is `I − P_n²`, and `P_n` is
/// rebuilt as `√(I − Q²)` in the same basis, so every step is an exact
/// segment to rounding. The completed tuple is renormalized by
/// `G^{-1/2}`, `G = Σ S_i* S_i`, before recursing.
pub fn reduce_to_segments<T: Real>(
    elements: &[BimoduleElement<T>],
    ts: &CoefficientTuple<T>,
    tol: &Tolerance<T>,
) -> Result<SegmentProgram<T>> {
    check_operands(elements, ts)?;
    let ops: Vec<OperandRef> = (0..ts.len()).map(OperandRef::Input).collect();
    let mut steps = Vec::new();
    let output = reduce(&ops, ts.coefficients().to_vec(), &mut steps, tol)?;
    Ok(SegmentProgram { steps, output })
}

fn push<T: Real>(steps: &mut Vec<SegmentStep<T>>, s: SegmentStep<T>) -> OperandRef {
    steps.push(s);
    OperandRef::Step(steps.len() - 1)
}

fn reduce<T: Real>(
    ops: &[OperandRef],
    ts: Vec<Matrix<T>>,
    steps: &mut Vec<SegmentStep<T>>,
    tol: &Tolerance<T>,
) -> Result<OperandRef> {
    let n = ts.len();
    match n {
        0 => return Err(Error::EmptyList),
        1 => {
            let (u, _) = unitary_polar(&ts[0])?;
            return Ok(push(steps, SegmentStep::conjugation(ops[0], u)));
        }
        2 => {
            let step = SegmentStep { left: ops[0], right: ops[1], t1: ts[0].clone(), t2: ts[1].clone() };
            return Ok(push(steps, step));
        }
        _ => {}
    }

    let d = ts[0].rows();
    let mut conj = Vec::with_capacity(n);
    let mut ps = Vec::with_capacity(n);
    for (op, t) in ops.iter().zip(&ts) {
        let (u, p) = unitary_polar(t)?;
        conj.push(push(steps, SegmentStep::conjugation(*op, u)));
        ps.push(p);
    }

    // Q and P_n share the eigenbasis of the split, so Q² + P_n² = I holds
    // to rounding; P_n is rebuilt from Q rather than taken from the polar part.
    let split = split_column(&ps[..n - 1], tol);
    let pnv: Vec<T> = split.sigma.iter().map(|&q| (T::one() - q * q).max(T::zero()).sqrt()).collect();
    let fv: Vec<T> = (0..d).map(|k| if k < split.rank { T::zero() } else { T::one() }).collect();
    let q = hermitian_from_eigen(&split.basis, &split.sigma);
    let pn = hermitian_from_eigen(&split.basis, &pnv);
    let f = hermitian_from_eigen(&split.basis, &fv).scale(T::from_usize(n - 1).unwrap().sqrt().recip());

    let s: Vec<Matrix<T>> = split.s.iter().map(|s| s + &f).collect();
    let s = renormalize(s);
    let inner = reduce(&conj[..n - 1], s, steps, tol)?;
    Ok(push(steps, SegmentStep { left: inner, right: conj[n - 1], t1: q, t2: pn }))
}

/// `S_i ↦ S_i G^{-1/2}` with `G = Σ S_i* S_i`, restoring `Σ S_i* S_i = I`.
fn renormalize<T: Real>(s: Vec<Matrix<T>>) -> Vec<Matrix<T>> {
    let d = s[0].rows();
    let mut g = Matrix::zeros(d, d);
    for m in &s {
        g = &g + &m.gram();
    }
    let e = hermitian_eigen(&g);
    if e.values.last().is_none_or(|&v| v <= T::zero()) {
        return s;
    }
    let inv: Vec<T> = e.values.iter().map(|&v| v.sqrt().recip()).collect();
    let w = hermitian_from_eigen(&e.vectors, &inv);
    s.iter().map(|m| m * &w).collect()
}
