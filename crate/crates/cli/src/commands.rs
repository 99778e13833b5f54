use serde_json::{json, Map, Value};

use opalg::commutative::{self, Extension, SequenceFunction};
use opalg::convex::{self, BimoduleElement, CoefficientTuple};
use opalg::json::{
    complex_to_json, element_to_json, matrix_to_json, number, program_to_json, real_to_json, sequence_to_json,
};
use opalg::linalg::{numerical_rank, range_projection, spectral_norm};
use opalg::{douglas, ideals, Error, Matrix, Result, Tolerance};

use crate::args::{Cli, Command, Common};
use crate::input::Inputs;
use crate::report::Status;

const DEFAULT_SEQ_TOL: f64 = 1e-6;
const DEFAULT_SAMPLES: usize = 16;
const DEFAULT_DEMO_SAMPLES: usize = 10_000;

pub struct Outcome {
    pub status: Status,
    pub payload: Map<String, Value>,
    /// Entries written by `--out`, readable again through `--input`.
    pub outputs: Map<String, Value>,
}

impl Outcome {
    fn new(status: Status) -> Self {
        Self { status, payload: Map::new(), outputs: Map::new() }
    }

    fn put(mut self, key: &str, v: Value) -> Self {
        self.payload.insert(key.into(), v);
        self
    }

    fn output(mut self, key: &str, v: Value) -> Self {
        self.outputs.insert(key.into(), v.clone());
        self.payload.insert(key.into(), v);
        self
    }

    /// Downgrades `ok` to `refuted` when a residual exceeds its bound.
    fn check(mut self, residual: f64, bound: f64) -> Self {
        if self.status == Status::Ok && !(residual <= bound) {
            self.status = Status::Refuted;
        }
        self
    }
}

struct Ctx<'a> {
    common: &'a Common,
    inputs: Inputs,
    tol_override: Option<f64>,
}

impl Ctx<'_> {
    fn tolerance(&self) -> Result<Tolerance<f64>> {
        match self.tol_override {
            Some(t) => Tolerance::with_residual(t),
            None => Ok(Tolerance::default()),
        }
    }

    fn seq_tol(&self) -> Result<f64> {
        let t = self.tol_override.unwrap_or(DEFAULT_SEQ_TOL);
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::InvalidTolerance(format!("tolerance {t}")));
        }
        Ok(t)
    }

    /// `--names`, or `defaults` when absent.
    fn names(&self, defaults: &[&str]) -> Vec<String> {
        if self.common.names.is_empty() {
            defaults.iter().map(|s| s.to_string()).collect()
        } else {
            self.common.names.clone()
        }
    }

    fn exactly(&self, defaults: &[&str]) -> Result<Vec<String>> {
        let names = self.names(defaults);
        if names.len() != defaults.len() {
            return Err(Error::InvalidCount(format!("expected {} names, got {}", defaults.len(), names.len())));
        }
        Ok(names)
    }

    /// `--names`, or every entry of the inputs.
    fn list(&self) -> Vec<String> {
        if self.common.names.is_empty() {
            self.inputs.names()
        } else {
            self.common.names.clone()
        }
    }

    fn sequence(&self, name: &str) -> Result<SequenceFunction<f64>> {
        let f = self.inputs.sequence(name)?;
        match self.common.depth {
            Some(d) => f.truncate(d),
            None => Ok(f),
        }
    }
}

fn env_tol() -> Result<Option<f64>> {
    match std::env::var("OPALG_TOL") {
        Ok(s) => s
            .trim()
            .parse::<f64>()
            .map(Some)
            .map_err(|_| Error::InvalidTolerance(format!("OPALG_TOL={s:?} is not a number"))),
        Err(_) => Ok(None),
    }
}

pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    let tol_override = match cli.common.tol {
        Some(t) => Some(t),
        None => env_tol()?,
    };
    let ctx = Ctx { common: &cli.common, inputs: Inputs::load(&cli.common.input)?, tol_override };
    match cli.command {
        Command::Factor => factor(&ctx),
        Command::FactorIsometric => factor_isometric(&ctx),
        Command::Lambda => lambda(&ctx),
        Command::Polar => polar(&ctx),
        Command::IdealContains => ideal_contains(&ctx),
        Command::IdealGen => ideal_gen(&ctx),
        Command::IdealCountable => ideal_countable(&ctx),
        Command::IdealIntersect => ideal_intersect(&ctx),
        Command::WoClosed => wo_closed(&ctx),
        Command::SeqDfp => seq_dfp(&ctx),
        Command::SeqWpdp => seq_wpdp(&ctx),
        Command::SeqReduce => seq_reduce(&ctx),
        Command::SegReduce => seg_reduce(&ctx),
        Command::SegReplay => seg_replay(&ctx),
        Command::RangeSample => range_sample(&ctx),
        Command::DiagBlocks => diag_blocks(&ctx),
        Command::SegmentDemo => segment_demo(&ctx),
    }
}

fn scale(m: &Matrix<f64>) -> f64 {
    1f64.max(spectral_norm(m))
}

fn pair(ctx: &Ctx) -> Result<(Matrix<f64>, Matrix<f64>)> {
    let n = ctx.exactly(&["A", "B"])?;
    Ok((ctx.inputs.matrix(&n[0])?, ctx.inputs.matrix(&n[1])?))
}

fn factor(ctx: &Ctx) -> Result<Outcome> {
    let tol = ctx.tolerance()?;
    let (a, b) = pair(ctx)?;
    match douglas::douglas_factor(&a, &b, &tol)? {
        Some(r) => Ok(Outcome::new(Status::Ok)
            .put("lambda", number(r.lambda_min))
            .put("residual", number(r.residual))
            .put("is_partial_isometry", json!(r.is_partial_isometry))
            .output("C", matrix_to_json(&r.factor))
            .check(r.residual, tol.residual_rel * scale(&a))),
        None => Ok(Outcome::new(Status::Absent)
            .put("lambda", Value::Null)
            .put("reason", json!("ker B is not contained in ker A"))),
    }
}

fn factor_isometric(ctx: &Ctx) -> Result<Outcome> {
    let tol = ctx.tolerance()?;
    let (a, b) = pair(ctx)?;
    let r = douglas::douglas_factor_isometric(&a, &b, &tol)?;
    Ok(Outcome::new(if r.is_partial_isometry { Status::Ok } else { Status::Refuted })
        .put("lambda", number(r.lambda_min))
        .put("residual", number(r.residual))
        .put("is_partial_isometry", json!(r.is_partial_isometry))
        .output("V", matrix_to_json(&r.factor))
        .check(r.residual, tol.residual_rel * scale(&a)))
}

fn lambda(ctx: &Ctx) -> Result<Outcome> {
    let tol = ctx.tolerance()?;
    let (a, b) = pair(ctx)?;
    Ok(match douglas::majorization_lambda(&a, &b, &tol)? {
        Some(l) => Outcome::new(Status::Ok).put("lambda", number(l)),
        None => Outcome::new(Status::Absent).put("lambda", Value::Null),
    })
}

fn polar(ctx: &Ctx) -> Result<Outcome> {
    let tol = ctx.tolerance()?;
    let n = ctx.exactly(&["A"])?;
    let a = ctx.inputs.matrix(&n[0])?;
    let (v, p) = douglas::polar_decomposition(&a, &tol)?;
    let residual = spectral_norm(&(&a - &(&v * &p)));
    let initial = spectral_norm(&(&v.gram() - &range_projection(&p, &tol)));
    let fin = spectral_norm(&(&(&v * &v.adjoint()) - &range_projection(&a, &tol)));
    let worst = residual.max(initial).max(fin);
    Ok(Outcome::new(Status::Ok)
        .put("residual", number(residual))
        .put("initial_projection_residual", number(initial))
        .put("final_projection_residual", number(fin))
        .output("V", matrix_to_json(&v))
        .output("P", matrix_to_json(&p))
        .check(worst, tol.residual_rel * scale(&a)))
}

fn ideal_contains(ctx: &Ctx) -> Result<Outcome> {
    let tol = ctx.tolerance()?;
    let (a, b) = pair(ctx)?;
    let lambda = douglas::majorization_lambda(&a, &b, &tol)?;
    Ok(Outcome::new(Status::Ok)
        .put("contains", json!(lambda.is_some()))
        .put("lambda", lambda.map_or(Value::Null, number)))
}

fn ideal_gen(ctx: &Ctx) -> Result<Outcome> {
    let tol = ctx.tolerance()?;
    let names = ctx.list();
    let gens = ctx.inputs.matrices(&names)?;
    let g = ideals::finite_generator(&gens, &tol)?;
    let mut worst = 0f64;
    for a in &gens {
        if !ideals::ideal_contains(a, &g, &tol)? {
            worst = f64::INFINITY;
        }
    }
    Ok(Outcome::new(Status::Ok)
        .put("names", json!(names))
        .put("rank", json!(numerical_rank(&g, &tol)))
        .output("generator", matrix_to_json(&g))
        .check(worst, 0.0))
}

fn ideal_countable(ctx: &Ctx) -> Result<Outcome> {
    let tol = ctx.tolerance()?;
    let names = ctx.list();
    let gens = ideals::normalize_generators(&ctx.inputs.matrices(&names)?, &tol)?;
    let n = ctx.common.count.unwrap_or(gens.len());
    let g = ideals::countable_generator_truncated(&gens, n, &tol)?;
    Ok(Outcome::new(Status::Ok)
        .put("names", json!(names))
        .put("terms", json!(n))
        .put("rank", json!(numerical_rank(&g, &tol)))
        .output("generator", matrix_to_json(&g)))
}

fn ideal_intersect(ctx: &Ctx) -> Result<Outcome> {
    let tol = ctx.tolerance()?;
    let n = ctx.exactly(&["A"])?;
    let a = ctx.inputs.matrix(&n[0])?;
    let d = a.rows();
    let r1 = ideals::generate_star_algebra(&ctx.inputs.matrices(&ctx.common.r1)?, d, &tol)?;
    let r2 = ideals::generate_star_algebra(&ctx.inputs.matrices(&ctx.common.r2)?, d, &tol)?;
    let rep = ideals::verify_ideal_intersection(&r1, &r2, &a, &tol)?;
    Ok(Outcome::new(if rep.all_equal() { Status::Ok } else { Status::Refuted })
        .put("algebra_dims", json!([r1.len(), r2.len()]))
        .put("dims", json!(rep.dims))
        .put("all_equal", json!(rep.all_equal())))
}

fn wo_closed(ctx: &Ctx) -> Result<Outcome> {
    let n = ctx.exactly(&["A"])?;
    let (isolated, gap) = if ctx.inputs.is_sequence(&n[0])? {
        let g = ctx.sequence(&n[0])?;
        commutative::is_zero_isolated_sequence(&g, ctx.seq_tol()?)
    } else {
        let a = ctx.inputs.matrix(&n[0])?;
        ideals::is_zero_isolated_matrix(&a, &ctx.tolerance()?)
    };
    Ok(Outcome::new(Status::Ok).put("zero_isolated", json!(isolated)).put("gap", number(gap)))
}

fn extension_outcome(e: Extension<f64>, key: &str) -> Outcome {
    let v = &e.verdict;
    let out = Outcome::new(if v.extendable { Status::Ok } else { Status::Absent })
        .put("extendable", json!(v.extendable))
        .put("oscillation", real_to_json(v.oscillation))
        .put("fit_residual", real_to_json(v.fit_residual))
        .put("witness_limit", v.witness_limit.map_or(Value::Null, complex_to_json));
    match &e.function {
        Some(f) => out.output(key, sequence_to_json(f)),
        None => out.put(key, Value::Null),
    }
}

fn seq_dfp(ctx: &Ctx) -> Result<Outcome> {
    let tt = ctx.seq_tol()?;
    let n = ctx.exactly(&["f", "g"])?;
    let (f, g) = (ctx.sequence(&n[0])?, ctx.sequence(&n[1])?);
    let e = commutative::dfp_factor(&f, &g, tt)?;
    let residual = e.function.as_ref().map(|h| commutative::product_residual(&f, h, &g));
    let out = extension_outcome(e, "h").put("product_residual", residual.map_or(Value::Null, number));
    Ok(out.check(residual.unwrap_or(0.0), tt))
}

fn seq_wpdp(ctx: &Ctx) -> Result<Outcome> {
    let tt = ctx.seq_tol()?;
    let names = ctx.names(&["f"]);
    match names.len() {
        1 => {
            let f = ctx.sequence(&names[0])?;
            Ok(extension_outcome(commutative::wpdp_factor(&f, tt)?, "v"))
        }
        2 => {
            let (f, g) = (ctx.sequence(&names[0])?, ctx.sequence(&names[1])?);
            let e = commutative::wpdp_to_dfp(&f, &g, tt)?;
            let residual = e.function.as_ref().map(|h| commutative::product_residual(&f, h, &g));
            let out = extension_outcome(e, "h").put("product_residual", residual.map_or(Value::Null, number));
            Ok(out.check(residual.unwrap_or(0.0), tt))
        }
        k => Err(Error::InvalidCount(format!("seq-wpdp takes one or two names, got {k}"))),
    }
}

fn seq_reduce(ctx: &Ctx) -> Result<Outcome> {
    let tt = ctx.seq_tol()?;
    let n = ctx.exactly(&["t1", "t2", "t3"])?;
    let (t1, t2, t3) = (ctx.sequence(&n[0])?, ctx.sequence(&n[1])?, ctx.sequence(&n[2])?);
    let e = commutative::substonean_reduce(&t1, &t2, &t3, tt)?;
    let residual = e.function.as_ref().map(|s| {
        (0..t1.depth())
            .map(|i| {
                let rest = 1.0 - t1.samples()[i].re;
                (t2.samples()[i] - s.samples()[i] * rest).norm()
            })
            .fold(0.0, f64::max)
    });
    let out = extension_outcome(e, "s").put("identity_residual", residual.map_or(Value::Null, number));
    Ok(out.check(residual.unwrap_or(0.0), tt))
}

fn elements(ctx: &Ctx) -> Result<Vec<BimoduleElement<f64>>> {
    let names = ctx.list();
    if names.is_empty() {
        return Err(Error::EmptyList);
    }
    names.iter().map(|n| ctx.inputs.element(n)).collect()
}

fn coefficients(ctx: &Ctx, tol: &Tolerance<f64>) -> Result<CoefficientTuple<f64>> {
    CoefficientTuple::new(ctx.inputs.matrices(&ctx.common.coeffs)?, tol)
}

fn element_scale(els: &[BimoduleElement<f64>]) -> f64 {
    els.iter().map(BimoduleElement::norm).fold(1.0, f64::max)
}

fn seg_reduce(ctx: &Ctx) -> Result<Outcome> {
    let tol = ctx.tolerance()?;
    let els = elements(ctx)?;
    let ts = coefficients(ctx, &tol)?;
    let prog = convex::reduce_to_segments(&els, &ts, &tol)?;
    let direct = convex::cstar_combination(&els, &ts)?;
    let replay = convex::replay_program(&els, &prog)?;
    let residual = replay.distance(&direct);
    let defect = prog.max_defect();
    Ok(Outcome::new(Status::Ok)
        .put("steps", json!(prog.steps.len()))
        .put("conjugation_steps", json!(prog.conjugation_count()))
        .put("max_step_defect", number(defect))
        .put("replay_residual", number(residual))
        .output("combination", element_to_json(&direct))
        .output("program", program_to_json(&prog))
        .check(defect, tol.residual_rel)
        .check(residual, tol.residual_rel * element_scale(&els)))
}

fn seg_replay(ctx: &Ctx) -> Result<Outcome> {
    let tol = ctx.tolerance()?;
    let els = elements(ctx)?;
    let prog = ctx.inputs.program(&ctx.common.program)?;
    let value = convex::replay_program(&els, &prog)?;
    let defect = prog.max_defect();
    let mut out = Outcome::new(Status::Ok)
        .put("steps", json!(prog.steps.len()))
        .put("max_step_defect", number(defect))
        .output("value", element_to_json(&value))
        .check(defect, tol.residual_rel);
    if !ctx.common.coeffs.is_empty() {
        let direct = convex::cstar_combination(&els, &coefficients(ctx, &tol)?)?;
        let residual = value.distance(&direct);
        out = out.put("replay_residual", number(residual)).check(residual, tol.residual_rel * element_scale(&els));
    }
    Ok(out)
}

fn range_sample(ctx: &Ctx) -> Result<Outcome> {
    let n = ctx.exactly(&["T"])?;
    let t = ctx.inputs.matrix(&n[0])?;
    let dim = ctx.common.dim.unwrap_or(1);
    let kraus = ctx.common.kraus.unwrap_or(t.rows().max(1));
    let count = ctx.common.count.unwrap_or(DEFAULT_SAMPLES);
    let samples = convex::matrix_range_sample(&t, dim, kraus, count, ctx.common.seed)?;
    Ok(Outcome::new(Status::Ok)
        .put("n", json!(dim))
        .put("kraus_count", json!(kraus))
        .put("count", json!(count))
        .put("seed", json!(ctx.common.seed))
        .output("samples", Value::Array(samples.iter().map(matrix_to_json).collect())))
}

fn diag_blocks(ctx: &Ctx) -> Result<Outcome> {
    let tol = ctx.tolerance()?;
    let n = ctx.exactly(&["A"])?;
    let a = ctx.inputs.matrix(&n[0])?;
    let size = a.rows();
    let (m, k) = match (ctx.common.block_count, ctx.common.block_size) {
        (Some(m), Some(k)) => (m, k),
        (Some(m), None) if m > 0 && size % m == 0 => (m, size / m),
        (None, Some(k)) if k > 0 && size % k == 0 => (size / k, k),
        (None, None) => (size, 1),
        _ => return Err(Error::DimensionMismatch(format!("cannot split a {size}x{size} matrix into equal blocks"))),
    };
    let r = convex::verify_diagonal_blocks(&a, m, k, &tol)?;
    let coeffs: Vec<Value> =
        r.coefficients.iter().map(|col| Value::Array(col.iter().map(matrix_to_json).collect())).collect();
    Ok(Outcome::new(Status::Ok)
        .put("block_count", json!(m))
        .put("block_size", json!(k))
        .put("diagonalization_residual", number(r.diagonalization_residual))
        .put("isometry_residual", number(r.isometry_residual))
        .put("block_residual", number(r.block_residual))
        .output("unitary", matrix_to_json(&r.unitary))
        .output("generators", Value::Array(r.generators.iter().map(matrix_to_json).collect()))
        .output("coefficients", Value::Array(coeffs))
        .check(r.max_residual(), tol.residual_rel * scale(&a)))
}

fn segment_demo(ctx: &Ctx) -> Result<Outcome> {
    let tol = ctx.tolerance()?;
    let count = ctx.common.count.unwrap_or(DEFAULT_DEMO_SAMPLES);
    let r = convex::segment_rank_demo::<f64>(count, ctx.common.seed, &tol);
    Ok(Outcome::new(if r.witnesses_nonconvexity() { Status::Ok } else { Status::Refuted })
        .put("samples", json!(r.samples))
        .put("seed", json!(ctx.common.seed))
        .put("max_rank", json!(r.max_rank))
        .put("swap_residual", number(r.swap_residual))
        .put("midpoint_rank", json!(r.midpoint_rank))
        .put("nonconvex", json!(r.witnesses_nonconvexity())))
}
