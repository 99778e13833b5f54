//! Fixture invocations shared by the golden and acceptance targets.

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub status: &'static str,
    pub exit: i32,
}

pub const CASES: &[Case] = &[
    Case { name: "factor", args: &["factor", "--input", "tests/fixtures/matrices.json", "--names", "A,Bk"], status: "ok", exit: 0 },
    Case { name: "factor_same", args: &["factor", "--input", "tests/fixtures/matrices.json", "--names", "A,A"], status: "ok", exit: 0 },
    Case { name: "factor_absent", args: &["factor", "--input", "tests/fixtures/matrices.json", "--names", "I3,B_singular"], status: "absent", exit: 0 },
    Case { name: "factor_isometric", args: &["factor-isometric", "--input", "tests/fixtures/matrices.json", "--names", "W,I3"], status: "ok", exit: 0 },
    Case { name: "factor_isometric_refuted", args: &["factor-isometric", "--input", "tests/fixtures/matrices.json", "--names", "A,I3"], status: "refuted", exit: 1 },
    Case { name: "lambda", args: &["lambda", "--input", "tests/fixtures/matrices.json", "--names", "A,Bk"], status: "ok", exit: 0 },
    Case { name: "polar", args: &["polar", "--input", "tests/fixtures/matrices.json", "--names", "A"], status: "ok", exit: 0 },
    Case { name: "ideal_contains", args: &["ideal-contains", "--input", "tests/fixtures/matrices.json", "--names", "A,B_singular"], status: "ok", exit: 0 },
    Case { name: "ideal_gen", args: &["ideal-gen", "--input", "tests/fixtures/matrices.json", "--names", "A,P"], status: "ok", exit: 0 },
    Case { name: "ideal_countable", args: &["ideal-countable", "--input", "tests/fixtures/matrices.json", "--names", "E11,P,A"], status: "ok", exit: 0 },
    Case { name: "ideal_intersect", args: &["ideal-intersect", "--input", "tests/fixtures/matrices.json", "--names", "C3", "--r1", "P", "--r2", "E11"], status: "ok", exit: 0 },
    Case { name: "wo_closed_matrix", args: &["wo-closed", "--input", "tests/fixtures/matrices.json", "--names", "A"], status: "ok", exit: 0 },
    Case { name: "wo_closed_sequence", args: &["wo-closed", "--input", "tests/fixtures/dp_example.json", "--names", "g"], status: "ok", exit: 0 },
    Case { name: "seq_dfp_counterexample", args: &["seq-dfp", "--input", "tests/fixtures/dp_example.json", "--names", "f,g", "--depth", "64"], status: "absent", exit: 0 },
    Case { name: "seq_dfp_square", args: &["seq-dfp", "--input", "tests/fixtures/dp_example.json", "--names", "g_squared,g"], status: "ok", exit: 0 },
    Case { name: "seq_wpdp_alternating", args: &["seq-wpdp", "--input", "tests/fixtures/dp_example.json", "--names", "alternating"], status: "absent", exit: 0 },
    Case { name: "seq_wpdp_route", args: &["seq-wpdp", "--input", "tests/fixtures/dp_example.json", "--names", "half_g,g"], status: "ok", exit: 0 },
    Case { name: "seq_reduce", args: &["seq-reduce", "--input", "tests/fixtures/substonean.json"], status: "ok", exit: 0 },
    Case { name: "seg_reduce", args: &["seg-reduce", "--input", "tests/fixtures/segments.json", "--names", "A1,A2,A3", "--coeffs", "T1,T2,T3"], status: "ok", exit: 0 },
    Case { name: "range_sample", args: &["range-sample", "--input", "tests/fixtures/normal.json", "--names", "T", "--kraus", "3", "--count", "6", "--seed", "7"], status: "ok", exit: 0 },
    Case { name: "diag_blocks", args: &["diag-blocks", "--input", "tests/fixtures/normal.json", "--block-count", "2"], status: "ok", exit: 0 },
    Case { name: "segment_demo", args: &["segment-demo", "--count", "2000", "--seed", "3"], status: "ok", exit: 0 },
    Case { name: "missing_file", args: &["polar", "--input", "tests/fixtures/none.json"], status: "error", exit: 2 },
];
