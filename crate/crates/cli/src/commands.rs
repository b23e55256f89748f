use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use segre_core::cohomo::{self, Bound, CohomoError, DepthReport, TwistInterval, TwistedFactorList};
use segre_core::oracle::{self, OracleError, TruncatedAlgebra};
use segre_core::series::{HilbertSeries, SeriesError};
use segre_core::toric::{self, ToricError, ToricPresentation};

use crate::report::Report;
use crate::CliError;

const ORACLE_DEPTH: usize = 4;

pub struct Context {
    cap: Option<usize>,
    window: Option<(i64, i64)>,
}

impl Context {
    pub fn new(cap: Option<usize>, window: Option<&str>) -> Result<Self, CliError> {
        let window = window.map(parse_window).transpose()?;
        Ok(Context { cap, window })
    }

    fn window_or_default(&self) -> (i64, i64) {
        self.window
            .unwrap_or((-oracle::DEFAULT_WINDOW, oracle::DEFAULT_WINDOW))
    }
}

fn parse_window(text: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Usage(format!("window `{text}` is not of the form lo..hi"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(CliError::Usage(format!("window `{text}` has lo > hi")));
    }
    Ok((lo, hi))
}

fn parse_list(flag: &str, text: &str) -> Result<Vec<i64>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim().parse::<i64>().map_err(|_| {
                CliError::Usage(format!(
                    "invalid integer `{}` in --{flag} `{text}`",
                    t.trim()
                ))
            })
        })
        .collect()
}

fn rational(x: &BigRational) -> Value {
    Value::String(cohomo::render_rational(x))
}

/// Integers that fit in `i64` as JSON numbers, larger ones as strings.
fn lattice_value(vectors: &[Vec<BigInt>]) -> Value {
    vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| i64::try_from(x).map_or_else(|_| big(x), Value::from))
                .collect::<Value>()
        })
        .collect()
}

fn big(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

fn toric_err(e: ToricError, token: &str) -> CliError {
    let msg = format!("{e} (input `{token}`)");
    match e {
        ToricError::ResourceCap { .. } => CliError::Resource(msg),
        ToricError::Parse(_) | ToricError::Ragged { .. } => CliError::Usage(msg),
        ToricError::Empty | ToricError::NotStandardGraded => CliError::Domain(msg),
    }
}

fn cohomo_err(e: CohomoError, token: &str) -> CliError {
    let msg = format!("{e} (input `{token}`)");
    match e {
        CohomoError::ResourceCap { .. } => CliError::Resource(msg),
        _ => CliError::Domain(msg),
    }
}

fn series_err(e: SeriesError, token: &str) -> CliError {
    let msg = format!("{e} (input `{token}`)");
    match e {
        SeriesError::Parse { .. } => CliError::Usage(msg),
        _ => CliError::Domain(msg),
    }
}

fn oracle_err(e: OracleError, token: &str) -> CliError {
    let msg = format!("{e} (input `{token}`)");
    match e {
        OracleError::ResourceCap { .. } => CliError::Resource(msg),
        OracleError::InvalidInput(_) => CliError::Usage(msg),
        _ => CliError::Domain(msg),
    }
}

fn read_presentation(path: &str) -> Result<ToricPresentation, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read matrix file `{path}`: {e}")))?;
    let rows = toric::parse_matrix(&text).map_err(|e| toric_err(e, path))?;
    ToricPresentation::validate(rows).map_err(|e| toric_err(e, path))
}

fn matrix_value(p: &ToricPresentation) -> Value {
    json!(p.rows())
}

fn grading_value(p: &ToricPresentation) -> Value {
    p.grading().iter().map(rational).collect()
}

pub fn toric_validate(_ctx: &Context, path: &str) -> Result<Report, CliError> {
    let p = read_presentation(path)?;
    Ok(Report::new("toric validate")
        .input("matrix", matrix_value(&p))
        .input("path", path)
        .result("standard_graded", true)
        .result("rows", p.nrows())
        .result("cols", p.ncols())
        .result("rank", p.rank())
        .result("grading", grading_value(&p)))
}

pub fn toric_product(
    ctx: &Context,
    kind: &str,
    left: &str,
    right: &str,
    census: Option<usize>,
) -> Result<Report, CliError> {
    let (a, b) = (read_presentation(left)?, read_presentation(right)?);
    let product = if kind == "segre" {
        a.segre(&b)
    } else {
        a.tensor(&b)
    };
    let kernel = product.kernel_lattice();
    let mut report = Report::new(&format!("toric {kind}"))
        .input("left", matrix_value(&a))
        .input("right", matrix_value(&b))
        .result("matrix", matrix_value(&product))
        .result("grading", grading_value(&product))
        .result("rank", product.rank())
        .result("kernel_rank", kernel.rank())
        .result("kernel_basis", lattice_value(&kernel.vectors));
    if let Some(n) = census {
        let c = product
            .census(n, ctx.cap)
            .map_err(|e| toric_err(e, &format!("--census {n}")))?;
        report = report
            .input("census", n)
            .result("counts", json!(c.counts()));
    }
    Ok(report)
}

pub fn toric_kernel(_ctx: &Context, path: &str) -> Result<Report, CliError> {
    let p = read_presentation(path)?;
    let kernel = p.kernel_lattice();
    Ok(Report::new("toric kernel")
        .input("matrix", matrix_value(&p))
        .result("kernel_rank", kernel.rank())
        .result("kernel_basis", lattice_value(&kernel.vectors)))
}

pub fn toric_census(ctx: &Context, path: &str, n: usize) -> Result<Report, CliError> {
    let p = read_presentation(path)?;
    let c = p.census(n, ctx.cap).map_err(|e| toric_err(e, path))?;
    let mut report = Report::new("toric census")
        .input("matrix", matrix_value(&p))
        .input("n", n);
    if let Some(cap) = ctx.cap {
        report = report.input("cap", cap);
    }
    Ok(report.result("counts", json!(c.counts())))
}

fn parse_series(text: &str) -> Result<HilbertSeries, CliError> {
    text.parse().map_err(|e| series_err(e, text))
}

pub fn hilbert_coeff(series: &str, n: i64) -> Result<Report, CliError> {
    let s = parse_series(series)?;
    Ok(Report::new("hilbert coeff")
        .input("series", s.to_string())
        .input("n", n)
        .result("value", big(&s.coeff(n))))
}

pub fn hilbert_window(ctx: &Context, series: &str) -> Result<Report, CliError> {
    let s = parse_series(series)?;
    let (lo, hi) = ctx.window.unwrap_or((0, 10));
    let w = s
        .window(lo, hi)
        .map_err(|e| series_err(e, &format!("{lo}..{hi}")))?;
    Ok(Report::new("hilbert window")
        .input("series", s.to_string())
        .input("window", json!([lo, hi]))
        .result("values", w.values.iter().map(big).collect::<Value>()))
}

pub fn hilbert_shift(series: &str, a: i64) -> Result<Report, CliError> {
    let s = parse_series(series)?;
    Ok(Report::new("hilbert shift")
        .input("series", s.to_string())
        .input("a", a)
        .result("series", s.shift(a).to_string()))
}

pub fn hilbert_hadamard(left: &str, right: &str, guard: usize) -> Result<Report, CliError> {
    let (a, b) = (parse_series(left)?, parse_series(right)?);
    let h = a
        .hadamard(&b, guard)
        .map_err(|e| series_err(e, &format!("{left} * {right}")))?;
    let lo = [a.numerator_low(), b.numerator_low()]
        .into_iter()
        .flatten()
        .min()
        .unwrap_or(0)
        .min(0);
    let hi = lo + 10;
    let check = |s: &HilbertSeries| s.window(lo, hi).expect("lo <= hi").values;
    let pointwise: Vec<BigInt> = check(&a)
        .iter()
        .zip(check(&b))
        .map(|(x, y)| x * y)
        .collect();
    Ok(Report::new("hilbert hadamard")
        .input("left", a.to_string())
        .input("right", b.to_string())
        .input("guard", guard)
        .result("series", h.to_string())
        .result("check_window", json!([lo, hi]))
        .result("window_matches", check(&h) == pointwise))
}

fn bound_value(b: Bound) -> Value {
    match b {
        Bound::Finite(v) => json!(v),
        other => Value::String(other.to_string()),
    }
}

fn depth_fields(report: Report, d: &DepthReport) -> Report {
    let witnesses: Vec<Value> = d
        .witnesses
        .iter()
        .map(|w| json!({"q": w.q, "subset": w.subset, "lo": bound_value(w.lo), "hi": bound_value(w.hi)}))
        .collect();
    report
        .result("dim", d.dim)
        .result("depth", d.depth)
        .result("is_cm", d.is_cm)
        .result("witnesses", witnesses)
}

const GORENSTEIN: &str =
    "each factor is a Gorenstein standard graded algebra with the stated dimension and a-invariant";
const DIM_TWO: &str = "each factor has dimension at least 2";

pub fn classify_depth(
    ctx: &Context,
    dims: &str,
    ainv: &str,
    shifts: &str,
) -> Result<Report, CliError> {
    let (d, alpha, a) = (
        parse_list("dims", dims)?,
        parse_list("ainv", ainv)?,
        parse_list("shifts", shifts)?,
    );
    let token = format!("--dims {dims} --ainv {ainv} --shifts {shifts}");
    let list = TwistedFactorList::new(&d, &alpha, &a).map_err(|e| cohomo_err(e, &token))?;
    let bound = ctx.cap.unwrap_or(cohomo::DEFAULT_SUBSET_BOUND);
    let support =
        cohomo::cohomology_support_bounded(&list, bound).map_err(|e| cohomo_err(e, &token))?;
    let mut report = Report::new("classify depth")
        .input("dims", json!(d))
        .input("ainv", json!(alpha))
        .input("shifts", json!(a))
        .assume(GORENSTEIN);
    if d.len() > 1 {
        report = report.assume(DIM_TWO);
    }
    if d.len() == 2 {
        let closed = cohomo::prop_depth_m2(d[0], d[1], alpha[0], alpha[1], a[0], a[1])
            .map_err(|e| cohomo_err(e, &token))?;
        report = report.result(
            "closed_form",
            json!({"depth": closed.depth, "is_cm": closed.is_cm, "agrees": closed.depth == support.depth}),
        );
    }
    Ok(depth_fields(report, &support))
}

pub fn classify_cm_twist(ctx: &Context, rho: &str, a: i64) -> Result<Report, CliError> {
    let rhos = parse_list("rho", rho)?;
    let token = format!("--rho {rho} --a {a}");
    let is_cm = cohomo::cm_uniform_twist(&rhos, a).map_err(|e| cohomo_err(e, &token))?;
    let bound = ctx.cap.unwrap_or(cohomo::DEFAULT_SUBSET_BOUND);
    let raw =
        cohomo::cm_uniform_twist_raw_bounded(&rhos, a, bound).map_err(|e| cohomo_err(e, &token))?;
    let chain = match cohomo::cm_chain(&rhos, a) {
        Ok(v) => Value::Bool(v),
        Err(CohomoError::BadTwist(_)) => Value::Null,
        Err(e) => return Err(cohomo_err(e, &token)),
    };
    Ok(Report::new("classify cm-twist")
        .input("rho", json!(rhos))
        .input("a", a)
        .assume(GORENSTEIN)
        .assume(DIM_TWO)
        .result("is_cm", is_cm)
        .result("subset_test", raw)
        .result("ratio_chain", chain))
}

pub fn classify_interval(rho: &str) -> Result<Report, CliError> {
    let rhos = parse_list("rho", rho)?;
    let token = format!("--rho {rho}");
    let ratio = cohomo::max_consecutive_ratio(&rhos).map_err(|e| cohomo_err(e, &token))?;
    let interval = cohomo::cm_twist_interval(&rhos).map_err(|e| cohomo_err(e, &token))?;
    let report = Report::new("classify interval")
        .input("rho", json!(rhos))
        .assume(GORENSTEIN)
        .assume(DIM_TWO)
        .result("max_ratio", rational(&ratio));
    Ok(match &interval {
        TwistInterval::AllIntegers => report.result("kind", "all_integers"),
        TwistInterval::Open { lo, hi } => report
            .result("kind", "open_interval")
            .result("lo", rational(lo))
            .result("hi", rational(hi))
            .result(
                "integer_points",
                json!(interval.integer_points().expect("open interval is bounded")),
            ),
    })
}

pub fn classify_anticanonical(ctx: &Context, rho: &str) -> Result<Report, CliError> {
    let rhos = parse_list("rho", rho)?;
    let token = format!("--rho {rho}");
    let is_cm = cohomo::cm_uniform_twist(&rhos, -1).map_err(|e| cohomo_err(e, &token))?;
    let bound = ctx.cap.unwrap_or(cohomo::DEFAULT_SUBSET_BOUND);
    let raw = cohomo::cm_uniform_twist_raw_bounded(&rhos, -1, bound)
        .map_err(|e| cohomo_err(e, &token))?;
    let mut report = Report::new("classify anticanonical")
        .input("rho", json!(rhos))
        .assume(GORENSTEIN)
        .assume(DIM_TWO)
        .assume("the anticanonical module is the Segre product of the R_i(rho_i), which needs the family to be friendly (for example depth at least 2)")
        .result("is_cm", is_cm)
        .result("subset_test", raw)
        .result("shifts", json!(rhos));
    if rhos.len() == 2 {
        report = report.result(
            "closed_form",
            cohomo::anticanonical_cm_m2(-rhos[0], -rhos[1]),
        );
    }
    Ok(report)
}

pub enum RingSource {
    Spec(String),
    Toric(String),
}

impl RingSource {
    pub fn pick(spec: Option<String>, toric: Option<String>) -> Self {
        match (spec, toric) {
            (Some(s), _) => RingSource::Spec(s),
            (None, Some(t)) => RingSource::Toric(t),
            (None, None) => unreachable!("argument parser requires one ring source"),
        }
    }

    fn build(
        &self,
        top: usize,
        cap: Option<usize>,
    ) -> Result<(Arc<TruncatedAlgebra>, Value), CliError> {
        match self {
            RingSource::Spec(spec) => {
                let (vars, rels) =
                    oracle::parse_ring_spec(spec).map_err(|e| oracle_err(e, spec))?;
                let t = TruncatedAlgebra::from_monomial_quotient(&vars, &rels, top)
                    .map_err(|e| oracle_err(e, spec))?;
                Ok((Arc::new(t), Value::String(spec.clone())))
            }
            RingSource::Toric(path) => {
                let p = read_presentation(path)?;
                let t =
                    TruncatedAlgebra::from_toric(&p, top, cap).map_err(|e| oracle_err(e, path))?;
                Ok((Arc::new(t), matrix_value(&p)))
            }
        }
    }

    fn is_toric(&self) -> bool {
        matches!(self, RingSource::Toric(_))
    }
}

fn degree_map(pairs: &[(i64, usize)]) -> Value {
    let map: Map<String, Value> = pairs
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    Value::Object(map)
}

pub fn oracle_friendly(
    ctx: &Context,
    ring1: RingSource,
    ring2: RingSource,
    a: i64,
    b: i64,
    top: Option<usize>,
) -> Result<Report, CliError> {
    let (lo, hi) = ctx.window_or_default();
    let top = top.unwrap_or_else(|| oracle::suggested_truncation(a, b, hi, ORACLE_DEPTH));
    let (r, r_input) = ring1.build(top, ctx.cap)?;
    let (s, s_input) = ring2.build(top, ctx.cap)?;
    let token = format!("--shift1 {a} --shift2 {b} --window {lo}..{hi}");
    let w =
        oracle::friendliness_witness(&r, &s, a, b, lo, hi).map_err(|e| oracle_err(e, &token))?;

    let left = json!({
        "dims": w.left.degrees.iter().map(|d| d.dim).collect::<Vec<_>>(),
        "status": w.left.degrees.iter().map(|d| d.status.as_str()).collect::<Vec<_>>(),
        "nonzero": degree_map(&w.left.nonzero()),
        "exact": w.left.exact,
    });
    let right = json!({
        "dims": w.right,
        "nonzero": degree_map(&w.right_nonzero()),
        "exact": w.right_exact(),
    });
    let mut report = Report::new("oracle friendly")
        .input("ring1", r_input)
        .input("ring2", s_input)
        .input("shift1", a)
        .input("shift2", b)
        .input("window", json!([lo, hi]))
        .input("top", top)
        .result("left", left)
        .result("right", right)
        .result("exact", w.left.exact && w.right_exact())
        .result("compared", json!(w.compared))
        .result("mismatches", json!(w.mismatches))
        .result("verdict", w.verdict.as_str());
    if w.verdict == oracle::Verdict::Consistent {
        report =
            report.assume("matching Hilbert functions are evidence of friendliness, not a proof");
    }
    if !w.left.exact {
        report =
            report.assume("degrees marked stable rely on the truncated system having stabilized");
    }
    if ring1.is_toric() || ring2.is_toric() {
        report = report.assume("toric rings are domains; depth at least 2 is not checked");
    }
    Ok(report)
}
