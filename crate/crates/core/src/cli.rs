//! Command-line driver: TOML config in, JSON lines out.
//!
//! Exit status is 0 on success, 1 for an invalid config or input, and 2 when
//! a computed result violates an internal invariant. In the last case every
//! offending input is written in full as an `invariant_violation` record.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::archimedean::{
    arithmetic_discriminant_of_poly, compositum_green_from_polys, distribution_check,
    distribution_suite, lambda_p1, ProjPoint, RationalMap,
};
use crate::criteria::{p1p1_reduction_holds, rule_table, sharpness_sweep, CurveSpec, SharpFamily};
use crate::error::Error;
use crate::field::{AlgebraicNumber, NumberField};
use crate::lattice::Lattice;
use crate::oracle;
use crate::orders::{self, compositum_index_check, lattice_mul, BoundVerdict, Order};
use crate::point_search::{census, BiCurve, CensusConfig, DivisorSpec, FiberPoint, TClass};
use crate::poly::IntPoly;
use crate::records::{IntLiteral, Num, Record, RecordWriter};
use crate::roots::{real_from_bigint, Real};
use crate::sample::PairSuite;

#[derive(Debug, Parser)]
#[command(
    name = "arithdisc",
    version,
    about = "Orders, arithmetic discriminants, finiteness criteria and point censuses"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Differents, conductors and maximal orders.
    Orders(RunArgs),
    /// Different index bound for products of monogenic orders.
    Lemma1(RunArgs),
    /// Weil functions, arithmetic discriminants, distribution residuals.
    Arch(RunArgs),
    /// Finiteness criteria for curves.
    Criteria(RunArgs),
    /// Census of bounded degree points on a curve in P¹ × P¹.
    Search(RunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// TOML config file.
    #[arg(long, short)]
    pub config: PathBuf,
    /// Output file (default: stdout).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Use the brute-force implementations (orders only).
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "invalid config: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Records of one run plus whether any invariant failed.
#[derive(Debug, Default)]
pub struct Output {
    pub records: Vec<Record>,
    pub violations: usize,
}

impl Output {
    fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    fn violation(&mut self, command: &str, input: Value, detail: impl Into<String>) {
        self.violations += 1;
        self.records.push(
            Record::new("invariant_violation")
                .with("command", command)
                .with("input", input)
                .with("detail", detail.into()),
        );
    }

    pub fn exit_code(&self) -> i32 {
        if self.violations > 0 {
            2
        } else {
            0
        }
    }
}

enum Failure {
    Input(String),
    Limit(String),
    Invariant(String),
}

fn classify(e: Error) -> Failure {
    match e {
        Error::FactorizationLimit(_)
        | Error::OracleLimit(_)
        | Error::RootsDidNotConverge { .. } => Failure::Limit(e.to_string()),
        Error::NotContained(_) | Error::Degenerate(_) => Failure::Invariant(e.to_string()),
        _ => Failure::Input(e.to_string()),
    }
}

/// Collects per-entry results in input order.
fn gather(
    command: &str,
    results: Vec<(Value, Result<Vec<Record>, Error>)>,
) -> Result<Output, CliError> {
    let mut out = Output::default();
    for (i, (input, res)) in results.into_iter().enumerate() {
        match res {
            Ok(rs) => rs.into_iter().for_each(|r| out.push(r)),
            Err(e) => match classify(e) {
                Failure::Input(m) => return Err(CliError::Config(format!("entry {i}: {m}"))),
                Failure::Limit(m) => {
                    out.push(Record::new("skipped").with("input", i).with("reason", m))
                }
                Failure::Invariant(m) => out.violation(command, input, m),
            },
        }
    }
    Ok(out)
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, CliError> {
    toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
}

fn value_of(x: impl Serialize) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

fn lattice_value(l: &Lattice) -> Value {
    json!({
        "rows": l.hnf_rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "denominator": l.denom().to_string(),
    })
}

// ---------------------------------------------------------------- orders

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderInput {
    pub poly: IntPoly,
    /// Build `ℤ[α]` for `α = element(θ)`.
    pub element: Option<IntPoly>,
    /// Build `ℤ + m·A′`.
    pub suborder_index: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrdersConfig {
    #[serde(default = "default_precision")]
    pub precision: u32,
    #[serde(default)]
    pub order: Vec<OrderInput>,
}

fn default_precision() -> u32 {
    128
}

pub fn build_order(input: &OrderInput) -> crate::Result<Order> {
    let field = NumberField::new(input.poly.clone())?;
    match (&input.element, input.suborder_index) {
        (Some(_), Some(_)) => Err(Error::InvalidOrder(
            "give either element or suborder_index".into(),
        )),
        (Some(e), None) => {
            orders::order_from_element(&AlgebraicNumber::generator(&field).eval_poly(e))
        }
        (None, Some(m)) => {
            if m == 0 {
                return Err(Error::InvalidOrder(
                    "suborder_index must be positive".into(),
                ));
            }
            let max = orders::maximal_order(&Order::equation_order(&field))?;
            let mut gens = max.lattice().scale(&BigInt::from(m).into()).basis();
            let mut one = vec![num_rational::BigRational::from_integer(0.into()); field.degree()];
            one[0] = num_rational::BigRational::from_integer(1.into());
            gens.push(one);
            Order::new(
                &field,
                Lattice::from_rational_generators(&gens, field.degree())?,
            )
        }
        (None, None) => Ok(Order::equation_order(&field)),
    }
}

/// Invariants of one order, computed by the fast path or the oracles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSummary {
    pub discriminant: BigInt,
    pub maximal_discriminant: BigInt,
    pub index_in_maximal: BigInt,
    pub trace_dual: Lattice,
    pub different: Lattice,
    pub different_index: BigInt,
    pub maximal: Lattice,
    pub conductor: Lattice,
    pub conductor_index: BigInt,
    pub gorenstein: bool,
    pub cond_identity: Option<bool>,
}

pub fn summarize_order(order: &Order, use_oracle: bool) -> crate::Result<OrderSummary> {
    let field = order.field();
    let (w, d, d_idx, max, cond, gor, d_max) = if use_oracle {
        let w = oracle::trace_dual(order)?;
        let d = oracle::different(order)?;
        let d_idx = oracle::index(order, &d)?;
        let max = oracle::maximal_order(order)?;
        let cond = oracle::conductor(order)?;
        let gor = oracle::is_gorenstein(order)?;
        let d_max = if gor {
            Some(oracle::different(&max)?)
        } else {
            None
        };
        (w, d, d_idx, max, cond, gor, d_max)
    } else {
        let w = orders::trace_dual(&order.as_ideal()).lattice().clone();
        let dd = orders::different(order);
        let d_idx = orders::index(order, &dd)?;
        let max = orders::maximal_order(order)?;
        let cond = orders::conductor(order)?.lattice().clone();
        let gor = orders::is_gorenstein(order);
        let d_max = gor.then(|| orders::different(&max).lattice().clone());
        (w, dd.lattice().clone(), d_idx, max, cond, gor, d_max)
    };
    let cond_identity =
        d_max.map(|dm| lattice_mul(field, &d, max.lattice()) == lattice_mul(field, &cond, &dm));
    let cond_index = order.lattice().index_of(&cond)?;
    Ok(OrderSummary {
        discriminant: order.discriminant(),
        maximal_discriminant: max.discriminant(),
        index_in_maximal: max.lattice().index_of(order.lattice())?,
        trace_dual: w,
        different: d,
        different_index: d_idx,
        maximal: max.lattice().clone(),
        conductor: cond,
        conductor_index: cond_index,
        gorenstein: gor,
        cond_identity,
    })
}

fn order_records(
    i: usize,
    input: &OrderInput,
    use_oracle: bool,
    precision: u32,
) -> crate::Result<Vec<Record>> {
    let order = build_order(input)?;
    let s = summarize_order(&order, use_oracle)?;
    // index of the different equals |disc| for every order
    if s.different_index != s.discriminant.abs() {
        return Err(Error::Degenerate(format!(
            "[A:D] = {} but |disc| = {}",
            s.different_index,
            s.discriminant.abs()
        )));
    }
    if s.cond_identity == Some(false) {
        return Err(Error::Degenerate(
            "conductor-different identity fails for a Gorenstein order".into(),
        ));
    }
    let n = order.degree() as u32;
    let d_ar: Real = real_from_bigint(precision, &s.different_index).ln() / n;
    Ok(vec![Record::new("order")
        .with("input", i)
        .with("mode", if use_oracle { "oracle" } else { "fast" })
        .with("poly", &input.poly)
        .with("degree", order.degree())
        .with("basis", lattice_value(order.lattice()))
        .num("discriminant", Num::int(&s.discriminant))
        .num("maximal_discriminant", Num::int(&s.maximal_discriminant))
        .num("index_in_maximal", Num::int(&s.index_in_maximal))
        .with("maximal_order", lattice_value(&s.maximal))
        .with("trace_dual", lattice_value(&s.trace_dual))
        .with("different", lattice_value(&s.different))
        .num("different_index", Num::int(&s.different_index))
        .with("conductor", lattice_value(&s.conductor))
        .num("conductor_index", Num::int(&s.conductor_index))
        .num("d_ar", Num::real(&d_ar))
        .with("gorenstein", s.gorenstein)
        .with("cond_identity", s.cond_identity)])
}

pub fn run_orders(text: &str, use_oracle: bool) -> Result<Output, CliError> {
    let cfg: OrdersConfig = parse(text)?;
    let results = cfg
        .order
        .par_iter()
        .enumerate()
        .map(|(i, o)| (value_of(o), order_records(i, o, use_oracle, cfg.precision)))
        .collect();
    gather("orders", results)
}

// ---------------------------------------------------------------- lemma1

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairInput {
    pub f: IntPoly,
    pub g: IntPoly,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lemma1Config {
    #[serde(default)]
    pub pair: Vec<PairInput>,
    pub random: Option<PairSuite>,
}

fn lemma1_record(i: usize, source: &str, p: &PairInput) -> crate::Result<Vec<Record>> {
    let rep = compositum_index_check(&p.f, &p.g)?;
    let mut r = Record::new("lemma1")
        .with("input", i)
        .with("source", source)
        .with("f", &rep.f)
        .with("g", &rep.g)
        .with("compositum", &rep.compositum_poly)
        .with("shift", rep.shift)
        .with("degrees", rep.degrees)
        .with("relative_degrees", rep.relative_degrees)
        .with("gorenstein", rep.gorenstein)
        .with(
            "indices",
            rep.indices
                .iter()
                .map(|x| Num::int(x).to_value())
                .collect::<Vec<_>>(),
        )
        .num("bound", Num::int(&rep.bound))
        .with("inequality", rep.inequality)
        .with("containment", rep.containment)
        .with("verdict", rep.verdict);
    if rep.verdict == BoundVerdict::Violated {
        r = r.with("violated", true);
        return Err(Error::Degenerate(format!(
            "bound violated: {}",
            r.to_line()
        )));
    }
    Ok(vec![r])
}

pub fn run_lemma1(text: &str) -> Result<Output, CliError> {
    let cfg: Lemma1Config = parse(text)?;
    let mut inputs: Vec<(&str, PairInput)> = cfg.pair.iter().map(|p| ("list", p.clone())).collect();
    if let Some(suite) = &cfg.random {
        if !suite.is_valid() {
            return Err(CliError::Config(
                "random: inconsistent degree or bound settings".into(),
            ));
        }
        inputs.extend(
            suite
                .generate()
                .into_iter()
                .map(|(f, g)| ("random", PairInput { f, g })),
        );
    }
    let results = inputs
        .par_iter()
        .enumerate()
        .map(|(i, (src, p))| (value_of(p), lemma1_record(i, src, p)))
        .collect();
    gather("lemma1", results)
}

// ---------------------------------------------------------------- arch

/// A point of P¹(ℂ): a real number, `[re, im]`, or `"infinity"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointInput {
    Real(f64),
    Complex([f64; 2]),
    Label(String),
}

impl PointInput {
    fn to_point(&self, prec: u32) -> crate::Result<ProjPoint> {
        match self {
            PointInput::Real(x) => Ok(ProjPoint::from_f64(prec, *x, 0.0)),
            PointInput::Complex([a, b]) => Ok(ProjPoint::from_f64(prec, *a, *b)),
            PointInput::Label(s) if s == "infinity" => Ok(ProjPoint::Infinity),
            PointInput::Label(s) => Err(Error::InvalidSpec(format!("unknown point {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraicInput {
    pub poly: IntPoly,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaInput {
    pub p: PointInput,
    pub q: PointInput,
}

/// `x ↦ xᵈ` when `power` is given, else `numerator/denominator`.
fn to_map(
    power: Option<usize>,
    num: &Option<IntPoly>,
    den: &Option<IntPoly>,
) -> crate::Result<RationalMap> {
    match (power, num, den) {
        (Some(d), None, None) if d >= 1 => Ok(RationalMap::power(d)),
        (None, Some(n), den) => {
            RationalMap::new(n.clone(), den.clone().unwrap_or_else(IntPoly::one))
        }
        _ => Err(Error::InvalidSpec(
            "a map needs power ≥ 1 or numerator".into(),
        )),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionInput {
    pub power: Option<usize>,
    pub numerator: Option<IntPoly>,
    pub denominator: Option<IntPoly>,
    #[serde(default = "hundred")]
    pub grid: usize,
    #[serde(default = "thousand")]
    pub fresh: usize,
}

fn hundred() -> usize {
    100
}
fn thousand() -> usize {
    1000
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkedInput {
    pub power: Option<usize>,
    pub numerator: Option<IntPoly>,
    pub denominator: Option<IntPoly>,
    pub p: PointInput,
    pub q: PointInput,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArchConfig {
    #[serde(default = "default_precision")]
    pub precision: u32,
    pub seed: Option<u64>,
    #[serde(default)]
    pub point: Vec<AlgebraicInput>,
    #[serde(default)]
    pub lambda: Vec<LambdaInput>,
    #[serde(default)]
    pub worked: Vec<WorkedInput>,
    #[serde(default)]
    pub distribution: Vec<DistributionInput>,
    #[serde(default)]
    pub pair: Vec<PairInput>,
}

pub fn run_arch(text: &str) -> Result<Output, CliError> {
    let cfg: ArchConfig = parse(text)?;
    let prec = cfg.precision;
    if !cfg.distribution.is_empty() && cfg.seed.is_none() {
        return Err(CliError::Config(
            "seed is required for distribution suites".into(),
        ));
    }
    let mut results: Vec<(Value, crate::Result<Vec<Record>>)> = Vec::new();
    for (i, p) in cfg.point.iter().enumerate() {
        let r = arithmetic_discriminant_of_poly(&p.poly, prec).map(|d| {
            vec![Record::new("arith_disc")
                .with("input", i)
                .with("poly", &d.minimal_polynomial)
                .with("degree", d.degree)
                .num("finite", Num::real(&d.finite_part))
                .num("archimedean", Num::real(&d.archimedean_part))
                .num("total", Num::real(&d.total))]
        });
        results.push((value_of(p), r));
    }
    for (i, l) in cfg.lambda.iter().enumerate() {
        let r = (|| {
            let v = lambda_p1(&l.p.to_point(prec)?, &l.q.to_point(prec)?)?;
            Ok(vec![Record::new("lambda")
                .with("input", i)
                .num("value", Num::real(&v))])
        })();
        results.push((value_of(l), r));
    }
    for (i, w) in cfg.worked.iter().enumerate() {
        let r = (|| {
            let phi = to_map(w.power, &w.numerator, &w.denominator)?;
            let v = distribution_check(&phi, &w.p.to_point(prec)?, &w.q.to_point(prec)?, prec)?;
            Ok(vec![Record::new("distribution")
                .with("input", i)
                .with("map_degree", phi.degree())
                .num("residual", Num::real(&v))])
        })();
        results.push((value_of(w), r));
    }
    let seed = cfg.seed.unwrap_or(0);
    for (i, d) in cfg.distribution.iter().enumerate() {
        let r = to_map(d.power, &d.numerator, &d.denominator).map(|phi| {
            let s = distribution_suite(&phi, d.grid, d.fresh, seed.wrapping_add(i as u64), prec);
            vec![Record::new("distribution_suite")
                .with("input", i)
                .with("map_degree", s.degree)
                .with("seed", seed.wrapping_add(i as u64))
                .num("grid_sup", Num::f64(s.grid_sup))
                .num("fresh_sup", Num::f64(s.fresh_sup))
                .num("excess", Num::f64(s.excess()))
                .with("samples", s.samples)
                .with("skipped", s.skipped)]
        });
        results.push((value_of(d), r));
    }
    for (i, p) in cfg.pair.iter().enumerate() {
        let r = compositum_green_from_polys(&p.f, &p.g, prec).map(|rep| {
            vec![Record::new("compositum_green")
                .with("input", i)
                .with("f", &p.f)
                .with("g", &p.g)
                .num("lhs", Num::real(&rep.lhs))
                .num("rhs", Num::real(&rep.rhs))
                .num("residual", Num::real(&rep.residual))
                .with("fiber_sizes", [rep.fiber_sizes.0, rep.fiber_sizes.1])]
        });
        results.push((value_of(p), r));
    }
    gather("arch", results)
}

// ---------------------------------------------------------------- criteria

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepInput {
    pub family: SharpFamily,
    pub d1_max: u32,
    pub d2_max: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionInput {
    pub d1_max: u32,
    pub d2_max: u32,
    pub nu_max: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriteriaConfig {
    #[serde(default)]
    pub curve: Vec<CurveSpec>,
    #[serde(default)]
    pub sweep: Vec<SweepInput>,
    #[serde(default)]
    pub reduction: Vec<ReductionInput>,
}

pub fn run_criteria(text: &str) -> Result<Output, CliError> {
    let cfg: CriteriaConfig = parse(text)?;
    let mut results: Vec<(Value, crate::Result<Vec<Record>>)> = Vec::new();
    for (i, c) in cfg.curve.iter().enumerate() {
        let r = rule_table(c).map(|vs| {
            vs.into_iter()
                .map(|v| {
                    Record::new("verdict")
                        .with("input", i)
                        .with("genus", c.effective_genus())
                        .with("verdict", v)
                })
                .collect()
        });
        results.push((value_of(c), r));
    }
    for (i, s) in cfg.sweep.iter().enumerate() {
        let r = sharpness_sweep(s.family, s.d1_max, s.d2_max).and_then(|rep| {
            if !rep.all_equal {
                return Err(Error::Degenerate("sharp family misses equality".into()));
            }
            Ok(vec![Record::new("sharpness")
                .with("input", i)
                .with("family", rep.family)
                .with("witness", rep.witness)
                .with("cases", rep.rows.len())
                .with("all_equal", rep.all_equal)])
        });
        results.push((value_of(s), r));
    }
    for (i, s) in cfg.reduction.iter().enumerate() {
        let mut cases = 0usize;
        let mut ok = true;
        for d1 in 1..=s.d1_max {
            for d2 in 1..=s.d2_max {
                for nu in 1..=s.nu_max {
                    cases += 1;
                    ok &= p1p1_reduction_holds(d1, d2, nu);
                }
            }
        }
        let r = if ok {
            Ok(vec![Record::new("p1p1_reduction")
                .with("input", i)
                .with("cases", cases)
                .with("holds", true)])
        } else {
            Err(Error::Degenerate("P¹ × P¹ reduction fails".into()))
        };
        results.push((value_of(s), r));
    }
    gather("criteria", results)
}

// ---------------------------------------------------------------- search

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    /// `coefficients[i][j]` multiplies `xⁱ yʲ`.
    pub coefficients: Vec<Vec<IntLiteral>>,
    #[serde(default)]
    pub divisor: DivisorSpec,
    #[serde(default)]
    pub primes: Vec<u64>,
    pub nu: usize,
    pub ladder: Vec<u64>,
    #[serde(default = "search_precision")]
    pub precision: u32,
}

fn search_precision() -> u32 {
    64
}

fn class_name(c: TClass) -> &'static str {
    match c {
        TClass::T1 => "T1",
        TClass::T2 => "T2",
        TClass::T3 => "T3",
    }
}

pub fn run_search(text: &str) -> Result<Output, CliError> {
    let cfg: SearchConfig = parse(text)?;
    let raw: Value = toml::from_str::<toml::Value>(text)
        .map(value_of)
        .unwrap_or(Value::Null);
    if cfg.ladder.is_empty() || cfg.ladder.contains(&0) {
        return Err(CliError::Config("ladder must list positive bounds".into()));
    }
    let curve = BiCurve::new(
        cfg.coefficients
            .iter()
            .map(|r| r.iter().map(|c| c.0.clone()).collect())
            .collect(),
    )
    .map_err(|e| CliError::Config(e.to_string()))?;
    let cc = CensusConfig {
        divisor: cfg.divisor,
        primes: cfg.primes.clone(),
        nu: cfg.nu,
        ladder: cfg.ladder.clone(),
        precision: cfg.precision,
    };
    let cen = match census(&curve, &cc) {
        Ok(c) => c,
        Err(e) => return gather("search", vec![(raw, Err(e))]),
    };
    let mut out = Output::default();
    for p in &cen.points {
        let y = match &p.orbit.y {
            FiberPoint::Finite(h) => value_of(h),
            FiberPoint::Infinity => json!("infinity"),
        };
        out.push(
            Record::new("orbit")
                .with("base", p.orbit.base.to_string())
                .num("base_height", Num::int(&p.orbit.base.height()))
                .with("y", y)
                .with("degree", p.orbit.degree)
                .with("multiplicity", p.orbit.multiplicity)
                .with("class", class_name(p.class))
                .with("integral", p.integral)
                .num("height", Num::real(&p.height)),
        );
    }
    for s in &cen.steps {
        let buckets: Vec<Value> = s
            .buckets
            .iter()
            .map(|(k, n)| {
                json!({"degree": k.degree, "band": k.band, "integral": k.integral, "class": class_name(k.class), "count": n})
            })
            .collect();
        out.push(
            Record::new("census_step")
                .with("bound", s.bound)
                .with("fibers", s.fibers)
                .with("total", s.total)
                .with("integral", s.integral)
                .with(
                    "classes",
                    json!({"T1": s.classes[0], "T2": s.classes[1], "T3": s.classes[2]}),
                )
                .with("buckets", buckets),
        );
    }
    for v in &cen.verdicts {
        out.push(
            Record::new("verdict")
                .with("source", "census")
                .with("verdict", v),
        );
    }
    let (a, b) = curve.bidegree();
    out.push(
        Record::new("census")
            .with("bidegree", [a, b])
            .with("d1", curve.d1())
            .with("d2", curve.d2())
            .with("arithmetic_genus", curve.arithmetic_genus())
            .with("r", cen.r)
            .with(
                "irreducibility_certificate",
                curve.certificate().to_string(),
            )
            .with("search_cone", cen.search_cone)
            .with("config", &cen.config),
    );
    let totals: Vec<usize> = cen.steps.iter().map(|s| s.total).collect();
    if totals.windows(2).any(|w| w[0] > w[1]) {
        out.violation(
            "search",
            raw,
            format!("census not monotone in B: {totals:?}"),
        );
    }
    Ok(out)
}

// ---------------------------------------------------------------- driver

pub fn run(command: &Command) -> Result<Output, CliError> {
    let (args, name) = match command {
        Command::Orders(a) => (a, "orders"),
        Command::Lemma1(a) => (a, "lemma1"),
        Command::Arch(a) => (a, "arch"),
        Command::Criteria(a) => (a, "criteria"),
        Command::Search(a) => (a, "search"),
    };
    if args.oracle && name != "orders" {
        return Err(CliError::Config(
            "--oracle applies to the orders subcommand only".into(),
        ));
    }
    let text = read_config(&args.config)?;
    match command {
        Command::Orders(a) => run_orders(&text, a.oracle),
        Command::Lemma1(_) => run_lemma1(&text),
        Command::Arch(_) => run_arch(&text),
        Command::Criteria(_) => run_criteria(&text),
        Command::Search(_) => run_search(&text),
    }
}

fn read_config(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn write_output(out: &Output, path: Option<&Path>) -> std::io::Result<()> {
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::BufWriter::new(std::io::stdout().lock())),
    };
    let mut w = RecordWriter::new(sink);
    for r in &out.records {
        w.write(r)?;
    }
    w.into_inner().flush()
}

/// Parses arguments, runs, writes records and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let out_path = match &cli.command {
        Command::Orders(a)
        | Command::Lemma1(a)
        | Command::Arch(a)
        | Command::Criteria(a)
        | Command::Search(a) => a.out.clone(),
    };
    match run(&cli.command) {
        Ok(out) => {
            if let Err(e) = write_output(&out, out_path.as_deref()) {
                eprintln!("arithdisc: {}", CliError::Io(e));
                return 1;
            }
            if out.violations > 0 {
                eprintln!(
                    "arithdisc: {} invariant violation(s); inputs dumped",
                    out.violations
                );
            }
            out.exit_code()
        }
        Err(e) => {
            eprintln!("arithdisc: {e}");
            1
        }
    }
}
