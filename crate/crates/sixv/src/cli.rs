//! JSON-driven command-line front end: `compute`, `verify`, `enumerate` and
//! `bench` subcommands.
//!
//! All configuration arrives as a JSON job spec; results leave as JSON on
//! stdout (or `--out`). Exit codes are scriptable: 0 ok, 1 property
//! failure, 2 malformed or incompatible spec, 3 singular parameter
//! configuration.
//!
//! Given the same spec and seed the output is reproducible; the one
//! exception is the `elapsed_ms` timing field, which reports wall time.

use std::time::Instant;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::detrep::{self, ReprTag, Variant};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::model::{
    to_algebraic, RationalWeights, SinWeights, SpectralParams, TrigWeights, WeightModel,
    WeightSystem,
};
use crate::poly::PolyBasis;
use crate::qism::{self, MonodromyEntry, QuantumState};
use crate::scalar::{Cpx, Rat, Scalar};
use crate::verify::{self, MatrixConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILURE: i32 = 1;
pub const EXIT_SPEC_ERROR: i32 = 2;
pub const EXIT_SINGULAR: i32 = 3;

/// Flags shared by all subcommands.
#[derive(Clone, Debug, Default)]
pub struct CliOptions {
    /// Overrides the spec-level `"seed"`.
    pub seed: Option<u64>,
    /// Deterministic parallel enumeration split.
    pub parallel: bool,
    /// Dump intermediate quantum states to stderr (qism representation).
    pub dump_states: bool,
}

pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Singular(_) => EXIT_SINGULAR,
        Error::Invalid(_) | Error::ResourceCap(_) | Error::Domain(_) => EXIT_SPEC_ERROR,
    }
}

fn field<'v>(spec: &'v Value, key: &str) -> Option<&'v Value> {
    spec.get(key).filter(|v| !v.is_null())
}

fn usize_field(spec: &Value, key: &str, default: usize) -> Result<usize> {
    match field(spec, key) {
        None => Ok(default),
        Some(v) => v
            .as_u64()
            .map(|n| n as usize)
            .ok_or_else(|| Error::Invalid(format!("field {key:?} must be a nonnegative integer"))),
    }
}

fn u64_field(spec: &Value, key: &str, default: u64) -> Result<u64> {
    match field(spec, key) {
        None => Ok(default),
        Some(v) => v
            .as_u64()
            .ok_or_else(|| Error::Invalid(format!("field {key:?} must be a nonnegative integer"))),
    }
}

fn bool_field(spec: &Value, key: &str, default: bool) -> Result<bool> {
    match field(spec, key) {
        None => Ok(default),
        Some(v) => v
            .as_bool()
            .ok_or_else(|| Error::Invalid(format!("field {key:?} must be a boolean"))),
    }
}

fn string_list(spec: &Value, key: &str) -> Result<Option<Vec<String>>> {
    match field(spec, key) {
        None => Ok(None),
        Some(Value::Array(items)) => items
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::Invalid(format!("{key:?} entries must be strings")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Some),
        Some(_) => Err(Error::Invalid(format!("field {key:?} must be an array"))),
    }
}

fn scalar_list<K: Scalar>(v: &Value, key: &str) -> Result<Vec<K>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Invalid(format!("field {key:?} must be an array")))?;
    arr.iter().map(K::from_json).collect()
}

fn f64_list(v: &Value, key: &str) -> Result<Vec<f64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Invalid(format!("field {key:?} must be an array")))?;
    arr.iter()
        .map(|x| {
            x.as_f64()
                .ok_or_else(|| Error::Invalid(format!("{key:?} entries must be numbers")))
        })
        .collect()
}

/// A fully parsed model block: the weight model plus its spectral
/// parameters.
pub enum ParsedModel {
    Rational {
        params: SpectralParams<Rat>,
    },
    TrigComplex {
        gamma: f64,
        lambdas: Vec<f64>,
        nus: Vec<f64>,
    },
    TrigAlgebraic {
        q: Rat,
        params: SpectralParams<Rat>,
    },
}

impl ParsedModel {
    pub fn model(&self) -> WeightModel {
        match self {
            ParsedModel::Rational { .. } => WeightModel::Rational,
            ParsedModel::TrigComplex { gamma, .. } => WeightModel::TrigComplex { gamma: *gamma },
            ParsedModel::TrigAlgebraic { q, .. } => WeightModel::TrigAlgebraic { q: q.clone() },
        }
    }

    pub fn n(&self) -> usize {
        match self {
            ParsedModel::Rational { params } => params.n(),
            ParsedModel::TrigComplex { lambdas, .. } => lambdas.len(),
            ParsedModel::TrigAlgebraic { params, .. } => params.n(),
        }
    }
}

/// Parses the model block
/// `{"model": ..., "gamma"?, "q"?, "lambda": [...], "nu": [...], "u"?, "v"?}`.
pub fn parse_model(block: &Value) -> Result<ParsedModel> {
    let kind = field(block, "model")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Invalid("model block needs a \"model\" string".into()))?;
    match kind {
        "rational" => {
            let lambdas: Vec<Rat> = scalar_list(
                field(block, "lambda")
                    .ok_or_else(|| Error::Invalid("missing \"lambda\"".into()))?,
                "lambda",
            )?;
            let nus: Vec<Rat> = scalar_list(
                field(block, "nu").ok_or_else(|| Error::Invalid("missing \"nu\"".into()))?,
                "nu",
            )?;
            Ok(ParsedModel::Rational {
                params: SpectralParams::new(lambdas, nus)?,
            })
        }
        "trig-complex" => {
            let gamma = field(block, "gamma")
                .and_then(Value::as_f64)
                .ok_or_else(|| Error::Invalid("trig-complex needs a numeric \"gamma\"".into()))?;
            WeightModel::TrigComplex { gamma }.validate()?;
            let lambdas = f64_list(
                field(block, "lambda")
                    .ok_or_else(|| Error::Invalid("missing \"lambda\"".into()))?,
                "lambda",
            )?;
            let nus = f64_list(
                field(block, "nu").ok_or_else(|| Error::Invalid("missing \"nu\"".into()))?,
                "nu",
            )?;
            if lambdas.len() != nus.len() || lambdas.is_empty() {
                return Err(Error::Invalid(
                    "need equally many lambda and nu parameters".into(),
                ));
            }
            Ok(ParsedModel::TrigComplex {
                gamma,
                lambdas,
                nus,
            })
        }
        "trig-algebraic" => {
            let q: Rat = Rat::from_json(
                field(block, "q")
                    .ok_or_else(|| Error::Invalid("trig-algebraic needs \"q\"".into()))?,
            )?;
            WeightModel::TrigAlgebraic { q: q.clone() }.validate()?;
            let us: Vec<Rat> = scalar_list(
                field(block, "u").ok_or_else(|| {
                    Error::Invalid("trig-algebraic needs square roots \"u\"".into())
                })?,
                "u",
            )?;
            let vs: Vec<Rat> = scalar_list(
                field(block, "v").ok_or_else(|| {
                    Error::Invalid("trig-algebraic needs square roots \"v\"".into())
                })?,
                "v",
            )?;
            let params = match (field(block, "lambda"), field(block, "nu")) {
                (Some(xs), Some(ys)) => SpectralParams::from_values_and_roots(
                    scalar_list(xs, "lambda")?,
                    us,
                    scalar_list(ys, "nu")?,
                    vs,
                )?,
                _ => SpectralParams::from_roots(us, vs)?,
            };
            Ok(ParsedModel::TrigAlgebraic { q, params })
        }
        other => Err(Error::Invalid(format!("unknown model {other:?}"))),
    }
}

fn parse_basis<K: Scalar>(spec: &Value, n: usize, points: &[K]) -> Result<PolyBasis<K>> {
    match field(spec, "basis") {
        None => Ok(PolyBasis::monomial(n)),
        Some(Value::String(s)) => match s.as_str() {
            "monomial" => Ok(PolyBasis::monomial(n)),
            "lagrange" => PolyBasis::lagrange(points),
            other => Err(Error::Invalid(format!("unknown basis {other:?}"))),
        },
        Some(obj) => {
            if let Some(rows) = field(obj, "coeffs") {
                let rows = rows
                    .as_array()
                    .ok_or_else(|| Error::Invalid("\"coeffs\" must be an array of rows".into()))?
                    .iter()
                    .map(|row| scalar_list(row, "coeffs"))
                    .collect::<Result<Vec<Vec<K>>>>()?;
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::Invalid(format!(
                        "coefficient matrix must be {n} x {n}"
                    )));
                }
                PolyBasis::from_coeffs(crate::matrix::SquareMatrix::from_rows(rows)?)
            } else if let Some(seed) = field(obj, "random") {
                let seed = seed
                    .as_u64()
                    .ok_or_else(|| Error::Invalid("\"random\" must be a seed".into()))?;
                PolyBasis::random(n, seed)
            } else {
                Err(Error::Invalid(
                    "basis must be \"monomial\", \"lagrange\", {\"coeffs\": ...} or {\"random\": seed}"
                        .into(),
                ))
            }
        }
    }
}

/// The `compute` subcommand: evaluates one representation at one parameter
/// set and reports `{"N", "representation", "value", "elapsed_ms"}`.
pub fn run_compute(spec: &Value, opts: &CliOptions) -> Result<Value> {
    let model_block =
        field(spec, "model").ok_or_else(|| Error::Invalid("missing \"model\" block".into()))?;
    let parsed = parse_model(model_block)?;
    let repr = field(spec, "representation")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Invalid("missing \"representation\"".into()))?;
    if let Some(tag) = ReprTag::parse(repr) {
        if !tag.compatible_with(&parsed.model()) {
            return Err(Error::Invalid(format!(
                "representation {repr:?} is not defined for the {} model",
                parsed.model().name()
            )));
        }
    } else if repr != "enum" && repr != "qism" {
        return Err(Error::Invalid(format!("unknown representation {repr:?}")));
    }
    let n = parsed.n();
    let started = Instant::now();
    let value = compute_value(&parsed, repr, spec, opts)?;
    let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    let mut out = Map::new();
    out.insert("N".into(), json!(n));
    out.insert("representation".into(), json!(repr));
    out.insert("value".into(), value);
    out.insert("elapsed_ms".into(), json!(elapsed_ms));
    Ok(Value::Object(out))
}

fn compute_value(
    parsed: &ParsedModel,
    repr: &str,
    spec: &Value,
    opts: &CliOptions,
) -> Result<Value> {
    match parsed {
        ParsedModel::Rational { params } => {
            let w = RationalWeights;
            let v: Rat = match repr {
                "enum" => enumerate::z_enum_opts(&w, params, opts.parallel)?,
                "qism" => z_qism_dumping(&w, params, opts)?,
                "ik" => detrep::z_ik(&w, params)?,
                "kostov" => detrep::z_kostov(&params.lambda_vals(), &params.nu_vals())?,
                "basis-rat" => {
                    let nus = params.nu_vals();
                    let basis = parse_basis(spec, params.n(), &nus)?;
                    detrep::z_basis_rat(&params.lambda_vals(), &nus, &basis)?
                }
                other => {
                    return Err(Error::Invalid(format!(
                        "representation {other:?} is not defined for the rational model"
                    )))
                }
            };
            Ok(v.to_json())
        }
        ParsedModel::TrigAlgebraic { q, params } => {
            let w = TrigWeights::new(q.clone())?;
            let v: Rat = match repr {
                "enum" => enumerate::z_enum_opts(&w, params, opts.parallel)?,
                "qism" => z_qism_dumping(&w, params, opts)?,
                "ik" => detrep::z_ik(&w, params)?,
                "basis-trig1" | "basis-trig2" => {
                    let ys = params.nu_vals();
                    let basis = parse_basis(spec, params.n(), &ys)?;
                    let variant = if repr == "basis-trig1" {
                        Variant::One
                    } else {
                        Variant::Two
                    };
                    detrep::z_basis_trig(variant, q, &params.lambda_vals(), &ys, &basis)?
                }
                other => {
                    return Err(Error::Invalid(format!(
                        "representation {other:?} is not defined for the trig-algebraic model"
                    )))
                }
            };
            Ok(v.to_json())
        }
        ParsedModel::TrigComplex {
            gamma,
            lambdas,
            nus,
        } => {
            let w = SinWeights::new(*gamma)?;
            let params = SpectralParams::new(
                lambdas.iter().map(|&l| Cpx::new(l, 0.0)).collect(),
                nus.iter().map(|&v| Cpx::new(v, 0.0)).collect(),
            )?;
            let v: Cpx = match repr {
                "enum" => enumerate::z_enum_opts(&w, &params, opts.parallel)?,
                "qism" => z_qism_dumping(&w, &params, opts)?,
                "ik" => detrep::z_ik(&w, &params)?,
                "fw1" => detrep::z_fw(Variant::One, *gamma, lambdas, nus)?,
                "fw2" => detrep::z_fw(Variant::Two, *gamma, lambdas, nus)?,
                "basis-trig1" | "basis-trig2" => {
                    // evaluate in the multiplicative variables, then undo the
                    // gauge normalization to report Z_N like the other
                    // representations of this model
                    let image = to_algebraic(lambdas, nus, *gamma)?;
                    let basis = parse_basis(spec, lambdas.len(), &image.ys)?;
                    let variant = if repr == "basis-trig1" {
                        Variant::One
                    } else {
                        Variant::Two
                    };
                    let tilde =
                        detrep::z_basis_trig(variant, &image.q, &image.xs, &image.ys, &basis)?;
                    tilde / image.prefactor
                }
                other => {
                    return Err(Error::Invalid(format!(
                        "representation {other:?} is not defined for the trig-complex model"
                    )))
                }
            };
            Ok(v.to_json())
        }
    }
}

fn z_qism_dumping<K: Scalar, W: WeightSystem<K>>(
    weights: &W,
    params: &SpectralParams<K>,
    opts: &CliOptions,
) -> Result<K> {
    if !opts.dump_states {
        return qism::z_qism(weights, params);
    }
    let n = params.n();
    if n > qism::QISM_SITE_CAP {
        return Err(Error::ResourceCap(format!(
            "quantum space of 2^{n} sites exceeds cap {}",
            qism::QISM_SITE_CAP
        )));
    }
    let mut state = QuantumState::vacuum(n);
    for j in 0..n {
        state =
            qism::monodromy_apply(weights, params, params.lambda(j), MonodromyEntry::B, &state)?;
        eprintln!("# after B(lambda_{})", j + 1);
        for line in state.dump_lines() {
            eprintln!("{line}");
        }
    }
    Ok(state.amp((1u32 << n) - 1) / params.gauge_norm())
}

/// The `verify` subcommand: runs the property matrix, returning the JSON
/// report lines and whether everything passed.
pub fn run_verify(spec: &Value, opts: &CliOptions) -> Result<(Vec<Value>, bool)> {
    let cfg = MatrixConfig {
        n_max: usize_field(spec, "n_max", 4)?,
        seeds: u64_field(spec, "seeds", 20)?,
        base_seed: opts.seed.unwrap_or(u64_field(spec, "seed", 0)?),
        checks: string_list(spec, "checks")?,
        models: string_list(spec, "models")?,
        inject_fault: bool_field(spec, "inject_fault", false)?,
    };
    let reports = verify::run_matrix(&cfg);
    let all_pass = reports.iter().all(|r| r.pass);
    Ok((reports.iter().map(|r| r.to_json()).collect(), all_pass))
}

/// The `enumerate` subcommand: configuration count and optional grid dump.
pub fn run_enumerate(spec: &Value, _opts: &CliOptions) -> Result<Value> {
    let n = usize_field(spec, "n", 3)?;
    let count = enumerate::asm_count(n)?;
    let mut out = Map::new();
    out.insert("n".into(), json!(n));
    out.insert("count".into(), json!(count));
    if bool_field(spec, "dump", false)? {
        let mut grids = Vec::new();
        enumerate::for_each_config(n, |c| grids.push(json!(c.grid_strings())))?;
        out.insert("configs".into(), Value::Array(grids));
    }
    Ok(Value::Object(out))
}

/// The `bench` subcommand: median wall times (and values) per
/// representation per size, with capped entries marked skipped.
pub fn run_bench(spec: &Value, opts: &CliOptions) -> Result<Value> {
    let mode = field(spec, "mode")
        .and_then(Value::as_str)
        .unwrap_or("trig-complex")
        .to_string();
    let n_min = usize_field(spec, "n_min", 4)?;
    let n_max = usize_field(spec, "n_max", 12)?;
    if n_min == 0 || n_min > n_max {
        return Err(Error::Invalid("need 1 <= n_min <= n_max".into()));
    }
    let repetitions = usize_field(spec, "repetitions", 5)?.max(5);
    let seed = opts.seed.unwrap_or(u64_field(spec, "seed", 0)?);
    let requested = string_list(spec, "representations")?;
    let mut entries = Vec::new();
    match mode.as_str() {
        "trig-complex" => {
            let gamma = field(spec, "gamma").and_then(Value::as_f64).unwrap_or(0.8);
            let reps = requested.unwrap_or_else(|| {
                ["ik", "fw1", "fw2", "qism", "enum"].map(String::from).to_vec()
            });
            bench_complex(gamma, n_min, n_max, &reps, repetitions, seed, &mut entries)?;
        }
        "rational" => {
            let reps = requested.unwrap_or_else(|| {
                ["ik", "kostov", "basis-rat", "qism", "enum"]
                    .map(String::from)
                    .to_vec()
            });
            bench_rational(n_min, n_max, &reps, repetitions, seed, &mut entries)?;
        }
        other => return Err(Error::Invalid(format!("unknown bench mode {other:?}"))),
    }
    Ok(json!({"mode": mode, "entries": entries}))
}

/// Oracle feasibility caps used by the bench tables.
const BENCH_ENUM_CAP: usize = 6;
const BENCH_QISM_CAP: usize = qism::QISM_SITE_CAP;

fn median_ms(samples: &mut [f64]) -> f64 {
    samples.sort_by(f64::total_cmp);
    samples[samples.len() / 2]
}

fn bench_one<K: Scalar>(
    n: usize,
    name: &str,
    repetitions: usize,
    f: impl Fn() -> Result<K>,
    entries: &mut Vec<Value>,
) -> Result<()> {
    let value = f()?;
    let mut samples = Vec::with_capacity(repetitions);
    for _ in 0..repetitions {
        let t = Instant::now();
        let _ = f()?;
        samples.push(t.elapsed().as_secs_f64() * 1e3);
    }
    entries.push(json!({
        "n": n,
        "representation": name,
        "median_ms": median_ms(&mut samples),
        "value": value.to_json(),
    }));
    Ok(())
}

fn skipped(n: usize, name: &str, entries: &mut Vec<Value>) {
    entries.push(json!({"n": n, "representation": name, "skipped": true}));
}

fn bench_complex(
    gamma: f64,
    n_min: usize,
    n_max: usize,
    reps: &[String],
    repetitions: usize,
    seed: u64,
    entries: &mut Vec<Value>,
) -> Result<()> {
    use rand::SeedableRng;
    let weights = SinWeights::new(gamma)?;
    for n in n_min..=n_max {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32));
        let checker: verify::Checker<Cpx, SinWeights> = verify::Checker::new(weights);
        let params = checker.draw_params(n, &mut rng);
        let lambdas: Vec<f64> = params.lambdas().iter().map(|p| p.val.re).collect();
        let nus: Vec<f64> = params.nus().iter().map(|p| p.val.re).collect();
        for rep in reps {
            match rep.as_str() {
                "ik" => {
                    bench_one(n, "ik", repetitions, || detrep::z_ik(&weights, &params), entries)?
                }
                "fw1" => bench_one(
                    n,
                    "fw1",
                    repetitions,
                    || detrep::z_fw(Variant::One, gamma, &lambdas, &nus),
                    entries,
                )?,
                "fw2" => bench_one(
                    n,
                    "fw2",
                    repetitions,
                    || detrep::z_fw(Variant::Two, gamma, &lambdas, &nus),
                    entries,
                )?,
                "qism" if n <= BENCH_QISM_CAP => bench_one(
                    n,
                    "qism",
                    repetitions,
                    || qism::z_qism(&weights, &params),
                    entries,
                )?,
                "qism" => skipped(n, "qism", entries),
                "enum" if n <= BENCH_ENUM_CAP => bench_one(
                    n,
                    "enum",
                    repetitions,
                    || enumerate::z_enum(&weights, &params),
                    entries,
                )?,
                "enum" => skipped(n, "enum", entries),
                other => return Err(Error::Invalid(format!("unknown representation {other:?}"))),
            }
        }
    }
    Ok(())
}

fn bench_rational(
    n_min: usize,
    n_max: usize,
    reps: &[String],
    repetitions: usize,
    seed: u64,
    entries: &mut Vec<Value>,
) -> Result<()> {
    use rand::SeedableRng;
    for n in n_min..=n_max {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32));
        let checker: verify::Checker<Rat, RationalWeights> =
            verify::Checker::new(RationalWeights);
        // keep the closed forms regular so the timings compare like for like
        let params = loop {
            let candidate = checker.draw_params(n, &mut rng);
            let regular = candidate.lambdas().iter().all(|l| {
                candidate.nus().iter().all(|nu| {
                    !RationalWeights.weight_a(l, nu).is_zero()
                        && !RationalWeights.weight_b(l, nu).is_zero()
                })
            });
            if regular {
                break candidate;
            }
        };
        let lams = params.lambda_vals();
        let nus = params.nu_vals();
        for rep in reps {
            match rep.as_str() {
                "ik" => match detrep::z_ik(&RationalWeights, &params) {
                    Ok(_) => bench_one(
                        n,
                        "ik",
                        repetitions,
                        || detrep::z_ik(&RationalWeights, &params),
                        entries,
                    )?,
                    Err(_) => skipped(n, "ik", entries),
                },
                "kostov" => match detrep::z_kostov(&lams, &nus) {
                    Ok(_) => bench_one(
                        n,
                        "kostov",
                        repetitions,
                        || detrep::z_kostov(&lams, &nus),
                        entries,
                    )?,
                    Err(_) => skipped(n, "kostov", entries),
                },
                "basis-rat" => {
                    let basis = PolyBasis::monomial(n);
                    bench_one(
                        n,
                        "basis-rat",
                        repetitions,
                        || detrep::z_basis_rat(&lams, &nus, &basis),
                        entries,
                    )?
                }
                "qism" if n <= BENCH_QISM_CAP => bench_one(
                    n,
                    "qism",
                    repetitions,
                    || qism::z_qism(&RationalWeights, &params),
                    entries,
                )?,
                "qism" => skipped(n, "qism", entries),
                "enum" if n <= BENCH_ENUM_CAP => bench_one(
                    n,
                    "enum",
                    repetitions,
                    || enumerate::z_enum(&RationalWeights, &params),
                    entries,
                )?,
                "enum" => skipped(n, "enum", entries),
                other => return Err(Error::Invalid(format!("unknown representation {other:?}"))),
            }
        }
    }
    Ok(())
}
