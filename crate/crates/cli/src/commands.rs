use std::fs;
use std::io::Read;
use std::path::Path;

use nahmkit::correspondence::{
    canonicalize, from_rational_map, holomorphic_charge, membership_report, syzygy_count, to_rational_map,
    validate_matrix_pair, ChargeVector, RationalMapData,
};
use nahmkit::flags::{based_check, minimal_syzygy_basis};
use nahmkit::io::{
    charge_from_json, matrix_from_json, matrix_to_json, normal_form_from_json, pair_from_json, pair_to_json,
    parse_json, poly_from_json, rational_map_from_json, rational_map_to_json,
};
use nahmkit::normal_forms::{block_pattern_validate, from_hurtubise_form, to_hurtubise_form};
use nahmkit::realflow::RealFlowConfig;
use nahmkit::verify::{run_case, Suite, SuiteReport};
use nahmkit::Error;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::Format;

pub struct Context {
    pub input: Option<String>,
    pub seed: u64,
    pub jobs: usize,
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
    /// Printed to stdout so failing runs stay machine-readable.
    pub report: Option<Value>,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 2,
            Error::Domain(_) | Error::Dimension(_) => 3,
            Error::NonConvergence { .. } => 4,
        };
        CliError { code, message: e.to_string(), report: None }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError { code: 1, message: msg.into(), report: None }
}

pub struct Output {
    pub json: Value,
    /// CSV rendering, when the command has one.
    pub csv: Option<String>,
    /// Written next to `--output` with a `.csv` extension.
    pub side_csv: bool,
    pub code: u8,
}

impl Output {
    fn json(v: Value) -> Self {
        Output { json: v, csv: None, side_csv: false, code: 0 }
    }

    pub fn emit(self, path: Option<&Path>, format: Format) -> Result<u8, CliError> {
        let body = match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serializable") + "\n",
            Format::Csv => self.csv.clone().ok_or_else(|| usage("this subcommand has no CSV output"))?,
        };
        let write = |p: &Path, s: &str| fs::write(p, s).map_err(|e| usage(format!("cannot write {}: {e}", p.display())));
        match path {
            Some(p) => {
                write(p, &body)?;
                if self.side_csv && format == Format::Json {
                    if let Some(csv) = &self.csv {
                        write(&p.with_extension("csv"), csv)?;
                    }
                }
            }
            None => print!("{body}"),
        }
        Ok(self.code)
    }
}

fn read_input(ctx: &Context) -> Result<Value, CliError> {
    let text = match ctx.input.as_deref() {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("cannot read stdin: {e}")))?;
            s
        }
        Some(s) if s.trim_start().starts_with(['{', '[']) => s.to_string(),
        Some(path) => fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?,
    };
    Ok(parse_json(&text)?)
}

/// A map is either `{"Q", "P", ...}` or a list `[Q, P₁, …, Pₙ]`.
fn read_map(ctx: &Context) -> Result<RationalMapData, CliError> {
    map_from_value(&read_input(ctx)?)
}

fn map_from_value(v: &Value) -> Result<RationalMapData, CliError> {
    if let Value::Array(parts) = v {
        if parts.len() < 2 {
            return Err(Error::Parse("a map list needs Q and at least one P".into()).into());
        }
        let q = poly_from_json(&parts[0])?;
        let p = parts[1..].iter().map(poly_from_json).collect::<Result<Vec<_>, _>>()?;
        return Ok(RationalMapData::new(q, p)?);
    }
    Ok(rational_map_from_json(v)?)
}

fn charge_arg(k: Vec<usize>) -> Result<ChargeVector, CliError> {
    ChargeVector::new(k).map_err(|e| usage(e.to_string()))
}

pub fn charge(ctx: &Context) -> Result<Output, CliError> {
    let f = read_map(ctx)?;
    let k = holomorphic_charge(&f);
    let counts: Vec<usize> = (0..=f.m()).map(|d| syzygy_count(&f, d)).collect();
    let degrees: Vec<Option<usize>> = minimal_syzygy_basis(&f).iter().map(|s| s.degree()).collect();
    let csv = format!("charge\n{}\n", k.as_slice().iter().map(ToString::to_string).collect::<Vec<_>>().join(";"));
    Ok(Output {
        json: json!({
            "charge": k.as_slice(),
            "syzygy_counts": counts,
            "minimal_syzygy_degrees": degrees,
            "based": based_check(&f),
        }),
        csv: Some(csv),
        side_csv: false,
        code: 0,
    })
}

pub fn membership(ctx: &Context, k: Vec<usize>) -> Result<Output, CliError> {
    let k = charge_arg(k)?;
    let f = read_map(ctx)?;
    let r = membership_report(&f, &k)?;
    Ok(Output::json(serde_json::to_value(&r).expect("serializable")))
}

pub fn to_map(ctx: &Context, k: Option<Vec<usize>>) -> Result<Output, CliError> {
    let p = pair_from_json(&read_input(ctx)?)?;
    if let Some(k) = k {
        let k = charge_arg(k)?;
        let rep = validate_matrix_pair(&p, &k)?;
        if !rep.is_valid() {
            return Err(CliError {
                code: 3,
                message: format!("pair is invalid for k = {k}: {}", rep.failures().join("; ")),
                report: Some(serde_json::to_value(&rep).expect("serializable")),
            });
        }
    }
    let f = to_rational_map(&p)?;
    Ok(Output::json(rational_map_to_json(&f)))
}

pub fn to_matrix(ctx: &Context) -> Result<Output, CliError> {
    let f = read_map(ctx)?;
    Ok(Output::json(pair_to_json(&from_rational_map(&f))))
}

pub fn roundtrip(ctx: &Context) -> Result<Output, CliError> {
    let v = read_input(ctx)?;
    let is_pair = v.get("B").is_some();
    let report = if is_pair {
        let p = pair_from_json(&v)?;
        let f = to_rational_map(&p)?;
        let back = from_rational_map(&f);
        let (a, _) = canonicalize(&p)?;
        let (b, _) = canonicalize(&back)?;
        json!({
            "direction": "pair-map-pair",
            "map": rational_map_to_json(&f),
            "canonical": pair_to_json(&a),
            "round_trip": a == b,
        })
    } else {
        let f = map_from_value(&v)?;
        let p = from_rational_map(&f);
        let g = to_rational_map(&p)?;
        json!({
            "direction": "map-pair-map",
            "pair": pair_to_json(&p),
            "round_trip": f == g,
        })
    };
    let ok = report["round_trip"] == Value::Bool(true);
    Ok(Output { code: if ok { 0 } else { 3 }, ..Output::json(report) })
}

pub fn normal_form(ctx: &Context) -> Result<Output, CliError> {
    let nf = normal_form_from_json(&read_input(ctx)?)?;
    let pair = nf.canonical_pair();
    let rep = validate_matrix_pair(&pair, nf.k())?;
    Ok(Output::json(json!({
        "k": nf.k().as_slice(),
        "B": matrix_to_json(&nf.block_b()),
        "pair": pair_to_json(&pair),
        "validity": rep,
    })))
}

pub fn hurtubise(ctx: &Context, inverse: bool) -> Result<Output, CliError> {
    let v = read_input(ctx)?;
    let k = charge_from_json(v.get("k").ok_or_else(|| Error::Parse("missing field \"k\"".into()))?)?;
    let key = if inverse { "B_H" } else { "B" };
    let m = matrix_from_json(v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))?)?;
    let out = if inverse {
        let (g, b) = from_hurtubise_form(&m, &k)?;
        json!({ "k": k.as_slice(), "g": matrix_to_json(&g), "B": matrix_to_json(&b) })
    } else {
        let (g, bh) = to_hurtubise_form(&m, &k)?;
        let target = block_pattern_validate(&bh, &k, "hurtubise-target")?;
        json!({ "k": k.as_slice(), "g": matrix_to_json(&g), "B_H": matrix_to_json(&bh), "target_pattern": target })
    };
    Ok(Output::json(out))
}

pub fn verify(ctx: &Context, suite: &str, budget: Option<usize>) -> Result<Output, CliError> {
    let suite: Suite = suite.parse().map_err(|e: Error| usage(e.to_string()))?;
    let n = budget.unwrap_or(suite.default_budget());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(ctx.jobs)
        .build()
        .map_err(|e| usage(format!("cannot start {} workers: {e}", ctx.jobs)))?;
    let outcomes = pool.install(|| (0..n).into_par_iter().map(|i| run_case(suite, ctx.seed, i)).collect());
    let report = SuiteReport::from_outcomes(suite, ctx.seed, outcomes);
    let mut csv = String::from("suite,seed,cases,passed,pass\n");
    csv.push_str(&format!("{},{},{},{},{}\n", report.suite, report.seed, report.cases, report.passed, report.pass));
    let code = if report.pass { 0 } else { 3 };
    Ok(Output { json: serde_json::to_value(&report).expect("serializable"), csv: Some(csv), side_csv: false, code })
}

pub fn realflow(ctx: &Context) -> Result<Output, CliError> {
    let v = read_input(ctx)?;
    let cfg = RealFlowConfig::from_json(&v.to_string())?;
    let problem = cfg.problem()?;
    let mut opts = cfg.options();
    if ctx.seed != 0 {
        opts.seed = ctx.seed;
    }
    match nahmkit::realflow::solve_real_bvp(&problem, &opts) {
        Ok(r) => Ok(Output { json: r.to_json(), csv: Some(r.eigenvalue_csv()), side_csv: true, code: 0 }),
        Err(e @ Error::NonConvergence { iterations, residual }) => Err(CliError {
            report: Some(json!({ "converged": false, "iterations": iterations, "residual": residual, "seed": opts.seed })),
            ..CliError::from(e)
        }),
        Err(e) => Err(e.into()),
    }
}
