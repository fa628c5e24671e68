//! Command-line front end: `emit`, `check` and `expand`.
//!
//! JSON goes to standard output and diagnostics to standard error. Exit
//! codes: 0 success, 1 a failed check or a singular point, 2 a usage error.

use std::collections::BTreeMap;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::algebra::{Rat, Series, TensorOperator};
use crate::error::{Error, Result};
use crate::gauge::DynParams;
use crate::verify::{run_suite, suite_passed, CheckReport, SamplePlan, SuiteSelection};
use crate::zoo::{Family, Params};

/// One operator in serialized form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmitRecord {
    pub family: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub slots: usize,
    pub params: BTreeMap<String, String>,
    /// Set for the coefficients produced by `expand`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub var: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    pub entries: Vec<Vec<String>>,
}

impl EmitRecord {
    pub fn new(family: &str, params: BTreeMap<String, String>, op: &TensorOperator<Rat>) -> Self {
        EmitRecord {
            family: family.to_string(),
            n: op.n(),
            slots: op.slots(),
            params,
            var: None,
            degree: None,
            entries: op
                .rows()
                .map(|row| row.iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::ParseRational(e.to_string()))
    }

    /// The operator back from its entries.
    pub fn operator(&self) -> Result<TensorOperator<Rat>> {
        let rows = self
            .entries
            .iter()
            .map(|row| row.iter().map(|s| s.parse()).collect::<Result<Vec<Rat>>>())
            .collect::<Result<Vec<_>>>()?;
        let op = TensorOperator::from_rows(self.n, rows)?;
        if op.slots() != self.slots {
            return Err(Error::DimensionMismatch(format!(
                "{} slots recorded, entries give {}",
                self.slots,
                op.slots()
            )));
        }
        Ok(op)
    }
}

#[derive(Parser, Debug)]
#[command(name = "rmatrix", version, about = "Exact rational GL(N) R-matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print one family at one point as JSON.
    Emit(PointArgs),
    /// Run identity checks at random rational points.
    Check(CheckArgs),
    /// Print Laurent coefficients of a family in one variable.
    Expand(ExpandArgs),
}

#[derive(Args, Debug, Clone)]
pub struct PointArgs {
    #[arg(long)]
    pub family: Family,
    /// Single value `n` or inclusive range `a..b`.
    #[arg(long = "N", default_value = "2")]
    pub n: String,
    #[arg(long, allow_hyphen_values = true)]
    pub hbar: Option<Rat>,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<Rat>,
    #[arg(long, allow_hyphen_values = true)]
    pub z1: Option<Rat>,
    #[arg(long, allow_hyphen_values = true)]
    pub z2: Option<Rat>,
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<Rat>,
    /// Comma-separated dynamical parameters.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Comma-separated weights; accepted for symmetry with the library, unused by families.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct CheckArgs {
    /// `all`, a group name, a check id, or a comma list of these.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long = "N", default_value = "2..3")]
    pub n: String,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[arg(long, value_enum)]
    pub var: ExpandVar,
    /// Highest degree printed.
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    pub order: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExpandVar {
    Hbar,
    Z,
    /// `ε R(ħε, zε)` in powers of `ε`.
    Epsilon,
}

/// Parse `n` or `a..b` (inclusive); zero is rejected.
pub fn parse_n_range(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::DimensionMismatch(format!("invalid N '{s}'"));
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo == 0 || hi < lo {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

fn parse_list(s: &str) -> Result<Vec<Rat>> {
    s.split(',').map(|t| t.parse()).collect()
}

fn single_n(s: &str) -> Result<usize> {
    match parse_n_range(s)?.as_slice() {
        [n] => Ok(*n),
        _ => Err(Error::DimensionMismatch(format!("a single N is needed here, got '{s}'"))),
    }
}

/// Errors that come from the invocation rather than the mathematics.
fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::MissingParam { .. }
            | Error::UnknownFamily(_)
            | Error::UnknownCheck(_)
            | Error::UnsupportedN { .. }
            | Error::DimensionMismatch(_)
            | Error::ParseRational(_)
            | Error::InvalidSlots(_)
            | Error::VariableMismatch(..)
    )
}

fn exit_code(e: &Error) -> i32 {
    if is_usage(e) {
        2
    } else {
        1
    }
}

fn point_params(a: &PointArgs) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    for (k, v) in [("hbar", &a.hbar), ("z", &a.z), ("z1", &a.z1), ("z2", &a.z2), ("eta", &a.eta)] {
        if let Some(v) = v {
            m.insert(k.to_string(), v.to_string());
        }
    }
    if let Some(q) = &a.q {
        m.insert("q".into(), q.replace(' ', ""));
    }
    m
}

fn dyn_params(a: &PointArgs) -> Result<Option<DynParams<Rat>>> {
    a.q.as_deref().map(|s| DynParams::new(parse_list(s)?)).transpose()
}

fn emit(a: &PointArgs) -> Result<EmitRecord> {
    if let Some(l) = &a.lambda {
        parse_list(l)?;
    }
    let n = single_n(&a.n)?;
    let p = Params {
        hbar: a.hbar.clone(),
        z: a.z.clone(),
        z1: a.z1.clone(),
        z2: a.z2.clone(),
        q: dyn_params(a)?,
    };
    let op = a.family.build(n, &p)?;
    Ok(EmitRecord::new(a.family.name(), point_params(a), &op))
}

/// Extra working precision for expansions; poles in intermediate
/// denominators eat into the truncation window.
const EXPAND_SLACK: i64 = 8;

fn expand(a: &ExpandArgs) -> Result<Vec<EmitRecord>> {
    let pt = &a.point;
    let n = single_n(&pt.n)?;
    let work = a.order + EXPAND_SLACK + 2 * n as i64;
    let c = |x: &Option<Rat>| x.clone().map(Series::constant);
    let mut p = Params {
        hbar: c(&pt.hbar),
        z: c(&pt.z),
        z1: c(&pt.z1),
        z2: c(&pt.z2),
        q: dyn_params(pt)?.map(|q| q.to_series()),
    };
    let fam = pt.family;
    let name = match a.var {
        ExpandVar::Hbar => "hbar",
        ExpandVar::Z => "z",
        ExpandVar::Epsilon => "epsilon",
    };
    let op = match a.var {
        ExpandVar::Hbar => {
            p.hbar = Some(Series::point(Rat::zero(), -1, work)?);
            fam.build(n, &p)?
        }
        ExpandVar::Z => {
            p.z = Some(Series::point(Rat::zero(), -1, work)?);
            p.z1 = None;
            p.z2 = None;
            fam.build(n, &p)?
        }
        ExpandVar::Epsilon => {
            let e = Series::point(Rat::zero(), 0, work)?;
            let scaled = |x: Option<Series>| x.map(|v| v * e.clone());
            p.hbar = scaled(p.hbar);
            p.z = scaled(p.z);
            p.z1 = scaled(p.z1);
            p.z2 = scaled(p.z2);
            fam.build(n, &p)?.map(|x| x.shift(1))
        }
    };
    let params = point_params(pt);
    (-1..=a.order)
        .map(|k| {
            let mut rec = EmitRecord::new(fam.name(), params.clone(), &op.coeff(k)?);
            rec.var = Some(name.to_string());
            rec.degree = Some(k);
            Ok(rec)
        })
        .collect()
}

#[derive(Serialize)]
struct Summary {
    total: usize,
    passed: usize,
    failed: usize,
    all_passed: bool,
}

fn check(a: &CheckArgs, out: &mut dyn Write) -> Result<bool> {
    let ns = parse_n_range(&a.n)?;
    let sel = SuiteSelection::parse(&a.suite);
    let plan = SamplePlan::new(a.trials, a.seed);
    let reports: Vec<CheckReport> = run_suite(&sel, &ns, &plan)?;
    for r in &reports {
        let _ = writeln!(out, "{}", serde_json::to_string(r).expect("reports serialize"));
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    let summary = Summary {
        total: reports.len(),
        passed,
        failed: reports.len() - passed,
        all_passed: suite_passed(&reports),
    };
    let _ = writeln!(
        out,
        "{}",
        serde_json::json!({ "summary": summary })
    );
    Ok(summary.all_passed)
}

/// Run one parsed invocation and return the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Emit(a) => emit(a).map(|r| {
            let _ = writeln!(out, "{}", r.to_json());
            true
        }),
        Command::Expand(a) => expand(a).map(|rs| {
            let _ = writeln!(out, "{}", serde_json::to_string(&rs).expect("records serialize"));
            true
        }),
        Command::Check(a) => check(a, out),
    };
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Parse arguments and run; clap usage errors exit with 2.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
            } else {
                let _ = write!(out, "{}", e.render());
            }
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with(std::iter::once("rmatrix").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn n_ranges() {
        assert_eq!(parse_n_range("3").unwrap(), vec![3]);
        assert_eq!(parse_n_range("2..4").unwrap(), vec![2, 3, 4]);
        assert!(parse_n_range("0").is_err());
        assert!(parse_n_range("4..2").is_err());
        assert!(parse_n_range("x").is_err());
    }

    #[test]
    fn emit_round_trips() {
        let (code, out, _) = call(&["emit", "--family", "yang", "--N", "2", "--hbar", "1/2", "--z", "-1/3"]);
        assert_eq!(code, 0);
        let rec = EmitRecord::from_json(out.trim()).unwrap();
        assert_eq!(rec.to_json(), out.trim());
        assert_eq!(rec.operator().unwrap().get(0, 0), &Rat::from_int(-1));
    }

    #[test]
    fn missing_param_is_usage_error() {
        let (code, _, err) = call(&["emit", "--family", "yang", "--N", "2", "--hbar", "1"]);
        assert_eq!(code, 2);
        assert!(err.contains("z"));
    }

    #[test]
    fn singular_point_exits_one() {
        let (code, _, err) = call(&["emit", "--family", "yang", "--N", "2", "--hbar", "1", "--z", "0"]);
        assert_eq!(code, 1);
        assert!(err.contains("division by zero"), "{err}");
    }
}
