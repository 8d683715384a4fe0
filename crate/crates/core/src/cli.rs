//! The `cremona` command-line interface.
//!
//! Every command builds a JSON payload. `--format csv` flattens that payload
//! into `path,value` rows and `--format plain` prints a short human form, so
//! the three formats always carry the same numbers.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::cremona::{
    maximal_minors_with, multidegrees_from_segre, segre_from_multidegrees,
    segre_numbers_hypergeometric, segre_numbers_standard, segre_report_with, LinearForm,
    LinearFormMatrix, MultidegreeSequence, SegreVector,
};
use crate::exact::Rational;
use crate::fan::{common_refinement_with, covering_check_with};
use crate::json::{ints_value, parse_int, parse_rational_value, rational_value};
use crate::mixed_volume::{
    mixed_coefficient_with, multidegree_sequence, MixedVolumeQuery, MultidegreeMethod,
};
use crate::polytope::VPolytope;
use crate::verify::{verify, VerifyOptions};
use crate::{DeskGuards, Error, Execution};

#[derive(Debug, Parser)]
#[command(
    name = "cremona",
    version,
    about = "Multidegrees, Segre numbers and fans of Cremona transformations"
)]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Run every computation on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Formula,
    MixedVolume,
    Extraction,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FanAction {
    Count,
    List,
    CoverCheck,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Multidegrees of the standard Cremona transformation of P^n.
    Multidegrees {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "all")]
        method: MethodArg,
    },
    /// Segre numbers of the standard Cremona transformation of P^n.
    Segre {
        #[arg(long)]
        n: usize,
        /// Also evaluate the hypergeometric form and compare.
        #[arg(long)]
        check_hypergeometric: bool,
    },
    /// Convert multidegrees to Segre numbers or back.
    Convert {
        /// Multidegrees d_0,…,d_n.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_bigint, conflicts_with = "segre", required_unless_present = "segre")]
        degrees: Option<Vec<BigInt>>,
        /// Segre numbers s_0,…,s_{n-2}.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_bigint, requires = "n")]
        segre: Option<Vec<BigInt>>,
        #[arg(long)]
        n: Option<usize>,
        /// Degree of the components.
        #[arg(long)]
        deg: u64,
    },
    /// Volume of a polytope given by a JSON vertex file.
    Volume {
        #[arg(long)]
        polytope: PathBuf,
    },
    /// Coefficient of ν_1⋯ν_n in Vol(ν_1 P_1 + ⋯ + ν_n P_n).
    MixedVolume {
        #[arg(long, value_delimiter = ',', required = true)]
        polytopes: Vec<PathBuf>,
    },
    /// Maximal minors of an (n+1)×n matrix of linear forms.
    Minors {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Common refinement of the fan of P^n and its negative.
    Fan {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "count")]
        action: FanAction,
    },
    /// Everything computed about S_n, with agreement flags.
    Report {
        #[arg(long)]
        n: usize,
    },
    /// Run the full cross-check suite.
    Verify {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Perturb the closed-form volume so the volume check must fail.
        #[arg(long, hide = true)]
        corrupt_volume_formula: bool,
    },
}

fn parse_bigint(text: &str) -> Result<BigInt, String> {
    text.trim()
        .parse()
        .map_err(|_| format!("not an integer: {text:?}"))
}

/// Failure of a command, with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: 2, message }
}

/// A command's result: JSON payload, plain rendering, and exit code.
struct Output {
    payload: Value,
    plain: String,
    default_format: Format,
    code: i32,
}

impl Output {
    fn json(payload: Value, plain: String) -> Self {
        Output {
            payload,
            plain,
            default_format: Format::Json,
            code: 0,
        }
    }

    fn plain(payload: Value, plain: String) -> Self {
        Output {
            default_format: Format::Plain,
            ..Output::json(payload, plain)
        }
    }

    fn failing_if(mut self, failed: bool) -> Self {
        if failed {
            self.code = 1;
        }
        self
    }
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` (program name first), runs the command, and returns the
/// exit code: 0 on success, 1 when a check fails, 2 on bad input.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match execute(&cli.command, exec) {
        Ok(output) => {
            let text = match cli.format.unwrap_or(output.default_format) {
                Format::Json => {
                    serde_json::to_string(&output.payload).expect("JSON values serialize")
                }
                Format::Csv => to_csv(&output.payload),
                Format::Plain => output.plain,
            };
            if writeln!(out, "{}", text.trim_end()).is_err() {
                return 2;
            }
            output.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: &Command, exec: Execution) -> Result<Output, Failure> {
    let guards = DeskGuards::current();
    match command {
        Command::Multidegrees { n, method } => multidegrees(*n, *method, exec),
        Command::Segre {
            n,
            check_hypergeometric,
        } => {
            let s = segre_numbers_standard(*n)?;
            let mut payload = json!({ "n": n, "segre": ints_value(s.numbers()) });
            let mut failed = false;
            if *check_hypergeometric {
                let agrees = segre_numbers_hypergeometric(*n)? == s;
                payload["hypergeometric_agrees"] = Value::Bool(agrees);
                failed = !agrees;
            }
            Ok(Output::json(payload, join(s.numbers())).failing_if(failed))
        }
        Command::Convert {
            degrees,
            segre,
            n,
            deg,
        } => convert(degrees.as_deref(), segre.as_deref(), *n, *deg),
        Command::Volume { polytope } => {
            let p = read_polytope(polytope)?;
            let v = p.volume_with_guards(&guards)?;
            Ok(Output::plain(
                json!({ "volume": rational_value(&v) }),
                v.to_string(),
            ))
        }
        Command::MixedVolume { polytopes } => {
            let bodies = polytopes
                .iter()
                .map(|p| read_polytope(p))
                .collect::<Result<Vec<_>, _>>()?;
            let query = MixedVolumeQuery::new(bodies.iter().collect())?;
            let c = mixed_coefficient_with(&query, exec)?;
            Ok(Output::plain(
                json!({ "mixed_coefficient": rational_value(&c) }),
                c.to_string(),
            ))
        }
        Command::Minors { matrix } => {
            let m = read_matrix(matrix)?;
            let minors = maximal_minors_with(&m, exec, &guards)?;
            let shown: Vec<String> = minors.iter().map(ToString::to_string).collect();
            Ok(Output::json(
                json!({ "n": m.n(), "minors": shown }),
                shown.join("\n"),
            ))
        }
        Command::Fan { n, action } => fan(*n, *action, exec, &guards),
        Command::Report { n } => {
            let report = segre_report_with(*n, exec)?;
            let payload = serde_json::to_value(&report).expect("report serializes");
            let plain = format!(
                "n = {n}\nmultidegrees {}\nsegre {}\nbase components {}\nall paths agree: {}",
                join(&report.multidegrees.formula),
                join(&report.segre.formula),
                report.base_components,
                report.all_agree()
            );
            Ok(Output::json(payload, plain).failing_if(!report.all_agree()))
        }
        Command::Verify {
            max_n,
            corrupt_volume_formula,
        } => {
            let mut options = VerifyOptions::new(*max_n);
            options.execution = exec;
            if *corrupt_volume_formula {
                options.volume_formula = corrupted_closed_form;
            }
            let report = verify(&options)?;
            let plain = report
                .checks
                .iter()
                .map(|c| {
                    let status = if c.passed { "PASS" } else { "FAIL" };
                    match &c.counterexample {
                        Some(why) => format!("{status} {} [{}] {why}", c.name, c.n_range),
                        None => format!("{status} {} [{}]", c.name, c.n_range),
                    }
                })
                .collect::<Vec<_>>()
                .join("\n");
            let payload = serde_json::to_value(&report).expect("report serializes");
            Ok(Output::json(payload, plain).failing_if(!report.passed))
        }
    }
}

fn corrupted_closed_form(a: &Rational, b: &Rational, n: usize) -> crate::Result<Rational> {
    Ok(crate::polytope::volume_closed_form(a, b, n)? + a * b)
}

fn join(xs: &[BigInt]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn multidegrees(n: usize, method: MethodArg, exec: Execution) -> Result<Output, Failure> {
    let single = match method {
        MethodArg::Formula => Some(MultidegreeMethod::Formula),
        MethodArg::MixedVolume => Some(MultidegreeMethod::MixedVolume),
        MethodArg::Extraction => Some(MultidegreeMethod::Extraction),
        MethodArg::All => None,
    };
    if let Some(m) = single {
        let d = multidegree_sequence(n, m, exec)?;
        return Ok(Output::json(
            json!({ "n": n, "method": m.name(), "degrees": ints_value(&d) }),
            join(&d),
        ));
    }
    let paths = MultidegreeMethod::ALL
        .iter()
        .map(|&m| multidegree_sequence(n, m, exec))
        .collect::<crate::Result<Vec<_>>>()?;
    let agree = paths.iter().all(|p| *p == paths[0]);
    let mut payload = json!({ "n": n, "degrees": ints_value(&paths[0]), "paths_agree": agree });
    if !agree {
        let by_method: Map<String, Value> = MultidegreeMethod::ALL
            .iter()
            .zip(&paths)
            .map(|(m, p)| (m.name().to_string(), ints_value(p)))
            .collect();
        payload["paths"] = Value::Object(by_method);
    }
    Ok(Output::json(payload, join(&paths[0])).failing_if(!agree))
}

fn convert(
    degrees: Option<&[BigInt]>,
    segre: Option<&[BigInt]>,
    n: Option<usize>,
    deg: u64,
) -> Result<Output, Failure> {
    match (degrees, segre) {
        (Some(d), None) => {
            let d = MultidegreeSequence::new(d.to_vec(), deg)?;
            if let Some(n) = n.filter(|&n| n != d.n()) {
                return Err(input_error(format!(
                    "--n {n} disagrees with {} multidegrees",
                    d.n() + 1
                )));
            }
            let s = segre_from_multidegrees(&d)?;
            Ok(Output::json(
                json!({ "segre": ints_value(s.numbers()) }),
                join(s.numbers()),
            ))
        }
        (None, Some(s)) => {
            let n = n.ok_or_else(|| input_error("--segre needs --n".to_string()))?;
            let s = SegreVector::new(n, s.to_vec())?;
            let d = multidegrees_from_segre(&s, deg)?;
            Ok(Output::json(
                json!({ "degrees": ints_value(d.degrees()) }),
                join(d.degrees()),
            ))
        }
        _ => Err(input_error(
            "convert takes exactly one of --degrees and --segre".to_string(),
        )),
    }
}

fn fan(
    n: usize,
    action: FanAction,
    exec: Execution,
    guards: &DeskGuards,
) -> Result<Output, Failure> {
    match action {
        FanAction::Count => {
            let cells = common_refinement_with(n, exec, guards)?;
            Ok(Output::json(
                json!({ "n": n, "cells": cells.len() }),
                cells.len().to_string(),
            ))
        }
        FanAction::List => {
            let cells = common_refinement_with(n, exec, guards)?;
            let listed: Vec<Value> = cells
                .iter()
                .map(|c| {
                    let inequalities: Vec<Value> = c
                        .cell
                        .constraints()
                        .iter()
                        .map(|k| {
                            json!({
                                "normal": k.normal.iter().map(rational_value).collect::<Vec<_>>(),
                                "offset": rational_value(&k.offset),
                            })
                        })
                        .collect();
                    json!({ "pair": [c.pair.0, c.pair.1], "inequalities": inequalities })
                })
                .collect();
            let plain = cells
                .iter()
                .map(|c| format!("{} {}", c.pair.0, c.pair.1))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::json(json!({ "n": n, "cells": listed }), plain))
        }
        FanAction::CoverCheck => {
            let (sum, box_volume) = covering_check_with(n, exec, guards)?;
            let covers = sum == box_volume;
            let payload = json!({
                "n": n,
                "cell_volume_sum": rational_value(&sum),
                "box_volume": rational_value(&box_volume),
                "covers": covers,
            });
            Ok(Output::json(payload, format!("{sum} {box_volume}")).failing_if(!covers))
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<'a, T: Deserialize<'a>>(path: &Path, text: &'a str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| {
        input_error(format!(
            "malformed JSON in {} at line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

#[derive(Deserialize)]
struct PolytopeFile {
    dimension: usize,
    vertices: Vec<Vec<Value>>,
}

fn read_polytope(path: &Path) -> Result<VPolytope, Failure> {
    let text = read_text(path)?;
    let file: PolytopeFile = parse_json(path, &text)?;
    let points = file
        .vertices
        .iter()
        .map(|v| {
            v.iter()
                .map(parse_rational_value)
                .collect::<crate::Result<Vec<_>>>()
        })
        .collect::<crate::Result<Vec<_>>>()
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    VPolytope::from_points(file.dimension, points)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))
}

#[derive(Deserialize)]
struct MatrixFile {
    n: usize,
    rows: Vec<Vec<Vec<Value>>>,
}

fn read_matrix(path: &Path) -> Result<LinearFormMatrix, Failure> {
    let text = read_text(path)?;
    let file: MatrixFile = parse_json(path, &text)?;
    let rows = file
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|form| {
                    form.iter()
                        .map(parse_int)
                        .collect::<crate::Result<Vec<_>>>()
                        .map(|coefficients| LinearForm { coefficients })
                })
                .collect::<crate::Result<Vec<_>>>()
        })
        .collect::<crate::Result<Vec<_>>>()
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    LinearFormMatrix::new(file.n, rows).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

/// `path,value` rows for every scalar leaf, in document order.
fn to_csv(value: &Value) -> String {
    fn walk(prefix: &str, value: &Value, rows: &mut Vec<String>) {
        let child = |key: &str| {
            if prefix.is_empty() {
                key.to_string()
            } else {
                format!("{prefix}.{key}")
            }
        };
        match value {
            Value::Object(map) => map.iter().for_each(|(k, v)| walk(&child(k), v, rows)),
            Value::Array(items) => items
                .iter()
                .enumerate()
                .for_each(|(i, v)| walk(&child(&i.to_string()), v, rows)),
            Value::String(s) => rows.push(format!("{prefix},{}", csv_field(s))),
            other => rows.push(format!("{prefix},{other}")),
        }
    }
    let mut rows = vec!["path,value".to_string()];
    walk("", value, &mut rows);
    rows.join("\n")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
