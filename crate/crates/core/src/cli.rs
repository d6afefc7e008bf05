//! Command-line front end. Every subcommand prints one JSON object
//! `{"command", "inputs", "result"}` with sorted keys.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::check::{run_check, CheckBounds, CheckReport};
use crate::error::{input, Error, Result};
use crate::exterior::{Multivector, SurfaceTopology};
use crate::grid::ExecMode;
use crate::index::{abelian_v, chamber_classify, BundleType, Chamber, ChamberParams, RuledSurface};
use crate::invariants::{ggw_abelian, quot_count, sw_ruled};
use crate::slant::{evaluate_abelian, normalize, parse_expr, print_normal, AlgebraContext};

/// Largest magnitude that survives a round trip through an IEEE double.
const SAFE_INT: i64 = (1 << 53) - 1;

#[derive(Debug, Parser)]
#[command(name = "ruledgw", version, about = "Abelian GW and ruled-surface SW invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChamberArg {
    Interesting,
    Empty,
}

#[derive(Debug, Args)]
pub struct ContextArgs {
    #[arg(long)]
    pub genus: u32,
    /// Degree of the kernel bundle, giving `<c1|S>`.
    #[arg(long, default_value_t = 0)]
    pub scalar_degree: i64,
    /// Background class values, `name=int`; repeatable.
    #[arg(long = "k0", value_name = "NAME=INT")]
    pub k0: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form invariant for a quot problem of expected dimension v.
    #[command(allow_negative_numbers = true)]
    Ggw {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        r0: i64,
        #[arg(long)]
        v: i64,
        #[arg(long, default_value = "1")]
        form: String,
        #[arg(long, value_enum, default_value_t = ChamberArg::Interesting)]
        chamber: ChamberArg,
    },
    /// Same, with v computed from the kernel and target degrees.
    #[command(allow_negative_numbers = true)]
    GgwBundle {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        r0: i64,
        #[arg(long)]
        deg_e: i64,
        #[arg(long)]
        deg_e0: i64,
        #[arg(long, default_value = "1")]
        form: String,
        /// `t Vol / 2pi` as an integer or `p/q`; picks the chamber.
        #[arg(long, conflicts_with = "chamber")]
        tau: Option<String>,
        #[arg(long, value_enum)]
        chamber: Option<ChamberArg>,
    },
    /// Seiberg-Witten invariant of the Spin^c structure labelled (d, n).
    #[command(allow_negative_numbers = true)]
    Sw {
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        deg_v0: i64,
        #[arg(long, default_value = "1")]
        form: String,
    },
    /// Number of points of the quot scheme for l = 1.
    QuotCount {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        r0: i64,
    },
    /// Reduce a slant expression to normal form.
    #[command(allow_negative_numbers = true)]
    Normalize {
        #[arg(long)]
        r: u32,
        #[command(flatten)]
        ctx: ContextArgs,
        expr: String,
    },
    /// Normalize an r = 1 expression and evaluate it on the abelian moduli space.
    #[command(allow_negative_numbers = true)]
    Evaluate {
        #[arg(long)]
        r0: i64,
        #[arg(long)]
        v: i64,
        #[command(flatten)]
        ctx: ContextArgs,
        expr: String,
    },
    /// Run the cross-validation grids.
    Check {
        #[arg(long, default_value_t = 4)]
        max_genus: u32,
        #[arg(long, default_value_t = 4)]
        max_r0: i64,
        #[arg(long, default_value_t = 3)]
        max_deg: i64,
        /// Evaluate grid cases on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Response {
    pub json: Value,
    pub exit_code: i32,
}

impl Response {
    fn ok(command: &str, inputs: Value, result: Value) -> Self {
        Response {
            json: json!({ "command": command, "inputs": inputs, "result": result }),
            exit_code: 0,
        }
    }

    /// Canonical one-line rendering.
    pub fn render(&self) -> String {
        serde_json::to_string(&self.json).expect("JSON values always serialize")
    }
}

pub fn int_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) if (-SAFE_INT..=SAFE_INT).contains(&x) => Value::from(x),
        _ => Value::String(n.to_string()),
    }
}

fn small(x: i64) -> Value {
    int_value(&BigInt::from(x))
}

fn parse_form(text: &str, genus: u32) -> Result<Multivector> {
    Multivector::parse(text, &SurfaceTopology::new(genus)?)
}

fn parse_tau(text: &str) -> Result<BigRational> {
    text.trim()
        .parse::<BigRational>()
        .map_err(|e| Error::Input(format!("cannot parse tau {text:?}: {e}")))
}

fn build_context(r: u32, args: &ContextArgs) -> Result<AlgebraContext> {
    let mut ctx = AlgebraContext::new(r, args.genus, args.scalar_degree)?;
    for spec in &args.k0 {
        let Some((name, value)) = spec.split_once('=') else {
            return input(format!("--k0 expects name=int, got {spec:?}"));
        };
        let value: i64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("--k0 value in {spec:?} is not an integer")))?;
        ctx = ctx.with_base_class(name.trim(), value);
    }
    Ok(ctx)
}

fn context_inputs(args: &ContextArgs) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("genus".into(), small(args.genus.into()));
    m.insert("scalar_degree".into(), small(args.scalar_degree));
    m.insert("k0".into(), Value::from(args.k0.clone()));
    m
}

fn report_json(report: &CheckReport) -> Value {
    let suites: Vec<Value> = report
        .suites
        .iter()
        .map(|s| {
            json!({
                "name": s.name,
                "cases": s.cases,
                "passed": s.passed(),
                "failed": s.failed,
                "first_counterexample": s.first_counterexample,
            })
        })
        .collect();
    json!({
        "ok": report.ok(),
        "passed": report.passed(),
        "failed": report.failed(),
        "suites": suites,
    })
}

pub fn run(command: &Command) -> Result<Response> {
    match command {
        Command::Ggw { genus, r0, v, form, chamber } => {
            let l = parse_form(form, *genus)?;
            let value = match chamber {
                ChamberArg::Interesting => ggw_abelian(*genus, *r0, *v, &l)?,
                ChamberArg::Empty => BigInt::from(0),
            };
            let inputs = json!({
                "genus": genus, "r0": small(*r0), "v": small(*v), "form": l.to_string(),
                "chamber": chamber_name(*chamber),
            });
            Ok(Response::ok("ggw", inputs, json!({ "value": int_value(&value) })))
        }
        Command::GgwBundle { genus, r0, deg_e, deg_e0, form, tau, chamber } => {
            let l = parse_form(form, *genus)?;
            let chamber = match (tau, chamber) {
                (Some(text), _) => {
                    let params = ChamberParams::from_tau(parse_tau(text)?, BundleType::line(*deg_e));
                    chamber_classify(&params)?
                }
                (None, Some(ChamberArg::Empty)) => Chamber::Empty,
                (None, _) => Chamber::Interesting,
            };
            let v = abelian_v(*r0, *deg_e, *deg_e0, i64::from(*genus));
            let value = match chamber {
                Chamber::Interesting => ggw_abelian(*genus, *r0, v, &l)?,
                Chamber::Empty => BigInt::from(0),
                Chamber::Wall => {
                    return input(format!("tau = {} lies on the wall", tau.as_deref().unwrap_or("")))
                }
            };
            let inputs = json!({
                "genus": genus, "r0": small(*r0), "deg_e": small(*deg_e), "deg_e0": small(*deg_e0),
                "form": l.to_string(), "tau": tau,
            });
            let result = json!({
                "value": int_value(&value), "v": small(v), "chamber": chamber.as_str(),
            });
            Ok(Response::ok("ggw-bundle", inputs, result))
        }
        Command::Sw { genus, d, n, deg_v0, form } => {
            let geom = RuledSurface::new(*genus, *deg_v0)?;
            let l = parse_form(form, u32::try_from(*genus)?)?;
            let sw = sw_ruled(*d, *n, &geom, &l)?;
            let inputs = json!({
                "genus": small(*genus), "d": small(*d), "n": small(*n), "deg_v0": small(*deg_v0),
                "form": l.to_string(),
            });
            let result = json!({
                "sign": sw.sign,
                "plus": int_value(&sw.plus()),
                "minus": int_value(&sw.minus()),
                "w_c": small(sw.w_c),
                "c": { "s": small(sw.c.coef_s), "f": small(sw.c.coef_f) },
                "pair_with_fibre": small(sw.pair_with_fibre),
            });
            Ok(Response::ok("sw", inputs, result))
        }
        Command::QuotCount { genus, r0 } => {
            let value = quot_count(*genus, *r0)?;
            let inputs = json!({ "genus": genus, "r0": small(*r0) });
            Ok(Response::ok("quot-count", inputs, json!({ "value": int_value(&value) })))
        }
        Command::Normalize { r, ctx, expr } => {
            let algebra = build_context(*r, ctx)?;
            let nf = normalize(&parse_expr(expr, &algebra)?, &algebra)?;
            let mut inputs = context_inputs(ctx);
            inputs.insert("r".into(), Value::from(*r));
            inputs.insert("expr".into(), Value::from(expr.as_str()));
            let result = json!({ "normal_form": print_normal(&nf) });
            Ok(Response::ok("normalize", Value::Object(inputs), result))
        }
        Command::Evaluate { r0, v, ctx, expr } => {
            let algebra = build_context(1, ctx)?;
            let nf = normalize(&parse_expr(expr, &algebra)?, &algebra)?;
            let value = evaluate_abelian(&nf, ctx.genus, *r0, *v)?;
            let mut inputs = context_inputs(ctx);
            inputs.insert("r0".into(), small(*r0));
            inputs.insert("v".into(), small(*v));
            inputs.insert("expr".into(), Value::from(expr.as_str()));
            let result = json!({ "normal_form": print_normal(&nf), "value": int_value(&value) });
            Ok(Response::ok("evaluate", Value::Object(inputs), result))
        }
        Command::Check { max_genus, max_r0, max_deg, sequential } => {
            if *max_r0 < 1 || *max_deg < 0 {
                return input("check bounds need max-r0 >= 1 and max-deg >= 0");
            }
            let bounds = CheckBounds { max_genus: *max_genus, max_r0: *max_r0, max_deg: *max_deg };
            let mode = if *sequential { ExecMode::Sequential } else { ExecMode::default() };
            let report = run_check(&bounds, mode);
            let inputs = json!({ "max_genus": max_genus, "max_r0": max_r0, "max_deg": max_deg });
            let mut response = Response::ok("check", inputs, report_json(&report));
            if !report.ok() {
                response.exit_code = 1;
            }
            Ok(response)
        }
    }
}

fn chamber_name(c: ChamberArg) -> &'static str {
    match c {
        ChamberArg::Interesting => "interesting",
        ChamberArg::Empty => "empty",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Response {
        let cli = Cli::try_parse_from(std::iter::once("ruledgw").chain(args.iter().copied())).unwrap();
        run(&cli.command).unwrap()
    }

    #[test]
    fn quot_count_example() {
        let r = run_args(&["quot-count", "--genus", "2", "--r0", "3"]);
        assert_eq!(r.json["result"], json!({ "value": 9 }));
    }

    #[test]
    fn sw_example() {
        let r = run_args(&["sw", "--genus", "1", "--d", "1", "--n", "1", "--deg-v0", "0", "--form", "1"]);
        let res = &r.json["result"];
        assert_eq!(res["sign"], 1);
        assert_eq!(res["plus"], 2);
        assert_eq!(res["minus"], 0);
        assert_eq!(res["w_c"], 4);
        assert_eq!(res["c"], json!({ "s": 4, "f": 2 }));
    }

    #[test]
    fn normalize_example() {
        let r = run_args(&[
            "normalize", "--r", "1", "--genus", "1", "--scalar-degree", "-1",
            "<c1|g1>*<c1|g2>+<c1|g2>*<c1|g1>",
        ]);
        assert_eq!(r.json["result"], json!({ "normal_form": "0" }));
    }

    #[test]
    fn large_values_become_strings() {
        assert_eq!(int_value(&BigInt::from(SAFE_INT)), json!(SAFE_INT));
        assert_eq!(int_value(&BigInt::from(SAFE_INT + 1)), json!("9007199254740992"));
        let r = run_args(&["quot-count", "--genus", "30", "--r0", "5"]);
        assert_eq!(r.json["result"]["value"], json!("931322574615478515625"));
    }

    #[test]
    fn tau_selects_chamber() {
        let base = ["ggw-bundle", "--genus", "1", "--r0", "2", "--deg-e", "-1", "--deg-e0", "0"];
        let mut above = base.to_vec();
        above.extend(["--tau", "3/2"]);
        assert_eq!(run_args(&above).json["result"]["chamber"], "interesting");
        let mut below = base.to_vec();
        below.extend(["--tau", "1/2"]);
        assert_eq!(run_args(&below).json["result"]["value"], 0);
        let mut wall = base.to_vec();
        wall.extend(["--tau", "1"]);
        let cli = Cli::try_parse_from(std::iter::once("ruledgw").chain(wall)).unwrap();
        assert!(matches!(run(&cli.command), Err(Error::Input(_))));
    }
}
