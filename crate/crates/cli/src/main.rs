//! `lemnisum`: tables, sums, integrals, identity checks and the coefficient
//! relations, as JSON or text on standard output.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lemnisum::algebra::ClosedForm;
use lemnisum::conjecture::{conjecture_check, DEFAULT_PMAX};
use lemnisum::eisenstein::{series_table, DEFAULT_M_MAX};
use lemnisum::integrals::{integral_closed_form, integral_numeric, relation_check, IntegralKind, IntegralSpec, Relation};
use lemnisum::jacobi::jacobi_tables;
use lemnisum::numerics::{decimal, log2_abs, meaningful_digits, to_real, HPReal};
use lemnisum::sums::{alpha, beta_gamma, sum_closed_form, sum_numeric, FamilyTag, SumFamily};
use lemnisum::verify::{run_suite, tolerance_log2, Status, SuiteConfig};
use lemnisum::Error;
use serde_json::{json, Map, Value};

#[derive(Parser, Debug)]
#[command(name = "lemnisum", version, about = "Hyperbolic sums and integrals in closed form and to high precision")]
struct Cli {
    /// Absolute precision target in bits.
    #[arg(long, global = true, env = "LEMNISUM_PREC", default_value_t = 200)]
    prec: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Table {
    Alpha,
    Beta,
    Gamma,
    F,
    P,
    Q,
    S,
    Phi,
    Minus2,
    Plus2,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficient and polynomial tables.
    Tables {
        #[arg(long, value_enum)]
        what: Table,
        /// Largest index (k, m or p depending on the table).
        #[arg(long)]
        max: Option<u32>,
    },
    /// One hyperbolic series: closed form and optional direct summation.
    Sum {
        #[arg(long)]
        family: String,
        #[arg(long)]
        exp: u32,
        #[arg(long)]
        numeric: bool,
    },
    /// One integral over (0, ∞).
    Integral {
        #[arg(long)]
        kind: String,
        /// Squared kinds: exponent 4p+1.
        #[arg(long)]
        p: Option<u32>,
        /// Exponent of x; required for plus1 and minus1.
        #[arg(long)]
        a: Option<u32>,
        #[arg(long)]
        numeric: bool,
    },
    /// Both sides of an integral/series identity.
    Relations {
        #[arg(long)]
        which: String,
        #[arg(long)]
        a: u32,
    },
    /// The full identity suite; exits 1 if any entry fails.
    Verify {
        #[arg(long, default_value_t = DEFAULT_PMAX)]
        pmax: u32,
        /// Include per-entry wall-clock times (makes output run-dependent).
        #[arg(long)]
        timings: bool,
    },
    /// Rational relations between the two integral coefficient pairs.
    Conjecture {
        #[arg(long, default_value_t = DEFAULT_PMAX)]
        pmax: u32,
    },
}

enum Failure {
    Config(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::PrecisionUnreachable { .. } => Failure::Check(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

type Outcome = Result<(Value, bool), Failure>;

fn real(x: &HPReal, prec: u32) -> Value {
    Value::String(decimal(x, meaningful_digits(x, prec)))
}

fn log2_string(x: &HPReal) -> String {
    let l = log2_abs(x);
    if l.is_finite() {
        format!("2^{l:.1}")
    } else {
        "0".into()
    }
}

fn closed_form_json(v: &ClosedForm, prec: u32) -> Value {
    json!({ "text": v.to_string(), "terms": v, "decimal": real(&to_real(v, prec), prec) })
}

fn tables(what: Table, max: Option<u32>) -> Outcome {
    let rows: Vec<Value> = match what {
        Table::Alpha => (2..=max.unwrap_or(20))
            .step_by(2)
            .map(|k| Ok(json!({ "k": k, "value": alpha(k)?.to_string() })))
            .collect::<Result<_, Error>>()?,
        Table::Beta | Table::Gamma => (3..=max.unwrap_or(23))
            .step_by(2)
            .map(|k| {
                let (b, g) = beta_gamma(k)?;
                Ok(json!({ "k": k, "value": if what == Table::Beta { b } else { g }.to_string() }))
            })
            .collect::<Result<_, Error>>()?,
        Table::F | Table::P | Table::Q => {
            let n = max.unwrap_or(12) as usize;
            let t = jacobi_tables(n);
            let polys = match what {
                Table::F => &t.f,
                Table::P => &t.p,
                _ => &t.q,
            };
            (0..=n).step_by(2).map(|m| json!({ "m": m, "value": polys[m].to_string() })).collect()
        }
        Table::S | Table::Phi => {
            let n = max.unwrap_or(4) as usize;
            if n == 0 || n > DEFAULT_M_MAX * 4 {
                return Err(Failure::Config(format!("--max must be in 1..={}", DEFAULT_M_MAX * 4)));
            }
            let t = series_table(n);
            (1..=n)
                .map(|m| {
                    if what == Table::S {
                        json!({ "k": 2 * m - 1, "value": t.s(m - 1).to_string() })
                    } else {
                        json!({ "m": 2 * m, "value": t.phi(m).to_string() })
                    }
                })
                .collect()
        }
        Table::Minus2 | Table::Plus2 => {
            let (kind, first) = if what == Table::Minus2 { (IntegralKind::Minus2, 1) } else { (IntegralKind::Plus2, 0) };
            (first..=max.unwrap_or(7))
                .map(|p| {
                    let v = integral_closed_form(kind, i64::from(p))?;
                    Ok(json!({ "p": p, "a": 4 * p + 1, "value": v.to_string(), "terms": v }))
                })
                .collect::<Result<_, Error>>()?
        }
    };
    let name = format!("{what:?}").to_lowercase();
    Ok((json!({ "what": name, "rows": rows }), true))
}

fn sum(family: &str, exp: u32, numeric: bool, prec: u32) -> Outcome {
    let tag: FamilyTag = family.parse()?;
    let f = SumFamily::new(tag, exp)?;
    let cf = sum_closed_form(f)?;
    let mut out = Map::new();
    out.insert("family".into(), json!(f.to_string()));
    out.insert("closed_form".into(), closed_form_json(&cf, prec));
    let mut ok = true;
    if numeric {
        eprintln!("summing {f} at {prec} bits");
        let s = sum_numeric(f, prec)?;
        let delta = HPReal::with_val(s.value.prec(), &s.value - &to_real(&cf, prec)).abs();
        ok = log2_abs(&delta) < tolerance_log2(prec);
        out.insert("numeric".into(), real(&s.value, prec));
        out.insert("terms_summed".into(), json!(s.terms));
        out.insert("tail_bound".into(), json!(format!("2^{:.1}", s.tail_log2)));
        out.insert("abs_delta".into(), json!(log2_string(&delta)));
        out.insert("agrees".into(), json!(ok));
    }
    Ok((Value::Object(out), ok))
}

fn integral(kind: &str, p: Option<u32>, a: Option<u32>, numeric: bool, prec: u32) -> Outcome {
    let kind: IntegralKind = kind.parse()?;
    let squared = kind.power() == 2;
    let a = match (p, a) {
        (Some(p), None) if squared => 4 * p + 1,
        (None, Some(a)) if !squared => a,
        (None, Some(a)) if a % 4 == 1 => a,
        _ if squared => return Err(Failure::Config("squared kinds take --p (or --a = 4p+1)".into())),
        _ => return Err(Failure::Config(format!("{kind} takes --a"))),
    };
    let spec = IntegralSpec::new(kind, a)?;
    let mut out = Map::new();
    out.insert("kind".into(), json!(kind.name()));
    out.insert("a".into(), json!(a));
    let cf = if squared { Some(integral_closed_form(kind, i64::from(a / 4))?) } else { None };
    if let Some(cf) = &cf {
        out.insert("closed_form".into(), closed_form_json(cf, prec));
    }
    let mut ok = true;
    if numeric || !squared {
        eprintln!("integrating {spec} at {prec} bits");
        let n = integral_numeric(spec, prec)?;
        out.insert("numeric".into(), real(&n.value, prec));
        out.insert("tail_bound".into(), json!(format!("2^{:.1}", n.tail_log2)));
        out.insert("T".into(), json!(n.cutoff));
        out.insert("quad_delta".into(), json!(log2_string(&n.quad_delta)));
        if let Some(cf) = &cf {
            let delta = HPReal::with_val(n.value.prec(), &n.value - &to_real(cf, prec)).abs();
            ok = log2_abs(&delta) < tolerance_log2(prec);
            out.insert("abs_delta".into(), json!(log2_string(&delta)));
            out.insert("agrees".into(), json!(ok));
        }
    }
    Ok((Value::Object(out), ok))
}

fn relations(which: &str, a: u32, prec: u32) -> Outcome {
    let which: Relation = which.parse()?;
    eprintln!("evaluating {which} at a = {a}, {prec} bits");
    let r = relation_check(which, a, prec)?;
    let ok = log2_abs(&r.abs_delta) < tolerance_log2(prec);
    let side = |c: &lemnisum::numerics::HPComplex| json!({ "re": real(&c.re, prec), "im": real(&c.im, prec) });
    Ok((
        json!({
            "which": which.name(),
            "a": a,
            "lhs": side(&r.lhs),
            "rhs": side(&r.rhs),
            "abs_delta": log2_string(&r.abs_delta),
            "agrees": ok,
        }),
        ok,
    ))
}

fn verify(pmax: u32, timings: bool, prec: u32) -> Outcome {
    if pmax == 0 {
        return Err(Failure::Config("--pmax must be at least 1".into()));
    }
    let cfg = SuiteConfig { prec, pmax };
    let [lo, hi] = cfg.precisions();
    eprintln!("running {} checks at {lo} and {hi} bits", lemnisum::verify::suite_ids().count());
    let mut entries = run_suite(&cfg, &|line| eprintln!("{line}"));
    if !timings {
        for e in &mut entries {
            e.runtime_ms = None;
        }
    }
    let ok = entries.iter().all(|e| e.status != Status::Fail);
    let failed = entries.iter().filter(|e| e.status == Status::Fail).count();
    Ok((json!({ "precisions": [lo, hi], "failed": failed, "entries": entries }), ok))
}

fn conjecture(pmax: u32) -> Outcome {
    let rows = conjecture_check(pmax)?;
    let ok = rows.iter().all(|r| r.holds());
    Ok((json!({ "pmax": pmax, "entries": rows }), ok))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Tables { .. } => "tables",
        Command::Sum { .. } => "sum",
        Command::Integral { .. } => "integral",
        Command::Relations { .. } => "relations",
        Command::Verify { .. } => "verify",
        Command::Conjecture { .. } => "conjecture",
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Renders the JSON report as indented `key: value` lines.
fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(val, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(val))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(map) if map.values().all(|x| !x.is_object() && !x.is_array()) => {
                        let line: Vec<String> = map.iter().map(|(k, x)| format!("{k}={}", scalar(x))).collect();
                        out.push_str(&format!("{pad}- {}\n", line.join("  ")));
                    }
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar(item))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.prec < 64 {
        eprintln!("error: --prec must be at least 64 (got {})", cli.prec);
        return ExitCode::from(2);
    }
    let prec = cli.prec;
    let result = match &cli.command {
        Command::Tables { what, max } => tables(*what, *max),
        Command::Sum { family, exp, numeric } => sum(family, *exp, *numeric, prec),
        Command::Integral { kind, p, a, numeric } => integral(kind, *p, *a, *numeric, prec),
        Command::Relations { which, a } => relations(which, *a, prec),
        Command::Verify { pmax, timings } => verify(*pmax, *timings, prec),
        Command::Conjecture { pmax } => conjecture(*pmax),
    };
    let (body, ok) = match result {
        Ok(r) => r,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let mut report = Map::new();
    report.insert("schema".into(), json!(1));
    report.insert("command".into(), json!(command_name(&cli.command)));
    report.insert("prec".into(), json!(prec));
    if let Value::Object(map) = body {
        report.extend(map);
    }
    let report = Value::Object(report);
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
        Format::Text => {
            let mut out = String::new();
            render_text(&report, 0, &mut out);
            print!("{out}");
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
