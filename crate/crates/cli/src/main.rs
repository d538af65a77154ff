use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mahler_core::algnum::NumberField;
use mahler_core::config::pow2_neg;
use mahler_core::expr::{format_algebraic, parse_algebraic};
use mahler_core::heights::{mahler_roots, polynomial_measure, weil_height};
use mahler_core::metric::{m_inf, m_one, northcott_enumerate, q_of, reduce_representation, SolveResult};
use mahler_core::polycore::{factor_rational, is_cyclotomic_product};
use mahler_core::{AlgebraicNumber, Config, Error, IntPoly, MeasureValue, Representation};
use num_rational::BigRational;
use serde_json::{Map, Value};

#[derive(Parser, Debug)]
#[command(name = "mahler", version, about = "Weil heights, Mahler measures and the metric Mahler measures")]
struct Cli {
    /// Root boxes are refined to width 2^-BITS.
    #[arg(long, global = true, value_name = "BITS", env = "MAHLER_PRECISION", default_value_t = 60)]
    precision: u32,
    /// Largest common exponent denominator for the ultrametric witness search.
    #[arg(long, global = true, default_value_t = Config::DEFAULT_KMAX)]
    kmax: u32,
    /// Largest Galois closure degree handled exactly.
    #[arg(long, global = true, default_value_t = Config::DEFAULT_CLOSURE_CAP)]
    closure_cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include the witness representation in m1/minf records.
    #[arg(long, global = true)]
    emit_witness: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factorization and Mahler measure of an integer polynomial.
    Poly {
        #[arg(allow_hyphen_values = true)]
        polynomial: String,
    },
    /// Weil height of an algebraic number.
    Height {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Mahler measure of an algebraic number.
    Mahler {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Metric Mahler measure.
    M1 {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Ultrametric Mahler measure.
    Minf {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Reduce `target = f1 * ... * fN` into rad(K_target).
    Reduce {
        #[arg(allow_hyphen_values = true)]
        target: String,
        #[arg(required = true, allow_hyphen_values = true)]
        factors: Vec<String>,
    },
    /// Elements of height at most B in Q or a quadratic field.
    Enumerate {
        bound: String,
        /// Generator of the field; defaults to Q.
        #[arg(long)]
        field: Option<String>,
    },
    /// Smallest height above 1 in the Galois closure of Q(expr).
    Qof {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

/// Outcome of a command: the record and whether only bounds were certified.
struct Output {
    record: Vec<(&'static str, Value)>,
    bounds_only: bool,
}

impl Output {
    fn exact(record: Vec<(&'static str, Value)>) -> Self {
        Output { record, bounds_only: false }
    }
}

fn s(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

fn list<T>(xs: &[T], f: impl Fn(&T) -> String) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(f(x))).collect())
}

fn measure_fields(m: &MeasureValue) -> Vec<(&'static str, Value)> {
    let (lo, hi) = m.decimal_bounds(15);
    vec![("value", s(m)), ("lower", s(lo)), ("upper", s(hi)), ("exact", Value::Bool(m.is_exact()))]
}

fn number(expr: &str) -> Result<AlgebraicNumber, Error> {
    parse_algebraic(expr)
}

fn describe(x: &AlgebraicNumber) -> Vec<(&'static str, Value)> {
    vec![("input", s(format_algebraic(x))), ("degree", Value::from(x.degree())), ("minpoly", s(x.minpoly()))]
}

fn solve_record(res: &SolveResult, emit_witness: bool) -> Output {
    let mut record = Vec::new();
    for (k, v) in res.entries() {
        let value = match k {
            "witness" if !emit_witness => continue,
            "exact" | "location" => Value::Bool(v == "true"),
            "length_bound" | "kmax" | "closure_degree" => v.parse::<u64>().map(Value::from).unwrap_or(Value::Null),
            "q" if v == "none" => Value::Null,
            "candidates" => list(&res.candidates, format_algebraic),
            _ => Value::String(v),
        };
        record.push((k, value));
    }
    Output { record, bounds_only: !res.is_exact() }
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let config = Config { kmax: cli.kmax, closure_cap: cli.closure_cap, ..Config::default() }.with_precision(pow2_neg(cli.precision));
    let prec = &config.precision;
    let out = match &cli.command {
        Command::Poly { polynomial } => {
            let f = IntPoly::parse(polynomial)?;
            let m = polynomial_measure(&f, prec)?;
            let fac = factor_rational(&f);
            let mut record = vec![
                ("command", s("poly")),
                ("polynomial", s(&f)),
                ("degree", Value::from(f.degree())),
                ("factors", list(&fac.factors, |(g, e)| if *e == 1 { g.to_string() } else { format!("({g})^{e}") })),
                ("cyclotomic", Value::Bool(is_cyclotomic_product(&f))),
            ];
            record.extend(measure_fields(&m));
            Output::exact(record)
        }
        Command::Height { expr } => {
            let x = number(expr)?;
            let mut record = vec![("command", s("height"))];
            record.extend(describe(&x));
            record.extend(measure_fields(&weil_height(&x, prec)));
            Output::exact(record)
        }
        Command::Mahler { expr } => {
            let x = number(expr)?;
            let mut record = vec![("command", s("mahler"))];
            record.extend(describe(&x));
            record.extend(measure_fields(&mahler_roots(&x, prec)));
            Output::exact(record)
        }
        Command::M1 { expr } => solve_record(&m_one(&number(expr)?, &config)?, cli.emit_witness),
        Command::Minf { expr } => solve_record(&m_inf(&number(expr)?, &config)?, cli.emit_witness),
        Command::Reduce { target, factors } => {
            let target = number(target)?;
            let factors = factors.iter().map(|f| number(f)).collect::<Result<Vec<_>, _>>()?;
            let red = reduce_representation(&Representation::new(target, factors)?, &config)?;
            let norms = red.norms.iter().map(format_algebraic).collect::<Vec<_>>();
            Output::exact(vec![
                ("command", s("reduce")),
                ("target", s(format_algebraic(&red.reduced.target))),
                ("field_degree", Value::from(red.field.degree())),
                ("zeta", s(red.reduced.zeta)),
                ("factors", list(&red.reduced.factors, format_algebraic)),
                ("orders", Value::from(red.orders.clone())),
                ("norms", list(&norms, String::clone)),
                ("measure_certified", Value::from(red.measure_certified.clone())),
            ])
        }
        Command::Enumerate { bound, field } => {
            let b: BigRational = bound.parse().map_err(|_| Error::Parse(format!("invalid bound '{bound}'")))?;
            let k = match field {
                Some(g) => NumberField::new(number(g)?).with_cap(config.closure_cap),
                None => NumberField::rationals(),
            };
            let elems = northcott_enumerate(&k, &b)?
                .iter()
                .map(|e| k.to_algebraic(e).map(|x| format_algebraic(&x)))
                .collect::<Result<Vec<_>, _>>()?;
            Output::exact(vec![
                ("command", s("enumerate")),
                ("field", s(format_algebraic(k.generator()))),
                ("field_degree", Value::from(k.degree())),
                ("bound", s(&b)),
                ("count", Value::from(elems.len())),
                ("elements", list(&elems, String::clone)),
            ])
        }
        Command::Qof { expr } => {
            let x = number(expr)?;
            let q = q_of(&x, config.closure_cap)?;
            let mut record = vec![("command", s("qof"))];
            record.extend(describe(&x));
            record.extend(measure_fields(&q));
            Output::exact(record)
        }
    };
    Ok(out)
}

fn render(record: Vec<(&'static str, Value)>, format: Format) -> String {
    match format {
        Format::Json => {
            let map: Map<String, Value> = record.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            Value::Object(map).to_string()
        }
        Format::Text => record
            .into_iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::UnsupportedDegree { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{}", render(out.record, cli.format));
            ExitCode::from(if out.bounds_only { 4 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
