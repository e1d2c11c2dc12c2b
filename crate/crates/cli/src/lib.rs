//! The `sl2` command line. [`run`] is the whole program so tests can drive
//! it in-process.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use sl2_core::census::{power_census_brute, power_census_formula, PowerCensus, BRUTE_CAP};
use sl2_core::fibpoly::{f_poly, u_poly};
use sl2_core::field::{odd_primes, FIELD_CAP};
use sl2_core::roots::nth_roots;
use sl2_core::sl2::{class_table, ClassInfo};
use sl2_core::verify::run_suite;
use sl2_core::words::{WordContext, WordSpec};
use sl2_core::{BruhatForm, Error, PrimeField, Sl2Elem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED_CHECKS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NO_ROOTS: i32 = 3;
pub const EXIT_NOT_SURJECTIVE: i32 = 4;
pub const EXIT_CAP: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "sl2", version, about = "Roots, power counts and word maps in SL2(F_q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print u_R, or f_R with --homogeneous
    Fib {
        #[arg(short = 'n', allow_negative_numbers = true)]
        r: i64,
        #[arg(long)]
        homogeneous: bool,
    },
    /// Conjugacy class table
    Classes {
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// All x with x^n = g
    Root(RootArgs),
    /// g^n through the Bruhat power formulas
    Power {
        #[arg(long)]
        q: u32,
        #[arg(short = 'n')]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        elem: String,
    },
    /// Count n-th powers
    Census(CensusArgs),
    /// Image of the word X1^r1 ... Xl^rl
    Word {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        word: String,
        /// also list the missing elements
        #[arg(long)]
        missing: bool,
    },
    /// Run the oracle-equivalence suite
    Verify {
        #[arg(long = "max-q", default_value_t = 13)]
        max_q: u32,
        #[arg(long = "max-n", default_value_t = 12)]
        max_n: u64,
    },
}

#[derive(Args, Debug)]
struct RootArgs {
    #[arg(long)]
    q: u32,
    #[arg(short = 'n')]
    n: u64,
    #[arg(long, allow_hyphen_values = true)]
    elem: String,
    #[arg(long, conflicts_with = "one")]
    all: bool,
    #[arg(long)]
    one: bool,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long, required_unless_present = "sweep")]
    q: Option<u32>,
    #[arg(short = 'n')]
    n: u64,
    #[arg(long)]
    brute: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// qmin:qmax, one row per odd prime in range
    #[arg(long, conflicts_with = "q")]
    sweep: Option<String>,
    /// render ratios as decimals
    #[arg(long)]
    float: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Parse `args` (including the program name) and execute, returning the
/// process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::*;
            let informational = matches!(e.kind(), DisplayHelp | DisplayVersion);
            let sink: &mut dyn Write = if informational { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if informational { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Failure::Core(Error::CapExceeded { .. }) => EXIT_CAP,
                _ => EXIT_USAGE,
            }
        }
    }
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Usage(String),
    Io(std::io::Error),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Usage(s) => f.write_str(s),
            Failure::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn field(q: u32, cap: u32) -> std::result::Result<PrimeField, Failure> {
    let f = PrimeField::new(q)?;
    if q > cap {
        return Err(Error::CapExceeded { what: "q", value: q as u64, cap: cap as u64 }.into());
    }
    Ok(f)
}

fn print_json(out: &mut dyn Write, value: &Value) -> std::result::Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Fib { r, homogeneous } => {
            let poly = if homogeneous { f_poly(r)? } else { u_poly(r)? };
            writeln!(out, "{poly}")?;
            Ok(EXIT_OK)
        }
        Command::Classes { q, format } => {
            let f = field(q, FIELD_CAP)?;
            let rows: Vec<ClassRow> = class_table(f).iter().map(ClassRow::from).collect();
            match format {
                Format::Json => print_json(out, &serde_json::to_value(&rows)?)?,
                Format::Csv => write_csv(out, &rows)?,
            }
            Ok(EXIT_OK)
        }
        Command::Root(args) => root(args, out),
        Command::Power { q, n, elem } => {
            let f = field(q, FIELD_CAP)?;
            let g = Sl2Elem::parse(f, &elem)?;
            let x = g.to_bruhat();
            let value = json!({
                "q": q,
                "n": n,
                "element": g.wire(),
                "bruhat": x.to_string(),
                "power": element_json(&x.pow(n)),
                "smallest_borel_power": x.smallest_borel_power(),
            });
            print_json(out, &value)?;
            Ok(EXIT_OK)
        }
        Command::Census(args) => census(args, out),
        Command::Word { q, word, missing } => {
            let f = field(q, BRUTE_CAP)?;
            let spec: WordSpec = word.parse().map_err(|_| Failure::Usage(format!("bad word `{word}`")))?;
            let mut ctx = WordContext::new(f)?;
            let report = ctx.word_image(&spec);
            let mut value = json!({
                "q": q,
                "word": spec.exponents(),
                "image_size": report.image_size,
                "group_size": report.group_size,
                "surjective": report.surjective,
                "missing": report.missing.iter().map(ClassRow::from).collect::<Vec<_>>(),
            });
            if missing {
                let elems: Vec<String> = ctx.expand(&report.missing).iter().map(Sl2Elem::wire).collect();
                value["missing_elements"] = json!(elems);
            }
            print_json(out, &value)?;
            Ok(if report.surjective { EXIT_OK } else { EXIT_NOT_SURJECTIVE })
        }
        Command::Verify { max_q, max_n } => {
            let rows = run_suite(max_q, max_n)?;
            let mut failed = 0;
            for row in &rows {
                let status = if row.pass() { "PASS" } else { "FAIL" };
                failed += usize::from(!row.pass());
                writeln!(
                    out,
                    "{status}  {:<13} q={:<3} {:<40} expected {:<20} observed {}",
                    row.suite, row.q, row.case, row.expected, row.observed
                )?;
            }
            writeln!(out, "{} checks, {} failed", rows.len(), failed)?;
            Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILED_CHECKS })
        }
    }
}

#[derive(Serialize)]
struct ClassRow {
    #[serde(rename = "type")]
    kind: String,
    representative: String,
    size: u64,
}

impl From<&ClassInfo> for ClassRow {
    fn from(c: &ClassInfo) -> Self {
        ClassRow { kind: c.class.to_string(), representative: c.representative.wire(), size: c.size }
    }
}

fn element_json(x: &BruhatForm) -> Value {
    json!({ "matrix": x.to_matrix().wire(), "bruhat": x.to_string() })
}

fn root(args: RootArgs, out: &mut dyn Write) -> Outcome {
    let f = field(args.q, FIELD_CAP)?;
    let g = Sl2Elem::parse(f, &args.elem)?;
    let sol = nth_roots(&g.to_bruhat(), args.n)?;
    let take = if args.one { 1 } else { usize::MAX };
    let roots: Vec<Value> = sol
        .roots
        .iter()
        .take(take)
        .map(|r| {
            let mut v = element_json(&r.form);
            v["method"] = json!(r.method.tag());
            v
        })
        .collect();
    let value = json!({
        "q": args.q,
        "n": args.n,
        "element": g.wire(),
        "count": sol.len(),
        "roots": roots,
    });
    print_json(out, &value)?;
    Ok(if sol.is_empty() { EXIT_NO_ROOTS } else { EXIT_OK })
}

#[derive(Serialize)]
struct CensusRow {
    q: u64,
    n: u64,
    mode: &'static str,
    c: u64,
    s: u64,
    central: u64,
    split: u64,
    nonsemisimple: u64,
    anisotropic: u64,
    ratio_c: String,
    ratio_s: String,
}

fn ratio_text(r: num_rational::Ratio<u64>, float: bool) -> String {
    if float {
        format!("{:.6}", *r.numer() as f64 / *r.denom() as f64)
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn census_json(c: &PowerCensus, float: bool) -> Value {
    let ratio = |r: num_rational::Ratio<u64>| if float { json!(*r.numer() as f64 / *r.denom() as f64) } else { json!(ratio_text(r, false)) };
    json!({
        "q": c.q,
        "n": c.n,
        "mode": c.mode.tag(),
        "c": c.c,
        "s": c.s,
        "per_type": {
            "central": c.per_type.central,
            "split": c.per_type.split,
            "nonsemisimple": c.per_type.nonsemisimple,
            "anisotropic": c.per_type.anisotropic,
        },
        "ratio_c": ratio(c.ratio_c()),
        "ratio_s": ratio(c.ratio_s()),
    })
}

fn census(args: CensusArgs, out: &mut dyn Write) -> Outcome {
    let qs: Vec<u32> = match (&args.sweep, args.q) {
        (Some(range), _) => {
            let (lo, hi) = range
                .split_once(':')
                .and_then(|(a, b)| Some((a.parse::<u32>().ok()?, b.parse::<u32>().ok()?)))
                .ok_or_else(|| Failure::Usage(format!("bad sweep range `{range}`, expected qmin:qmax")))?;
            if hi > FIELD_CAP {
                return Err(Error::CapExceeded { what: "q", value: hi as u64, cap: FIELD_CAP as u64 }.into());
            }
            odd_primes(lo, hi)
        }
        (None, Some(q)) => vec![q],
        (None, None) => unreachable!("clap requires --q or --sweep"),
    };
    let mut reports = Vec::new();
    for q in qs {
        let f = field(q, FIELD_CAP)?;
        let report = if args.brute {
            power_census_brute(f, args.n)?
        } else {
            power_census_formula(f, args.n)?
        };
        reports.push(report);
    }
    match args.format {
        Format::Json => {
            let docs: Vec<Value> = reports.iter().map(|c| census_json(c, args.float)).collect();
            if args.sweep.is_some() {
                print_json(out, &Value::Array(docs))?;
            } else {
                print_json(out, &docs[0])?;
            }
        }
        Format::Csv => {
            let rows: Vec<CensusRow> = reports
                .iter()
                .map(|c| CensusRow {
                    q: c.q,
                    n: c.n,
                    mode: c.mode.tag(),
                    c: c.c,
                    s: c.s,
                    central: c.per_type.central,
                    split: c.per_type.split,
                    nonsemisimple: c.per_type.nonsemisimple,
                    anisotropic: c.per_type.anisotropic,
                    ratio_c: ratio_text(c.ratio_c(), args.float),
                    ratio_s: ratio_text(c.ratio_s(), args.float),
                })
                .collect();
            write_csv(out, &rows)?;
        }
    }
    Ok(EXIT_OK)
}

fn write_csv<T: Serialize>(out: &mut dyn Write, rows: &[T]) -> std::result::Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
