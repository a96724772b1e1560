use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use zp2code::constructions::ConstructionSpec;
use zp2code::covering::{
    external_distance_bound, sphere_covering_bound, BoundReport, BoundValue, SphereVariant,
};
use zp2code::harness::{run_suite, SuiteConfig};
use zp2code::{
    CodeType, CoveringResult, Error, GeneratorMatrix, Limits, LinearCode, Method, Metric,
    RingContext, SearchOptions, WeightDistribution, Word,
};

const EXIT_USAGE: u8 = 1;
const EXIT_CAP: u8 = 2;
const EXIT_UNREADABLE: u8 = 4;
const EXIT_MALFORMED: u8 = 5;

/// Linear codes over Z_{p^2}: weights, Gray images, covering radii and audits.
#[derive(Parser)]
#[command(name = "zp2code", version, after_help = ENV_HELP)]
struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Worker threads for covering-radius searches. Defaults to the machine's parallelism.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

const ENV_HELP: &str = "Environment:\n  ZP2CODE_MAX_WORDS  cap on words enumerated by a single search (default 134217728)";

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Lee and Hamming weight of a residue.
    Weight {
        #[arg(short)]
        p: u32,
        #[arg(short)]
        x: u32,
    },
    /// Gray image of a word.
    Gray {
        #[arg(short)]
        p: u32,
        /// Comma-separated residues mod p^2.
        #[arg(long)]
        word: String,
    },
    /// Parameters, type and weight distributions of a code.
    Analyze { file: PathBuf },
    /// Exact covering radius of a code.
    Radius {
        file: PathBuf,
        #[arg(long, default_value = "lee")]
        metric: Metric,
        #[arg(long, default_value = "exhaustive")]
        method: Method,
    },
    /// Writes the generator matrix of a named construction.
    Construct(ConstructArgs),
    /// Sphere-covering and external-distance bounds.
    Bounds { file: PathBuf },
    /// Runs the audit suite.
    Audit {
        #[arg(long, conflicts_with = "default", required_unless_present = "default")]
        config: Option<PathBuf>,
        #[arg(long)]
        default: bool,
    },
}

#[derive(Args)]
struct ConstructArgs {
    /// Family name, e.g. unit_rep, zero_div_rep, br_full, br_drop_last, br_mixed, random.
    #[arg(long, required_unless_present = "spec", conflicts_with = "spec")]
    family: Option<String>,
    /// Comma-separated key=value pairs, e.g. p=2,n=3.
    #[arg(long, requires = "family", default_value = "")]
    params: String,
    /// A full construction spec as JSON, or @PATH to read one from a file.
    #[arg(long)]
    spec: Option<String>,
    /// Output path; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Unreadable(PathBuf, std::io::Error),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            let (code, msg) = match failure {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Unreadable(path, e) => (
                    EXIT_UNREADABLE,
                    format!("cannot read {}: {e}", path.display()),
                ),
                Failure::Lib(e @ Error::ResourceLimit { .. }) => (EXIT_CAP, e.to_string()),
                Failure::Lib(e @ (Error::Parse { .. } | Error::Config(_))) => {
                    (EXIT_MALFORMED, e.to_string())
                }
                Failure::Lib(e) => (EXIT_USAGE, e.to_string()),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let limits = Limits::from_env()?;
    let mut opts = match cli.threads {
        Some(t) => SearchOptions::with_threads(t as usize),
        None => SearchOptions::default(),
    };
    opts.limits = limits;
    let json = cli.format == Format::Json;

    match cli.command {
        Command::Weight { p, x } => {
            let ctx = RingContext::new(p)?;
            let lee = ctx.lee_weight(x)?;
            let hamming = u32::from(x != 0);
            if json {
                emit(&serde_json::json!({"p": p, "x": x, "lee": lee, "hamming": hamming}));
            } else {
                println!("lee={lee} hamming={hamming}");
            }
        }
        Command::Gray { p, word } => {
            let ctx = RingContext::new(p)?;
            let entries = parse_csv(&word)?;
            let image = ctx.gray_word(&Word::new(ctx.q(), entries.clone())?)?;
            if json {
                emit(&serde_json::json!({"p": p, "word": entries, "image": image.entries()}));
            } else {
                println!("{image}");
            }
        }
        Command::Analyze { file } => {
            let code = load_code(&file, &opts.limits)?;
            let report = AnalyzeReport::of(&code)?;
            if json {
                emit(&report);
            } else {
                print!("{}", report.table());
            }
        }
        Command::Radius {
            file,
            metric,
            method,
        } => {
            let code = load_code(&file, &opts.limits)?;
            let result = zp2code::covering::covering_radius(&code, metric, method, &opts)?;
            if json {
                emit(&result);
            } else {
                println!("{}", radius_line(&result));
            }
        }
        Command::Construct(args) => construct(args)?,
        Command::Bounds { file } => {
            let code = load_code(&file, &opts.limits)?;
            let (ctx, n, m) = (*code.ctx(), code.n(), code.size() as u64);
            let reports = vec![
                sphere_covering_bound(&ctx, n, m, SphereVariant::Paper)?,
                sphere_covering_bound(&ctx, n, m, SphereVariant::ExactBall)?,
                external_distance_bound(&code, &opts.limits)?,
            ];
            if json {
                emit(&reports);
            } else {
                for r in &reports {
                    println!("{}", bound_line(r));
                }
            }
        }
        Command::Audit { config, default } => {
            let config = match (config, default) {
                (Some(path), _) => SuiteConfig::parse(&read(&path)?)?,
                (None, true) => SuiteConfig::default_suite(),
                (None, false) => {
                    return Err(Failure::Usage(
                        "audit needs --config FILE or --default".into(),
                    ))
                }
            };
            let outcome = run_suite(&config, &opts)?;
            if json {
                emit(&outcome.to_json());
            } else {
                print!("{}", outcome.to_table());
            }
            return Ok(outcome.exit_code() as u8);
        }
    }
    Ok(0)
}

fn emit(value: &impl Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("output serializes")
    );
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Unreadable(path.to_owned(), e))
}

fn load_code(path: &Path, limits: &Limits) -> Result<LinearCode, Failure> {
    let g = GeneratorMatrix::parse(&read(path)?)?;
    Ok(LinearCode::span(&g, limits)?)
}

fn parse_csv(text: &str) -> Result<Vec<u32>, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Failure::Usage(format!("`{t}` is not a residue")))
        })
        .collect()
}

/// Turns `p=2,n=3` into a JSON object, reading each value as JSON when it parses.
fn parse_params(text: &str) -> Result<Map<String, Value>, Failure> {
    let mut out = Map::new();
    for pair in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("expected key=value, got `{pair}`")))?;
        let value = serde_json::from_str(value.trim())
            .unwrap_or_else(|_| Value::String(value.trim().to_owned()));
        out.insert(key.trim().to_owned(), value);
    }
    Ok(out)
}

fn construct(args: ConstructArgs) -> Result<(), Failure> {
    let spec: ConstructionSpec = match (&args.spec, &args.family) {
        (Some(spec), _) => {
            let text = match spec.strip_prefix('@') {
                Some(path) => read(Path::new(path))?,
                None => spec.clone(),
            };
            serde_json::from_str(&text)
                .map_err(|e| Error::Config(format!("construction spec: {e}")))?
        }
        (None, Some(family)) => {
            let mut object = parse_params(&args.params)?;
            object.insert("family".into(), Value::String(family.clone()));
            serde_json::from_value(Value::Object(object))
                .map_err(|e| Failure::Usage(format!("construction: {e}")))?
        }
        (None, None) => return Err(Failure::Usage("construct needs --family or --spec".into())),
    };
    let text = spec.generator()?.to_text();
    match args.output {
        Some(path) => std::fs::write(&path, text).map_err(|e| Failure::Unreadable(path, e))?,
        None => print!("{text}"),
    }
    Ok(())
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct AnalyzeReport {
    p: u32,
    n: usize,
    size: u64,
    /// `None` when the code has fewer than two codewords.
    d_hamming: Option<u32>,
    d_lee: Option<u32>,
    code_type: Option<CodeType>,
    hamming: BTreeMap<u32, u64>,
    lee: BTreeMap<u32, u64>,
}

impl AnalyzeReport {
    fn of(code: &LinearCode) -> Result<Self, Error> {
        let defined = |r: Result<u32, Error>| match r {
            Ok(d) => Ok(Some(d)),
            Err(Error::UndefinedDistance(_)) => Ok(None),
            Err(e) => Err(e),
        };
        let d_hamming = defined(code.min_distance(Metric::Hamming))?;
        let d_lee = defined(code.min_distance(Metric::Lee))?;
        let code_type = if d_hamming.is_some() {
            Some(code.classify_type()?)
        } else {
            None
        };
        let census = |m| -> BTreeMap<u32, u64> {
            let WeightDistribution { counts, .. } = code.weight_distribution(m);
            counts
        };
        Ok(AnalyzeReport {
            p: code.ctx().p(),
            n: code.n(),
            size: code.size() as u64,
            d_hamming,
            d_lee,
            code_type,
            hamming: census(Metric::Hamming),
            lee: census(Metric::Lee),
        })
    }

    fn table(&self) -> String {
        let opt = |d: Option<u32>| d.map_or("undefined".to_owned(), |d| d.to_string());
        let census = |c: &BTreeMap<u32, u64>| {
            c.iter()
                .map(|(w, k)| format!("{w}:{k}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let ty = match self.code_type {
            Some(CodeType::Alpha) => "alpha",
            Some(CodeType::Beta) => "beta",
            None => "undefined",
        };
        format!(
            "p={} n={} M={} d_H={} d_L={}\ntype={ty}\nhamming: {}\nlee: {}\n",
            self.p,
            self.n,
            self.size,
            opt(self.d_hamming),
            opt(self.d_lee),
            census(&self.hamming),
            census(&self.lee),
        )
    }
}

fn radius_line(r: &CoveringResult) -> String {
    format!(
        "radius={} witness={} metric={} method={} words_examined={}",
        r.radius, r.witness, r.metric, r.method, r.words_examined
    )
}

fn bound_line(r: &BoundReport) -> String {
    let kind = serde_json::to_value(r.kind)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default();
    let value = match r.value {
        BoundValue::Radius(v) => v.to_string(),
        BoundValue::Unsatisfiable => "unsatisfiable".into(),
    };
    format!("{kind}={value}")
}
