//! `schubert`: divisor products, multiplicity-free search and canonical-dimension bounds.

mod diagram;

use std::fmt::Display;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Number;

use schubert_core::candim::{peak_rss_bytes, BoundReport, RunStats};
use schubert_core::oracle::{self, ORACLE_MAX_RANK};
use schubert_core::search::max_multiplicity_free_degree;
use schubert_core::{
    Backend, BigUint, CartanDatum, CartanType, ChowVector, Coefficient, MultiDegree, RootSystem,
    SchubertRing, SearchConfig, SearchOutcome,
};

/// Environment variable holding the default `--memo-cap`.
const MEMO_CAP_ENV: &str = "SCHUBERT_MEMO_CAP";

#[derive(Parser)]
#[command(name = "schubert", version, about = "Schubert divisor products and canonical-dimension bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Root system summary and simple-root numbering.
    Roots {
        #[command(flatten)]
        ty: TypeArg,
    },
    /// Schubert expansion of a divisor monomial.
    Product {
        #[command(flatten)]
        ty: TypeArg,
        /// Exponents n1,...,nr in Bourbaki numbering.
        #[arg(long)]
        degrees: String,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value = "arbitrary")]
        backend: String,
    },
    /// Largest multiplicity-free divisor monomial.
    Mfsearch {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        json: bool,
    },
    /// Search, then report the canonical-dimension upper bound as JSON.
    Bound {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Compare the engine against the brute-force oracle.
    Selftest {
        #[arg(long, default_value_t = ORACLE_MAX_RANK)]
        max_rank: usize,
        /// Restrict to these labels (comma separated).
        #[arg(long)]
        types: Option<String>,
    },
}

#[derive(Args)]
struct TypeArg {
    /// A label such as E6, or a Cartan matrix file.
    #[arg(long = "type", value_name = "LABEL|FILE")]
    ty: String,
}

#[derive(Args)]
struct SearchArgs {
    /// Do not expand monomials beyond this total degree.
    #[arg(long)]
    target: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
    /// Write settled multidegrees here periodically and on interruption.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long)]
    resume: Option<PathBuf>,
    #[arg(long)]
    no_symmetry: bool,
    /// Settled-multidegree memo capacity (default from SCHUBERT_MEMO_CAP).
    #[arg(long)]
    memo_cap: Option<usize>,
    #[arg(long)]
    cover_cache: Option<usize>,
    #[arg(long, default_value = "arbitrary")]
    backend: String,
    /// Product engine: auto, sparse or indexed.
    #[arg(long, default_value = "auto")]
    engine: String,
    /// Most Weyl group elements the indexed engine may enumerate.
    #[arg(long)]
    element_limit: Option<usize>,
    /// Abandon branches whose product exceeds this many terms.
    #[arg(long)]
    support_budget: Option<usize>,
    /// Seconds between checkpoint writes.
    #[arg(long, default_value_t = 60)]
    checkpoint_interval: u64,
    /// Stop as if interrupted after this many products (for testing resumption).
    #[arg(long, hide = true)]
    stop_after: Option<u64>,
}

enum Failure {
    Usage(String),
    Compute { kind: &'static str, message: String },
    Mismatch,
}

impl Failure {
    fn compute(kind: &'static str, err: impl Display) -> Self {
        Failure::Compute {
            kind,
            message: err.to_string(),
        }
    }
}

fn usage(flag: &str, err: impl Display) -> Failure {
    Failure::Usage(format!("{flag}: {err}"))
}

type Outcome = Result<(), Failure>;

fn load_root_system(arg: &TypeArg) -> Result<Arc<RootSystem>, Failure> {
    let datum = match arg.ty.parse::<CartanType>() {
        Ok(t) => CartanDatum::from_type(t).map_err(|e| usage("--type", e))?,
        Err(label_err) => {
            let path = PathBuf::from(&arg.ty);
            if !path.is_file() {
                return Err(usage("--type", format!("{label_err}, and no file named {:?}", arg.ty)));
            }
            let text = std::fs::read_to_string(&path).map_err(|e| usage("--type", e))?;
            CartanDatum::parse(&text).map_err(|e| usage("--type", e))?
        }
    };
    RootSystem::new(datum)
        .map(Arc::new)
        .map_err(|e| usage("--type", e))
}

fn parse_backend(text: &str) -> Result<Backend, Failure> {
    text.parse().map_err(|e| usage("--backend", e))
}

fn big_number(c: &impl Display) -> Number {
    c.to_string().parse().expect("integers are valid JSON numbers")
}

fn out() -> io::StdoutLock<'static> {
    io::stdout().lock()
}

fn emit(text: &str) -> Outcome {
    let mut o = out();
    writeln!(o, "{text}")
        .and_then(|_| o.flush())
        .map_err(|e| Failure::compute("io", e))
}

fn cmd_roots(ty: &TypeArg) -> Outcome {
    let rs = load_root_system(ty)?;
    let join = |v: Vec<String>| v.join(" ");
    let mut text = String::new();
    text.push_str(&format!("type: {}\n", rs.datum().name()));
    text.push_str(&format!("rank: {}\n", rs.rank()));
    text.push_str(&format!("positive roots: {}\n", rs.num_positive()));
    text.push_str(&format!("dim(G/B): {}\n", rs.dim_flag()));
    text.push_str(&format!("weyl group order: {}\n", rs.weyl_group_order()));
    text.push_str(&format!(
        "exponents: {}\n",
        join(rs.exponents().iter().map(ToString::to_string).collect())
    ));
    text.push_str(&format!(
        "poincare: {}\n",
        join(rs.poincare_polynomial().iter().map(ToString::to_string).collect())
    ));
    text.push_str(&format!("highest root: {}\n", rs.highest_root()));
    text.push_str("numbering:\n");
    text.push_str(&diagram::numbering_diagram(rs.datum()));
    emit(&text)
}

#[derive(Serialize)]
struct TermJson {
    coefficient: Number,
    word: String,
}

#[derive(Serialize)]
struct ProductJson {
    label: String,
    degrees: Vec<u32>,
    grade: usize,
    terms: Vec<TermJson>,
}

fn print_product<C: Coefficient>(ring: &SchubertRing, deg: &MultiDegree, json: bool) -> Outcome {
    let rs = ring.root_system();
    let v: ChowVector<C> = ring
        .product_of_divisors(deg)
        .map_err(|e| Failure::compute("ChowError", e))?;
    if json {
        let report = ProductJson {
            label: rs.datum().name(),
            degrees: deg.0.clone(),
            grade: v.grade(),
            terms: v
                .terms()
                .iter()
                .map(|(w, c)| TermJson {
                    coefficient: big_number(c),
                    word: w.word_string(rs),
                })
                .collect(),
        };
        return emit(&serde_json::to_string_pretty(&report).expect("serializable"));
    }
    let mut o = out();
    for (w, c) in v.terms() {
        writeln!(o, "{c}\t{}", w.word_string(rs)).map_err(|e| Failure::compute("io", e))?;
    }
    o.flush().map_err(|e| Failure::compute("io", e))
}

fn cmd_product(ty: &TypeArg, degrees: &str, json: bool, backend: &str) -> Outcome {
    let rs = load_root_system(ty)?;
    let backend = parse_backend(backend)?;
    let deg: MultiDegree = degrees.parse().map_err(|e| usage("--degrees", e))?;
    if deg.rank() != rs.rank() {
        return Err(usage(
            "--degrees",
            format!("expected {} exponents, got {}", rs.rank(), deg.rank()),
        ));
    }
    let ring = SchubertRing::new(rs);
    match backend {
        Backend::ArbitraryPrecision => print_product::<BigUint>(&ring, &deg, json),
        Backend::Checked64 => print_product::<u64>(&ring, &deg, json),
        Backend::Checked128 => print_product::<u128>(&ring, &deg, json),
    }
}

fn search_config(args: &SearchArgs, cancel: Arc<AtomicBool>) -> Result<SearchConfig, Failure> {
    let defaults = SearchConfig::default();
    let memo_capacity = match args.memo_cap {
        Some(m) => m,
        None => match std::env::var(MEMO_CAP_ENV) {
            Ok(text) => text
                .trim()
                .parse()
                .map_err(|e| usage(MEMO_CAP_ENV, e))?,
            Err(_) => defaults.memo_capacity,
        },
    };
    if args.threads == Some(0) {
        return Err(usage("--threads", "must be at least 1"));
    }
    if args.checkpoint_interval == 0 {
        return Err(usage("--checkpoint-interval", "must be at least 1 second"));
    }
    if let Some(path) = &args.resume {
        if !path.is_file() {
            return Err(usage("--resume", format!("no checkpoint at {}", path.display())));
        }
    }
    Ok(SearchConfig {
        target: args.target,
        thread_count: args.threads.unwrap_or(defaults.thread_count),
        memo_capacity,
        cover_cache_capacity: args.cover_cache.unwrap_or(defaults.cover_cache_capacity),
        coefficient_backend: parse_backend(&args.backend)?,
        engine: args.engine.parse().map_err(|e| usage("--engine", e))?,
        element_limit: args.element_limit.unwrap_or(defaults.element_limit),
        checkpoint_path: args.checkpoint.clone(),
        resume_path: args.resume.clone(),
        checkpoint_interval: Duration::from_secs(args.checkpoint_interval),
        symmetry_reduction: !args.no_symmetry,
        support_budget: args.support_budget,
        product_limit: args.stop_after,
        cancel: Some(cancel),
        collect_solutions: false,
    })
}

fn run_search(rs: &Arc<RootSystem>, args: &SearchArgs) -> Result<SearchOutcome, Failure> {
    let cancel = Arc::new(AtomicBool::new(false));
    let flag = cancel.clone();
    // A second Ctrl-C falls through to the default behaviour of killing the process.
    let _ = ctrlc::set_handler(move || {
        if flag.swap(true, Ordering::SeqCst) {
            std::process::exit(130);
        }
        eprintln!("interrupt received, stopping after the current products");
    });
    let cfg = search_config(args, cancel)?;
    let outcome = max_multiplicity_free_degree(rs.clone(), &cfg).map_err(|e| Failure::compute("SearchError", e))?;
    log::info!("{} products computed", outcome.products_computed);
    Ok(outcome)
}

#[derive(Serialize)]
struct SearchJson {
    label: String,
    max_mf_degree: usize,
    witness: schubert_core::candim::WitnessReport,
    exhaustive: bool,
}

fn cmd_mfsearch(ty: &TypeArg, args: &SearchArgs, json: bool) -> Outcome {
    let rs = load_root_system(ty)?;
    let outcome = run_search(&rs, args)?;
    let word = outcome.witness.word(&rs);
    if json {
        let report = SearchJson {
            label: rs.datum().name(),
            max_mf_degree: outcome.max_degree,
            witness: schubert_core::candim::WitnessReport {
                degrees: outcome.witness.degrees.0.clone(),
                word,
            },
            exhaustive: outcome.exhaustive,
        };
        return emit(&serde_json::to_string_pretty(&report).expect("serializable"));
    }
    emit(&format!(
        "type: {}\nN: {}\nwitness: {}\nword: {}\nexhaustive: {}",
        rs.datum().name(),
        outcome.max_degree,
        outcome.witness.degrees,
        word,
        outcome.exhaustive
    ))
}

fn cmd_bound(ty: &TypeArg, args: &SearchArgs) -> Outcome {
    let rs = load_root_system(ty)?;
    let start = Instant::now();
    let outcome = run_search(&rs, args)?;
    let stats = RunStats {
        seconds: start.elapsed().as_secs_f64(),
        peak_bytes: peak_rss_bytes(),
    };
    let report = BoundReport::new(&rs, &outcome, stats).map_err(|e| Failure::compute("CandimError", e))?;
    report
        .check_known_value()
        .map_err(|e| Failure::compute("CandimError", e))?;
    if report.reproduces_reference() == Some(false) {
        log::warn!(
            "bound {} differs from the tabulated bound {:?}",
            report.bound,
            report.reference.value
        );
    }
    emit(&serde_json::to_string_pretty(&report).expect("serializable"))
}

fn cmd_selftest(max_rank: usize, types: Option<&str>) -> Outcome {
    if max_rank > ORACLE_MAX_RANK {
        return Err(usage("--max-rank", format!("the oracle supports rank at most {ORACLE_MAX_RANK}")));
    }
    let selected: Vec<CartanType> = match types {
        Some(list) => list
            .split(',')
            .map(|s| s.trim().parse::<CartanType>().map_err(|e| usage("--types", e)))
            .collect::<Result<_, _>>()?,
        None => oracle::selftest_types(),
    };
    if let Some(t) = selected.iter().find(|t| t.rank() > ORACLE_MAX_RANK) {
        return Err(usage("--types", format!("{t} exceeds the oracle rank limit")));
    }
    let mut failures = 0;
    let mut o = out();
    let io_err = |e: io::Error| Failure::compute("io", e);
    let ok = |b: bool| if b { "ok" } else { "FAIL" };
    for t in selected.into_iter().filter(|t| t.rank() <= max_rank) {
        let start = Instant::now();
        let report = oracle::check_type(t).map_err(|e| Failure::compute("OracleError", e))?;
        log::info!("{t} checked in {:.2?}", start.elapsed());
        let passed = report.passed();
        failures += usize::from(!passed);
        writeln!(
            o,
            "{} {}: |W|={} monomials={} mismatches={} lengths={} poincare={} saturation={} duality={}",
            if passed { "PASS" } else { "FAIL" },
            report.label,
            report.group_order,
            report.multidegrees,
            report.mismatches.len(),
            ok(report.lengths_agree),
            ok(report.poincare_agrees),
            ok(report.saturation),
            report.duality.map_or("skipped", ok),
        )
        .map_err(io_err)?;
        for m in &report.mismatches {
            writeln!(
                o,
                "  mismatch degrees={} word=[{}] engine={} oracle={}",
                MultiDegree(m.degrees.clone()),
                m.word,
                m.engine,
                m.oracle
            )
            .map_err(io_err)?;
        }
    }
    writeln!(o, "selftest: {failures} failing types").map_err(io_err)?;
    o.flush().map_err(io_err)?;
    if failures > 0 {
        Err(Failure::Mismatch)
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Roots { ty } => cmd_roots(ty),
        Command::Product {
            ty,
            degrees,
            json,
            backend,
        } => cmd_product(ty, degrees, *json, backend),
        Command::Mfsearch { ty, search, json } => cmd_mfsearch(ty, search, *json),
        Command::Bound { ty, search } => cmd_bound(ty, search),
        Command::Selftest { max_rank, types } => cmd_selftest(*max_rank, types.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute { kind, message }) => {
            eprintln!("error [{kind}]: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch) => {
            eprintln!("selftest found mismatches");
            ExitCode::from(3)
        }
    }
}
