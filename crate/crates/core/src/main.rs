use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use tpkit::bench::{parse_holes, parse_sizes, run_bench, BenchConfig};
use tpkit::biclique::{has_balanced_biclique, maximal_bicliques};
use tpkit::checker::{check, Method, Property};
use tpkit::document::{GadgetDocument, PropertyDocument, ReportDocument};
use tpkit::generator::generate_ssr;
use tpkit::reduction::{build_gadget, build_gadget_with_base, evaluate_instance};
use tpkit::{BipartiteGraph, CheckReport, Error, PartialMatrix, Signature};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// Exact total positivity and sign regularity checks.
#[derive(Parser, Debug)]
#[command(name = "tpkit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a matrix file; exits 0 if the property holds, 1 if not.
    Check(CheckArgs),
    /// Print a strictly sign-regular matrix with the given signature.
    Generate(GenerateArgs),
    /// Build and verify the balanced-biclique gadget for a graph.
    Gadget(GadgetArgs),
    /// List the maximal bicliques of a graph.
    Bicliques(BicliquesArgs),
    /// Time checkers on partial TP matrices and write CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(clap::Args, Debug)]
struct CheckArgs {
    /// Matrix file, `-` for standard input.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "tp")]
    property: Property,
    /// Signs such as `+,-,+`; required for ssr and wsr.
    #[arg(long, allow_hyphen_values = true)]
    signature: Option<Signature>,
    #[arg(long, default_value = "auto")]
    method: Method,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
}

#[derive(clap::Args, Debug)]
struct GenerateArgs {
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    /// Defaults to all `+`.
    #[arg(long, allow_hyphen_values = true)]
    signature: Option<Signature>,
    /// Ask for a weakly sign-regular matrix (a strict one is returned).
    #[arg(long)]
    weak: bool,
}

#[derive(clap::Args, Debug)]
struct GadgetArgs {
    /// Graph file: `m n` on the first line, then one `u v` edge per line.
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    /// Defaults to all `+`.
    #[arg(long, allow_hyphen_values = true)]
    signature: Option<Signature>,
    #[arg(long)]
    weak: bool,
    /// Use this strictly sign-regular matrix instead of a generated one.
    #[arg(long)]
    base: Option<PathBuf>,
    /// Where to write the JSON description; defaults to the graph path
    /// with a `.gadget.json` extension.
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct BicliquesArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Only report whether a balanced biclique with K vertices per side
    /// exists (exit 0 if so, 1 if not).
    #[arg(long)]
    balanced: Option<usize>,
}

#[derive(clap::Args, Debug)]
struct BenchArgs {
    /// Shapes: `N`, `MxN` or a square range `a..b`, comma-separated.
    #[arg(long, default_value = "4..8")]
    sizes: String,
    /// Hole counts, comma-separated; ranges `a..b` allowed.
    #[arg(long, default_value = "0")]
    holes: String,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "dodgson,recursive")]
    methods: Vec<Method>,
    /// Leave the wall_time_ms column empty so output is reproducible.
    #[arg(long)]
    no_timing: bool,
}

/// Errors reported with exit code 2.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

impl From<io::Error> for Usage {
    fn from(e: io::Error) -> Self {
        Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let result = threads().and_then(|parallel| match cli.command {
        Command::Check(args) => run_check(args, argv, parallel),
        Command::Generate(args) => run_generate(args),
        Command::Gadget(args) => run_gadget(args),
        Command::Bicliques(args) => run_bicliques(args),
        Command::Bench(args) => run_bench_command(args, parallel),
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Usage(message)) => {
            eprintln!("tpkit: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

/// Configures the rayon pool from `TPKIT_THREADS`. Unset leaves everything
/// single-threaded; a value above 1 enables parallel checks.
fn threads() -> Result<bool, Usage> {
    let Ok(raw) = std::env::var("TPKIT_THREADS") else {
        return Ok(false);
    };
    let n: usize = match raw.trim().parse() {
        Ok(n) if n > 0 => n,
        _ => return Err(Usage(format!("TPKIT_THREADS must be a positive integer, got `{raw}`"))),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Usage(e.to_string()))?;
    Ok(n > 1)
}

fn read_input(path: &Path) -> Result<String, Usage> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn with_path(path: &Path) -> impl Fn(Error) -> Usage + '_ {
    move |e| Usage(format!("{}: {e}", path.display()))
}

/// Writes everything in one call so a reader never sees partial output.
fn emit(text: &str) -> Result<(), Usage> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

/// Writes `contents` to a temporary file next to `path`, then renames it.
fn write_atomically(path: &Path, contents: &str) -> Result<(), Usage> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents).map_err(|e| Usage(format!("{}: {e}", tmp.display())))?;
    fs::rename(&tmp, path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    Ok(())
}

fn verdict_code(passed: bool) -> u8 {
    if passed {
        0
    } else {
        EXIT_FAIL
    }
}

fn run_check(args: CheckArgs, argv: Vec<String>, parallel: bool) -> Result<u8, Usage> {
    let text = read_input(&args.input)?;
    let matrix: PartialMatrix = text.parse().map_err(with_path(&args.input))?;
    let spec = args.property.spec(args.signature.as_ref(), matrix.rows(), matrix.cols())?;
    let method = args.method.resolve(&matrix, &spec)?;

    let start = Instant::now();
    let report = check(&matrix, &spec, method, parallel)?;
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;

    let rendered = match args.output {
        Output::Json => {
            let doc = ReportDocument::new(
                argv,
                PropertyDocument::new(args.property.name(), &spec),
                method.name(),
                &report,
                wall_time_ms,
            );
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Usage(e.to_string()))?;
            s.push('\n');
            s
        }
        Output::Text => text_report(&report, args.property, method),
    };
    emit(&rendered)?;
    Ok(verdict_code(report.passed()))
}

fn text_report(report: &CheckReport, property: Property, method: Method) -> String {
    let mut s = String::new();
    match &report.witness {
        None => {
            let _ = writeln!(s, "pass: {} holds ({method})", property.name());
        }
        Some(w) => {
            let relation = match (w.required_sign.as_i8() > 0, w.strict) {
                (true, true) => "> 0",
                (true, false) => ">= 0",
                (false, true) => "< 0",
                (false, false) => "<= 0",
            };
            let _ = writeln!(s, "fail: {} does not hold ({method})", property.name());
            let _ = writeln!(
                s,
                "witness: rows {} cols {} order {} minor {} (needs {relation})",
                w.rows,
                w.cols,
                w.order(),
                w.value
            );
        }
    }
    let c = &report.counters;
    let _ = writeln!(
        s,
        "minors_evaluated {} subproblems {} arithmetic_ops {}",
        c.minors_evaluated, c.subproblems, c.arithmetic_ops
    );
    s
}

fn signature_or_positive(signature: Option<Signature>, len: usize) -> Signature {
    signature.unwrap_or_else(|| Signature::all_positive(len))
}

fn run_generate(args: GenerateArgs) -> Result<u8, Usage> {
    let signature = signature_or_positive(args.signature, args.rows.min(args.cols));
    // Strict sign regularity implies the weak property, so --weak changes nothing.
    let (matrix, _) = generate_ssr(args.rows, args.cols, &signature)?;
    emit(&matrix.to_string())?;
    Ok(0)
}

fn run_gadget(args: GadgetArgs) -> Result<u8, Usage> {
    let graph: BipartiteGraph = read_input(&args.graph)?.parse().map_err(with_path(&args.graph))?;
    let signature = signature_or_positive(args.signature, graph.left().min(graph.right()));
    let instance = match &args.base {
        Some(path) => {
            let base: PartialMatrix = read_input(path)?.parse().map_err(with_path(path))?;
            build_gadget_with_base(&graph, args.k, &signature, base)?
        }
        None => build_gadget(&graph, args.k, &signature)?,
    };
    let outcome = evaluate_instance(instance, !args.weak)?;
    let doc = GadgetDocument::from(&outcome);
    let sidecar = args.sidecar.clone().unwrap_or_else(|| {
        if args.graph == Path::new("-") {
            PathBuf::from("gadget.json")
        } else {
            args.graph.with_extension("gadget.json")
        }
    });
    let mut json = serde_json::to_string_pretty(&doc).map_err(|e| Usage(e.to_string()))?;
    json.push('\n');
    write_atomically(&sidecar, &json)?;
    emit(&outcome.instance.output.to_string())?;
    if !outcome.holds() {
        eprintln!("tpkit: reduction check failed; see {}", sidecar.display());
    }
    Ok(verdict_code(outcome.holds()))
}

fn run_bicliques(args: BicliquesArgs) -> Result<u8, Usage> {
    let graph: BipartiteGraph = read_input(&args.graph)?.parse().map_err(with_path(&args.graph))?;
    if let Some(k) = args.balanced {
        let found = has_balanced_biclique(&graph, k);
        emit(&format!("{found}\n"))?;
        return Ok(verdict_code(found));
    }
    let mut s = String::new();
    for b in maximal_bicliques(&graph) {
        let _ = writeln!(s, "{} {}", b.u_set, b.v_set);
    }
    emit(&s)?;
    Ok(0)
}

fn run_bench_command(args: BenchArgs, parallel: bool) -> Result<u8, Usage> {
    let config = BenchConfig {
        shapes: parse_sizes(&args.sizes)?,
        holes: parse_holes(&args.holes)?,
        trials: args.trials,
        seed: args.seed,
        methods: args.methods,
        parallel,
    };
    let mut writer = csv::Writer::from_writer(Vec::new());
    run_bench(&config, !args.no_timing, |row| {
        writer
            .serialize(row)
            .map_err(|e| Error::Argument(format!("csv: {e}")))
    })?;
    let bytes = writer.into_inner().map_err(|e| Usage(e.to_string()))?;
    if bytes.is_empty() {
        emit("m,n,x,method,trial,wall_time_ms,minors_evaluated,subproblems\n")?;
    } else {
        emit(&String::from_utf8_lossy(&bytes))?;
    }
    Ok(0)
}
