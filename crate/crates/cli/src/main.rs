use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cubic_bm::census::{default_checkpoint, run_sharded, search_hasse_failures, write_csv, CensusJob, CoeffBox, SearchFilters};
use cubic_bm::invariants::{bm_obstruction, AnalysisOptions};
use cubic_bm::localsolve::is_els;
use cubic_bm::surfaces::Surface;
use cubic_bm::verify;

const EXIT_NOT_ELS: u8 = 2;
const EXIT_INVALID: u8 = 3;

/// Integral Brauer-Manin obstructions on a1 u1^3 + a2 u2^3 + a3 u3^3 = a0.
///
/// Surfaces are written "a1,a2,a3,a0", in the order the equation reads.
#[derive(Debug, Parser)]
#[command(name = "cubic-bm", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze one surface and print its obstruction report as JSON.
    /// Exit code 0 when analyzed, 2 when not everywhere locally soluble,
    /// 3 on invalid input.
    Analyze {
        /// Surface as "a1,a2,a3,a0".
        #[arg(allow_hyphen_values = true)]
        surface: String,
        #[command(flatten)]
        analysis: AnalysisArgs,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named counter and print one CSV record.
    ///
    /// Counters: S, Mtr, Mtr-full, ELS-fixed <a1,a2,a3>, ELS-full,
    /// fail-vary-a0 <a1,a2,a3>, fail-vary-form <a0>, fail-vary-all, and the
    /// same with pass- in place of fail-.
    Census {
        name: String,
        /// The bound B, or the counter parameter when one is needed.
        #[arg(allow_negative_numbers = true)]
        first: String,
        /// The bound B after a counter parameter.
        second: Option<String>,
        /// Only count everywhere locally soluble surfaces (criterion counters).
        #[arg(long)]
        els_only: bool,
        #[arg(long, default_value_t = 1)]
        shards: u64,
        /// CSV output path (stdout by default).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Resume file; defaults to <out>.checkpoint.json when --out is given.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Scan a coefficient box for certified obstructions; prints JSON.
    Search {
        /// Coefficients range over [-box, box] \ {0}.
        #[arg(long = "box", default_value_t = 5)]
        bound: i128,
        /// Box for the brute-force point check of certified surfaces.
        #[arg(long, default_value_t = 100)]
        point_box: i128,
        #[command(flatten)]
        analysis: AnalysisArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance checks and print one line per check.
    VerifyPaper {
        /// Run only these checks (1 to 10).
        #[arg(long = "only", value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Debug, Args)]
struct AnalysisArgs {
    /// Primes up to this bound are checked for local solubility.
    #[arg(long, default_value_t = 100)]
    prime_bound: u64,
    /// p-adic precision of sampled local points.
    #[arg(long)]
    precision: Option<u32>,
    /// Coordinate bound of the norm search for the auxiliary element.
    #[arg(long)]
    eps_bound: Option<i128>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl AnalysisArgs {
    fn options(&self) -> Result<AnalysisOptions, String> {
        let mut o = AnalysisOptions { prime_bound: self.prime_bound, seed: self.seed, ..Default::default() };
        if self.prime_bound == 0 {
            return Err("--prime-bound must be positive".into());
        }
        if let Some(p) = self.precision {
            if p == 0 {
                return Err("--precision must be positive".into());
            }
            o.sample_prec = p;
        }
        if let Some(e) = self.eps_bound {
            if e <= 0 {
                return Err("--eps-bound must be positive".into());
            }
            o.eps_bound = e;
        }
        Ok(o)
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn invalid(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INVALID)
}

fn analyze(spec: &str, args: &AnalysisArgs, out: Option<&PathBuf>) -> ExitCode {
    let s = match Surface::parse(spec) {
        Ok(s) => s,
        Err(e) => return invalid(e),
    };
    let opts = match args.options() {
        Ok(o) => o,
        Err(e) => return invalid(e),
    };
    let report = bm_obstruction(&s, &is_els(&s, opts.prime_bound), &opts);
    let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    if let Err(e) = emit(out, &json) {
        return invalid(e);
    }
    if report.els {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_NOT_ELS)
    }
}

fn census(
    name: &str,
    first: &str,
    second: Option<&str>,
    els_only: bool,
    shards: u64,
    out: Option<&PathBuf>,
    checkpoint: Option<PathBuf>,
) -> ExitCode {
    let (param, b) = match second {
        Some(b) => (Some(first), b),
        None => (None, first),
    };
    let b: u64 = match b.parse() {
        Ok(b) if b > 0 => b,
        _ => return invalid(format!("bound {b:?} is not a positive integer")),
    };
    if shards == 0 {
        return invalid("--shards must be positive");
    }
    let job = match CensusJob::from_spec(name, param, els_only) {
        Ok(j) => j,
        Err(e) => return invalid(e),
    };
    let checkpoint = checkpoint.or_else(|| out.map(|o| default_checkpoint(o)));
    let run = match run_sharded(&job, b, shards, checkpoint.as_deref()) {
        Ok(r) => r,
        Err(e) => return invalid(e),
    };
    let mut buf = Vec::new();
    if let Err(e) = write_csv(&mut buf, &[run.record], Some(run.millis)) {
        return invalid(e);
    }
    match emit(out, &String::from_utf8_lossy(&buf)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => invalid(e),
    }
}

fn search(bound: i128, point_box: i128, args: &AnalysisArgs, out: Option<&PathBuf>) -> ExitCode {
    if bound <= 0 || point_box <= 0 {
        return invalid("box bounds must be positive");
    }
    let analysis = match args.options() {
        Ok(o) => o,
        Err(e) => return invalid(e),
    };
    let filters = SearchFilters { point_box, analysis, ..Default::default() };
    let outcome = search_hasse_failures(&CoeffBox::symmetric(bound), &filters);
    let json = serde_json::to_string_pretty(&outcome).expect("outcome serializes") + "\n";
    match emit(out, &json) {
        Ok(()) if outcome.contradictions.is_empty() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::FAILURE,
        Err(e) => invalid(e),
    }
}

fn verify_paper(only: &[u8]) -> ExitCode {
    let ids: Vec<u8> = if only.is_empty() { (1..=10).collect() } else { only.to_vec() };
    if let Some(bad) = ids.iter().find(|i| !(1..=10).contains(*i)) {
        return invalid(format!("no check {bad}"));
    }
    let mut all = true;
    for id in ids {
        let c = verify::run(id);
        println!("{}", c.line());
        all &= c.passed;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_INVALID);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match cli.cmd {
        Command::Analyze { surface, analysis, out } => analyze(&surface, &analysis, out.as_ref()),
        Command::Census { name, first, second, els_only, shards, out, checkpoint } => {
            census(&name, &first, second.as_deref(), els_only, shards, out.as_ref(), checkpoint)
        }
        Command::Search { bound, point_box, analysis, out } => search(bound, point_box, &analysis, out.as_ref()),
        Command::VerifyPaper { only } => verify_paper(&only),
    }
}
