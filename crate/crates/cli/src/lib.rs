//! Command-line surface for the `orientable` library.
//!
//! [`run`] parses arguments and writes to the given streams, so the whole
//! tool can be driven in-process by tests. Exit codes: 0 success, 1 a
//! verification failure, 2 a usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use orientable::bounds::{BoundsRecord, FORMULA_LIMIT};
use orientable::concat::fast_rcl_sequence;
use orientable::cyclejoin::build_tree;
use orientable::search::{
    exhaustive_max, extend_aos_with, extend_cyclic_with, make_aos, Heuristic, SearchOptions,
    DEFAULT_BUDGET,
};
use orientable::successor::generate_from_successor;
use orientable::verify::{check_orientable, covers_s};
use orientable::{BinaryWord, CyclicSequence, Mode};

pub mod timing;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable that overrides the default search budget.
pub const BUDGET_ENV: &str = "ORIENTABLE_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "orientable", version, about = "Orientable binary sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Successor,
    Rcl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    AsciiBits,
    Grouped,
    Hex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Cyclic,
    Acyclic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HeuristicArg {
    A,
    B,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchAlgo {
    Successor,
    Rcl,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write an orientable sequence of length L_n.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "successor")]
        algo: Algo,
        /// Starting window for the successor rule (default: the tree root).
        #[arg(long)]
        seed: Option<String>,
        #[arg(long, value_enum, default_value = "ascii-bits")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Check that the windows are exactly S(n) before exiting.
        #[arg(long)]
        check: bool,
    },
    /// Check a file of ASCII bits for orientability.
    Verify {
        path: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "cyclic")]
        mode: ModeArg,
        /// Also require the windows to be S(n) when the length is L_n.
        #[arg(long)]
        full: bool,
    },
    /// Print the length bounds for a range of orders.
    Bounds {
        /// Inclusive range such as `5..20`.
        #[arg(long, default_value = "5..20")]
        range: String,
    },
    /// Print the cycle-joining tree.
    Tree {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Extend the constructed sequence by backtracking search.
    Extend {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "b")]
        heuristic: HeuristicArg,
        #[arg(long, env = BUDGET_ENV)]
        budget: Option<u64>,
        /// Unroll into an acyclic sequence and extend at both ends.
        #[arg(long)]
        aos: bool,
        /// Only accept odd-weight results with at most one 0^(n-4).
        #[arg(long)]
        lift_filter: bool,
    },
    /// Report generation cost in nanoseconds per bit.
    Bench {
        #[arg(long, default_value = "16..24")]
        n: String,
        #[arg(long, value_enum, default_value = "both")]
        algo: BenchAlgo,
    },
    /// Longest cyclic orientable sequence by exhaustive search (n <= 7).
    Max {
        #[arg(long)]
        n: usize,
    },
}

/// Runs the tool and returns its exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl From<orientable::Error> for Failure {
    fn from(e: orientable::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Generate { n, algo, seed, format, output, check } => {
            generate(n, algo, seed.as_deref(), format, output, check, out)
        }
        Command::Verify { path, n, mode, full } => verify(&path, n, mode, full, out),
        Command::Bounds { range } => bounds(&range, out),
        Command::Tree { n, dot } => tree(n, dot, out),
        Command::Extend { n, heuristic, budget, aos, lift_filter } => {
            extend(n, heuristic, budget.unwrap_or(DEFAULT_BUDGET), aos, lift_filter, out)
        }
        Command::Bench { n, algo } => bench(&n, algo, out),
        Command::Max { n } => {
            let seq = exhaustive_max(n)?;
            writeln!(out, "n={n} length={}", seq.len())?;
            writeln!(out, "{seq}")?;
            Ok(EXIT_OK)
        }
    }
}

/// Generates the sequence for `n` with the chosen algorithm.
pub fn generate_sequence(n: usize, algo: Algo, seed: Option<&str>) -> orientable::Result<CyclicSequence> {
    match algo {
        Algo::Successor => {
            let seed = seed.map(str::parse::<BinaryWord>).transpose()?;
            generate_from_successor(n, seed.as_ref())
        }
        Algo::Rcl => fast_rcl_sequence(n),
    }
}

/// Renders bits in one of the output formats, with a trailing newline.
pub fn render(bits: &[u8], n: usize, format: Format) -> String {
    let mut s = String::with_capacity(bits.len() + bits.len() / n.max(1) + 2);
    match format {
        Format::AsciiBits => bits.iter().for_each(|&b| s.push(char::from(b'0' + b))),
        Format::Grouped => {
            for (i, chunk) in bits.chunks(n.max(1)).enumerate() {
                if i > 0 {
                    s.push(' ');
                }
                chunk.iter().for_each(|&b| s.push(char::from(b'0' + b)));
            }
        }
        // Most significant bit first; the last digit is zero-padded.
        Format::Hex => {
            for chunk in bits.chunks(4) {
                let v = chunk.iter().fold(0u32, |acc, &b| (acc << 1) | u32::from(b));
                let v = v << (4 - chunk.len());
                let _ = write!(s, "{v:x}");
            }
        }
    }
    s.push('\n');
    s
}

fn generate(
    n: usize,
    algo: Algo,
    seed: Option<&str>,
    format: Format,
    output: Option<PathBuf>,
    check: bool,
    out: &mut dyn Write,
) -> Outcome {
    if seed.is_some() && algo == Algo::Rcl {
        return Err(Failure::Usage("--seed only applies to --algo successor".into()));
    }
    let seq = generate_sequence(n, algo, seed)?;
    let text = render(seq.bits(), n, format);
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    if check {
        let report = covers_s(&seq, n)?;
        if !report.is_covered() {
            writeln!(out, "check failed: {report}")?;
            return Ok(EXIT_FAIL);
        }
    }
    Ok(EXIT_OK)
}

/// Reads a bit file, ignoring whitespace.
pub fn read_bits(path: &std::path::Path) -> std::result::Result<Vec<u8>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    text.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(format!("{}: invalid character {other:?}", path.display())),
        })
        .collect()
}

fn verify(path: &std::path::Path, n: usize, mode: ModeArg, full: bool, out: &mut dyn Write) -> Outcome {
    let bits = read_bits(path).map_err(Failure::Usage)?;
    let mode = match mode {
        ModeArg::Cyclic => Mode::Cyclic,
        ModeArg::Acyclic => Mode::Acyclic,
    };
    let seq = CyclicSequence::new(bits, mode)?;
    if let Some(v) = check_orientable(&seq, n)? {
        writeln!(out, "not orientable: {v}")?;
        return Ok(EXIT_FAIL);
    }
    writeln!(out, "orientable: {} bits, order {n}", seq.len())?;
    if full && mode == Mode::Cyclic && n >= 2 {
        let report = covers_s(&seq, n)?;
        match report {
            orientable::verify::CoverageReport::LengthMismatch { .. } => {
                writeln!(out, "coverage skipped: {report}")?;
            }
            _ if report.is_covered() => writeln!(out, "{report}")?,
            _ => {
                writeln!(out, "coverage failed: {report}")?;
                return Ok(EXIT_FAIL);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `a..b`, `a..=b` or `a-b` as an inclusive range.
pub fn parse_range(s: &str) -> Option<(usize, usize)> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .or_else(|| s.split_once('-'))
        .unwrap_or((s, s));
    let (a, b) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
    (a <= b).then_some((a, b))
}

/// The bounds table as text.
pub fn bounds_table(lo: usize, hi: usize) -> orientable::Result<String> {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>3} {:>22} {:>22} {:>22} {:>22} {:>12}",
        "n", "L_n", "U_n", "trivial", "AOS bound", "|A(n)|"
    );
    for n in lo..=hi {
        let r = BoundsRecord::compute(n)?;
        let upper = r.upper.map_or("-".to_string(), |u| u.to_string());
        let count = r.asym_count.map_or("n/a".to_string(), |c| c.to_string());
        let _ = writeln!(
            s,
            "{:>3} {:>22} {:>22} {:>22} {:>22} {:>12}",
            n, r.lower, upper, r.trivial, r.aos_upper, count
        );
    }
    Ok(s)
}

fn bounds(range: &str, out: &mut dyn Write) -> Outcome {
    let (lo, hi) = parse_range(range)
        .ok_or_else(|| Failure::Usage(format!("cannot parse range {range:?}")))?;
    if lo < 2 || hi > FORMULA_LIMIT {
        return Err(Failure::Usage(format!("range must lie within 2..{FORMULA_LIMIT}")));
    }
    out.write_all(bounds_table(lo, hi)?.as_bytes())?;
    Ok(EXIT_OK)
}

fn tree(n: usize, dot: bool, out: &mut dyn Write) -> Outcome {
    let tree = build_tree(n)?;
    if dot {
        out.write_all(tree.to_dot().as_bytes())?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "n={n} nodes={} height={}", tree.len(), tree.height())?;
    for node in tree.nodes() {
        match (&node.parent, node.case) {
            (Some(p), Some(case)) => writeln!(out, "{} <- {} ({})", node.label, p, case.tag())?,
            _ => writeln!(out, "{} (root)", node.label)?,
        }
    }
    Ok(EXIT_OK)
}

fn extend(
    n: usize,
    heuristic: HeuristicArg,
    budget: u64,
    aos: bool,
    lift_filter: bool,
    out: &mut dyn Write,
) -> Outcome {
    let base = generate_from_successor(n, None)?;
    let heuristic = match heuristic {
        HeuristicArg::A => Heuristic::A,
        HeuristicArg::B => Heuristic::B,
        HeuristicArg::C => Heuristic::C,
    };
    let (start, outcome) = if aos {
        let seed = make_aos(&base, n)?;
        (seed.len(), extend_aos_with(&seed, n, budget)?)
    } else {
        let opts = SearchOptions { heuristic, budget, lift_filter };
        (base.len(), extend_cyclic_with(&base, n, &opts)?)
    };
    writeln!(
        out,
        "n={n} mode={} heuristic={heuristic} start={start} length={} steps={} expansions={} budget_exhausted={}",
        if aos { "acyclic" } else { "cyclic" },
        outcome.sequence.len(),
        outcome.steps,
        outcome.expansions,
        outcome.budget_exhausted
    )?;
    writeln!(out, "{}", outcome.sequence)?;
    Ok(EXIT_OK)
}

fn bench(range: &str, algo: BenchAlgo, out: &mut dyn Write) -> Outcome {
    let (lo, hi) = parse_range(range)
        .ok_or_else(|| Failure::Usage(format!("cannot parse range {range:?}")))?;
    if lo < 6 {
        return Err(Failure::Usage("bench needs n >= 6".into()));
    }
    writeln!(out, "{:>3} {:>10} {:>12}", "n", "algo", "ns/bit")?;
    for n in lo..=hi {
        if matches!(algo, BenchAlgo::Successor | BenchAlgo::Both) {
            let t = timing::successor_ns_per_bit(n, timing::SUCCESSOR_BITS)?;
            writeln!(out, "{n:>3} {:>10} {t:>12.2}", "successor")?;
        }
        if matches!(algo, BenchAlgo::Rcl | BenchAlgo::Both) {
            let t = timing::rcl_ns_per_bit(n)?;
            writeln!(out, "{n:>3} {:>10} {t:>12.2}", "rcl")?;
        }
    }
    Ok(EXIT_OK)
}
