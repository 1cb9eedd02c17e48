//! `knotq`: Q polynomials, bridge lengths, curve distances and table scans.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use knotq::curves::{
    parse_open_gauss, realize, verify_lemma_bounds, CurveError, DEFAULT_CURVE_CAP,
};
use knotq::diagrams::{
    parse_pd, parse_pd_line, q_at_minus_one, q_polynomial_with_budget, DiagramError, LinkDiagram,
    DEFAULT_NODE_BUDGET,
};
use knotq::maximality::scan;
use knotq::tables::{load_table, render_report, render_report_jsonl};

const EXIT_FOUND: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "knotq", version, about)]
struct Cli {
    /// Largest crossing count the curve enumeration will attempt.
    #[arg(long, global = true, default_value_t = DEFAULT_CURVE_CAP, value_parser = positive)]
    cap: usize,
    /// Skein expansion node budget per diagram.
    #[arg(long, global = true, env = "KNOTQ_BUDGET", default_value_t = DEFAULT_NODE_BUDGET, value_parser = positive_u64)]
    budget: u64,
    /// Worker threads (defaults to one per core).
    #[arg(long, global = true, value_parser = positive)]
    jobs: Option<usize>,
    /// Write the main report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print progress and counters on stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Q polynomial, its top degree and m with Q(-1) = (-3)^m, one line per diagram.
    Q { pd_file: PathBuf },
    /// Crossing count c, bridge length d and c - d, one line per diagram.
    Bridge { pd_file: PathBuf },
    /// Enumerate plane curves up to n crossings and check the distance bounds.
    Curves {
        n: usize,
        /// JSON lines instead of the table.
        #[arg(long)]
        jsonl: bool,
    },
    /// Distance between the endpoints of a plane curve given by its Gauss word.
    Distance {
        /// Labels separated by spaces or commas, e.g. "a b a b".
        word: String,
    },
    /// Run the non-Q-maximality tests over a JSON lines knot table.
    Scan {
        table: PathBuf,
        /// Also write one JSON verdict per line here.
        #[arg(long)]
        jsonl: Option<PathBuf>,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_u64(s: &str) -> Result<u64, String> {
    positive(s).map(|n| n as u64)
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            msg: msg.into(),
        }
    }
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        let code = match e {
            DiagramError::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<CurveError> for Failure {
    fn from(e: CurveError) -> Self {
        let code = match e {
            CurveError::CapExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Nonblank, non-comment lines of a PD file, each optionally `name: ...`.
fn diagrams(text: &str) -> Result<Vec<(Option<String>, LinkDiagram)>, Failure> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let parsed = if t.contains(':') {
            parse_pd_line(t).map(|(n, d)| (Some(n), d))
        } else {
            parse_pd(t).map(|d| (None, d))
        };
        let item = parsed.map_err(|e| Failure {
            code: EXIT_INPUT,
            msg: format!("line {}: {e}", k + 1),
        })?;
        out.push(item);
    }
    if out.is_empty() {
        // an empty file is the crossingless unknot
        out.push((None, LinkDiagram::unknot()));
    }
    Ok(out)
}

fn prefix(name: &Option<String>) -> String {
    name.as_ref().map_or(String::new(), |n| format!("{n}: "))
}

fn cmd_q(cli: &Cli, path: &Path) -> Result<u8, Failure> {
    let mut report = String::new();
    for (name, d) in diagrams(&read(path)?)? {
        let r = q_polynomial_with_budget(&d, cli.budget)?;
        let maxdeg = r.poly.max_degree().expect("Q is never zero");
        let m = q_at_minus_one(&r.poly)?.exponent;
        if cli.verbose {
            eprintln!(
                "{}{} nodes, {} cache hits",
                prefix(&name),
                r.nodes_expanded,
                r.cache_hits
            );
        }
        report += &format!("{}Q={} maxdeg={maxdeg} m={m}\n", prefix(&name), r.poly);
    }
    emit(&cli.out, &report)?;
    Ok(0)
}

fn cmd_bridge(cli: &Cli, path: &Path) -> Result<u8, Failure> {
    let mut report = String::new();
    for (name, d) in diagrams(&read(path)?)? {
        let (c, b) = (d.crossing_count(), d.bridge_length());
        report += &format!("{}c={c} d={b} c-d={}\n", prefix(&name), c - b);
    }
    emit(&cli.out, &report)?;
    Ok(0)
}

fn cmd_curves(cli: &Cli, n: usize, jsonl: bool) -> Result<u8, Failure> {
    let r = verify_lemma_bounds(n, cli.cap)?;
    emit(&cli.out, &if jsonl { r.to_jsonl() } else { r.to_text() })?;
    if r.violations.is_empty() {
        return Ok(0);
    }
    eprintln!(
        "COUNTEREXAMPLE: {} realization(s) break a distance bound",
        r.violations.len()
    );
    Ok(EXIT_FOUND)
}

fn cmd_distance(cli: &Cli, word: &str) -> Result<u8, Failure> {
    let map = realize(&parse_open_gauss(word)?)?;
    let text = format!(
        "c={} regions={} d={}\n",
        map.crossing_count(),
        map.regions().len(),
        map.distance()
    );
    emit(&cli.out, &text)?;
    Ok(0)
}

fn cmd_scan(cli: &Cli, table: &Path, jsonl: &Option<PathBuf>) -> Result<u8, Failure> {
    let records = load_table(table).map_err(|e| Failure::input(e.to_string()))?;
    let report = scan(&records, cli.budget);
    emit(&cli.out, &render_report(&report.verdicts))?;
    if let Some(p) = jsonl {
        emit(&Some(p.clone()), &render_report_jsonl(&report.verdicts))?;
    }
    for e in &report.errors {
        eprintln!("error: {}: {}", e.knot, e.message);
    }
    let candidates = report.q_self_candidates();
    if !candidates.is_empty() {
        for v in &candidates {
            eprintln!("Q-ONLY TEST FIRED: {}\t{}", v.knot, v.report_line());
        }
        if let Some(out) = &cli.out {
            let owned: Vec<_> = candidates.into_iter().cloned().collect();
            let path = out.with_extension("q_self.jsonl");
            emit(&Some(path), &render_report_jsonl(&owned))?;
        }
        return Ok(EXIT_FOUND);
    }
    if report.errors.iter().any(|e| e.budget_exceeded) {
        Ok(EXIT_BUDGET)
    } else if !report.errors.is_empty() {
        Ok(EXIT_INPUT)
    } else {
        Ok(0)
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| Failure::input(e.to_string()))?;
    }
    match &cli.cmd {
        Cmd::Q { pd_file } => cmd_q(cli, pd_file),
        Cmd::Bridge { pd_file } => cmd_bridge(cli, pd_file),
        Cmd::Curves { n, jsonl } => cmd_curves(cli, *n, *jsonl),
        Cmd::Distance { word } => cmd_distance(cli, word),
        Cmd::Scan { table, jsonl } => cmd_scan(cli, table, jsonl),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("knotq: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
