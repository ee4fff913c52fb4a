//! `twistspin` command-line front end.

mod report;
mod table;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use twistspin::{
    abelian_invariants, boyle_witness_search, group_order, Knot, KnotNotation, Limits,
    MarkedPresentation, OrderOutcome, SurfaceKnotSpec, Triviality,
};

use report::{CheckKind, Report, RunConfig};

#[derive(Parser)]
#[command(name = "twistspin", version)]
#[command(about = "Coset enumeration and group checks for twist-spun 2-knots")]
struct Cli {
    /// Coset limit for every enumeration
    #[arg(long, global = true, env = "TWISTSPIN_MAX_COSETS", default_value_t = 1_000_000)]
    max_cosets: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Presentations and invariants of one knot or surface knot
    #[command(subcommand)]
    Group(GroupCommand),
    /// Twist-parity checks for one knot
    Verify {
        #[arg(value_enum)]
        check: CheckKind,
        /// Knot as PD[...], BR[s; ...] or TB[p/q]
        knot: String,
        /// Twist values, e.g. 1,3,5 or 0-4
        #[arg(long, default_value = "0-5")]
        n: String,
        /// Expected determinant; even twists must give order 2*det
        #[arg(long)]
        det: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run checks over a CSV knot table
    Table {
        /// CSV with header name,notation,payload[,expected_det]
        csv: PathBuf,
        #[arg(long, default_value = "0-5")]
        n: String,
        /// Checks to run
        #[arg(long, value_enum, value_delimiter = ',', default_value = "lemma2,theorem1")]
        checks: Vec<CheckKind>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Look for a finite quotient G(tau^n K)/<<a1^m>> where the longitude survives
    Witness {
        knot: String,
        #[arg(long)]
        n: u32,
        /// Meridian powers to try
        #[arg(long, default_value = "2-6")]
        m: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Wirtinger (or Schubert) presentation and longitude
    Wirtinger { knot: String },
    /// Presentation of tau^n K, optionally summed with P1(+-2)
    Twistspin(SpinArgs),
    /// Group order by coset enumeration
    Order(SpinArgs),
    /// Abelian invariants
    Abelian(SpinArgs),
}

#[derive(Args)]
struct SpinArgs {
    knot: String,
    /// Twist number; without it the classical knot group is used
    #[arg(long, visible_alias = "n")]
    twist: Option<u32>,
    /// Connect-sum with an unknotted projective plane (adds a1^2)
    #[arg(long)]
    rp2: bool,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Record wall-clock milliseconds per row (breaks byte-identical output)
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Comma-separated values or inclusive ranges `a-b`.
fn parse_list(s: &str) -> anyhow::Result<Vec<u32>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
        match item.split_once(['-', ':']) {
            Some((a, b)) => {
                let a: u32 = a.trim().parse().with_context(|| format!("bad range {item:?}"))?;
                let b: u32 = b.trim().parse().with_context(|| format!("bad range {item:?}"))?;
                if a > b {
                    bail!("empty range {item:?}");
                }
                out.extend(a..=b);
            }
            None => out.push(item.parse().with_context(|| format!("bad number {item:?}"))?),
        }
    }
    if out.is_empty() {
        bail!("empty list {s:?}");
    }
    Ok(out)
}

fn limits(max_cosets: usize) -> anyhow::Result<Limits> {
    if max_cosets == 0 {
        bail!("--max-cosets must be positive");
    }
    Ok(Limits::with_max_cosets(max_cosets))
}

fn spin_presentation(args: &SpinArgs) -> anyhow::Result<MarkedPresentation> {
    let knot = Knot::parse(args.knot.trim(), &args.knot)?;
    let Some(n) = args.twist else {
        if args.rp2 {
            bail!("--rp2 needs --twist");
        }
        return Ok(knot.presentation().clone());
    };
    let mut spec = SurfaceKnotSpec::tau(knot, n);
    if args.rp2 {
        spec = spec.connect_sum(1, 2)?;
    }
    Ok(spec.presentation())
}

fn group(cmd: &GroupCommand, lim: Limits) -> anyhow::Result<u8> {
    match cmd {
        GroupCommand::Wirtinger { knot } => {
            let k = Knot::parse(knot.trim(), knot)?;
            let kind = match k.notation() {
                KnotNotation::Diagram(_) => "wirtinger",
                KnotNotation::TwoBridge(_) => "schubert",
            };
            println!("{kind}: {}", k.presentation());
            println!("longitude: {}", k.longitude());
            Ok(0)
        }
        GroupCommand::Twistspin(args) => {
            println!("{}", spin_presentation(args)?);
            Ok(0)
        }
        GroupCommand::Order(args) => {
            let order = group_order(&spin_presentation(args)?, lim);
            println!("order: {order}");
            Ok(if order == OrderOutcome::Overflow { 2 } else { 0 })
        }
        GroupCommand::Abelian(args) => {
            println!("abelian: {}", abelian_invariants(&spin_presentation(args)?));
            Ok(0)
        }
    }
}

fn emit(report: &Report, output: &OutputArgs) -> anyhow::Result<u8> {
    let text = match output.format {
        Format::Json => report::to_json(report),
        Format::Text => report::to_text(report),
    };
    match &output.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(report::exit_code(&report.rows))
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let lim = limits(cli.max_cosets)?;
    match cli.command {
        Command::Group(cmd) => group(&cmd, lim),
        Command::Verify { check, knot, n, det, output } => {
            let ns = parse_list(&n)?;
            let k = Knot::parse(knot.trim(), &knot)?.with_determinant(det);
            let config = RunConfig {
                command: format!("verify {}", check.label()),
                input: knot.trim().to_string(),
                checks: vec![check],
                n: ns.clone(),
                max_cosets: lim.max_cosets,
                jobs: output.jobs,
            };
            let entries = vec![(k.name().to_string(), Ok(k))];
            let rows = report::run(&entries, &[check], &ns, lim, output.jobs, output.timings)?;
            emit(&Report { tool_version: env!("CARGO_PKG_VERSION"), config, rows }, &output)
        }
        Command::Table { csv, n, checks, output } => {
            let ns = parse_list(&n)?;
            if checks.is_empty() {
                bail!("no checks selected");
            }
            let file = fs::File::open(&csv).with_context(|| format!("opening {}", csv.display()))?;
            let rows = table::read_rows(file)?;
            let entries = table::entries(&rows);
            let config = RunConfig {
                command: "table".into(),
                input: csv.display().to_string(),
                checks: checks.clone(),
                n: ns.clone(),
                max_cosets: lim.max_cosets,
                jobs: output.jobs,
            };
            let rows = report::run(&entries, &checks, &ns, lim, output.jobs, output.timings)?;
            emit(&Report { tool_version: env!("CARGO_PKG_VERSION"), config, rows }, &output)
        }
        Command::Witness { knot, n, m, format } => {
            let k = Knot::parse(knot.trim(), &knot)?;
            let r = boyle_witness_search(&k, n, parse_list(&m)?, lim)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&r)?),
                Format::Text => {
                    for e in &r.entries {
                        println!("m={} order={} longitude_trivial={}", e.m, e.order, e.longitude_trivial);
                    }
                    match &r.witness {
                        Some(w) => println!("witness: m={} order={}", w.m, w.order),
                        None => println!("no witness found"),
                    }
                }
            }
            let undecided = r.witness.is_none()
                && r.entries.iter().any(|e| e.longitude_trivial == Triviality::Unknown);
            Ok(if undecided { 2 } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    // Usage errors exit 1 like any other input error; 2 means undecided.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
