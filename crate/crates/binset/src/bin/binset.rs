//! Trace-driven front end for the reservation ledger.
//!
//! Exit codes: 0 on success, 1 on verification failure, 2 on usage or
//! parse errors.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use binset::harness::{self, VerifyOutcome};
use binset::ledger::Ledger;
use binset::snapshot::{read_snapshot, write_snapshot};
use binset::trace::{generate_trace, parse_trace, GenConfig, TraceCommand};

#[derive(Parser)]
#[command(
    name = "binset",
    about = "Bandwidth reservation ledger: run traces, verify against a reference, benchmark scaling",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a trace, printing one line per query/admit/stats command.
    Run(RunArgs),
    /// Replay a trace through the ledger and the brute-force reference in
    /// lockstep; fail on the first divergence.
    Verify(VerifyArgs),
    /// Measure node visits per operation across ledger sizes.
    Bench(BenchArgs),
    /// Build a ledger from a trace and write its snapshot.
    Snapshot(SnapshotArgs),
    /// Load a snapshot, optionally run a trace against it.
    Restore(RestoreArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Trace file to execute.
    trace: PathBuf,
    /// Start from this snapshot instead of an empty ledger.
    #[arg(long)]
    restore: Option<PathBuf>,
    /// Write the final ledger state to this snapshot file.
    #[arg(long)]
    snapshot: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Trace file to verify (omit when using --gen).
    trace: Option<PathBuf>,
    /// Re-check all structural invariants after every mutation.
    #[arg(long)]
    paranoid: bool,
    /// Generate a random trace with this many commands instead of reading
    /// one from disk.
    #[arg(long, value_name = "N")]
    gen: Option<usize>,
    /// Seed for --gen.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated ledger sizes (number of reservations).
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Measured operations per size.
    #[arg(long, default_value_t = 10_000)]
    ops: u64,
}

#[derive(Args)]
struct SnapshotArgs {
    /// Output snapshot path.
    out: PathBuf,
    /// Trace to build the ledger from; stdin when omitted.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct RestoreArgs {
    /// Snapshot to load.
    input: PathBuf,
    /// Run this trace against the restored ledger.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Re-snapshot the final state to this path.
    #[arg(long)]
    snapshot: Option<PathBuf>,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run(args) => run(args),
        Command::Verify(args) => verify(args),
        Command::Bench(args) => bench(args),
        Command::Snapshot(args) => snapshot(args),
        Command::Restore(args) => restore(args),
    }
}

fn fail(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("binset: {message}");
    ExitCode::from(2)
}

fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_trace(path: &Path) -> Result<Vec<(usize, TraceCommand)>, String> {
    let text = read_file(path)?;
    parse_trace(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(args: RunArgs) -> ExitCode {
    let commands = match load_trace(&args.trace) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let mut ledger = match args.restore {
        Some(path) => match read_file(&path).and_then(|text| {
            read_snapshot(&text).map_err(|e| format!("{}: {e}", path.display()))
        }) {
            Ok(l) => l,
            Err(e) => return fail(e),
        },
        None => Ledger::new(),
    };
    let mut out = String::new();
    let mut err = String::new();
    harness::run_trace_on(&mut ledger, &commands, &mut out, &mut err).expect("string sink");
    print!("{out}");
    eprint!("{err}");
    if let Some(path) = args.snapshot {
        if let Err(e) = std::fs::write(&path, write_snapshot(&ledger)) {
            return fail(format!("{}: {e}", path.display()));
        }
    }
    ExitCode::SUCCESS
}

fn verify(args: VerifyArgs) -> ExitCode {
    let commands: Vec<(usize, TraceCommand)> = match (&args.trace, args.gen) {
        (Some(path), None) => match load_trace(path) {
            Ok(c) => c,
            Err(e) => return fail(e),
        },
        (None, Some(n)) => generate_trace(GenConfig::new(n, args.seed))
            .into_iter()
            .enumerate()
            .map(|(i, c)| (i + 1, c))
            .collect(),
        (Some(_), Some(_)) => return fail("pass either a trace file or --gen, not both"),
        (None, None) => return fail("pass a trace file or --gen N"),
    };
    let outcome: VerifyOutcome = harness::verify_trace(&commands, args.paranoid);
    match outcome.divergence {
        None => {
            println!(
                "verify: PASS ({} commands, paranoid={})",
                outcome.commands_checked, args.paranoid
            );
            ExitCode::SUCCESS
        }
        Some(divergence) => {
            println!("verify: FAIL at {divergence}");
            ExitCode::from(1)
        }
    }
}

fn bench(args: BenchArgs) -> ExitCode {
    match harness::bench(&args.sizes, args.seed, args.ops) {
        Ok(reports) => {
            let mut table = String::new();
            for report in &reports {
                writeln!(table, "{report}").expect("string sink");
            }
            print!("{table}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn snapshot(args: SnapshotArgs) -> ExitCode {
    let text = match &args.trace {
        Some(path) => match read_file(path) {
            Ok(t) => t,
            Err(e) => return fail(e),
        },
        None => {
            let mut buf = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
                return fail(format!("stdin: {e}"));
            }
            buf
        }
    };
    let commands = match parse_trace(&text) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let mut ledger = Ledger::new();
    let mut out = String::new();
    let mut err = String::new();
    harness::run_trace_on(&mut ledger, &commands, &mut out, &mut err).expect("string sink");
    print!("{out}");
    eprint!("{err}");
    match std::fs::write(&args.out, write_snapshot(&ledger)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(format!("{}: {e}", args.out.display())),
    }
}

fn restore(args: RestoreArgs) -> ExitCode {
    let mut ledger = match read_file(&args.input)
        .and_then(|text| read_snapshot(&text).map_err(|e| format!("{}: {e}", args.input.display())))
    {
        Ok(l) => l,
        Err(e) => return fail(e),
    };
    let report = ledger.validate();
    if !report.is_ok() {
        return fail(format!("restored ledger failed validation: {report}"));
    }
    if let Some(path) = &args.trace {
        let commands = match load_trace(path) {
            Ok(c) => c,
            Err(e) => return fail(e),
        };
        let mut out = String::new();
        let mut err = String::new();
        harness::run_trace_on(&mut ledger, &commands, &mut out, &mut err).expect("string sink");
        print!("{out}");
        eprint!("{err}");
    } else {
        println!("{}", harness::stats_line(&ledger));
    }
    if let Some(path) = &args.snapshot {
        if let Err(e) = std::fs::write(path, write_snapshot(&ledger)) {
            return fail(format!("{}: {e}", path.display()));
        }
    }
    std::io::stdout().flush().ok();
    ExitCode::SUCCESS
}
