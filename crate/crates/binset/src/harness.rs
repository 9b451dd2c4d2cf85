//! Trace execution, lockstep verification, and the scaling benchmark.
//!
//! Everything here is plain library code so that both the CLI and the test
//! suites drive the exact same machinery.

use std::fmt;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::Error;
use crate::ledger::Ledger;
use crate::oracle::OracleLedger;
use crate::trace::TraceCommand;
use crate::types::{Bandwidth, Interval};

/// Result of one trace command, normalized so the tree-backed ledger and the
/// oracle can be compared field by field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommandOutcome {
    /// Reserve/free applied (or failed) with no printed output.
    Applied(Result<(), Error>),
    Value(Result<Bandwidth, Error>),
    Admitted(Result<bool, Error>),
    Stats { event_count: usize },
}

impl CommandOutcome {
    /// The output line this outcome contributes to a run, if any.
    pub fn output(&self, stats_line: Option<&str>) -> Option<String> {
        match self {
            CommandOutcome::Applied(_) => None,
            CommandOutcome::Value(Ok(v)) => Some(v.to_string()),
            CommandOutcome::Admitted(Ok(ok)) => Some(if *ok { "1" } else { "0" }.to_string()),
            CommandOutcome::Stats { .. } => stats_line.map(str::to_owned),
            CommandOutcome::Value(Err(_)) | CommandOutcome::Admitted(Err(_)) => None,
        }
    }

    pub fn error(&self) -> Option<Error> {
        match self {
            CommandOutcome::Applied(Err(e))
            | CommandOutcome::Value(Err(e))
            | CommandOutcome::Admitted(Err(e)) => Some(*e),
            _ => None,
        }
    }
}

/// Executes one command against the tree-backed ledger.
pub fn execute(ledger: &mut Ledger, cmd: &TraceCommand) -> CommandOutcome {
    match *cmd {
        TraceCommand::Reserve { bandwidth, interval } => {
            CommandOutcome::Applied(ledger.reserve(bandwidth, interval).map(|_| ()))
        }
        TraceCommand::Free { bandwidth, interval } => {
            CommandOutcome::Applied(ledger.free(bandwidth, interval))
        }
        TraceCommand::Admit {
            bandwidth,
            interval,
            capacity,
        } => CommandOutcome::Admitted(
            ledger
                .admit(bandwidth, interval, capacity)
                .map(|id| id.is_some()),
        ),
        TraceCommand::QueryMax { interval } => {
            CommandOutcome::Value(ledger.max_reserved(interval))
        }
        TraceCommand::QueryMin { interval } => {
            CommandOutcome::Value(ledger.min_reserved(interval))
        }
        TraceCommand::Stats => CommandOutcome::Stats {
            event_count: ledger.stats().event_count,
        },
    }
}

/// Executes one command against the brute-force oracle.
pub fn execute_oracle(oracle: &mut OracleLedger, cmd: &TraceCommand) -> CommandOutcome {
    match *cmd {
        TraceCommand::Reserve { bandwidth, interval } => {
            CommandOutcome::Applied(oracle.reserve(bandwidth, interval))
        }
        TraceCommand::Free { bandwidth, interval } => {
            CommandOutcome::Applied(oracle.free(bandwidth, interval))
        }
        TraceCommand::Admit {
            bandwidth,
            interval,
            capacity,
        } => CommandOutcome::Admitted(oracle.admit(bandwidth, interval, capacity)),
        TraceCommand::QueryMax { interval } => CommandOutcome::Value(oracle.max_reserved(interval)),
        TraceCommand::QueryMin { interval } => CommandOutcome::Value(oracle.min_reserved(interval)),
        TraceCommand::Stats => CommandOutcome::Stats {
            event_count: oracle.event_count(),
        },
    }
}

/// One line of run output per query/admit/stats command, in input order.
/// Execution errors become `error:`-prefixed lines on the error stream;
/// the run keeps going.
pub fn run_trace(
    commands: &[(usize, TraceCommand)],
    out: &mut dyn fmt::Write,
    err: &mut dyn fmt::Write,
) -> Result<Ledger, fmt::Error> {
    let mut ledger = Ledger::new();
    run_trace_on(&mut ledger, commands, out, err)?;
    Ok(ledger)
}

/// As [`run_trace`], continuing from an existing ledger.
pub fn run_trace_on(
    ledger: &mut Ledger,
    commands: &[(usize, TraceCommand)],
    out: &mut dyn fmt::Write,
    err: &mut dyn fmt::Write,
) -> Result<(), fmt::Error> {
    for (line, cmd) in commands {
        let outcome = execute(ledger, cmd);
        if let Some(e) = outcome.error() {
            writeln!(err, "error: line {line}: {e}")?;
            continue;
        }
        let stats_line = stats_line(ledger);
        if let Some(text) = outcome.output(Some(&stats_line)) {
            writeln!(out, "{text}")?;
        }
    }
    Ok(())
}

pub fn stats_line(ledger: &Ledger) -> String {
    let s = ledger.stats();
    format!(
        "events={} nodes={} height={} records={}",
        s.event_count, s.node_count, s.height, s.record_count
    )
}

/// First point where the tree-backed ledger and the oracle disagreed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub line: usize,
    pub command: TraceCommand,
    pub detail: String,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: `{}`: {}", self.line, self.command, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub commands_checked: usize,
    pub divergence: Option<Divergence>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.divergence.is_none()
    }
}

/// Replays the trace through the ledger and the oracle in lockstep,
/// comparing every outcome; stops at the first divergence. With `paranoid`
/// set, every structural invariant is re-checked after each mutation.
pub fn verify_trace(commands: &[(usize, TraceCommand)], paranoid: bool) -> VerifyOutcome {
    let mut ledger = Ledger::new();
    let mut oracle = OracleLedger::new();
    let mut checked = 0;

    for (line, cmd) in commands {
        let fast = execute(&mut ledger, cmd);
        let slow = execute_oracle(&mut oracle, cmd);
        checked += 1;
        if fast != slow {
            return VerifyOutcome {
                commands_checked: checked,
                divergence: Some(Divergence {
                    line: *line,
                    command: *cmd,
                    detail: format!("ledger answered {fast:?}, oracle answered {slow:?}"),
                }),
            };
        }
        let mutating = matches!(
            cmd,
            TraceCommand::Reserve { .. } | TraceCommand::Free { .. } | TraceCommand::Admit { .. }
        );
        if paranoid && mutating {
            let report = ledger.validate();
            if !report.is_ok() {
                return VerifyOutcome {
                    commands_checked: checked,
                    divergence: Some(Divergence {
                        line: *line,
                        command: *cmd,
                        detail: format!("invariant violations: {report}"),
                    }),
                };
            }
        }
    }
    VerifyOutcome {
        commands_checked: checked,
        divergence: None,
    }
}

/// Scaling measurements for one ledger size.
#[derive(Debug, Clone)]
pub struct BenchSizeReport {
    pub reservations: usize,
    pub event_count: usize,
    pub height: u32,
    /// Classical AVL height bound 1.44 * log2(events + 2).
    pub height_bound: f64,
    pub ops: u64,
    pub mean_visits_per_op: f64,
    /// Mean visits divided by log2 of the event count.
    pub visits_per_log2: f64,
    pub nanos_per_op: f64,
}

impl BenchSizeReport {
    pub fn height_within_bound(&self) -> bool {
        f64::from(self.height) <= self.height_bound
    }
}

impl fmt::Display for BenchSizeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={:<8} events={:<8} height={:<3} (bound {:>6.2}) visits/op={:<7.2} visits/log2(n)={:<6.3} ns/op={:.0}",
            self.reservations,
            self.event_count,
            self.height,
            self.height_bound,
            self.mean_visits_per_op,
            self.visits_per_log2,
            self.nanos_per_op,
        )
    }
}

pub fn avl_height_bound(events: usize) -> f64 {
    1.44 * ((events as f64) + 2.0).log2()
}

/// Builds a ledger of `n` random reservations per size, then measures mean
/// instrumented node visits and wall time over a steady-state mix of
/// reservations, exact cancellations, and range queries.
///
/// Counted operations are individual tree operations: one per event added
/// (a reservation is two) and one per query. Visit counts are deterministic
/// for a given seed; wall time is reported but nothing should assert on it.
pub fn bench(sizes: &[usize], seed: u64, ops_per_size: u64) -> Result<Vec<BenchSizeReport>, Error> {
    let mut reports = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let mut rng = StdRng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9));
        let span = (4 * n.max(16)) as i64;
        let mut ledger = Ledger::new();
        let mut live: Vec<(Bandwidth, Interval)> = Vec::with_capacity(n);

        let random_reservation = |rng: &mut StdRng| {
            let a = rng.gen_range(0..span - 1);
            let b = rng.gen_range(a + 1..=span);
            (
                Bandwidth(rng.gen_range(1..=100)),
                Interval::from_ticks(a, b).expect("ordered"),
            )
        };

        for _ in 0..n {
            let (bw, interval) = random_reservation(&mut rng);
            ledger.reserve(bw, interval)?;
            live.push((bw, interval));
        }

        ledger.tree().reset_visits();
        let mut tree_ops: u64 = 0;
        let started = Instant::now();
        for _ in 0..ops_per_size {
            match rng.gen_range(0..4) {
                0 => {
                    let (bw, interval) = random_reservation(&mut rng);
                    ledger.reserve(bw, interval)?;
                    live.push((bw, interval));
                    tree_ops += 2;
                }
                1 => {
                    if live.is_empty() {
                        continue;
                    }
                    let idx = rng.gen_range(0..live.len());
                    let (bw, interval) = live.swap_remove(idx);
                    ledger.free(bw, interval)?;
                    tree_ops += 2;
                }
                2 => {
                    let a = rng.gen_range(0..span - 1);
                    let b = rng.gen_range(a + 1..=span);
                    ledger.max_reserved(Interval::from_ticks(a, b).expect("ordered"))?;
                    tree_ops += 1;
                }
                _ => {
                    let a = rng.gen_range(0..span - 1);
                    let b = rng.gen_range(a + 1..=span);
                    ledger.min_reserved(Interval::from_ticks(a, b).expect("ordered"))?;
                    tree_ops += 1;
                }
            }
        }
        let elapsed = started.elapsed();

        let visits = ledger.tree().visits();
        let event_count = ledger.stats().event_count;
        let mean = visits as f64 / tree_ops.max(1) as f64;
        reports.push(BenchSizeReport {
            reservations: n,
            event_count,
            height: ledger.stats().height,
            height_bound: avl_height_bound(event_count),
            ops: tree_ops,
            mean_visits_per_op: mean,
            visits_per_log2: mean / (event_count.max(2) as f64).log2(),
            nanos_per_op: elapsed.as_nanos() as f64 / tree_ops.max(1) as f64,
        });
    }
    Ok(reports)
}
