//! Textual command traces.
//!
//! One command per line, single-letter opcode, space-separated signed
//! decimal integers; `#` starts a comment and blank lines are skipped:
//!
//! ```text
//! R <bw> <t0> <t1>        reserve bw over [t0, t1)
//! F <bw> <t0> <t1>        free bw over [t0, t1)
//! A <bw> <t0> <t1> <cap>  admit bw over [t0, t1) against capacity cap
//! Q <t0> <t1>             query max reserved over [t0, t1)
//! M <t0> <t1>             query min reserved over [t0, t1)
//! S                       structural stats
//! ```
//!
//! Interval commands require `t0 < t1`. The format is deliberately dumb:
//! easy to diff, easy to generate.

use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::types::{Bandwidth, Interval};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceCommand {
    Reserve { bandwidth: Bandwidth, interval: Interval },
    Free { bandwidth: Bandwidth, interval: Interval },
    Admit { bandwidth: Bandwidth, interval: Interval, capacity: Bandwidth },
    QueryMax { interval: Interval },
    QueryMin { interval: Interval },
    Stats,
}

impl fmt::Display for TraceCommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceCommand::Reserve { bandwidth, interval } => write!(
                f,
                "R {} {} {}",
                bandwidth,
                interval.start(),
                interval.end()
            ),
            TraceCommand::Free { bandwidth, interval } => write!(
                f,
                "F {} {} {}",
                bandwidth,
                interval.start(),
                interval.end()
            ),
            TraceCommand::Admit {
                bandwidth,
                interval,
                capacity,
            } => write!(
                f,
                "A {} {} {} {}",
                bandwidth,
                interval.start(),
                interval.end(),
                capacity
            ),
            TraceCommand::QueryMax { interval } => {
                write!(f, "Q {} {}", interval.start(), interval.end())
            }
            TraceCommand::QueryMin { interval } => {
                write!(f, "M {} {}", interval.start(), interval.end())
            }
            TraceCommand::Stats => write!(f, "S"),
        }
    }
}

/// A trace that failed to parse, with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Parses a whole trace, keeping each command's line number for reporting.
pub fn parse_trace(text: &str) -> Result<Vec<(usize, TraceCommand)>, ParseError> {
    let mut commands = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        commands.push((line, parse_line(content, line)?));
    }
    Ok(commands)
}

fn parse_line(content: &str, line: usize) -> Result<TraceCommand, ParseError> {
    let err = |message: String| ParseError { line, message };
    let mut fields = content.split_whitespace();
    let op = fields.next().expect("non-empty line");
    let rest: Vec<&str> = fields.collect();

    let want = |n: usize| -> Result<Vec<i64>, ParseError> {
        if rest.len() != n {
            return Err(err(format!(
                "opcode {op} takes {n} integer argument(s), got {}",
                rest.len()
            )));
        }
        rest.iter()
            .map(|s| {
                s.parse::<i64>()
                    .map_err(|_| err(format!("bad integer {s:?}")))
            })
            .collect()
    };
    let interval = |t0: i64, t1: i64| -> Result<Interval, ParseError> {
        if t0 >= t1 {
            return Err(err(format!("interval requires t0 < t1, got {t0} {t1}")));
        }
        Interval::from_ticks(t0, t1).map_err(|e| err(e.to_string()))
    };

    match op {
        "R" => {
            let v = want(3)?;
            Ok(TraceCommand::Reserve {
                bandwidth: Bandwidth(v[0]),
                interval: interval(v[1], v[2])?,
            })
        }
        "F" => {
            let v = want(3)?;
            Ok(TraceCommand::Free {
                bandwidth: Bandwidth(v[0]),
                interval: interval(v[1], v[2])?,
            })
        }
        "A" => {
            let v = want(4)?;
            Ok(TraceCommand::Admit {
                bandwidth: Bandwidth(v[0]),
                interval: interval(v[1], v[2])?,
                capacity: Bandwidth(v[3]),
            })
        }
        "Q" => {
            let v = want(2)?;
            Ok(TraceCommand::QueryMax {
                interval: interval(v[0], v[1])?,
            })
        }
        "M" => {
            let v = want(2)?;
            Ok(TraceCommand::QueryMin {
                interval: interval(v[0], v[1])?,
            })
        }
        "S" => {
            if !rest.is_empty() {
                return Err(err("opcode S takes no arguments".into()));
            }
            Ok(TraceCommand::Stats)
        }
        other => Err(err(format!("unknown opcode {other:?}"))),
    }
}

/// Renders commands back into trace text, one per line.
pub fn format_trace(commands: &[TraceCommand]) -> String {
    let mut out = String::new();
    for cmd in commands {
        out.push_str(&cmd.to_string());
        out.push('\n');
    }
    out
}

/// Knobs for the random trace generator.
#[derive(Debug, Clone, Copy)]
pub struct GenConfig {
    pub commands: usize,
    pub seed: u64,
    /// Times are drawn from `0..time_span`; keep it small to force
    /// equal-time merges and exact cancellations.
    pub time_span: i64,
    pub max_bandwidth: i64,
    pub capacity: i64,
}

impl GenConfig {
    pub fn new(commands: usize, seed: u64) -> Self {
        GenConfig {
            commands,
            seed,
            time_span: 96,
            max_bandwidth: 9,
            capacity: 30,
        }
    }
}

/// Generates a reproducible random trace.
///
/// Tracks its own picture of live reservations so that a good share of the
/// frees exactly cancel an earlier reserve, exercising leaf deletion and the
/// equal-time merge paths rather than only piling events up.
pub fn generate_trace(config: GenConfig) -> Vec<TraceCommand> {
    let mut rng = StdRng::seed_from_u64(config.seed);
    let mut live: Vec<(Bandwidth, Interval)> = Vec::new();
    let mut out = Vec::with_capacity(config.commands);

    let random_interval = |rng: &mut StdRng| {
        let a = rng.gen_range(0..config.time_span - 1);
        let b = rng.gen_range(a + 1..=config.time_span);
        Interval::from_ticks(a, b).expect("ordered")
    };

    for _ in 0..config.commands {
        let roll = rng.gen_range(0..100);
        let cmd = if roll < 30 {
            let bandwidth = Bandwidth(rng.gen_range(1..=config.max_bandwidth));
            let interval = random_interval(&mut rng);
            live.push((bandwidth, interval));
            TraceCommand::Reserve { bandwidth, interval }
        } else if roll < 45 && !live.is_empty() {
            // exact cancellation of a previous reserve
            let idx = rng.gen_range(0..live.len());
            let (bandwidth, interval) = live.swap_remove(idx);
            TraceCommand::Free { bandwidth, interval }
        } else if roll < 55 {
            TraceCommand::Free {
                bandwidth: Bandwidth(rng.gen_range(1..=config.max_bandwidth)),
                interval: random_interval(&mut rng),
            }
        } else if roll < 70 {
            TraceCommand::QueryMax {
                interval: random_interval(&mut rng),
            }
        } else if roll < 85 {
            TraceCommand::QueryMin {
                interval: random_interval(&mut rng),
            }
        } else if roll < 95 {
            let bandwidth = Bandwidth(rng.gen_range(1..=config.max_bandwidth));
            let interval = random_interval(&mut rng);
            // admission may or may not land; the generator does not track it
            TraceCommand::Admit {
                bandwidth,
                interval,
                capacity: Bandwidth(config.capacity),
            }
        } else {
            TraceCommand::Stats
        };
        out.push(cmd);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let text = "# demo\nR 5 1 10\n\nF 3 2 4   # inline comment\nA 2 0 8 10\nQ 1 10\nM -5 5\nS\n";
        let commands = parse_trace(text).unwrap();
        assert_eq!(commands.len(), 6);
        assert_eq!(commands[0].0, 2);
        assert_eq!(commands[2].0, 5);
        let rendered = format_trace(
            &commands
                .iter()
                .map(|&(_, c)| c)
                .collect::<Vec<_>>(),
        );
        let reparsed = parse_trace(&rendered).unwrap();
        assert_eq!(
            reparsed.iter().map(|&(_, c)| c).collect::<Vec<_>>(),
            commands.iter().map(|&(_, c)| c).collect::<Vec<_>>()
        );
    }

    #[test]
    fn rejects_malformed_lines() {
        for bad in [
            "X 1 2",
            "R 5 1",
            "R 5 one 10",
            "Q 5 5",
            "Q 9 3",
            "S 1",
            "R 5 1 10 20",
        ] {
            let err = parse_trace(bad).unwrap_err();
            assert_eq!(err.line, 1, "{bad}");
        }
    }

    #[test]
    fn parse_error_carries_the_right_line() {
        let err = parse_trace("R 5 1 10\n# fine\nQ 2 2\n").unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn generator_is_deterministic() {
        let a = generate_trace(GenConfig::new(500, 7));
        let b = generate_trace(GenConfig::new(500, 7));
        assert_eq!(a, b);
        let c = generate_trace(GenConfig::new(500, 8));
        assert_ne!(a, c);
    }

    #[test]
    fn generator_emits_exact_cancellations() {
        let trace = generate_trace(GenConfig::new(2000, 3));
        let mut reserved = std::collections::HashSet::new();
        let mut cancelling = 0;
        for cmd in &trace {
            match cmd {
                TraceCommand::Reserve { bandwidth, interval } => {
                    reserved.insert((*bandwidth, *interval));
                }
                TraceCommand::Free { bandwidth, interval } => {
                    if reserved.contains(&(*bandwidth, *interval)) {
                        cancelling += 1;
                    }
                }
                _ => {}
            }
        }
        assert!(cancelling > 50, "only {cancelling} exact cancels");
    }
}
