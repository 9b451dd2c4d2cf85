//! Line-oriented ledger snapshots.
//!
//! ```text
//! binset-snapshot v1
//! E <time> <delta>            one per event, strictly ascending time
//! R <id> <bw> <t0> <t1> [label]
//! ```
//!
//! The event section is canonical: ascending times, no zero deltas, no
//! duplicates — two ledgers holding the same event multiset emit identical
//! event sections no matter how they got there. Records follow in id order.
//! Restoring rebuilds the tree by replaying the events and refuses corrupt
//! input outright, leaving no partial state behind.

use std::fmt;

use crate::error::Error;
use crate::ledger::{Ledger, ReservationId, ReservationRecord};
use crate::types::{Bandwidth, Interval, Timestamp};

pub const HEADER: &str = "binset-snapshot v1";

/// A snapshot that failed to load, with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnapshotError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for SnapshotError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for SnapshotError {}

/// Serializes the ledger into canonical snapshot text.
pub fn write_snapshot(ledger: &Ledger) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for (time, delta) in ledger.events() {
        out.push_str(&format!("E {time} {delta}\n"));
    }
    for record in ledger.records() {
        out.push_str(&format!(
            "R {} {} {} {}",
            record.id,
            record.bandwidth,
            record.interval.start(),
            record.interval.end()
        ));
        if let Some(label) = &record.label {
            out.push(' ');
            out.push_str(label);
        }
        out.push('\n');
    }
    out
}

/// Parses snapshot text and rebuilds the ledger it describes.
pub fn read_snapshot(text: &str) -> Result<Ledger, SnapshotError> {
    let fail = |line: usize, message: String| SnapshotError { line, message };
    let mut lines = text.lines().enumerate();

    match lines.next() {
        Some((_, header)) if header == HEADER => {}
        Some((_, other)) => {
            return Err(fail(1, format!("expected header {HEADER:?}, got {other:?}")))
        }
        None => return Err(fail(1, "empty snapshot".into())),
    }

    let mut events: Vec<(Timestamp, Bandwidth)> = Vec::new();
    let mut records: Vec<ReservationRecord> = Vec::new();
    let mut seen_record = false;

    for (idx, raw) in lines {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        if let Some(rest) = raw.strip_prefix("E ") {
            if seen_record {
                return Err(fail(line, "event line after record section".into()));
            }
            let fields: Vec<&str> = rest.split(' ').collect();
            if fields.len() != 2 {
                return Err(fail(line, "event line needs exactly time and delta".into()));
            }
            let time: i64 = fields[0]
                .parse()
                .map_err(|_| fail(line, format!("bad time {:?}", fields[0])))?;
            let delta: i64 = fields[1]
                .parse()
                .map_err(|_| fail(line, format!("bad delta {:?}", fields[1])))?;
            if delta == 0 {
                return Err(fail(line, "zero delta is not canonical".into()));
            }
            if let Some(&(prev, _)) = events.last() {
                if prev.ticks() >= time {
                    return Err(fail(line, "event times must be strictly ascending".into()));
                }
            }
            events.push((Timestamp(time), Bandwidth(delta)));
        } else if let Some(rest) = raw.strip_prefix("R ") {
            seen_record = true;
            let mut fields = rest.splitn(5, ' ');
            let mut numeric = |name: &str| -> Result<i64, SnapshotError> {
                fields
                    .next()
                    .ok_or_else(|| fail(line, format!("record line missing {name}")))?
                    .parse()
                    .map_err(|_| fail(line, format!("bad {name}")))
            };
            let id = numeric("id")?;
            let bandwidth = numeric("bandwidth")?;
            let t0 = numeric("t0")?;
            let t1 = numeric("t1")?;
            let label = fields.next().map(str::to_owned);
            if id < 0 {
                return Err(fail(line, "record id must be non-negative".into()));
            }
            if bandwidth <= 0 {
                return Err(fail(line, "record bandwidth must be positive".into()));
            }
            let interval = Interval::from_ticks(t0, t1)
                .map_err(|e| fail(line, e.to_string()))?;
            let id = ReservationId(id as u64);
            if records.iter().any(|r| r.id == id) {
                return Err(fail(line, format!("duplicate record id {id}")));
            }
            records.push(ReservationRecord {
                id,
                bandwidth: Bandwidth(bandwidth),
                interval,
                label,
            });
        } else {
            return Err(fail(line, format!("unrecognized line {raw:?}")));
        }
    }

    Ledger::from_parts(&events, records)
        .map_err(|e: Error| fail(0, format!("replaying events failed: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(start: i64, end: i64) -> Interval {
        Interval::from_ticks(start, end).unwrap()
    }

    #[test]
    fn empty_ledger_round_trips() {
        let ledger = Ledger::new();
        let text = write_snapshot(&ledger);
        assert_eq!(text, format!("{HEADER}\n"));
        let restored = read_snapshot(&text).unwrap();
        assert_eq!(restored.stats().event_count, 0);
    }

    #[test]
    fn populated_ledger_round_trips() {
        let mut ledger = Ledger::new();
        ledger.reserve(Bandwidth(5), iv(1, 10)).unwrap();
        ledger
            .reserve_labeled(Bandwidth(3), iv(4, 20), Some("gold tier".into()))
            .unwrap();
        ledger.free(Bandwidth(2), iv(6, 8)).unwrap();

        let text = write_snapshot(&ledger);
        let restored = read_snapshot(&text).unwrap();
        assert_eq!(restored.events(), ledger.events());
        assert_eq!(restored.stats(), ledger.stats());
        assert_eq!(
            restored.record(ReservationId(2)).unwrap().label.as_deref(),
            Some("gold tier")
        );
        assert_eq!(write_snapshot(&restored), text);
    }

    #[test]
    fn fresh_ids_continue_after_restore() {
        let mut ledger = Ledger::new();
        ledger.reserve(Bandwidth(5), iv(1, 10)).unwrap();
        ledger.reserve(Bandwidth(5), iv(2, 12)).unwrap();
        let mut restored = read_snapshot(&write_snapshot(&ledger)).unwrap();
        let id = restored.reserve(Bandwidth(1), iv(0, 1)).unwrap();
        assert_eq!(id, ReservationId(3));
    }

    #[test]
    fn event_section_is_history_independent() {
        let mut a = Ledger::new();
        a.reserve(Bandwidth(5), iv(1, 10)).unwrap();
        a.reserve(Bandwidth(3), iv(4, 20)).unwrap();
        let mut b = Ledger::new();
        b.reserve(Bandwidth(3), iv(4, 20)).unwrap();
        b.reserve(Bandwidth(5), iv(1, 10)).unwrap();

        let events = |l: &Ledger| {
            write_snapshot(l)
                .lines()
                .filter(|l| l.starts_with("E "))
                .map(str::to_owned)
                .collect::<Vec<_>>()
        };
        assert_eq!(events(&a), events(&b));
    }

    #[test]
    fn corrupt_snapshots_are_rejected() {
        for (text, expect_line) in [
            ("", 1),
            ("not-a-snapshot\n", 1),
            (&format!("{HEADER}\nE 5\n"), 2),
            (&format!("{HEADER}\nE 5 0\n"), 2),
            (&format!("{HEADER}\nE 5 3\nE 5 2\n"), 3),
            (&format!("{HEADER}\nE 9 1\nE 5 2\n"), 3),
            (&format!("{HEADER}\nX 1 2\n"), 2),
            (&format!("{HEADER}\nR 1 0 1 10\n"), 2),
            (&format!("{HEADER}\nR 1 5 10 1\n"), 2),
            (&format!("{HEADER}\nR 1 5 1 10\nR 1 5 2 12\n"), 3),
            (&format!("{HEADER}\nR 1 5 1 10\nE 5 3\n"), 3),
        ] {
            let err = read_snapshot(text).unwrap_err();
            assert_eq!(err.line, expect_line, "for {text:?}");
        }
    }

    #[test]
    fn labels_with_spaces_survive() {
        let mut ledger = Ledger::new();
        ledger
            .reserve_labeled(Bandwidth(2), iv(0, 4), Some("a label  with spaces".into()))
            .unwrap();
        let restored = read_snapshot(&write_snapshot(&ledger)).unwrap();
        assert_eq!(
            restored.record(ReservationId(1)).unwrap().label.as_deref(),
            Some("a label  with spaces")
        );
    }
}
