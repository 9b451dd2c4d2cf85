//! Bandwidth reservation ledger with O(log n) reserve, free, and
//! max/min-reserved range queries.
//!
//! The core structure is a height-balanced binary segment tree whose leaves
//! are reservation events (time, signed delta) and whose internal nodes keep
//! range aggregates, so that the peak or trough of the reserved level over
//! any time interval falls out of a single logarithmic descent. On top of it
//! sit:
//!
//! * [`Ledger`] — the public reservation API: intervals in, admission
//!   control, per-reservation records;
//! * [`OracleLedger`] — a deliberately naive reference implementation used
//!   as ground truth in tests and in the CLI's verify mode;
//! * [`PrefixSumArray`] — dynamic prefix sums expressed as reservations over
//!   semi-infinite intervals;
//! * trace/snapshot plumbing and a benchmark harness for the `binset` CLI.

pub mod error;
pub mod harness;
pub mod ledger;
mod node;
pub mod oracle;
pub mod prefix_sum;
pub mod snapshot;
pub mod trace;
pub mod tree;
pub mod types;
pub mod validate;

pub use error::Error;
pub use ledger::{Ledger, LedgerStats, ReservationId, ReservationRecord};
pub use oracle::OracleLedger;
pub use prefix_sum::PrefixSumArray;
pub use tree::BinSet;
pub use types::{Bandwidth, Interval, ReservationEvent, Timestamp};
pub use validate::{ValidationReport, Violation, ViolationKind};
