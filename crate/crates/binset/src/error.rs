use std::fmt;

use crate::types::Timestamp;

/// Errors surfaced by ledger and tree operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Error {
    /// A bandwidth sum left the representable range. The operation that
    /// triggered it has not been applied; the structure is unchanged.
    Overflow,
    /// Interval endpoints out of order (`start > end`).
    InvalidInterval { start: Timestamp, end: Timestamp },
    /// A query was given an empty interval; queries need `start < end`.
    EmptyQueryInterval,
    /// Reservation amount must be strictly positive.
    NonPositiveBandwidth,
    /// Capacity passed to an admission check must be non-negative.
    NegativeCapacity,
    /// No reservation with the given id.
    UnknownReservation(u64),
    /// A range query on the tree itself requires at least one stored event.
    EmptyTree,
    /// Prefix-sum index outside `1..=len`.
    IndexOutOfRange { index: u64, len: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Overflow => write!(f, "bandwidth arithmetic overflow"),
            Error::InvalidInterval { start, end } => {
                write!(f, "invalid interval [{start}, {end}): start exceeds end")
            }
            Error::EmptyQueryInterval => write!(f, "query interval is empty"),
            Error::NonPositiveBandwidth => write!(f, "bandwidth must be positive"),
            Error::NegativeCapacity => write!(f, "capacity must be non-negative"),
            Error::UnknownReservation(id) => write!(f, "unknown reservation id {id}"),
            Error::EmptyTree => write!(f, "tree holds no events"),
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} outside 1..={len}")
            }
        }
    }
}

impl std::error::Error for Error {}
