//! Core domain types: time ticks, bandwidth units, and half-open intervals.

use std::fmt;

use crate::error::Error;

/// A point in time, measured in integer ticks.
///
/// Ticks are totally ordered and compared exactly; there is no floating-point
/// time anywhere in the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Timestamp(pub i64);

impl Timestamp {
    pub const MIN: Timestamp = Timestamp(i64::MIN);
    pub const MAX: Timestamp = Timestamp(i64::MAX);

    pub fn ticks(self) -> i64 {
        self.0
    }
}

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<i64> for Timestamp {
    fn from(ticks: i64) -> Self {
        Timestamp(ticks)
    }
}

/// A signed amount of reserved resource.
///
/// Negative values are legal: freeing bandwidth is modelled as a reservation
/// with a negative amount, and aggregates over partially cancelled
/// reservations can dip below zero. All arithmetic is overflow-checked;
/// overflow surfaces as [`Error::Overflow`], never as wraparound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Bandwidth(pub i64);

impl Bandwidth {
    pub const ZERO: Bandwidth = Bandwidth(0);

    pub fn units(self) -> i64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// Magnitude as an unsigned value (total for `i64::MIN`).
    pub fn magnitude(self) -> u64 {
        self.0.unsigned_abs()
    }

    pub fn checked_add(self, rhs: Bandwidth) -> Result<Bandwidth, Error> {
        self.0
            .checked_add(rhs.0)
            .map(Bandwidth)
            .ok_or(Error::Overflow)
    }

    pub fn checked_neg(self) -> Result<Bandwidth, Error> {
        self.0.checked_neg().map(Bandwidth).ok_or(Error::Overflow)
    }

    pub fn checked_sub(self, rhs: Bandwidth) -> Result<Bandwidth, Error> {
        self.0
            .checked_sub(rhs.0)
            .map(Bandwidth)
            .ok_or(Error::Overflow)
    }

    pub fn max(self, rhs: Bandwidth) -> Bandwidth {
        Bandwidth(self.0.max(rhs.0))
    }

    pub fn min(self, rhs: Bandwidth) -> Bandwidth {
        Bandwidth(self.0.min(rhs.0))
    }
}

impl fmt::Display for Bandwidth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<i64> for Bandwidth {
    fn from(units: i64) -> Self {
        Bandwidth(units)
    }
}

/// A half-open time interval `[start, end)`: `start` is included, `end` is not.
///
/// `start == end` denotes the empty interval. Empty intervals are accepted by
/// reservation calls (a reservation over nothing is a no-op) but rejected by
/// queries, which need at least one time point to range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    start: Timestamp,
    end: Timestamp,
}

impl Interval {
    /// Builds `[start, end)`. Fails if `start > end`.
    pub fn new(start: Timestamp, end: Timestamp) -> Result<Interval, Error> {
        if start > end {
            return Err(Error::InvalidInterval { start, end });
        }
        Ok(Interval { start, end })
    }

    /// Convenience constructor from raw ticks.
    pub fn from_ticks(start: i64, end: i64) -> Result<Interval, Error> {
        Interval::new(Timestamp(start), Timestamp(end))
    }

    pub fn start(self) -> Timestamp {
        self.start
    }

    pub fn end(self) -> Timestamp {
        self.end
    }

    pub fn is_empty(self) -> bool {
        self.start == self.end
    }

    /// `true` if `t` lies inside the interval.
    pub fn contains(self, t: Timestamp) -> bool {
        self.start <= t && t < self.end
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.start, self.end)
    }
}

/// A reservation event: at `time`, the reserved total changes by `delta`.
///
/// A reservation of `B` over `[t0, t1)` is stored as the pair
/// `(t0, +B), (t1, -B)`; freeing is the mirrored pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReservationEvent {
    pub time: Timestamp,
    pub delta: Bandwidth,
}

impl ReservationEvent {
    pub fn new(time: Timestamp, delta: Bandwidth) -> Self {
        ReservationEvent { time, delta }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_rejects_reversed_endpoints() {
        assert!(Interval::from_ticks(10, 1).is_err());
        assert!(Interval::from_ticks(1, 10).is_ok());
    }

    #[test]
    fn empty_interval_contains_nothing() {
        let iv = Interval::from_ticks(7, 7).unwrap();
        assert!(iv.is_empty());
        assert!(!iv.contains(Timestamp(7)));
    }

    #[test]
    fn interval_is_half_open() {
        let iv = Interval::from_ticks(1, 10).unwrap();
        assert!(iv.contains(Timestamp(1)));
        assert!(iv.contains(Timestamp(9)));
        assert!(!iv.contains(Timestamp(10)));
    }

    #[test]
    fn bandwidth_overflow_is_an_error() {
        assert!(Bandwidth(i64::MAX).checked_add(Bandwidth(1)).is_err());
        assert!(Bandwidth(i64::MIN).checked_neg().is_err());
        assert_eq!(
            Bandwidth(3).checked_add(Bandwidth(4)).unwrap(),
            Bandwidth(7)
        );
    }
}
