//! Brute-force reference ledger.
//!
//! Keeps reservation events as a plain sorted vector and answers every query
//! by scanning prefix sums. Everything here is deliberately linear-time so
//! that its correctness can be checked by reading it; the fast tree is tested
//! by comparing its answers against this module on randomized workloads.

use crate::error::Error;
use crate::types::{Bandwidth, Interval, Timestamp};

/// Reference implementation of the reservation ledger.
///
/// `reserved(t)` is the sum of all event deltas at times `<= t`; queries
/// evaluate that step function directly.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleLedger {
    /// Events in strictly increasing time order; no zero deltas are kept.
    events: Vec<(Timestamp, Bandwidth)>,
}

impl OracleLedger {
    pub fn new() -> Self {
        OracleLedger::default()
    }

    pub fn event_count(&self) -> usize {
        self.events.len()
    }

    pub fn events(&self) -> &[(Timestamp, Bandwidth)] {
        &self.events
    }

    /// Adds a single event, merging with an existing event at the same time
    /// and dropping the entry if the merged delta is zero.
    pub fn add_event(&mut self, time: Timestamp, delta: Bandwidth) -> Result<(), Error> {
        if delta.is_zero() {
            return Ok(());
        }
        match self.events.binary_search_by_key(&time, |e| e.0) {
            Ok(i) => {
                let merged = self.events[i].1.checked_add(delta)?;
                if merged.is_zero() {
                    self.events.remove(i);
                } else {
                    self.events[i].1 = merged;
                }
            }
            Err(i) => self.events.insert(i, (time, delta)),
        }
        Ok(())
    }

    pub fn reserve(&mut self, bandwidth: Bandwidth, interval: Interval) -> Result<(), Error> {
        if !bandwidth.is_positive() {
            return Err(Error::NonPositiveBandwidth);
        }
        self.apply_pair(bandwidth, interval)
    }

    pub fn free(&mut self, bandwidth: Bandwidth, interval: Interval) -> Result<(), Error> {
        if !bandwidth.is_positive() {
            return Err(Error::NonPositiveBandwidth);
        }
        self.apply_pair(bandwidth.checked_neg()?, interval)
    }

    fn apply_pair(&mut self, delta: Bandwidth, interval: Interval) -> Result<(), Error> {
        if interval.is_empty() {
            return Ok(());
        }
        self.add_event(interval.start(), delta)?;
        self.add_event(interval.end(), delta.checked_neg()?)
    }

    /// Total reserved bandwidth at time `t`: the sum of all deltas with
    /// event time `<= t`. Zero before the first event.
    pub fn reserved_at(&self, t: Timestamp) -> Result<Bandwidth, Error> {
        let mut total = Bandwidth::ZERO;
        for &(time, delta) in &self.events {
            if time > t {
                break;
            }
            total = total.checked_add(delta)?;
        }
        Ok(total)
    }

    pub fn max_reserved(&self, query: Interval) -> Result<Bandwidth, Error> {
        self.extreme(query, |a, b| a.max(b))
    }

    pub fn min_reserved(&self, query: Interval) -> Result<Bandwidth, Error> {
        self.extreme(query, |a, b| a.min(b))
    }

    /// Admission check mirroring `Ledger::admit`: reserves and reports `true`
    /// iff the peak over `interval` plus `bandwidth` stays within `capacity`.
    pub fn admit(
        &mut self,
        bandwidth: Bandwidth,
        interval: Interval,
        capacity: Bandwidth,
    ) -> Result<bool, Error> {
        if !bandwidth.is_positive() {
            return Err(Error::NonPositiveBandwidth);
        }
        if capacity < Bandwidth::ZERO {
            return Err(Error::NegativeCapacity);
        }
        let peak = if interval.is_empty() {
            Bandwidth::ZERO
        } else {
            self.max_reserved(interval)?
        };
        if peak.checked_add(bandwidth)? > capacity {
            return Ok(false);
        }
        self.apply_pair(bandwidth, interval)?;
        Ok(true)
    }

    /// Extreme of the reserved-bandwidth step function over `query`.
    ///
    /// The function only changes at event times, so the candidates are the
    /// value at `query.start` plus the value at every event time strictly
    /// inside the interval.
    fn extreme(
        &self,
        query: Interval,
        pick: fn(Bandwidth, Bandwidth) -> Bandwidth,
    ) -> Result<Bandwidth, Error> {
        if query.is_empty() {
            return Err(Error::EmptyQueryInterval);
        }
        let mut best = self.reserved_at(query.start())?;
        for &(time, _) in &self.events {
            if time >= query.end() {
                break;
            }
            if time > query.start() {
                best = pick(best, self.reserved_at(time)?);
            }
        }
        Ok(best)
    }
}
