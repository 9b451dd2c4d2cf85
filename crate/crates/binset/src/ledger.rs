//! The reservation ledger: the public face of the library.
//!
//! A reservation of `B` over `[t0, t1)` becomes the event pair
//! `(t0, +B), (t1, -B)` in the tree; freeing adds the mirrored pair,
//! unconditionally — nothing stops the reserved level from going negative,
//! which matches the problem statement. Callers that want a capacity
//! enforced go through [`Ledger::admit`].
//!
//! Queries are answered against the zero baseline: before any event the
//! reserved level is 0, and that 0 competes in max/min for query portions
//! left of the first event. Query portions right of the last event see the
//! net total, which is always 0 for trees fed only balanced pairs.

use std::collections::HashMap;

use crate::error::Error;
use crate::tree::BinSet;
use crate::types::{Bandwidth, Interval, Timestamp};
use crate::validate::ValidationReport;

/// Opaque handle for a reservation made through this ledger. Ids are unique
/// for the ledger's lifetime and never reused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReservationId(pub u64);

impl std::fmt::Display for ReservationId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Bookkeeping for one live reservation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReservationRecord {
    pub id: ReservationId,
    pub bandwidth: Bandwidth,
    pub interval: Interval,
    pub label: Option<String>,
}

/// Structural counters reported by [`Ledger::stats`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LedgerStats {
    pub event_count: usize,
    pub node_count: usize,
    pub height: u32,
    pub record_count: usize,
}

/// Reservation ledger over the event tree plus a record dictionary.
#[derive(Debug, Clone, Default)]
pub struct Ledger {
    tree: BinSet,
    records: HashMap<u64, ReservationRecord>,
    next_id: u64,
}

impl Ledger {
    pub fn new() -> Self {
        Ledger {
            tree: BinSet::new(),
            records: HashMap::new(),
            next_id: 1,
        }
    }

    /// Reserves `bandwidth` over `interval` and returns the reservation's id.
    ///
    /// An empty interval is accepted as a no-op that still records and
    /// returns an id. Fails on non-positive bandwidth; on overflow nothing
    /// is applied.
    pub fn reserve(
        &mut self,
        bandwidth: Bandwidth,
        interval: Interval,
    ) -> Result<ReservationId, Error> {
        self.reserve_labeled(bandwidth, interval, None)
    }

    pub fn reserve_labeled(
        &mut self,
        bandwidth: Bandwidth,
        interval: Interval,
        label: Option<String>,
    ) -> Result<ReservationId, Error> {
        if !bandwidth.is_positive() {
            return Err(Error::NonPositiveBandwidth);
        }
        self.apply_pair(bandwidth, interval)?;
        let id = ReservationId(self.next_id);
        self.next_id += 1;
        self.records.insert(
            id.0,
            ReservationRecord {
                id,
                bandwidth,
                interval,
                label,
            },
        );
        Ok(id)
    }

    /// Frees `bandwidth` over `interval`, unconditionally. Freeing is just a
    /// negative reservation: no record is consulted and the level may dip
    /// below zero.
    pub fn free(&mut self, bandwidth: Bandwidth, interval: Interval) -> Result<(), Error> {
        if !bandwidth.is_positive() {
            return Err(Error::NonPositiveBandwidth);
        }
        self.apply_pair(bandwidth.checked_neg()?, interval)
    }

    /// Frees exactly the reservation `id` was issued for and drops its
    /// record.
    pub fn free_by_id(&mut self, id: ReservationId) -> Result<(), Error> {
        let record = self
            .records
            .get(&id.0)
            .ok_or(Error::UnknownReservation(id.0))?
            .clone();
        self.apply_pair(record.bandwidth.checked_neg()?, record.interval)?;
        self.records.remove(&id.0);
        Ok(())
    }

    fn apply_pair(&mut self, delta: Bandwidth, interval: Interval) -> Result<(), Error> {
        if interval.is_empty() {
            return Ok(());
        }
        self.tree.add_events(&[
            (interval.start(), delta),
            (interval.end(), delta.checked_neg()?),
        ])
    }

    /// Maximum reserved level over `query`, with 0 standing in for times
    /// before the first event. Empty ledger: 0.
    pub fn max_reserved(&self, query: Interval) -> Result<Bandwidth, Error> {
        self.extreme(query, true)
    }

    /// Minimum reserved level over `query`; mirror of
    /// [`Ledger::max_reserved`].
    pub fn min_reserved(&self, query: Interval) -> Result<Bandwidth, Error> {
        self.extreme(query, false)
    }

    fn extreme(&self, query: Interval, want_max: bool) -> Result<Bandwidth, Error> {
        if query.is_empty() {
            return Err(Error::EmptyQueryInterval);
        }
        let Some(first) = self.tree.first_time() else {
            return Ok(Bandwidth::ZERO);
        };
        if query.end() <= first {
            return Ok(Bandwidth::ZERO);
        }
        let clamped = Interval::new(query.start().max(first), query.end())
            .expect("clamped query stays ordered");
        let inner = if want_max {
            self.tree.max_reserved(clamped)?
        } else {
            self.tree.min_reserved(clamped)?
        };
        if query.start() < first {
            // The zero level before the first event competes.
            Ok(if want_max {
                inner.max(Bandwidth::ZERO)
            } else {
                inner.min(Bandwidth::ZERO)
            })
        } else {
            Ok(inner)
        }
    }

    /// Admission-controlled reserve: applies the reservation and returns its
    /// id iff the peak over `interval` would stay within `capacity`.
    /// Returns `None` (ledger unchanged) when the request does not fit.
    pub fn admit(
        &mut self,
        bandwidth: Bandwidth,
        interval: Interval,
        capacity: Bandwidth,
    ) -> Result<Option<ReservationId>, Error> {
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
            return Ok(None);
        }
        self.reserve(bandwidth, interval).map(Some)
    }

    pub fn stats(&self) -> LedgerStats {
        LedgerStats {
            event_count: self.tree.event_count(),
            node_count: self.tree.node_count(),
            height: self.tree.height(),
            record_count: self.records.len(),
        }
    }

    pub fn record(&self, id: ReservationId) -> Option<&ReservationRecord> {
        self.records.get(&id.0)
    }

    /// Records in ascending id order.
    pub fn records(&self) -> Vec<&ReservationRecord> {
        let mut out: Vec<_> = self.records.values().collect();
        out.sort_by_key(|r| r.id);
        out
    }

    pub fn events(&self) -> Vec<(Timestamp, Bandwidth)> {
        self.tree.events()
    }

    pub fn validate(&self) -> ValidationReport {
        self.tree.validate()
    }

    pub fn tree(&self) -> &BinSet {
        &self.tree
    }

    /// Rebuilds a ledger from snapshot contents: events in ascending order
    /// plus the surviving records. Used by the snapshot reader.
    pub(crate) fn from_parts(
        events: &[(Timestamp, Bandwidth)],
        records: Vec<ReservationRecord>,
    ) -> Result<Ledger, Error> {
        let mut ledger = Ledger::new();
        for &(time, delta) in events {
            ledger.tree.add_event(time, delta)?;
        }
        for record in records {
            ledger.next_id = ledger.next_id.max(record.id.0 + 1);
            ledger.records.insert(record.id.0, record);
        }
        Ok(ledger)
    }
}
