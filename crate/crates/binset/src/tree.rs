//! The balanced binary segment tree over reservation events.
//!
//! Leaves are reservation events in time order; internal nodes carry range
//! aggregates (total change, max/min reached level) in their subtree's local
//! value system. Insertion, cancellation and range extreme queries all run in
//! O(log n) worst case, with the tree kept height-balanced by single and
//! double rotations that repair the aggregates as they restructure.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::Error;
use crate::node::{rebalance, Node};
use crate::types::{Bandwidth, Interval, Timestamp};
use crate::validate::{self, ValidationReport};

/// Any intermediate sum formed while updating or querying the tree is
/// bounded in magnitude by the sum of the magnitudes of all stored event
/// deltas (every aggregate is a sum over a contiguous run of events, and
/// every mixed term `delta_l + mu_r` telescopes into such a run). As long as
/// that total stays `<= i64::MAX`, no checked addition anywhere in the tree
/// can fail, so mutations may run in place. Beyond it, mutations run on a
/// copy first so that a genuine overflow leaves the original untouched.
const IN_PLACE_BOUND: u128 = i64::MAX as u128;

/// What happened to the leaf targeted by an event insertion.
#[derive(Debug, Clone, Copy)]
enum LeafChange {
    Inserted,
    Merged { old: Bandwidth, new: Bandwidth },
    Removed { old: Bandwidth },
}

/// Reservation-event tree supporting max/min reserved-level range queries.
///
/// The tree is not internally synchronized: mutation needs exclusive access,
/// while `&self` queries may run concurrently with each other.
#[derive(Debug)]
pub struct BinSet {
    root: Option<Box<Node>>,
    first: Option<Timestamp>,
    last: Option<Timestamp>,
    event_count: usize,
    /// Sum of `|value|` over all leaves; drives the in-place/copy decision.
    abs_sum: u128,
    /// Instrumentation: nodes touched by updates and queries, plus one per
    /// rotation. Relaxed counting; not part of the data structure proper.
    visits: AtomicU64,
}

impl Default for BinSet {
    fn default() -> Self {
        BinSet::new()
    }
}

impl Clone for BinSet {
    fn clone(&self) -> Self {
        BinSet {
            root: self.root.clone(),
            first: self.first,
            last: self.last,
            event_count: self.event_count,
            abs_sum: self.abs_sum,
            visits: AtomicU64::new(self.visits.load(Ordering::Relaxed)),
        }
    }
}

impl BinSet {
    pub fn new() -> Self {
        BinSet {
            root: None,
            first: None,
            last: None,
            event_count: 0,
            abs_sum: 0,
            visits: AtomicU64::new(0),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.root.is_none()
    }

    /// Number of stored reservation events (= leaves).
    pub fn event_count(&self) -> usize {
        self.event_count
    }

    /// Total node count; one internal node fewer than there are leaves.
    pub fn node_count(&self) -> usize {
        if self.event_count == 0 {
            0
        } else {
            2 * self.event_count - 1
        }
    }

    pub fn height(&self) -> u32 {
        self.root.as_ref().map_or(0, |n| u32::from(n.height()))
    }

    /// Time of the earliest stored event.
    pub fn first_time(&self) -> Option<Timestamp> {
        self.first
    }

    /// Time of the latest stored event.
    pub fn last_time(&self) -> Option<Timestamp> {
        self.last
    }

    /// Net change over all events; zero for trees fed only balanced
    /// reserve/free pairs.
    pub fn total_delta(&self) -> Bandwidth {
        self.root.as_ref().map_or(Bandwidth::ZERO, |n| n.delta())
    }

    /// Nodes touched so far by updates and queries.
    pub fn visits(&self) -> u64 {
        self.visits.load(Ordering::Relaxed)
    }

    pub fn reset_visits(&self) {
        self.visits.store(0, Ordering::Relaxed);
    }

    /// All events in ascending time order.
    pub fn events(&self) -> Vec<(Timestamp, Bandwidth)> {
        fn walk(node: &Node, out: &mut Vec<(Timestamp, Bandwidth)>) {
            match node {
                Node::Leaf { time, value } => out.push((*time, *value)),
                Node::Internal { left, right, .. } => {
                    walk(left, out);
                    walk(right, out);
                }
            }
        }
        let mut out = Vec::with_capacity(self.event_count);
        if let Some(root) = &self.root {
            walk(root, &mut out);
        }
        out
    }

    /// Adds a reservation event: the reserved level changes by `delta` from
    /// `time` onward.
    ///
    /// A zero delta is a no-op. An event at an already-present time merges
    /// into that leaf; a merge that reaches zero removes the leaf again. On
    /// overflow the tree is left exactly as it was.
    pub fn add_event(&mut self, time: Timestamp, delta: Bandwidth) -> Result<(), Error> {
        if delta.is_zero() {
            return Ok(());
        }
        if self.root.is_none() {
            self.root = Some(Node::leaf(time, delta));
            self.first = Some(time);
            self.last = Some(time);
            self.event_count = 1;
            self.abs_sum = u128::from(delta.magnitude());
            self.visits.fetch_add(1, Ordering::Relaxed);
            return Ok(());
        }
        if self.abs_sum + u128::from(delta.magnitude()) <= IN_PLACE_BOUND {
            let result = self.apply(time, delta);
            debug_assert!(result.is_ok(), "in-place bound violated");
            result
        } else {
            let mut probe = self.clone();
            probe.apply(time, delta)?;
            *self = probe;
            Ok(())
        }
    }

    /// Applies several events as one atomic step: either all land or, on
    /// overflow, none do.
    pub fn add_events(&mut self, events: &[(Timestamp, Bandwidth)]) -> Result<(), Error> {
        let need: u128 = events
            .iter()
            .map(|&(_, d)| u128::from(d.magnitude()))
            .sum();
        if self.abs_sum + need <= IN_PLACE_BOUND {
            for &(t, d) in events {
                self.add_event(t, d)?;
            }
            Ok(())
        } else {
            let mut probe = self.clone();
            for &(t, d) in events {
                probe.add_event(t, d)?;
            }
            *self = probe;
            Ok(())
        }
    }

    fn apply(&mut self, time: Timestamp, delta: Bandwidth) -> Result<(), Error> {
        let root = self.root.take().expect("apply on non-empty tree");
        let first = self.first.expect("span present");
        let last = self.last.expect("span present");
        let mut change = None;
        let mut visits = 0;
        let outcome = add_rec(root, first, time, delta, &mut change, &mut visits);
        self.visits.fetch_add(visits, Ordering::Relaxed);
        let (new_root, new_min) = outcome?;
        self.root = new_root;
        match change.expect("leaf change recorded") {
            LeafChange::Inserted => {
                self.event_count += 1;
                self.abs_sum += u128::from(delta.magnitude());
                if time < first {
                    self.first = Some(time);
                }
                if time > last {
                    self.last = Some(time);
                }
            }
            LeafChange::Merged { old, new } => {
                self.abs_sum -= u128::from(old.magnitude());
                self.abs_sum += u128::from(new.magnitude());
            }
            LeafChange::Removed { old } => {
                self.event_count -= 1;
                self.abs_sum -= u128::from(old.magnitude());
                if self.event_count == 0 {
                    self.first = None;
                    self.last = None;
                } else {
                    if time == first {
                        self.first = new_min;
                    }
                    if time == last {
                        self.last = Some(self.rightmost_time());
                    }
                }
            }
        }
        Ok(())
    }

    fn rightmost_time(&self) -> Timestamp {
        let mut node = self.root.as_deref().expect("non-empty");
        let mut visits = 0;
        loop {
            visits += 1;
            match node {
                Node::Leaf { time, .. } => {
                    self.visits.fetch_add(visits, Ordering::Relaxed);
                    return *time;
                }
                Node::Internal { right, .. } => node = right,
            }
        }
    }

    /// Maximum reserved level over `query`, relative to the level just
    /// before the first stored event.
    ///
    /// Requires a non-empty tree and `query.start >= first_time()`; callers
    /// wanting zero-baseline semantics outside the event span should go
    /// through the ledger, which clamps and folds for them. A `query.end`
    /// beyond the last event is fine: the level is constant out there.
    pub fn max_reserved(&self, query: Interval) -> Result<Bandwidth, Error> {
        self.extreme(query, Extreme::Max)
    }

    /// Minimum counterpart of [`BinSet::max_reserved`].
    pub fn min_reserved(&self, query: Interval) -> Result<Bandwidth, Error> {
        self.extreme(query, Extreme::Min)
    }

    fn extreme(&self, query: Interval, which: Extreme) -> Result<Bandwidth, Error> {
        if query.is_empty() {
            return Err(Error::EmptyQueryInterval);
        }
        let root = self.root.as_deref().ok_or(Error::EmptyTree)?;
        let first = self.first.expect("span present");
        let mut visits = 0;
        let result = query_rec(
            root,
            first,
            None,
            query.start(),
            query.end(),
            which,
            &mut visits,
        );
        self.visits.fetch_add(visits, Ordering::Relaxed);
        result
    }

    /// Checks every structural invariant and reports all violations found.
    /// An empty report means the tree is sound.
    pub fn validate(&self) -> ValidationReport {
        validate::check_tree(
            self.root.as_deref(),
            self.first,
            self.last,
            self.event_count,
            self.abs_sum,
        )
    }

    #[cfg(test)]
    pub(crate) fn root_mut(&mut self) -> Option<&mut Node> {
        self.root.as_deref_mut()
    }
}

#[derive(Debug, Clone, Copy)]
enum Extreme {
    Max,
    Min,
}

impl Extreme {
    fn pick(self, a: Bandwidth, b: Bandwidth) -> Bandwidth {
        match self {
            Extreme::Max => a.max(b),
            Extreme::Min => a.min(b),
        }
    }

    fn mu(self, node: &Node) -> Bandwidth {
        match self {
            Extreme::Max => node.mu_max(),
            Extreme::Min => node.mu_min(),
        }
    }
}

/// Recursive event insertion.
///
/// `subtree_min` is the earliest event time under `node` (known by the
/// caller without looking: it is the enclosing split for a right child and
/// the inherited value for a left child). Returns the rebuilt subtree, or
/// `None` when the whole subtree cancelled away, together with the earliest
/// event time of what remains. Threading that minimum upward is what keeps
/// each split equal to the left-most event of its right subtree when a
/// cancellation removes exactly that event.
fn add_rec(
    node: Box<Node>,
    subtree_min: Timestamp,
    time: Timestamp,
    delta: Bandwidth,
    change: &mut Option<LeafChange>,
    visits: &mut u64,
) -> Result<(Option<Box<Node>>, Option<Timestamp>), Error> {
    *visits += 1;
    match *node {
        Node::Leaf {
            time: leaf_time,
            value,
        } => {
            if time == leaf_time {
                let merged = value.checked_add(delta)?;
                if merged.is_zero() {
                    *change = Some(LeafChange::Removed { old: value });
                    Ok((None, None))
                } else {
                    *change = Some(LeafChange::Merged { old: value, new: merged });
                    Ok((Some(Node::leaf(leaf_time, merged)), Some(leaf_time)))
                }
            } else {
                // Fresh time: the leaf splits into an internal node over the
                // old and the new event, ordered by time.
                *change = Some(LeafChange::Inserted);
                let old_leaf = Node::leaf(leaf_time, value);
                let new_leaf = Node::leaf(time, delta);
                let (left, right, split) = if leaf_time < time {
                    (old_leaf, new_leaf, time)
                } else {
                    (new_leaf, old_leaf, leaf_time)
                };
                let parent = Node::internal(split, left, right)?;
                Ok((Some(parent), Some(time.min(leaf_time))))
            }
        }
        Node::Internal {
            split, left, right, ..
        } => {
            if time < split {
                let (new_left, left_min) =
                    add_rec(left, subtree_min, time, delta, change, visits)?;
                match new_left {
                    // The left child was a leaf and cancelled away: splice in
                    // the right subtree. It is internally consistent, so no
                    // rebalancing happens here; ancestors handle any height
                    // change on the way up.
                    None => Ok((Some(right), Some(split))),
                    Some(l) => {
                        let rebuilt = Node::internal(split, l, right)?;
                        let rebuilt = rebalance(rebuilt, visits)?;
                        Ok((Some(rebuilt), left_min))
                    }
                }
            } else {
                let (new_right, right_min) = add_rec(right, split, time, delta, change, visits)?;
                match new_right {
                    None => Ok((Some(left), Some(subtree_min))),
                    Some(r) => {
                        // If the cancellation removed the right subtree's
                        // left-most event, the split moves up to the next one.
                        let split = right_min.expect("non-empty right subtree");
                        let rebuilt = Node::internal(split, left, r)?;
                        let rebuilt = rebalance(rebuilt, visits)?;
                        Ok((Some(rebuilt), Some(subtree_min)))
                    }
                }
            }
        }
    }
}

/// Recursive range-extreme query over `[qs, qe)`.
///
/// `lo`/`hi` bound the span `node` covers; `hi` is `None` at the root, whose
/// coverage extends past the last event (the level is constant there). The
/// whole-interval case answers from the stored aggregate; a leaf answers
/// with its value, which holds across its entire covered span because that
/// span starts at the leaf's own event.
fn query_rec(
    node: &Node,
    lo: Timestamp,
    hi: Option<Timestamp>,
    qs: Timestamp,
    qe: Timestamp,
    which: Extreme,
    visits: &mut u64,
) -> Result<Bandwidth, Error> {
    *visits += 1;
    match node {
        Node::Leaf { value, .. } => Ok(*value),
        Node::Internal {
            split, left, right, ..
        } => {
            if qs == lo && Some(qe) == hi {
                return Ok(which.mu(node));
            }
            if qe <= *split {
                query_rec(left, lo, Some(*split), qs, qe, which, visits)
            } else if *split <= qs {
                let sub = query_rec(right, *split, hi, qs, qe, which, visits)?;
                left.delta().checked_add(sub)
            } else {
                let l = query_rec(left, lo, Some(*split), qs, *split, which, visits)?;
                let r = query_rec(right, *split, hi, *split, qe, which, visits)?;
                Ok(which.pick(l, left.delta().checked_add(r)?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::node::Agg;
    use crate::oracle::OracleLedger;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn iv(start: i64, end: i64) -> Interval {
        Interval::from_ticks(start, end).unwrap()
    }

    fn tree_with(events: &[(i64, i64)]) -> BinSet {
        let mut t = BinSet::new();
        for &(time, delta) in events {
            t.add_event(Timestamp(time), Bandwidth(delta)).unwrap();
        }
        t
    }

    fn assert_valid(t: &BinSet) {
        let report = t.validate();
        assert!(report.is_ok(), "invariant violations: {report}");
    }

    #[test]
    fn first_insertion_builds_a_single_leaf() {
        let t = tree_with(&[(5, 3)]);
        assert_eq!(t.event_count(), 1);
        assert_eq!(t.node_count(), 1);
        assert_eq!(t.first_time(), Some(Timestamp(5)));
        assert_eq!(t.last_time(), Some(Timestamp(5)));
        assert_eq!(t.max_reserved(iv(5, 6)).unwrap(), Bandwidth(3));
        assert_valid(&t);
    }

    #[test]
    fn cancelling_the_only_event_empties_the_tree() {
        let t = tree_with(&[(5, 3), (5, -3)]);
        assert!(t.is_empty());
        assert_eq!(t.event_count(), 0);
        assert_eq!(t.first_time(), None);
        assert_valid(&t);
    }

    #[test]
    fn zero_delta_is_a_no_op() {
        let mut t = tree_with(&[(5, 3)]);
        t.add_event(Timestamp(9), Bandwidth(0)).unwrap();
        assert_eq!(t.event_count(), 1);
    }

    #[test]
    fn three_event_queries_match_hand_computed_prefixes() {
        // prefix sums 3, 7, 0
        let t = tree_with(&[(1, 3), (5, 4), (10, -7)]);
        assert_eq!(t.max_reserved(iv(1, 16)).unwrap(), Bandwidth(7));
        assert_eq!(t.max_reserved(iv(3, 7)).unwrap(), Bandwidth(7));
        assert_eq!(t.min_reserved(iv(1, 16)).unwrap(), Bandwidth(0));
        assert_valid(&t);
    }

    #[test]
    fn half_open_end_excludes_the_final_event() {
        let t = tree_with(&[(1, 5), (10, -5)]);
        assert_eq!(t.max_reserved(iv(1, 10)).unwrap(), Bandwidth(5));
        assert_eq!(t.min_reserved(iv(1, 10)).unwrap(), Bandwidth(5));
        assert_eq!(t.max_reserved(iv(10, 20)).unwrap(), Bandwidth(0));
    }

    #[test]
    fn negative_dip_visible_to_min() {
        let t = tree_with(&[(1, 3), (5, -4)]);
        assert_eq!(t.min_reserved(iv(1, 10)).unwrap(), Bandwidth(-1));
    }

    #[test]
    fn all_insertion_orders_agree_with_the_oracle() {
        let events = [(1i64, 3i64), (5, 4), (10, -7)];
        let orders = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let mut oracle = OracleLedger::new();
        for &(t, d) in &events {
            oracle.add_event(Timestamp(t), Bandwidth(d)).unwrap();
        }
        let mut rng = StdRng::seed_from_u64(7);
        let queries: Vec<Interval> = (0..50)
            .map(|_| {
                let a = rng.gen_range(-2..14);
                let b = rng.gen_range(a + 1..16);
                iv(a, b)
            })
            .collect();
        for order in orders {
            let mut t = BinSet::new();
            for &i in &order {
                t.add_event(Timestamp(events[i].0), Bandwidth(events[i].1))
                    .unwrap();
            }
            assert_valid(&t);
            for &q in &queries {
                if q.start() < Timestamp(1) {
                    continue; // tree-level queries assume a clamped start
                }
                assert_eq!(t.max_reserved(q), oracle.max_reserved(q), "max {q}");
                assert_eq!(t.min_reserved(q), oracle.min_reserved(q), "min {q}");
            }
        }
    }

    #[test]
    fn ascending_run_triggers_single_rotations_and_stays_valid() {
        let mut t = BinSet::new();
        for i in 0..64 {
            t.add_event(Timestamp(i), Bandwidth(if i % 2 == 0 { 2 } else { -1 }))
                .unwrap();
            assert_valid(&t);
        }
        assert_eq!(t.event_count(), 64);
        assert!(t.height() <= 10);
    }

    #[test]
    fn zigzag_insertion_triggers_double_rotations_and_stays_valid() {
        let mut t = BinSet::new();
        for &time in &[1, 2, 4, 3, 8, 6, 7, 5, 16, 12, 14, 13, 9, 11, 10, 15] {
            t.add_event(Timestamp(time), Bandwidth(time)).unwrap();
            assert_valid(&t);
        }
        assert_eq!(t.event_count(), 16);
    }

    #[test]
    fn cancelling_a_split_boundary_event_repairs_the_split() {
        // Three events; cancelling the middle one used to be the stale-split
        // case: the root split must move to the next event.
        let mut t = tree_with(&[(1, 3), (5, 4), (10, -7)]);
        t.add_event(Timestamp(5), Bandwidth(-4)).unwrap();
        assert_valid(&t);
        assert_eq!(t.event_count(), 2);
        // reserved level is 3 on [1, 10), then -4
        assert_eq!(t.max_reserved(iv(5, 8)).unwrap(), Bandwidth(3));
        assert_eq!(t.min_reserved(iv(5, 12)).unwrap(), Bandwidth(-4));
    }

    #[test]
    fn cancelling_first_and_last_events_updates_the_span() {
        let mut t = tree_with(&[(1, 3), (5, 4), (10, -7)]);
        t.add_event(Timestamp(1), Bandwidth(-3)).unwrap();
        assert_eq!(t.first_time(), Some(Timestamp(5)));
        t.add_event(Timestamp(10), Bandwidth(7)).unwrap();
        assert_eq!(t.last_time(), Some(Timestamp(5)));
        assert_valid(&t);
    }

    #[test]
    fn random_cancellation_storm_stays_valid() {
        let mut t = BinSet::new();
        let mut oracle = OracleLedger::new();
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..4000 {
            let time = Timestamp(rng.gen_range(0..48));
            let delta = Bandwidth(rng.gen_range(-6..=6));
            t.add_event(time, delta).unwrap();
            oracle.add_event(time, delta).unwrap();
            assert_eq!(t.events(), oracle.events());
        }
        assert_valid(&t);
        for _ in 0..500 {
            let a = rng.gen_range(0..47);
            let b = rng.gen_range(a + 1..48);
            let q = iv(a, b);
            if oracle.event_count() == 0 {
                break;
            }
            let first = oracle.events()[0].0;
            if q.start() < first {
                continue;
            }
            assert_eq!(t.max_reserved(q), oracle.max_reserved(q));
            assert_eq!(t.min_reserved(q), oracle.min_reserved(q));
        }
    }

    #[test]
    fn overflow_during_merge_leaves_tree_unchanged() {
        let mut t = tree_with(&[(1, i64::MAX)]);
        let err = t.add_event(Timestamp(1), Bandwidth(1)).unwrap_err();
        assert_eq!(err, Error::Overflow);
        assert_eq!(t.event_count(), 1);
        assert_eq!(t.max_reserved(iv(1, 2)).unwrap(), Bandwidth(i64::MAX));
        assert_valid(&t);
    }

    #[test]
    fn overflow_during_aggregate_update_leaves_tree_unchanged() {
        let mut t = tree_with(&[(1, i64::MAX)]);
        // Fresh leaf is fine; the parent's delta would overflow.
        let err = t.add_event(Timestamp(2), Bandwidth(i64::MAX)).unwrap_err();
        assert_eq!(err, Error::Overflow);
        assert_eq!(t.event_count(), 1);
        assert_eq!(t.events(), vec![(Timestamp(1), Bandwidth(i64::MAX))]);
        assert_valid(&t);
    }

    #[test]
    fn huge_values_still_work_when_sums_stay_in_range() {
        let big = i64::MAX / 2 + 1; // two of these exceed the in-place bound
        let mut t = BinSet::new();
        t.add_event(Timestamp(1), Bandwidth(big)).unwrap();
        t.add_event(Timestamp(5), Bandwidth(-big)).unwrap();
        t.add_event(Timestamp(3), Bandwidth(7)).unwrap();
        assert_valid(&t);
        assert_eq!(t.max_reserved(iv(1, 10)).unwrap(), Bandwidth(big + 7));
        assert_eq!(t.min_reserved(iv(1, 10)).unwrap(), Bandwidth(7));
    }

    #[test]
    fn atomic_batch_rolls_back_cleanly() {
        let mut t = tree_with(&[(1, 5)]);
        let err = t
            .add_events(&[
                (Timestamp(3), Bandwidth(2)),
                (Timestamp(4), Bandwidth(i64::MAX)),
            ])
            .unwrap_err();
        assert_eq!(err, Error::Overflow);
        assert_eq!(t.events(), vec![(Timestamp(1), Bandwidth(5))]);
    }

    #[test]
    fn empty_tree_query_errors() {
        let t = BinSet::new();
        assert_eq!(t.max_reserved(iv(1, 2)), Err(Error::EmptyTree));
    }

    #[test]
    fn empty_query_interval_errors() {
        let t = tree_with(&[(1, 5)]);
        assert_eq!(
            t.max_reserved(Interval::from_ticks(3, 3).unwrap()),
            Err(Error::EmptyQueryInterval)
        );
    }

    #[test]
    fn validate_flags_a_corrupted_aggregate() {
        let mut t = tree_with(&[(1, 3), (5, 4), (10, -7)]);
        if let Some(Node::Internal { agg, .. }) = t.root_mut() {
            *agg = Agg {
                delta: agg.delta,
                mu_max: Bandwidth(999),
                mu_min: agg.mu_min,
            };
        } else {
            panic!("expected internal root");
        }
        let report = t.validate();
        assert!(!report.is_ok());
        assert!(report.to_string().contains("mu_max"));
    }

    #[test]
    fn visit_count_per_add_is_linear_in_height() {
        let mut t = BinSet::new();
        let mut rng = StdRng::seed_from_u64(9);
        for i in 0..2000 {
            let before = t.visits();
            let h_before = t.height();
            let time = Timestamp(rng.gen_range(0..512));
            let delta = Bandwidth(rng.gen_range(-4..=4));
            t.add_event(time, delta).unwrap();
            let spent = t.visits() - before;
            let h = t.height().max(h_before);
            assert!(
                spent <= 4 * (u64::from(h) + 1),
                "op {i}: {spent} visits at height {h}"
            );
        }
    }

    #[test]
    fn tree_is_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<BinSet>();
    }
}
