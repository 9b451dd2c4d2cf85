//! Structural invariant checking.
//!
//! `check_tree` recomputes every aggregate from the leaves up, independently
//! of the incremental maintenance done by mutations, and reports everything
//! that disagrees: stale aggregates or heights, balance violations, split
//! times that are not the left-most event of their right subtree, zero
//! leaves, and wrong tree-level bookkeeping. Arithmetic here runs in i128 so
//! the checker stays total even on corrupted trees.

use std::fmt;

use crate::node::Node;
use crate::types::Timestamp;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    /// Leaf stores a zero delta; such leaves must be deleted, not kept.
    ZeroLeaf,
    DeltaMismatch { stored: i64, computed: i128 },
    MuMaxMismatch { stored: i64, computed: i128 },
    MuMinMismatch { stored: i64, computed: i128 },
    StaleHeight { stored: u8, computed: u32 },
    Imbalance { left: u32, right: u32 },
    /// Split is not the left-most event time of the right subtree.
    SplitMismatch { stored: Timestamp, right_min: Timestamp },
    /// Some event in the left subtree is not strictly before the split.
    UnorderedSplit { left_max: Timestamp, split: Timestamp },
    WrongFirst { stored: Option<Timestamp>, actual: Option<Timestamp> },
    WrongLast { stored: Option<Timestamp>, actual: Option<Timestamp> },
    WrongEventCount { stored: usize, actual: usize },
    /// Internal magnitude tally out of sync with the leaves.
    WrongMagnitudeSum { stored: u128, actual: u128 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Root-relative position, e.g. `root.left.right`.
    pub path: String,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ViolationKind::*;
        write!(f, "{}: ", self.path)?;
        match &self.kind {
            ZeroLeaf => write!(f, "leaf stores zero delta"),
            DeltaMismatch { stored, computed } => {
                write!(f, "delta {stored} != recomputed {computed}")
            }
            MuMaxMismatch { stored, computed } => {
                write!(f, "mu_max {stored} != recomputed {computed}")
            }
            MuMinMismatch { stored, computed } => {
                write!(f, "mu_min {stored} != recomputed {computed}")
            }
            StaleHeight { stored, computed } => {
                write!(f, "height {stored} != recomputed {computed}")
            }
            Imbalance { left, right } => {
                write!(f, "child heights {left} and {right} differ by more than one")
            }
            SplitMismatch { stored, right_min } => {
                write!(f, "split {stored} != right subtree minimum {right_min}")
            }
            UnorderedSplit { left_max, split } => {
                write!(f, "left subtree reaches {left_max}, not before split {split}")
            }
            WrongFirst { stored, actual } => {
                write!(f, "first_time {stored:?} != actual {actual:?}")
            }
            WrongLast { stored, actual } => {
                write!(f, "last_time {stored:?} != actual {actual:?}")
            }
            WrongEventCount { stored, actual } => {
                write!(f, "event_count {stored} != actual {actual}")
            }
            WrongMagnitudeSum { stored, actual } => {
                write!(f, "magnitude sum {stored} != actual {actual}")
            }
        }
    }
}

/// Outcome of a full invariant sweep. Empty means sound.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Everything recomputed about a subtree, independent of stored fields.
struct Summary {
    min_time: Timestamp,
    max_time: Timestamp,
    delta: i128,
    mu_max: i128,
    mu_min: i128,
    height: u32,
    leaves: usize,
    magnitude: u128,
}

struct Checker {
    path: Vec<&'static str>,
    violations: Vec<Violation>,
}

impl Checker {
    fn report(&mut self, kind: ViolationKind) {
        let mut path = String::from("root");
        for seg in &self.path {
            path.push('.');
            path.push_str(seg);
        }
        self.violations.push(Violation { path, kind });
    }

    fn walk(&mut self, node: &Node) -> Summary {
        match node {
            Node::Leaf { time, value } => {
                if value.is_zero() {
                    self.report(ViolationKind::ZeroLeaf);
                }
                Summary {
                    min_time: *time,
                    max_time: *time,
                    delta: i128::from(value.units()),
                    mu_max: i128::from(value.units()),
                    mu_min: i128::from(value.units()),
                    height: 1,
                    leaves: 1,
                    magnitude: u128::from(value.magnitude()),
                }
            }
            Node::Internal {
                split,
                height,
                agg,
                left,
                right,
            } => {
                self.path.push("left");
                let l = self.walk(left);
                self.path.pop();
                self.path.push("right");
                let r = self.walk(right);
                self.path.pop();

                let delta = l.delta + r.delta;
                let mu_max = l.mu_max.max(l.delta + r.mu_max);
                let mu_min = l.mu_min.min(l.delta + r.mu_min);
                if i128::from(agg.delta.units()) != delta {
                    self.report(ViolationKind::DeltaMismatch {
                        stored: agg.delta.units(),
                        computed: delta,
                    });
                }
                if i128::from(agg.mu_max.units()) != mu_max {
                    self.report(ViolationKind::MuMaxMismatch {
                        stored: agg.mu_max.units(),
                        computed: mu_max,
                    });
                }
                if i128::from(agg.mu_min.units()) != mu_min {
                    self.report(ViolationKind::MuMinMismatch {
                        stored: agg.mu_min.units(),
                        computed: mu_min,
                    });
                }

                let computed_height = 1 + l.height.max(r.height);
                if u32::from(*height) != computed_height {
                    self.report(ViolationKind::StaleHeight {
                        stored: *height,
                        computed: computed_height,
                    });
                }
                if l.height.abs_diff(r.height) > 1 {
                    self.report(ViolationKind::Imbalance {
                        left: l.height,
                        right: r.height,
                    });
                }

                if *split != r.min_time {
                    self.report(ViolationKind::SplitMismatch {
                        stored: *split,
                        right_min: r.min_time,
                    });
                }
                if l.max_time >= *split {
                    self.report(ViolationKind::UnorderedSplit {
                        left_max: l.max_time,
                        split: *split,
                    });
                }

                Summary {
                    min_time: l.min_time.min(r.min_time),
                    max_time: l.max_time.max(r.max_time),
                    delta,
                    mu_max,
                    mu_min,
                    height: computed_height,
                    leaves: l.leaves + r.leaves,
                    magnitude: l.magnitude + r.magnitude,
                }
            }
        }
    }
}

pub(crate) fn check_tree(
    root: Option<&Node>,
    first: Option<Timestamp>,
    last: Option<Timestamp>,
    event_count: usize,
    abs_sum: u128,
) -> ValidationReport {
    let mut checker = Checker {
        path: Vec::new(),
        violations: Vec::new(),
    };
    let summary = root.map(|node| checker.walk(node));

    let (actual_first, actual_last, actual_leaves, actual_magnitude) = match &summary {
        Some(s) => (Some(s.min_time), Some(s.max_time), s.leaves, s.magnitude),
        None => (None, None, 0, 0),
    };
    if first != actual_first {
        checker.report(ViolationKind::WrongFirst {
            stored: first,
            actual: actual_first,
        });
    }
    if last != actual_last {
        checker.report(ViolationKind::WrongLast {
            stored: last,
            actual: actual_last,
        });
    }
    if event_count != actual_leaves {
        checker.report(ViolationKind::WrongEventCount {
            stored: event_count,
            actual: actual_leaves,
        });
    }
    if abs_sum != actual_magnitude {
        checker.report(ViolationKind::WrongMagnitudeSum {
            stored: abs_sum,
            actual: actual_magnitude,
        });
    }

    ValidationReport {
        violations: checker.violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::BinSet;
    use crate::types::{Bandwidth, Timestamp};

    #[test]
    fn empty_tree_is_valid() {
        assert!(BinSet::new().validate().is_ok());
    }

    #[test]
    fn thousand_random_events_validate_clean() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(1234);
        let mut t = BinSet::new();
        for _ in 0..1000 {
            t.add_event(
                Timestamp(rng.gen_range(-5000..5000)),
                Bandwidth(rng.gen_range(-50..=50)),
            )
            .unwrap();
        }
        let report = t.validate();
        assert!(report.is_ok(), "{report}");
    }
}
