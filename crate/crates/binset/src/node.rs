//! Tree nodes and the structural operations on them.
//!
//! A node is either a leaf holding one reservation event or an internal node
//! with exactly two children; the "two or none" rule from the data-structure
//! definition is enforced by the enum itself. Every internal node stores the
//! aggregates of its subtree in the subtree's local value system (offset so
//! the reserved level just before its first event is zero):
//!
//! * `delta`  — total change of the reserved level across the subtree,
//! * `mu_max` — maximum reserved level reached inside the subtree,
//! * `mu_min` — minimum reserved level reached inside the subtree,
//! * `split`  — time of the left-most event in the right subtree; everything
//!   in the left subtree is strictly earlier.
//!
//! The aggregate laws are
//!
//! ```text
//! delta  = delta_l + delta_r
//! mu_max = max(mu_max_l, delta_l + mu_max_r)
//! mu_min = min(mu_min_l, delta_l + mu_min_r)
//! ```
//!
//! and rotations preserve them; the promoted node inherits the old subtree
//! root's aggregates and split times never change during a rotation.

use crate::error::Error;
use crate::types::{Bandwidth, Timestamp};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Agg {
    pub delta: Bandwidth,
    pub mu_max: Bandwidth,
    pub mu_min: Bandwidth,
}

impl Agg {
    /// Combines two child subtrees, left before right.
    pub fn combine(left: &Node, right: &Node) -> Result<Agg, Error> {
        let ld = left.delta();
        Ok(Agg {
            delta: ld.checked_add(right.delta())?,
            mu_max: left.mu_max().max(ld.checked_add(right.mu_max())?),
            mu_min: left.mu_min().min(ld.checked_add(right.mu_min())?),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Node {
    /// One reservation event. Its covered span starts at `time`, so the
    /// local reserved level equals `value` across the whole span.
    Leaf { time: Timestamp, value: Bandwidth },
    Internal {
        split: Timestamp,
        height: u8,
        agg: Agg,
        left: Box<Node>,
        right: Box<Node>,
    },
}

impl Node {
    pub fn leaf(time: Timestamp, value: Bandwidth) -> Box<Node> {
        Box::new(Node::Leaf { time, value })
    }

    /// Builds an internal node, deriving aggregates and height from the
    /// children. `split` must be the left-most event time under `right`.
    pub fn internal(
        split: Timestamp,
        left: Box<Node>,
        right: Box<Node>,
    ) -> Result<Box<Node>, Error> {
        let agg = Agg::combine(&left, &right)?;
        let height = 1 + left.height().max(right.height());
        Ok(Box::new(Node::Internal {
            split,
            height,
            agg,
            left,
            right,
        }))
    }

    pub fn height(&self) -> u8 {
        match self {
            Node::Leaf { .. } => 1,
            Node::Internal { height, .. } => *height,
        }
    }

    pub fn delta(&self) -> Bandwidth {
        match self {
            Node::Leaf { value, .. } => *value,
            Node::Internal { agg, .. } => agg.delta,
        }
    }

    pub fn mu_max(&self) -> Bandwidth {
        match self {
            Node::Leaf { value, .. } => *value,
            Node::Internal { agg, .. } => agg.mu_max,
        }
    }

    pub fn mu_min(&self) -> Bandwidth {
        match self {
            Node::Leaf { value, .. } => *value,
            Node::Internal { agg, .. } => agg.mu_min,
        }
    }

    fn balance(&self) -> i16 {
        match self {
            Node::Leaf { .. } => 0,
            Node::Internal { left, right, .. } => {
                i16::from(left.height()) - i16::from(right.height())
            }
        }
    }
}

fn expect_internal(node: Box<Node>) -> (Timestamp, Box<Node>, Box<Node>) {
    match *node {
        Node::Internal {
            split, left, right, ..
        } => (split, left, right),
        Node::Leaf { .. } => unreachable!("rotation target must be internal"),
    }
}

/// Single left rotation: `n(A, r(B, C))` becomes `r(n'(A, B), C)`.
///
/// The promoted node keeps the whole subtree's aggregates (they describe the
/// same event run), the demoted node is rebuilt from its new children, and
/// both keep their split times.
pub(crate) fn rotate_left(node: Box<Node>) -> Result<Box<Node>, Error> {
    let (n_split, a, r) = expect_internal(node);
    let (r_split, b, c) = expect_internal(r);
    let demoted = Node::internal(n_split, a, b)?;
    Node::internal(r_split, demoted, c)
}

/// Single right rotation, the mirror image: `n(l(A, B), C)` becomes
/// `l(A, n'(B, C))`.
pub(crate) fn rotate_right(node: Box<Node>) -> Result<Box<Node>, Error> {
    let (n_split, l, c) = expect_internal(node);
    let (l_split, a, b) = expect_internal(l);
    let demoted = Node::internal(n_split, b, c)?;
    Node::internal(l_split, a, demoted)
}

/// Double rotation for a left-heavy node whose left child is right-heavy:
/// `n(l(A, m(B, C)), D)` becomes `m(l'(A, B), n'(C, D))`.
pub(crate) fn rotate_left_right(node: Box<Node>) -> Result<Box<Node>, Error> {
    let (n_split, l, d) = expect_internal(node);
    let (l_split, a, m) = expect_internal(l);
    let (m_split, b, c) = expect_internal(m);
    let new_left = Node::internal(l_split, a, b)?;
    let new_right = Node::internal(n_split, c, d)?;
    Node::internal(m_split, new_left, new_right)
}

/// Double rotation for a right-heavy node whose right child is left-heavy:
/// `n(A, r(m(B, C), D))` becomes `m(n'(A, B), r'(C, D))`.
pub(crate) fn rotate_right_left(node: Box<Node>) -> Result<Box<Node>, Error> {
    let (n_split, a, r) = expect_internal(node);
    let (r_split, m, d) = expect_internal(r);
    let (m_split, b, c) = expect_internal(m);
    let new_left = Node::internal(n_split, a, b)?;
    let new_right = Node::internal(r_split, c, d)?;
    Node::internal(m_split, new_left, new_right)
}

/// Restores the AVL height rule at `node`, assuming both children already
/// satisfy it. Counts one visit per rotation performed.
pub(crate) fn rebalance(node: Box<Node>, visits: &mut u64) -> Result<Box<Node>, Error> {
    let bf = node.balance();
    if bf > 1 {
        *visits += 1;
        let left_bf = match &*node {
            Node::Internal { left, .. } => left.balance(),
            Node::Leaf { .. } => unreachable!(),
        };
        if left_bf >= 0 {
            rotate_right(node)
        } else {
            rotate_left_right(node)
        }
    } else if bf < -1 {
        *visits += 1;
        let right_bf = match &*node {
            Node::Internal { right, .. } => right.balance(),
            Node::Leaf { .. } => unreachable!(),
        };
        if right_bf <= 0 {
            rotate_left(node)
        } else {
            rotate_right_left(node)
        }
    } else {
        Ok(node)
    }
}
