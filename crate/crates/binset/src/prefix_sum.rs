//! Dynamic prefix sums on top of the reservation ledger.
//!
//! An array cell update `V(i) += x` becomes a reservation of `x` over the
//! semi-infinite interval `[i, +inf)`, so the reserved level at point `m` is
//! exactly the prefix sum `V(1) + ... + V(m)`; `retrieve(m)` reads it back as
//! a max query over `[m, m+1)`, where the level is constant. The structure
//! is dynamic — indices past the current length simply grow the array.

use crate::error::Error;
use crate::ledger::Ledger;
use crate::types::{Bandwidth, Interval, Timestamp};

/// Far-right stand-in for +inf: all cell updates reserve up to this point,
/// so growth never has to move events around.
const SENTINEL: Timestamp = Timestamp::MAX;

/// Prefix-summable array of bandwidth values, indexed from 1.
#[derive(Debug, Clone, Default)]
pub struct PrefixSumArray {
    ledger: Ledger,
    len: u64,
}

impl PrefixSumArray {
    pub fn new() -> Self {
        PrefixSumArray::default()
    }

    /// Creates the array with `len` zero-valued cells.
    pub fn with_len(len: u64) -> Self {
        PrefixSumArray {
            ledger: Ledger::new(),
            len,
        }
    }

    /// Current logical length; valid indices are `1..=len()`.
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Adds `x` to cell `i`, growing the array when `i > len()`.
    pub fn update(&mut self, i: u64, x: Bandwidth) -> Result<(), Error> {
        if i == 0 {
            return Err(Error::IndexOutOfRange {
                index: 0,
                len: self.len,
            });
        }
        let time = index_time(i)?;
        if x.is_zero() {
            self.len = self.len.max(i);
            return Ok(());
        }
        // Signed updates split into reserve/free of the magnitude.
        let interval = Interval::new(time, SENTINEL).expect("index below sentinel");
        if x.is_positive() {
            self.ledger.reserve(x, interval)?;
        } else {
            self.ledger.free(x.checked_neg()?, interval)?;
        }
        self.len = self.len.max(i);
        Ok(())
    }

    /// Prefix sum `V(1) + ... + V(m)`.
    pub fn retrieve(&self, m: u64) -> Result<Bandwidth, Error> {
        if m == 0 || m > self.len {
            return Err(Error::IndexOutOfRange {
                index: m,
                len: self.len,
            });
        }
        let time = index_time(m)?;
        let next = Timestamp(time.ticks() + 1);
        self.ledger
            .max_reserved(Interval::new(time, next).expect("ordered"))
    }

    /// Sum of cells `i ..= j`.
    pub fn range_sum(&self, i: u64, j: u64) -> Result<Bandwidth, Error> {
        if i == 0 || i > j || j > self.len {
            return Err(Error::IndexOutOfRange {
                index: if i == 0 || i > j { i } else { j },
                len: self.len,
            });
        }
        let upto_j = self.retrieve(j)?;
        if i == 1 {
            return Ok(upto_j);
        }
        upto_j.checked_sub(self.retrieve(i - 1)?)
    }

    /// The ledger the encoding lives in; handy for structural assertions.
    pub fn ledger(&self) -> &Ledger {
        &self.ledger
    }
}

/// Identity mapping from 1-based indices onto time ticks, minus the slot
/// reserved for the sentinel.
fn index_time(i: u64) -> Result<Timestamp, Error> {
    if i >= u64::try_from(i64::MAX).expect("fits") {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: i64::MAX as u64 - 1,
        });
    }
    Ok(Timestamp(i as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_update_raises_all_later_prefixes() {
        let mut a = PrefixSumArray::with_len(4);
        a.update(2, Bandwidth(5)).unwrap();
        assert_eq!(a.retrieve(1).unwrap(), Bandwidth(0));
        assert_eq!(a.retrieve(2).unwrap(), Bandwidth(5));
        assert_eq!(a.retrieve(4).unwrap(), Bandwidth(5));
    }

    #[test]
    fn prefixes_accumulate() {
        let mut a = PrefixSumArray::with_len(3);
        a.update(1, Bandwidth(1)).unwrap();
        a.update(2, Bandwidth(2)).unwrap();
        a.update(3, Bandwidth(3)).unwrap();
        assert_eq!(a.retrieve(3).unwrap(), Bandwidth(6));
    }

    #[test]
    fn cancelling_updates_empties_the_tree() {
        let mut a = PrefixSumArray::with_len(4);
        a.update(2, Bandwidth(5)).unwrap();
        a.update(2, Bandwidth(-5)).unwrap();
        for m in 1..=4 {
            assert_eq!(a.retrieve(m).unwrap(), Bandwidth(0));
        }
        assert_eq!(a.ledger().stats().event_count, 0);
    }

    #[test]
    fn range_sums_match_direct_differences() {
        let mut a = PrefixSumArray::with_len(4);
        for (i, v) in [(1, 1), (2, 2), (3, 3), (4, 4)] {
            a.update(i, Bandwidth(v)).unwrap();
        }
        assert_eq!(a.range_sum(2, 3).unwrap(), Bandwidth(5));
        assert_eq!(a.range_sum(3, 3).unwrap(), Bandwidth(3));
        assert_eq!(a.range_sum(1, 4).unwrap(), a.retrieve(4).unwrap());
    }

    #[test]
    fn growth_past_the_initial_length() {
        let mut a = PrefixSumArray::with_len(4);
        a.update(2, Bandwidth(3)).unwrap();
        a.update(9, Bandwidth(4)).unwrap();
        assert_eq!(a.len(), 9);
        assert_eq!(a.retrieve(8).unwrap(), Bandwidth(3));
        assert_eq!(a.retrieve(9).unwrap(), Bandwidth(7));
    }

    #[test]
    fn out_of_range_indices_error() {
        let a = PrefixSumArray::with_len(4);
        assert!(matches!(a.retrieve(0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(a.retrieve(5), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(
            a.range_sum(3, 2),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn negative_cells_are_fine() {
        let mut a = PrefixSumArray::with_len(3);
        a.update(1, Bandwidth(5)).unwrap();
        a.update(2, Bandwidth(-8)).unwrap();
        assert_eq!(a.retrieve(2).unwrap(), Bandwidth(-3));
        assert_eq!(a.range_sum(2, 2).unwrap(), Bandwidth(-8));
    }
}
