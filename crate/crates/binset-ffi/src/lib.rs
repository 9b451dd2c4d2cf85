//! C ABI for the reservation ledger.
//!
//! The ledger is exposed as an opaque handle created by
//! [`binset_ledger_new`] and destroyed by [`binset_ledger_destroy`]; every
//! other call returns a [`BinsetStatus`] and writes results through out
//! pointers. Times and bandwidths cross the boundary as plain `int64_t`,
//! intervals as half-open `[start, end)` pairs.
//!
//! Thread safety follows the Rust API: a handle may move between threads,
//! and concurrent calls are fine as long as no call mutates the ledger while
//! another call is using it.

use std::ffi::c_char;

use binset::{Bandwidth, Error, Interval, Ledger, ReservationId, Timestamp};

/// Status code for every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinsetStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Interval endpoints out of order (`start > end`).
    InvalidInterval = 2,
    /// Queries need a non-empty interval.
    EmptyQueryInterval = 3,
    /// Bandwidth must be strictly positive.
    NonPositiveBandwidth = 4,
    /// Capacity must be non-negative.
    NegativeCapacity = 5,
    /// No reservation with the given id.
    UnknownReservation = 6,
    /// Bandwidth arithmetic overflow; the ledger is unchanged.
    Overflow = 7,
    /// Any other library error.
    Internal = 8,
}

impl From<Error> for BinsetStatus {
    fn from(e: Error) -> Self {
        match e {
            Error::Overflow => BinsetStatus::Overflow,
            Error::InvalidInterval { .. } => BinsetStatus::InvalidInterval,
            Error::EmptyQueryInterval => BinsetStatus::EmptyQueryInterval,
            Error::NonPositiveBandwidth => BinsetStatus::NonPositiveBandwidth,
            Error::NegativeCapacity => BinsetStatus::NegativeCapacity,
            Error::UnknownReservation(_) => BinsetStatus::UnknownReservation,
            _ => BinsetStatus::Internal,
        }
    }
}

/// Structural counters, mirror of the Rust `LedgerStats`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinsetStats {
    pub event_count: u64,
    pub node_count: u64,
    pub height: u32,
    pub record_count: u64,
}

/// Opaque reservation ledger handle.
pub struct BinsetLedger {
    inner: Ledger,
}

fn interval(start: i64, end: i64) -> Result<Interval, Error> {
    Interval::new(Timestamp(start), Timestamp(end))
}

/// Creates an empty ledger. Never returns null; destroy it with
/// [`binset_ledger_destroy`].
#[no_mangle]
pub extern "C" fn binset_ledger_new() -> *mut BinsetLedger {
    Box::into_raw(Box::new(BinsetLedger {
        inner: Ledger::new(),
    }))
}

/// Destroys a ledger created by [`binset_ledger_new`]. Null is a no-op.
///
/// # Safety
/// `ledger` must be a pointer returned by [`binset_ledger_new`] that has not
/// been destroyed yet.
#[no_mangle]
pub unsafe extern "C" fn binset_ledger_destroy(ledger: *mut BinsetLedger) {
    if !ledger.is_null() {
        drop(unsafe { Box::from_raw(ledger) });
    }
}

unsafe fn borrow<'a>(ledger: *mut BinsetLedger) -> Option<&'a mut BinsetLedger> {
    unsafe { ledger.as_mut() }
}

/// Reserves `bandwidth` over `[start, end)`. On success writes the new
/// reservation id to `out_id` (which may be null when the caller does not
/// care).
///
/// # Safety
/// `ledger` must be a live handle; `out_id`, when non-null, must point to
/// writable memory for one `uint64_t`.
#[no_mangle]
pub unsafe extern "C" fn binset_ledger_reserve(
    ledger: *mut BinsetLedger,
    bandwidth: i64,
    start: i64,
    end: i64,
    out_id: *mut u64,
) -> BinsetStatus {
    let Some(handle) = (unsafe { borrow(ledger) }) else {
        return BinsetStatus::NullArgument;
    };
    let result = interval(start, end).and_then(|iv| handle.inner.reserve(Bandwidth(bandwidth), iv));
    match result {
        Ok(id) => {
            if !out_id.is_null() {
                unsafe { *out_id = id.0 };
            }
            BinsetStatus::Ok
        }
        Err(e) => e.into(),
    }
}

/// Frees `bandwidth` over `[start, end)`, unconditionally.
///
/// # Safety
/// `ledger` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn binset_ledger_free(
    ledger: *mut BinsetLedger,
    bandwidth: i64,
    start: i64,
    end: i64,
) -> BinsetStatus {
    let Some(handle) = (unsafe { borrow(ledger) }) else {
        return BinsetStatus::NullArgument;
    };
    match interval(start, end).and_then(|iv| handle.inner.free(Bandwidth(bandwidth), iv)) {
        Ok(()) => BinsetStatus::Ok,
        Err(e) => e.into(),
    }
}

/// Frees exactly the reservation behind `id` and forgets its record.
///
/// # Safety
/// `ledger` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn binset_ledger_free_by_id(
    ledger: *mut BinsetLedger,
    id: u64,
) -> BinsetStatus {
    let Some(handle) = (unsafe { borrow(ledger) }) else {
        return BinsetStatus::NullArgument;
    };
    match handle.inner.free_by_id(ReservationId(id)) {
        Ok(()) => BinsetStatus::Ok,
        Err(e) => e.into(),
    }
}

/// Writes the maximum reserved level over `[start, end)` to `out_value`.
/// Times before the first event count as level 0; an empty ledger answers 0.
///
/// # Safety
/// `ledger` must be a live handle; `out_value` must point to writable memory
/// for one `int64_t`.
#[no_mangle]
pub unsafe extern "C" fn binset_ledger_max_reserved(
    ledger: *mut BinsetLedger,
    start: i64,
    end: i64,
    out_value: *mut i64,
) -> BinsetStatus {
    unsafe { query(ledger, start, end, out_value, true) }
}

/// Minimum counterpart of [`binset_ledger_max_reserved`].
///
/// # Safety
/// As [`binset_ledger_max_reserved`].
#[no_mangle]
pub unsafe extern "C" fn binset_ledger_min_reserved(
    ledger: *mut BinsetLedger,
    start: i64,
    end: i64,
    out_value: *mut i64,
) -> BinsetStatus {
    unsafe { query(ledger, start, end, out_value, false) }
}

unsafe fn query(
    ledger: *mut BinsetLedger,
    start: i64,
    end: i64,
    out_value: *mut i64,
    want_max: bool,
) -> BinsetStatus {
    let Some(handle) = (unsafe { borrow(ledger) }) else {
        return BinsetStatus::NullArgument;
    };
    if out_value.is_null() {
        return BinsetStatus::NullArgument;
    }
    let result = interval(start, end).and_then(|iv| {
        if want_max {
            handle.inner.max_reserved(iv)
        } else {
            handle.inner.min_reserved(iv)
        }
    });
    match result {
        Ok(v) => {
            unsafe { *out_value = v.units() };
            BinsetStatus::Ok
        }
        Err(e) => e.into(),
    }
}

/// Admission-controlled reserve: applies the reservation iff the peak over
/// `[start, end)` plus `bandwidth` stays within `capacity`. Writes 1/0 to
/// `out_admitted`; on admission also writes the id to `out_id` (nullable).
///
/// # Safety
/// `ledger` must be a live handle; `out_admitted` must point to writable
/// memory for one `bool`; `out_id`, when non-null, for one `uint64_t`.
#[no_mangle]
pub unsafe extern "C" fn binset_ledger_admit(
    ledger: *mut BinsetLedger,
    bandwidth: i64,
    start: i64,
    end: i64,
    capacity: i64,
    out_admitted: *mut bool,
    out_id: *mut u64,
) -> BinsetStatus {
    let Some(handle) = (unsafe { borrow(ledger) }) else {
        return BinsetStatus::NullArgument;
    };
    if out_admitted.is_null() {
        return BinsetStatus::NullArgument;
    }
    let result = interval(start, end)
        .and_then(|iv| handle.inner.admit(Bandwidth(bandwidth), iv, Bandwidth(capacity)));
    match result {
        Ok(admitted) => {
            unsafe { *out_admitted = admitted.is_some() };
            if let (Some(id), false) = (admitted, out_id.is_null()) {
                unsafe { *out_id = id.0 };
            }
            BinsetStatus::Ok
        }
        Err(e) => e.into(),
    }
}

/// Fills `out_stats` with the ledger's structural counters.
///
/// # Safety
/// `ledger` must be a live handle; `out_stats` must point to writable memory
/// for one `BinsetStats`.
#[no_mangle]
pub unsafe extern "C" fn binset_ledger_stats(
    ledger: *mut BinsetLedger,
    out_stats: *mut BinsetStats,
) -> BinsetStatus {
    let Some(handle) = (unsafe { borrow(ledger) }) else {
        return BinsetStatus::NullArgument;
    };
    if out_stats.is_null() {
        return BinsetStatus::NullArgument;
    }
    let s = handle.inner.stats();
    unsafe {
        *out_stats = BinsetStats {
            event_count: s.event_count as u64,
            node_count: s.node_count as u64,
            height: s.height,
            record_count: s.record_count as u64,
        };
    }
    BinsetStatus::Ok
}

/// Recomputes every structural invariant and writes the number of violations
/// found (0 for a sound ledger) to `out_violations`.
///
/// # Safety
/// `ledger` must be a live handle; `out_violations` must point to writable
/// memory for one `uint64_t`.
#[no_mangle]
pub unsafe extern "C" fn binset_ledger_validate(
    ledger: *mut BinsetLedger,
    out_violations: *mut u64,
) -> BinsetStatus {
    let Some(handle) = (unsafe { borrow(ledger) }) else {
        return BinsetStatus::NullArgument;
    };
    if out_violations.is_null() {
        return BinsetStatus::NullArgument;
    }
    unsafe { *out_violations = handle.inner.validate().len() as u64 };
    BinsetStatus::Ok
}

/// Short static description of a status code, for diagnostics.
#[no_mangle]
pub extern "C" fn binset_status_message(status: BinsetStatus) -> *const c_char {
    let message: &'static [u8] = match status {
        BinsetStatus::Ok => b"ok\0",
        BinsetStatus::NullArgument => b"null argument\0",
        BinsetStatus::InvalidInterval => b"invalid interval\0",
        BinsetStatus::EmptyQueryInterval => b"empty query interval\0",
        BinsetStatus::NonPositiveBandwidth => b"bandwidth must be positive\0",
        BinsetStatus::NegativeCapacity => b"capacity must be non-negative\0",
        BinsetStatus::UnknownReservation => b"unknown reservation id\0",
        BinsetStatus::Overflow => b"bandwidth arithmetic overflow\0",
        BinsetStatus::Internal => b"internal error\0",
    };
    message.as_ptr().cast()
}
