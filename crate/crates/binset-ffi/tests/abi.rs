//! Drives the C ABI the way a foreign caller would: raw pointers, status
//! codes, out parameters.

use binset_ffi::*;

struct Handle(*mut BinsetLedger);

impl Handle {
    fn new() -> Self {
        let ptr = binset_ledger_new();
        assert!(!ptr.is_null());
        Handle(ptr)
    }
}

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { binset_ledger_destroy(self.0) };
    }
}

#[test]
fn reserve_query_free_round_trip() {
    let h = Handle::new();
    let mut id = 0u64;
    let status = unsafe { binset_ledger_reserve(h.0, 5, 1, 10, &mut id) };
    assert_eq!(status, BinsetStatus::Ok);
    assert_eq!(id, 1);

    let mut value = 0i64;
    assert_eq!(
        unsafe { binset_ledger_max_reserved(h.0, 1, 10, &mut value) },
        BinsetStatus::Ok
    );
    assert_eq!(value, 5);
    assert_eq!(
        unsafe { binset_ledger_min_reserved(h.0, 1, 10, &mut value) },
        BinsetStatus::Ok
    );
    assert_eq!(value, 5);

    assert_eq!(
        unsafe { binset_ledger_free_by_id(h.0, id) },
        BinsetStatus::Ok
    );
    let mut stats = BinsetStats {
        event_count: 99,
        node_count: 99,
        height: 99,
        record_count: 99,
    };
    assert_eq!(
        unsafe { binset_ledger_stats(h.0, &mut stats) },
        BinsetStatus::Ok
    );
    assert_eq!(stats.event_count, 0);
    assert_eq!(stats.node_count, 0);
    assert_eq!(stats.record_count, 0);
}

#[test]
fn admit_controls_capacity() {
    let h = Handle::new();
    let mut admitted = false;
    let mut id = 0u64;
    assert_eq!(
        unsafe { binset_ledger_admit(h.0, 5, 1, 10, 10, &mut admitted, &mut id) },
        BinsetStatus::Ok
    );
    assert!(admitted);
    assert_eq!(id, 1);
    assert_eq!(
        unsafe { binset_ledger_admit(h.0, 6, 5, 8, 10, &mut admitted, std::ptr::null_mut()) },
        BinsetStatus::Ok
    );
    assert!(!admitted);
    assert_eq!(
        unsafe { binset_ledger_admit(h.0, 5, 10, 20, 10, &mut admitted, std::ptr::null_mut()) },
        BinsetStatus::Ok
    );
    assert!(admitted);
}

#[test]
fn status_codes_map_argument_errors() {
    let h = Handle::new();
    let mut value = 0i64;
    assert_eq!(
        unsafe { binset_ledger_reserve(h.0, 0, 1, 10, std::ptr::null_mut()) },
        BinsetStatus::NonPositiveBandwidth
    );
    assert_eq!(
        unsafe { binset_ledger_reserve(h.0, 5, 10, 1, std::ptr::null_mut()) },
        BinsetStatus::InvalidInterval
    );
    assert_eq!(
        unsafe { binset_ledger_max_reserved(h.0, 3, 3, &mut value) },
        BinsetStatus::EmptyQueryInterval
    );
    assert_eq!(
        unsafe { binset_ledger_free_by_id(h.0, 42) },
        BinsetStatus::UnknownReservation
    );
    assert_eq!(
        unsafe { binset_ledger_admit(h.0, 1, 1, 2, -1, &mut false, std::ptr::null_mut()) },
        BinsetStatus::NegativeCapacity
    );
    assert_eq!(
        unsafe {
            binset_ledger_max_reserved(std::ptr::null_mut(), 1, 2, &mut value)
        },
        BinsetStatus::NullArgument
    );
    assert_eq!(
        unsafe { binset_ledger_max_reserved(h.0, 1, 2, std::ptr::null_mut()) },
        BinsetStatus::NullArgument
    );
}

#[test]
fn overflow_reports_and_preserves_state() {
    let h = Handle::new();
    assert_eq!(
        unsafe { binset_ledger_reserve(h.0, i64::MAX, 1, 10, std::ptr::null_mut()) },
        BinsetStatus::Ok
    );
    assert_eq!(
        unsafe { binset_ledger_reserve(h.0, i64::MAX, 5, 8, std::ptr::null_mut()) },
        BinsetStatus::Overflow
    );
    let mut value = 0i64;
    assert_eq!(
        unsafe { binset_ledger_max_reserved(h.0, 1, 10, &mut value) },
        BinsetStatus::Ok
    );
    assert_eq!(value, i64::MAX);
    let mut violations = 1u64;
    assert_eq!(
        unsafe { binset_ledger_validate(h.0, &mut violations) },
        BinsetStatus::Ok
    );
    assert_eq!(violations, 0);
}

#[test]
fn destroy_tolerates_null() {
    unsafe { binset_ledger_destroy(std::ptr::null_mut()) };
}

#[test]
fn status_messages_are_c_strings() {
    for status in [
        BinsetStatus::Ok,
        BinsetStatus::Overflow,
        BinsetStatus::UnknownReservation,
    ] {
        let ptr = binset_status_message(status);
        assert!(!ptr.is_null());
        let text = unsafe { std::ffi::CStr::from_ptr(ptr) };
        assert!(!text.to_str().unwrap().is_empty());
    }
}
