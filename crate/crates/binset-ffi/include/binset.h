#ifndef BINSET_H
#define BINSET_H

/* This file is generated by cbindgen from binset-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status code for every fallible call.
 */
typedef enum BinsetStatus {
  BINSET_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  BINSET_STATUS_NULL_ARGUMENT = 1,
  /*
   Interval endpoints out of order (`start > end`).
   */
  BINSET_STATUS_INVALID_INTERVAL = 2,
  /*
   Queries need a non-empty interval.
   */
  BINSET_STATUS_EMPTY_QUERY_INTERVAL = 3,
  /*
   Bandwidth must be strictly positive.
   */
  BINSET_STATUS_NON_POSITIVE_BANDWIDTH = 4,
  /*
   Capacity must be non-negative.
   */
  BINSET_STATUS_NEGATIVE_CAPACITY = 5,
  /*
   No reservation with the given id.
   */
  BINSET_STATUS_UNKNOWN_RESERVATION = 6,
  /*
   Bandwidth arithmetic overflow; the ledger is unchanged.
   */
  BINSET_STATUS_OVERFLOW = 7,
  /*
   Any other library error.
   */
  BINSET_STATUS_INTERNAL = 8,
} BinsetStatus;

/*
 Opaque reservation ledger handle.
 */
typedef struct BinsetLedger BinsetLedger;

/*
 Structural counters, mirror of the Rust `LedgerStats`.
 */
typedef struct BinsetStats {
  uint64_t event_count;
  uint64_t node_count;
  uint32_t height;
  uint64_t record_count;
} BinsetStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Creates an empty ledger. Never returns null; destroy it with
 [`binset_ledger_destroy`].
 */
struct BinsetLedger *binset_ledger_new(void);

/*
 Destroys a ledger created by [`binset_ledger_new`]. Null is a no-op.

 # Safety
 `ledger` must be a pointer returned by [`binset_ledger_new`] that has not
 been destroyed yet.
 */
void binset_ledger_destroy(struct BinsetLedger *ledger);

/*
 Reserves `bandwidth` over `[start, end)`. On success writes the new
 reservation id to `out_id` (which may be null when the caller does not
 care).

 # Safety
 `ledger` must be a live handle; `out_id`, when non-null, must point to
 writable memory for one `uint64_t`.
 */
enum BinsetStatus binset_ledger_reserve(struct BinsetLedger *ledger,
                                        int64_t bandwidth,
                                        int64_t start,
                                        int64_t end,
                                        uint64_t *out_id);

/*
 Frees `bandwidth` over `[start, end)`, unconditionally.

 # Safety
 `ledger` must be a live handle.
 */
enum BinsetStatus binset_ledger_free(struct BinsetLedger *ledger,
                                     int64_t bandwidth,
                                     int64_t start,
                                     int64_t end);

/*
 Frees exactly the reservation behind `id` and forgets its record.

 # Safety
 `ledger` must be a live handle.
 */
enum BinsetStatus binset_ledger_free_by_id(struct BinsetLedger *ledger, uint64_t id);

/*
 Writes the maximum reserved level over `[start, end)` to `out_value`.
 Times before the first event count as level 0; an empty ledger answers 0.

 # Safety
 `ledger` must be a live handle; `out_value` must point to writable memory
 for one `int64_t`.
 */
enum BinsetStatus binset_ledger_max_reserved(struct BinsetLedger *ledger,
                                             int64_t start,
                                             int64_t end,
                                             int64_t *out_value);

/*
 Minimum counterpart of [`binset_ledger_max_reserved`].

 # Safety
 As [`binset_ledger_max_reserved`].
 */
enum BinsetStatus binset_ledger_min_reserved(struct BinsetLedger *ledger,
                                             int64_t start,
                                             int64_t end,
                                             int64_t *out_value);

/*
 Admission-controlled reserve: applies the reservation iff the peak over
 `[start, end)` plus `bandwidth` stays within `capacity`. Writes 1/0 to
 `out_admitted`; on admission also writes the id to `out_id` (nullable).

 # Safety
 `ledger` must be a live handle; `out_admitted` must point to writable
 memory for one `bool`; `out_id`, when non-null, for one `uint64_t`.
 */
enum BinsetStatus binset_ledger_admit(struct BinsetLedger *ledger,
                                      int64_t bandwidth,
                                      int64_t start,
                                      int64_t end,
                                      int64_t capacity,
                                      bool *out_admitted,
                                      uint64_t *out_id);

/*
 Fills `out_stats` with the ledger's structural counters.

 # Safety
 `ledger` must be a live handle; `out_stats` must point to writable memory
 for one `BinsetStats`.
 */
enum BinsetStatus binset_ledger_stats(struct BinsetLedger *ledger, struct BinsetStats *out_stats);

/*
 Recomputes every structural invariant and writes the number of violations
 found (0 for a sound ledger) to `out_violations`.

 # Safety
 `ledger` must be a live handle; `out_violations` must point to writable
 memory for one `uint64_t`.
 */
enum BinsetStatus binset_ledger_validate(struct BinsetLedger *ledger, uint64_t *out_violations);

/*
 Short static description of a status code, for diagnostics.
 */
const char *binset_status_message(enum BinsetStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BINSET_H */
