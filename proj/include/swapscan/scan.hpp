// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "swapscan/index.hpp"
#include "swapscan/types.hpp"

namespace swapscan {

// One (lockA, lockB, spend) triple matching the observable trade pattern:
// two 2-output high-fee locks in the same or neighboring blocks, both
// referenced by the rings of a 2-in/2-out spend mined within the lock
// window. Lock A/B are in canonical order (height, then tx id).
struct SwapCandidate {
    TxId spend_tx_id;
    TxId lock_a_tx_id;
    TxId lock_b_tx_id;
    Height spend_height = 0;
    Timestamp spend_timestamp = 0;
    Height lock_a_height = 0;
    Timestamp lock_a_timestamp = 0;
    Height lock_b_height = 0;
    Timestamp lock_b_timestamp = 0;

    friend bool operator==(const SwapCandidate&, const SwapCandidate&) = default;
};

// Survivor counts per filter stage.
struct FunnelReport {
    std::int64_t total_txs = 0;
    std::int64_t spend_shape_txs = 0;
    std::int64_t spends_with_lock_pair = 0;
    std::int64_t candidates = 0;
};

struct ScanResult {
    std::vector<SwapCandidate> candidates;  // sorted by (spend height, ids)
    FunnelReport funnel;
};

// Exactly 2 inputs and 2 outputs.
bool is_spend_shape(const MoneroTx& tx);

// Exactly 2 outputs at or above the required fee tier.
bool is_lock_shape(const MoneroTx& tx, const HeuristicParams& params);

// All qualifying unordered lock pairs for one spend, as canonical
// (lockA, lockB) index pairs into index.txs(). Either ring may reference
// either lock; the spend itself never qualifies as its own lock.
std::vector<std::pair<std::uint32_t, std::uint32_t>> find_lock_pair(
    const MoneroTx& spend, const ChainIndex& index, const HeuristicParams& params);

// Reverse scan over every possible spend. `scan` runs the per-spend work
// in parallel; `scan_serial` is the reference implementation the tests and
// the benchmark compare against. Both produce identical, canonically
// ordered output.
ScanResult scan(const ChainIndex& index, const HeuristicParams& params);
ScanResult scan_serial(const ChainIndex& index, const HeuristicParams& params);

}  // namespace swapscan
