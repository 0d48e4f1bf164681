// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Reverse scan for the observable trade pattern: starting from every
// possible spend transaction (2 inputs, 2 outputs), collect the creating
// transactions of all ring members of both inputs and keep the pairs that
// look like the two security-deposit locks: 2 outputs each, high fee tier,
// equal fee, same or neighboring block, written within the lock window
// before the spend.

#include "swapscan/scan.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace swapscan {

bool is_spend_shape(const MoneroTx& tx) {
    return tx.inputs.size() == 2 && tx.outputs.size() == 2;
}

bool is_lock_shape(const MoneroTx& tx, const HeuristicParams& params) {
    return tx.outputs.size() == 2 &&
           static_cast<int>(tx.fee_tier) >= static_cast<int>(params.required_fee_tier);
}

namespace {

// Distinct creating-tx indices referenced by one input's ring.
void ring_creators(const MoneroInput& input, const ChainIndex& index,
                   std::vector<std::uint32_t>& out) {
    out.clear();
    for (const OutputId& member : input.ring) {
        const ChainIndex::OutputRecord* rec = index.find_output(member);
        if (!rec) continue;  // index construction already rejects dangling refs
        if (std::find(out.begin(), out.end(), rec->tx_index) == out.end()) {
            out.push_back(rec->tx_index);
        }
    }
}

bool lock_eligible(const MoneroTx& lock, const MoneroTx& spend, Timestamp spend_ts,
                   const ChainIndex& index, const HeuristicParams& params) {
    if (&lock == &spend) return false;
    if (!is_lock_shape(lock, params)) return false;
    const Timestamp lock_ts = index.time_of(lock.block_height);
    return lock_ts <= spend_ts && spend_ts - lock_ts <= params.lock_window_s;
}

}  // namespace

std::vector<std::pair<std::uint32_t, std::uint32_t>> find_lock_pair(
    const MoneroTx& spend, const ChainIndex& index, const HeuristicParams& params) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    if (spend.inputs.size() != 2) return pairs;
    const Timestamp spend_ts = index.time_of(spend.block_height);

    std::vector<std::uint32_t> creators0;
    std::vector<std::uint32_t> creators1;
    ring_creators(spend.inputs[0], index, creators0);
    ring_creators(spend.inputs[1], index, creators1);

    const auto keep_eligible = [&](std::vector<std::uint32_t>& creators) {
        std::erase_if(creators, [&](std::uint32_t i) {
            return !lock_eligible(index.tx_at(i), spend, spend_ts, index, params);
        });
    };
    keep_eligible(creators0);
    keep_eligible(creators1);

    // Either input may reference either lock, so collect unordered pairs.
    for (const std::uint32_t a : creators0) {
        const MoneroTx& lock_a = index.tx_at(a);
        for (const std::uint32_t b : creators1) {
            if (a == b) continue;
            const MoneroTx& lock_b = index.tx_at(b);
            const Height dh = lock_a.block_height - lock_b.block_height;
            if (dh > params.neighbor_block_tolerance || -dh > params.neighbor_block_tolerance) {
                continue;
            }
            if (params.require_equal_lock_fees && lock_a.fee != lock_b.fee) continue;
            pairs.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

namespace {

SwapCandidate make_candidate(const MoneroTx& spend, const MoneroTx& first, const MoneroTx& second,
                             const ChainIndex& index) {
    // Canonical lock order: height, then tx id.
    const MoneroTx* a = &first;
    const MoneroTx* b = &second;
    if (b->block_height < a->block_height ||
        (b->block_height == a->block_height && b->tx_id < a->tx_id)) {
        std::swap(a, b);
    }
    SwapCandidate c;
    c.spend_tx_id = spend.tx_id;
    c.lock_a_tx_id = a->tx_id;
    c.lock_b_tx_id = b->tx_id;
    c.spend_height = spend.block_height;
    c.spend_timestamp = index.time_of(spend.block_height);
    c.lock_a_height = a->block_height;
    c.lock_a_timestamp = index.time_of(a->block_height);
    c.lock_b_height = b->block_height;
    c.lock_b_timestamp = index.time_of(b->block_height);
    return c;
}

bool candidate_less(const SwapCandidate& x, const SwapCandidate& y) {
    if (x.spend_height != y.spend_height) return x.spend_height < y.spend_height;
    if (x.spend_tx_id != y.spend_tx_id) return x.spend_tx_id < y.spend_tx_id;
    if (x.lock_a_tx_id != y.lock_a_tx_id) return x.lock_a_tx_id < y.lock_a_tx_id;
    return x.lock_b_tx_id < y.lock_b_tx_id;
}

void scan_one(const MoneroTx& tx, const ChainIndex& index, const HeuristicParams& params,
              std::vector<SwapCandidate>& out, FunnelReport& funnel) {
    ++funnel.total_txs;
    if (!is_spend_shape(tx)) return;
    ++funnel.spend_shape_txs;
    const auto pairs = find_lock_pair(tx, index, params);
    if (pairs.empty()) return;
    ++funnel.spends_with_lock_pair;
    funnel.candidates += static_cast<std::int64_t>(pairs.size());
    for (const auto& [a, b] : pairs) {
        out.push_back(make_candidate(tx, index.tx_at(a), index.tx_at(b), index));
    }
}

// Results are canonicalized, so thread scheduling cannot leak into the output.
ScanResult finalize(std::vector<SwapCandidate> candidates, FunnelReport funnel) {
    std::sort(candidates.begin(), candidates.end(), candidate_less);
    return ScanResult{std::move(candidates), funnel};
}

}  // namespace

ScanResult scan_serial(const ChainIndex& index, const HeuristicParams& params) {
    params.validate();
    std::vector<SwapCandidate> candidates;
    FunnelReport funnel;
    for (const MoneroTx& tx : index.txs()) {
        scan_one(tx, index, params, candidates, funnel);
    }
    return finalize(std::move(candidates), funnel);
}

ScanResult scan(const ChainIndex& index, const HeuristicParams& params) {
    params.validate();
    const auto& txs = index.txs();
    const std::int64_t n = static_cast<std::int64_t>(txs.size());

    std::vector<SwapCandidate> candidates;
    FunnelReport funnel;
    funnel.total_txs = n;

#ifdef _OPENMP
#pragma omp parallel
    {
        std::vector<SwapCandidate> local;
        std::int64_t local_spend_shape = 0;
        std::int64_t local_with_pair = 0;

#pragma omp for schedule(dynamic, 256) nowait
        for (std::int64_t i = 0; i < n; ++i) {
            const MoneroTx& tx = txs[static_cast<std::size_t>(i)];
            if (!is_spend_shape(tx)) continue;
            ++local_spend_shape;
            const auto pairs = find_lock_pair(tx, index, params);
            if (pairs.empty()) continue;
            ++local_with_pair;
            for (const auto& [a, b] : pairs) {
                local.push_back(make_candidate(tx, index.tx_at(a), index.tx_at(b), index));
            }
        }

#pragma omp critical(swapscan_scan_merge)
        {
            funnel.spend_shape_txs += local_spend_shape;
            funnel.spends_with_lock_pair += local_with_pair;
            candidates.insert(candidates.end(), std::make_move_iterator(local.begin()),
                              std::make_move_iterator(local.end()));
        }
    }
    funnel.candidates = static_cast<std::int64_t>(candidates.size());
#else
    return scan_serial(index, params);
#endif

    return finalize(std::move(candidates), funnel);
}

}  // namespace swapscan
