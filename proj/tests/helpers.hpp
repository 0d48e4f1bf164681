// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "swapscan/generate.hpp"
#include "swapscan/index.hpp"
#include "swapscan/scan.hpp"
#include "swapscan/types.hpp"

namespace swapscan::testing {

// Hand-built mini chain with explicit timestamps. Output ids derive from
// the tx id, matching the generator's convention.
class ChainBuilder {
public:
    Height add_block(Timestamp ts) {
        MoneroBlock block;
        block.height = static_cast<Height>(blocks.size());
        block.timestamp = ts;
        blocks.push_back(std::move(block));
        return blocks.back().height;
    }

    // Rings reference previously created outputs; empty ring list means one
    // input ringing the first output ever made (self for the very first tx).
    TxId add_tx(Height height, int n_outputs, Piconero fee, FeeTier tier,
                std::vector<std::vector<OutputId>> rings = {}) {
        MoneroTx tx;
        tx.tx_id = "t" + std::to_string(next_id_++);
        tx.block_height = height;
        for (int k = 0; k < n_outputs; ++k) {
            tx.outputs.push_back(MoneroOutput{tx.tx_id + ":" + std::to_string(k)});
        }
        if (rings.empty()) {
            rings.push_back({txs.empty() ? tx.tx_id + ":0" : txs.front().outputs[0].output_id});
        }
        for (auto& ring : rings) {
            MoneroInput input;
            input.ring = std::move(ring);
            tx.inputs.push_back(std::move(input));
        }
        tx.fee = fee;
        tx.fee_tier = tier;
        blocks[static_cast<std::size_t>(height)].tx_ids.push_back(tx.tx_id);
        txs.push_back(tx);
        return txs.back().tx_id;
    }

    OutputId out(const TxId& tx_id, int k) const { return tx_id + ":" + std::to_string(k); }

    ChainIndex build() const { return ChainIndex::build(blocks, txs); }

    std::vector<MoneroBlock> blocks;
    std::vector<MoneroTx> txs;

private:
    int next_id_ = 0;
};

using Triple = std::array<TxId, 3>;  // spend, then lock pair in id order

inline Triple make_triple(const TxId& spend, const TxId& lock_x, const TxId& lock_y) {
    return lock_x < lock_y ? Triple{spend, lock_x, lock_y} : Triple{spend, lock_y, lock_x};
}

inline std::set<Triple> triples_of(const std::vector<SwapCandidate>& candidates) {
    std::set<Triple> out;
    for (const SwapCandidate& c : candidates) {
        out.insert(make_triple(c.spend_tx_id, c.lock_a_tx_id, c.lock_b_tx_id));
    }
    return out;
}

inline std::set<Triple> truth_triples(const std::vector<GroundTruthTrade>& trades, bool disputed) {
    std::set<Triple> out;
    for (const GroundTruthTrade& t : trades) {
        if (t.disputed == disputed) {
            out.insert(make_triple(t.spend_tx_id, t.lock_a_tx_id, t.lock_b_tx_id));
        }
    }
    return out;
}

// Small, fast generator configs for unit tests. The payout horizon plus
// dispute delay needs ~440 blocks at a 300s block time.
inline GenConfig small_config(std::uint64_t seed, std::int64_t trades, bool with_disputes) {
    GenConfig config;
    config.seed = seed;
    config.n_blocks = 520;
    config.block_time_s = 300;
    config.background_txs_per_block = 2.0;
    config.genesis_txs = 16;
    config.ring_size = 6;
    config.n_planted_trades = trades;
    config.fraction_disputed = with_disputes ? Rational(1, 4) : Rational(0, 1);
    config.btc_background_per_hour = 10.0;
    return config;
}

}  // namespace swapscan::testing
