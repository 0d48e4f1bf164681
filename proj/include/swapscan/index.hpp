// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "swapscan/types.hpp"

namespace swapscan {

// Immutable queryable view over one Monero-side corpus. Construction
// validates the whole record set; afterwards the index is read-only and
// safe for concurrent readers.
class ChainIndex {
public:
    struct OutputRecord {
        OutputId output_id;
        TxId creating_tx;
        std::uint32_t index_in_tx = 0;
        Height height = 0;
        std::uint32_t tx_index = 0;  // position in txs()
    };

    // Validates invariants and rejects inconsistent corpora. Input list
    // order is irrelevant: transactions are arranged by (height, position
    // in block), so any permutation of the inputs indexes identically.
    // Pass tier bounds to additionally check fee/fee_tier consistency.
    static ChainIndex build(std::vector<MoneroBlock> blocks, std::vector<MoneroTx> txs,
                            const FeeTierBounds* tiers = nullptr);

    Timestamp time_of(Height height) const;  // throws unknown_height
    bool has_height(Height height) const {
        return height >= 0 && static_cast<std::size_t>(height) < blocks_.size();
    }

    const MoneroBlock& block_at(Height height) const;

    std::size_t block_count() const { return blocks_.size(); }
    std::size_t tx_count() const { return txs_.size(); }
    Height tip_height() const { return static_cast<Height>(blocks_.size()) - 1; }

    // Transactions in canonical chain order.
    const std::vector<MoneroTx>& txs() const { return txs_; }
    const MoneroTx& tx_at(std::uint32_t index) const { return txs_[index]; }
    std::optional<std::uint32_t> tx_index(const TxId& id) const;
    std::span<const std::uint32_t> txs_in_block(Height height) const;

    const OutputRecord* find_output(const OutputId& id) const;

private:
    ChainIndex() = default;

    std::vector<MoneroBlock> blocks_;                     // position == height
    std::vector<MoneroTx> txs_;                           // canonical order
    std::vector<std::vector<std::uint32_t>> block_txs_;   // height -> tx indices
    std::unordered_map<TxId, std::uint32_t> tx_by_id_;
    std::unordered_map<OutputId, OutputRecord> outputs_;
};

}  // namespace swapscan
