// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "swapscan/index.hpp"

#include <algorithm>
#include <unordered_set>

#include "swapscan/errors.hpp"

namespace swapscan {

namespace {

void check_tx_invariants(const MoneroTx& tx) {
    if (tx.tx_id.empty()) raise(Errc::corpus, "bad_schema", "transaction with empty id");
    if (tx.inputs.empty() || tx.outputs.empty()) {
        raise(Errc::corpus, "bad_schema", "tx " + tx.tx_id + ": inputs and outputs must be non-empty");
    }
    if (tx.fee <= 0) raise(Errc::corpus, "bad_schema", "tx " + tx.tx_id + ": fee must be > 0");
    for (const MoneroInput& input : tx.inputs) {
        if (input.ring.empty()) {
            raise(Errc::corpus, "bad_schema", "tx " + tx.tx_id + ": empty ring");
        }
        std::unordered_set<OutputId> seen;
        for (const OutputId& member : input.ring) {
            if (!seen.insert(member).second) {
                raise(Errc::corpus, "bad_schema",
                      "tx " + tx.tx_id + ": duplicate ring member " + member);
            }
        }
    }
}

}  // namespace

ChainIndex ChainIndex::build(std::vector<MoneroBlock> blocks, std::vector<MoneroTx> txs,
                             const FeeTierBounds* tiers) {
    ChainIndex index;

    std::sort(blocks.begin(), blocks.end(),
              [](const MoneroBlock& a, const MoneroBlock& b) { return a.height < b.height; });
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].height != static_cast<Height>(i)) {
            raise(Errc::corpus, "bad_schema",
                  "block heights must be contiguous from 0, got " + std::to_string(blocks[i].height) +
                      " at position " + std::to_string(i));
        }
        if (i > 0 && blocks[i].timestamp <= blocks[i - 1].timestamp) {
            raise(Errc::corpus, "non_monotonic_timestamps",
                  "block " + std::to_string(blocks[i].height) + " does not advance the clock");
        }
    }

    std::unordered_map<TxId, std::size_t> staged;
    staged.reserve(txs.size());
    for (std::size_t i = 0; i < txs.size(); ++i) {
        check_tx_invariants(txs[i]);
        if (!staged.emplace(txs[i].tx_id, i).second) {
            raise(Errc::corpus, "bad_schema", "duplicate tx id " + txs[i].tx_id);
        }
    }

    // Canonical arena order: blocks by height, txs by position in block.
    index.txs_.reserve(txs.size());
    index.block_txs_.resize(blocks.size());
    std::unordered_set<TxId> anchored;
    for (const MoneroBlock& block : blocks) {
        auto& slot = index.block_txs_[static_cast<std::size_t>(block.height)];
        slot.reserve(block.tx_ids.size());
        for (const TxId& id : block.tx_ids) {
            const auto it = staged.find(id);
            if (it == staged.end()) {
                raise(Errc::corpus, "bad_schema",
                      "block " + std::to_string(block.height) + " lists unknown tx " + id);
            }
            MoneroTx& tx = txs[it->second];
            if (tx.block_height != block.height) {
                raise(Errc::corpus, "bad_schema",
                      "tx " + id + " claims height " + std::to_string(tx.block_height) +
                          " but block " + std::to_string(block.height) + " lists it");
            }
            if (!anchored.insert(id).second) {
                raise(Errc::corpus, "bad_schema", "tx " + id + " listed in more than one block");
            }
            slot.push_back(static_cast<std::uint32_t>(index.txs_.size()));
            index.txs_.push_back(std::move(tx));
        }
    }
    if (anchored.size() != txs.size()) {
        for (const auto& entry : staged) {
            if (!anchored.contains(entry.first)) {
                raise(Errc::corpus, "bad_schema", "tx " + entry.first + " is not listed in any block");
            }
        }
    }

    index.tx_by_id_.reserve(index.txs_.size());
    for (std::uint32_t i = 0; i < index.txs_.size(); ++i) {
        index.tx_by_id_.emplace(index.txs_[i].tx_id, i);
    }

    index.outputs_.reserve(index.txs_.size() * 2);
    for (std::uint32_t i = 0; i < index.txs_.size(); ++i) {
        const MoneroTx& tx = index.txs_[i];
        for (std::uint32_t k = 0; k < tx.outputs.size(); ++k) {
            OutputRecord rec{tx.outputs[k].output_id, tx.tx_id, k, tx.block_height, i};
            if (!index.outputs_.emplace(rec.output_id, rec).second) {
                raise(Errc::corpus, "duplicate_output_id",
                      "output " + rec.output_id + " created twice");
            }
        }
        if (tiers && !tiers->consistent(tx.fee, tx.fee_tier)) {
            raise(Errc::corpus, "bad_schema",
                  "tx " + tx.tx_id + ": fee " + std::to_string(tx.fee) + " is not tier " +
                      to_string(tx.fee_tier));
        }
    }

    for (const MoneroTx& tx : index.txs_) {
        for (const MoneroInput& input : tx.inputs) {
            for (const OutputId& member : input.ring) {
                const auto it = index.outputs_.find(member);
                if (it == index.outputs_.end()) {
                    raise(Errc::corpus, "dangling_reference",
                          "tx " + tx.tx_id + " references unknown output " + member);
                }
                if (it->second.height > tx.block_height) {
                    raise(Errc::corpus, "dangling_reference",
                          "tx " + tx.tx_id + " references output " + member +
                              " created after it, at height " + std::to_string(it->second.height));
                }
            }
        }
    }

    index.blocks_ = std::move(blocks);
    return index;
}

Timestamp ChainIndex::time_of(Height height) const {
    if (!has_height(height)) {
        raise(Errc::corpus, "unknown_height", "no block at height " + std::to_string(height));
    }
    return blocks_[static_cast<std::size_t>(height)].timestamp;
}

const MoneroBlock& ChainIndex::block_at(Height height) const {
    if (!has_height(height)) {
        raise(Errc::corpus, "unknown_height", "no block at height " + std::to_string(height));
    }
    return blocks_[static_cast<std::size_t>(height)];
}

std::optional<std::uint32_t> ChainIndex::tx_index(const TxId& id) const {
    const auto it = tx_by_id_.find(id);
    if (it == tx_by_id_.end()) return std::nullopt;
    return it->second;
}

std::span<const std::uint32_t> ChainIndex::txs_in_block(Height height) const {
    if (!has_height(height)) {
        raise(Errc::corpus, "unknown_height", "no block at height " + std::to_string(height));
    }
    return block_txs_[static_cast<std::size_t>(height)];
}

const ChainIndex::OutputRecord* ChainIndex::find_output(const OutputId& id) const {
    const auto it = outputs_.find(id);
    return it == outputs_.end() ? nullptr : &it->second;
}

}  // namespace swapscan
