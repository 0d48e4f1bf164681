// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "swapscan/rational.hpp"

namespace swapscan {

using TxId = std::string;
using OutputId = std::string;
using TradeId = std::string;
using Height = std::int64_t;
using Timestamp = std::int64_t;  // seconds since epoch
using Piconero = std::int64_t;   // 1 XMR = 1e12 piconero
using Satoshi = std::int64_t;    // 1 BTC = 1e8 satoshi

constexpr Piconero kPiconeroPerXmr = 1'000'000'000'000;

enum class FeeTier : int { low = 0, normal = 1, elevated = 2, high = 3 };

const char* to_string(FeeTier tier);
FeeTier fee_tier_from_string(const std::string& s);

// Lower fee bound per tier; a fee belongs to the highest tier whose bound
// it reaches. The boundaries are corpus metadata, not protocol constants.
struct FeeTierBounds {
    std::array<Piconero, 4> lower{1'000'000, 30'000'000, 150'000'000, 750'000'000};

    FeeTier classify(Piconero fee) const;
    bool consistent(Piconero fee, FeeTier tier) const { return classify(fee) == tier; }
};

struct MoneroOutput {
    OutputId output_id;
};

struct MoneroInput {
    std::vector<OutputId> ring;  // ordered ring member references, distinct
};

struct MoneroTx {
    TxId tx_id;
    Height block_height = 0;
    std::vector<MoneroInput> inputs;
    std::vector<MoneroOutput> outputs;
    Piconero fee = 0;
    FeeTier fee_tier = FeeTier::low;
};

struct MoneroBlock {
    Height height = 0;
    Timestamp timestamp = 0;
    std::vector<TxId> tx_ids;
};

struct BitcoinTx {
    TxId tx_id;
    Timestamp timestamp = 0;
    std::vector<Satoshi> amounts;  // candidate payment outputs
};

// Public, obfuscated statistics record. The amount carries the +-5%-style
// multiplicative noise and the timestamp the 0..24h shift; the exchange
// rate is exact.
struct TradeStatRecord {
    TradeId trade_id;
    Piconero published_xmr_amount = 0;
    Rational exchange_rate;  // satoshi per whole XMR
    Timestamp published_timestamp = 0;
};

// Timely network broadcast on trade completion; leaks the accurate time.
struct TradeLogEvent {
    TradeId trade_id;
    Timestamp broadcast_timestamp = 0;
};

enum class BtcAmountMode { per_output, total };

struct HeuristicParams {
    std::int64_t lock_window_s = 86'400;       // payout deadline after the locks
    int neighbor_block_tolerance = 1;          // lock pair may straddle blocks
    std::int64_t correlate_before_s = 60;      // spend mined up to 1 min before broadcast
    std::int64_t correlate_after_s = 600;      // ... or up to 10 min after
    Rational obfuscation_fraction{5, 100};
    int max_decimal_digits = 4;
    std::vector<Rational> divisibility_steps{{1, 1}, {1, 2}, {1, 4}, {1, 10}};  // XMR
    FeeTier required_fee_tier = FeeTier::elevated;

    // Resolution toggles; defaults keep the filters maximally selective.
    bool require_equal_lock_fees = true;
    bool symmetric_range = false;  // [p(1-d), p(1+d)] instead of the exact preimage
    BtcAmountMode btc_amount_mode = BtcAmountMode::per_output;

    void validate() const;  // throws Errc::usage on violation
};

HeuristicParams load_params(const std::filesystem::path& file);
void save_params(const HeuristicParams& params, const std::filesystem::path& file);
std::string params_digest(const HeuristicParams& params);

}  // namespace swapscan
