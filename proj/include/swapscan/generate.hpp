// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "swapscan/rational.hpp"
#include "swapscan/rng.hpp"
#include "swapscan/types.hpp"

namespace swapscan {

// Mixture over planted trade amounts. Even amounts are integer multiples
// of a divisibility step; four-decimal amounts stop at 1e-4 XMR; free
// amounts use full piconero granularity (and are not exactly recoverable
// through satoshi rounding, so they default to weight zero).
struct AmountProfile {
    double even = 0.8;
    double four_decimal = 0.2;
    double free = 0.0;
};

// Background transaction shape mixture. The 2-in/2-out weight fixes how
// selective the structural filter stage is.
struct ShapeWeights {
    double in1_out1 = 0.32;
    double in1_out2 = 0.58;
    double in2_out2 = 0.04;
    double in3_out2 = 0.06;
};

struct RateStep {
    std::int64_t from_offset_s = 0;  // seconds after corpus start
    Rational sat_per_xmr{400'000, 1};
};

struct GenConfig {
    std::uint64_t seed = 1;
    std::int64_t n_blocks = 7'500;
    std::int64_t block_time_s = 120;
    Timestamp start_time = 1'600'000'000;

    double background_txs_per_block = 7.0;  // Poisson mean
    ShapeWeights shape_weights;
    std::array<double, 4> background_fee_tier_probs{0.55, 0.35, 0.08, 0.02};
    FeeTierBounds fee_tiers;
    int genesis_txs = 48;          // block-0 bootstrap, outputs seed the rings
    std::int64_t decoy_window = 2'048;  // trailing outputs eligible as decoys

    int ring_size = 16;
    std::int64_t n_planted_trades = 220;
    Rational fraction_disputed{1, 11};  // disputed payouts miss the 24h window
    AmountProfile amount_profile;
    std::vector<Rational> even_amount_steps{{1, 1}, {1, 2}, {1, 4}, {1, 10}};  // XMR
    Piconero min_trade_xmr = 100'000'000'000;        // 0.1 XMR
    Piconero max_trade_xmr = 50'000'000'000'000;     // 50 XMR
    FeeTier trade_fee_tier = FeeTier::elevated;

    std::vector<RateStep> rate_schedule{RateStep{}};
    double btc_background_per_hour = 20.0;
    double btc_confusable_fraction = 0.03;  // background amounts that mimic even trades
    Satoshi btc_background_min_sat = 10'000;
    Satoshi btc_background_max_sat = 1'000'000'000;

    std::int64_t stat_shift_max_s = 86'400;
    Rational obfuscation_fraction{5, 100};

    void validate() const;  // throws config_infeasible / usage
};

GenConfig load_gen_config(const std::filesystem::path& file);
void save_gen_config(const GenConfig& config, const std::filesystem::path& file);

// Per-trade manifest entry. Non-disputed trades satisfy the full on-chain
// pattern by construction; disputed ones violate the payout window.
struct GroundTruthTrade {
    TradeId trade_id;
    TxId lock_a_tx_id;
    TxId lock_b_tx_id;
    TxId spend_tx_id;
    Piconero true_xmr_amount = 0;
    TxId btc_tx_id;
    Timestamp completion_timestamp = 0;
    bool disputed = false;
};

struct Corpus {
    std::vector<MoneroBlock> blocks;
    std::vector<MoneroTx> monero_txs;
    std::vector<BitcoinTx> bitcoin_txs;
    std::vector<TradeStatRecord> trade_stats;
    std::vector<TradeLogEvent> trade_log;
};

struct GeneratedCorpus {
    Corpus corpus;
    std::vector<GroundTruthTrade> ground_truth;
};

// Deterministic for a fixed config (the seed is part of it). Generation is
// single-threaded on purpose.
GeneratedCorpus generate_corpus(const GenConfig& config);

// Ring containing `real` plus ring_size-1 distinct decoys drawn uniformly
// from the trailing window; member order shuffled. Throws
// insufficient_decoys when the window cannot supply enough.
MoneroInput sample_ring(std::span<const OutputId> window, const OutputId& real,
                        int ring_size, Rng& rng);

struct StatFields {
    Piconero published_xmr_amount = 0;
    Timestamp published_timestamp = 0;
};

// published = round(true * f) with f ~ Uniform[1-d, 1+d] on a fine fixed-
// point grid (exact integer arithmetic, no float rounding); timestamp
// shifted by Uniform[0, shift_max].
StatFields obfuscate_stat(Piconero true_xmr, Timestamp completion_ts, const Rational& delta,
                          std::int64_t shift_max_s, Rng& rng);

// Rate in effect at a given time under the schedule.
Rational rate_at(std::span<const RateStep> schedule, Timestamp start_time, Timestamp t);

}  // namespace swapscan
