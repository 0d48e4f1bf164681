// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "swapscan/generate.hpp"
#include "swapscan/io.hpp"

namespace swapscan {

// Metrics of one full run against the planted ground truth. Recall fields
// are absent when the corpus has no applicable trades.
struct EvaluationReport {
    std::uint64_t seed = 0;
    std::string params_digest;
    std::string corpus_digest;

    FunnelReport funnel;

    std::int64_t truth_trades = 0;
    std::int64_t truth_standard = 0;
    std::int64_t truth_disputed = 0;

    // Swap detection over (spend, lockA, lockB) triples.
    std::int64_t detected_swaps = 0;
    std::int64_t detected_true_swaps = 0;
    std::optional<double> swap_precision;
    std::optional<double> swap_recall;            // over standard trades
    std::optional<double> disputed_swap_recall;   // should be 0

    // Trade correlation.
    std::int64_t matched_trades = 0;
    std::int64_t unmatched_trades = 0;
    std::optional<double> correlation_recall;  // standard trades matched to their true swap

    // BTC shortlists.
    std::int64_t trades_with_btc_candidates = 0;
    std::optional<double> btc_recall;  // true payment present in its trade's set
    std::optional<double> mean_candidates;
    std::optional<double> median_candidates;
    std::optional<double> median_divisible_candidates;
    std::optional<double> rank1_fraction;         // true payment ranked first
    std::map<std::string, std::int64_t> rank_of_truth;  // "1".."10", "gt10", "absent"
};

struct EvalInputs {
    StageMeta candidates_meta;
    std::vector<SwapCandidate> candidates;
    FunnelReport funnel;
    StageMeta matches_meta;
    std::vector<TradeSwapMatch> matches;
    std::vector<TradeLogEvent> unmatched;
    StageMeta btc_meta;
    std::vector<BtcCandidateSet> btc_sets;
    GroundTruthFile ground_truth;
};

// Pure metric computation; throws corpus_mismatch when the inputs carry
// different corpus digests.
EvaluationReport evaluate(const EvalInputs& inputs);

std::string report_to_json(const EvaluationReport& report);
std::string report_to_text(const EvaluationReport& report);

// generate -> scan -> correlate -> match-btc -> evaluate, every stage
// output written under out_dir so any stage can be re-run in isolation.
EvaluationReport run_all(const GenConfig& config, const HeuristicParams& params,
                         const std::filesystem::path& out_dir);

}  // namespace swapscan
