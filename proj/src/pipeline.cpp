// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "swapscan/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>
#include <unordered_set>

#include "json_util.hpp"
#include "swapscan/index.hpp"
#include "swapscan/match.hpp"
#include "swapscan/scan.hpp"

namespace swapscan {

namespace {

// Unordered triple key: the lock pair is a set, not a sequence.
std::string triple_key(const TxId& spend, const TxId& lock_x, const TxId& lock_y) {
    const TxId& lo = lock_x < lock_y ? lock_x : lock_y;
    const TxId& hi = lock_x < lock_y ? lock_y : lock_x;
    return spend + "|" + lo + "|" + hi;
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

}  // namespace

EvaluationReport evaluate(const EvalInputs& in) {
    require_same_corpus(in.candidates_meta.corpus, in.matches_meta.corpus,
                        "candidates vs matches");
    require_same_corpus(in.candidates_meta.corpus, in.btc_meta.corpus,
                        "candidates vs btc candidates");
    require_same_corpus(in.candidates_meta.corpus, in.ground_truth.corpus,
                        "candidates vs ground truth");

    EvaluationReport report;
    report.seed = in.ground_truth.seed;
    report.params_digest = in.candidates_meta.params_digest;
    report.corpus_digest = in.candidates_meta.corpus.combined();
    report.funnel = in.funnel;

    std::unordered_set<std::string> truth_all;
    std::unordered_set<std::string> truth_standard;
    std::unordered_set<std::string> truth_disputed;
    std::unordered_map<TradeId, const GroundTruthTrade*> truth_by_trade;
    for (const GroundTruthTrade& t : in.ground_truth.trades) {
        const std::string key = triple_key(t.spend_tx_id, t.lock_a_tx_id, t.lock_b_tx_id);
        truth_all.insert(key);
        (t.disputed ? truth_disputed : truth_standard).insert(key);
        truth_by_trade[t.trade_id] = &t;
    }
    report.truth_trades = static_cast<std::int64_t>(in.ground_truth.trades.size());
    report.truth_disputed = static_cast<std::int64_t>(truth_disputed.size());
    report.truth_standard = report.truth_trades - report.truth_disputed;

    std::unordered_set<std::string> detected;
    for (const SwapCandidate& c : in.candidates) {
        detected.insert(triple_key(c.spend_tx_id, c.lock_a_tx_id, c.lock_b_tx_id));
    }
    report.detected_swaps = static_cast<std::int64_t>(detected.size());
    std::int64_t hit_all = 0;
    std::int64_t hit_standard = 0;
    std::int64_t hit_disputed = 0;
    for (const std::string& key : detected) {
        if (truth_all.contains(key)) ++hit_all;
        if (truth_standard.contains(key)) ++hit_standard;
        if (truth_disputed.contains(key)) ++hit_disputed;
    }
    report.detected_true_swaps = hit_all;
    if (!detected.empty()) {
        report.swap_precision = static_cast<double>(hit_all) / static_cast<double>(detected.size());
    }
    if (!truth_standard.empty()) {
        report.swap_recall =
            static_cast<double>(hit_standard) / static_cast<double>(truth_standard.size());
    }
    if (!truth_disputed.empty()) {
        report.disputed_swap_recall =
            static_cast<double>(hit_disputed) / static_cast<double>(truth_disputed.size());
    }

    // Correlation: a standard trade counts when its own swap triple shows up
    // among the trade's candidates.
    report.matched_trades = static_cast<std::int64_t>(in.matches.size());
    report.unmatched_trades = static_cast<std::int64_t>(in.unmatched.size());
    std::int64_t correlated_true = 0;
    std::unordered_map<TradeId, const TradeSwapMatch*> match_by_trade;
    for (const TradeSwapMatch& m : in.matches) match_by_trade[m.trade_id] = &m;
    for (const GroundTruthTrade& t : in.ground_truth.trades) {
        if (t.disputed) continue;
        const auto it = match_by_trade.find(t.trade_id);
        if (it == match_by_trade.end()) continue;
        const std::string key = triple_key(t.spend_tx_id, t.lock_a_tx_id, t.lock_b_tx_id);
        for (const SwapCandidate& c : it->second->swaps) {
            if (triple_key(c.spend_tx_id, c.lock_a_tx_id, c.lock_b_tx_id) == key) {
                ++correlated_true;
                break;
            }
        }
    }
    if (report.truth_standard > 0) {
        report.correlation_recall =
            static_cast<double>(correlated_true) / static_cast<double>(report.truth_standard);
    }

    // BTC shortlists.
    report.trades_with_btc_candidates = 0;
    std::unordered_map<TradeId, const BtcCandidateSet*> set_by_trade;
    for (const BtcCandidateSet& s : in.btc_sets) {
        set_by_trade[s.trade_id] = &s;
        if (!s.candidates.empty()) ++report.trades_with_btc_candidates;
    }
    std::vector<double> sizes;
    std::vector<double> divisible_sizes;
    for (const BtcCandidateSet& s : in.btc_sets) {
        sizes.push_back(static_cast<double>(s.candidates.size()));
        std::int64_t divisible = 0;
        for (const BtcCandidate& c : s.candidates) {
            if (c.divisibility_ok) ++divisible;
        }
        divisible_sizes.push_back(static_cast<double>(divisible));
    }
    if (!sizes.empty()) {
        double total = 0;
        for (const double s : sizes) total += s;
        report.mean_candidates = total / static_cast<double>(sizes.size());
        report.median_candidates = median(sizes);
        report.median_divisible_candidates = median(divisible_sizes);
    }

    std::int64_t btc_hits = 0;
    std::int64_t rank1 = 0;
    for (const GroundTruthTrade& t : in.ground_truth.trades) {
        if (t.disputed) continue;
        const auto it = set_by_trade.find(t.trade_id);
        std::int64_t rank = 0;  // 0: absent
        if (it != set_by_trade.end()) {
            const auto& candidates = it->second->candidates;
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                if (candidates[i].btc_tx_id == t.btc_tx_id) {
                    rank = static_cast<std::int64_t>(i) + 1;
                    break;
                }
            }
        }
        if (rank == 0) {
            ++report.rank_of_truth["absent"];
        } else {
            ++btc_hits;
            if (rank == 1) ++rank1;
            ++report.rank_of_truth[rank <= 10 ? std::to_string(rank) : std::string("gt10")];
        }
    }
    if (report.truth_standard > 0) {
        report.btc_recall = static_cast<double>(btc_hits) / static_cast<double>(report.truth_standard);
        report.rank1_fraction =
            static_cast<double>(rank1) / static_cast<double>(report.truth_standard);
    }

    return report;
}

namespace {

Json optional_to_json(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

Json report_to_json_value(const EvaluationReport& r) {
    Json ranks = Json::object();
    for (const auto& [bucket, count] : r.rank_of_truth) ranks[bucket] = count;
    return Json{
        {"seed", r.seed},
        {"params_digest", r.params_digest},
        {"corpus_digest", r.corpus_digest},
        {"funnel",
         Json{{"total_txs", r.funnel.total_txs},
              {"spend_shape_txs", r.funnel.spend_shape_txs},
              {"spends_with_lock_pair", r.funnel.spends_with_lock_pair},
              {"candidates", r.funnel.candidates}}},
        {"truth",
         Json{{"trades", r.truth_trades},
              {"standard", r.truth_standard},
              {"disputed", r.truth_disputed}}},
        {"swaps",
         Json{{"detected", r.detected_swaps},
              {"detected_true", r.detected_true_swaps},
              {"precision", optional_to_json(r.swap_precision)},
              {"recall", optional_to_json(r.swap_recall)},
              {"disputed_recall", optional_to_json(r.disputed_swap_recall)}}},
        {"correlation",
         Json{{"matched_trades", r.matched_trades},
              {"unmatched_trades", r.unmatched_trades},
              {"recall", optional_to_json(r.correlation_recall)}}},
        {"btc",
         Json{{"trades_with_candidates", r.trades_with_btc_candidates},
              {"recall", optional_to_json(r.btc_recall)},
              {"mean_candidates", optional_to_json(r.mean_candidates)},
              {"median_candidates", optional_to_json(r.median_candidates)},
              {"median_divisible_candidates", optional_to_json(r.median_divisible_candidates)},
              {"rank1_fraction", optional_to_json(r.rank1_fraction)},
              {"rank_of_truth", ranks}}},
    };
}

std::string fmt_opt(const std::optional<double>& v) {
    if (!v) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", *v);
    return buf;
}

}  // namespace

std::string report_to_json(const EvaluationReport& report) {
    return report_to_json_value(report).dump(2) + "\n";
}

std::string report_to_text(const EvaluationReport& r) {
    std::string out;
    char line[256];
    const auto add = [&](const char* fmt, auto... args) {
        if constexpr (sizeof...(args) == 0) {
            out += fmt;
        } else {
            std::snprintf(line, sizeof line, fmt, args...);
            out += line;
        }
        out += '\n';
    };
    add("run summary");
    add("  seed            %llu", static_cast<unsigned long long>(r.seed));
    add("  corpus digest   %s", r.corpus_digest.c_str());
    add("  params digest   %s", r.params_digest.c_str());
    add("funnel");
    add("  total txs                %lld", static_cast<long long>(r.funnel.total_txs));
    add("  spend-shape txs          %lld", static_cast<long long>(r.funnel.spend_shape_txs));
    add("  spends with lock pair    %lld", static_cast<long long>(r.funnel.spends_with_lock_pair));
    add("  swap candidates          %lld", static_cast<long long>(r.funnel.candidates));
    add("ground truth: %lld trades (%lld standard, %lld disputed)",
        static_cast<long long>(r.truth_trades), static_cast<long long>(r.truth_standard),
        static_cast<long long>(r.truth_disputed));
    add("swap detection");
    add("  detected %lld (true %lld), precision %s, recall %s, disputed recall %s",
        static_cast<long long>(r.detected_swaps), static_cast<long long>(r.detected_true_swaps),
        fmt_opt(r.swap_precision).c_str(), fmt_opt(r.swap_recall).c_str(),
        fmt_opt(r.disputed_swap_recall).c_str());
    add("correlation");
    add("  matched %lld trades, unmatched %lld, true-swap recall %s",
        static_cast<long long>(r.matched_trades), static_cast<long long>(r.unmatched_trades),
        fmt_opt(r.correlation_recall).c_str());
    add("btc matching");
    add("  trades with candidates %lld, recall %s",
        static_cast<long long>(r.trades_with_btc_candidates), fmt_opt(r.btc_recall).c_str());
    add("  candidate-set size mean %s median %s, divisible-subset median %s",
        fmt_opt(r.mean_candidates).c_str(), fmt_opt(r.median_candidates).c_str(),
        fmt_opt(r.median_divisible_candidates).c_str());
    add("  rank-1 fraction %s", fmt_opt(r.rank1_fraction).c_str());
    std::string ranks = "  rank of truth:";
    for (const auto& [bucket, count] : r.rank_of_truth) {
        ranks += " " + bucket + "=" + std::to_string(count);
    }
    out += ranks;
    out += '\n';
    return out;
}

namespace {

// Stage errors keep their class and kind but name the failing stage.
template <typename F>
auto with_stage(const char* stage, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(e.code(), e.kind(), std::string("stage ") + stage + ": " + e.what());
    }
}

}  // namespace

EvaluationReport run_all(const GenConfig& config, const HeuristicParams& params,
                         const std::filesystem::path& out_dir) {
    config.validate();
    params.validate();
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path corpus_dir = out_dir / "corpus";

    save_gen_config(config, out_dir / "config.json");
    save_params(params, out_dir / "params.json");

    GeneratedCorpus generated = with_stage("generate", [&] { return generate_corpus(config); });
    const CorpusDigests digests = with_stage("generate", [&] {
        write_corpus(corpus_dir, generated.corpus);
        CorpusDigests d = digest_corpus(generated.corpus);
        write_corpus_meta(corpus_dir, config, d);
        return d;
    });
    GroundTruthFile gt{config.seed, digests, std::move(generated.ground_truth)};
    write_ground_truth(corpus_dir / kGroundTruthFile, gt);

    const std::string pdigest = params_digest(params);
    const StageMeta scan_meta{"scan", pdigest, digests};
    ScanResult scanned = with_stage("scan", [&] {
        const ChainIndex index = ChainIndex::build(generated.corpus.blocks,
                                                   generated.corpus.monero_txs, &config.fee_tiers);
        ScanResult result = scan(index, params);
        write_candidates(out_dir / "candidates.ndjson", scan_meta, result.candidates);
        write_funnel(out_dir / "funnel.json", scan_meta, result.funnel);
        return result;
    });

    const StageMeta correlate_meta{"correlate", pdigest, digests};
    CorrelationResult correlated = with_stage("correlate", [&] {
        CorrelationResult result =
            correlate(scanned.candidates, generated.corpus.trade_log, params);
        write_matches(out_dir / "matches.ndjson", correlate_meta, result.matches);
        write_unmatched(out_dir / "unmatched.ndjson", result.unmatched);
        return result;
    });

    const StageMeta match_meta{"match-btc", pdigest, digests};
    std::vector<BtcCandidateSet> btc_sets = with_stage("match-btc", [&] {
        auto sets = match_btc_all(correlated.matches, generated.corpus.trade_stats,
                                  generated.corpus.bitcoin_txs, params);
        write_btc_candidates(out_dir / "btc_candidates.ndjson", match_meta, sets);
        return sets;
    });

    EvalInputs inputs;
    inputs.candidates_meta = scan_meta;
    inputs.candidates = std::move(scanned.candidates);
    inputs.funnel = scanned.funnel;
    inputs.matches_meta = correlate_meta;
    inputs.matches = std::move(correlated.matches);
    inputs.unmatched = std::move(correlated.unmatched);
    inputs.btc_meta = match_meta;
    inputs.btc_sets = std::move(btc_sets);
    inputs.ground_truth = std::move(gt);

    const EvaluationReport report = with_stage("evaluate", [&] { return evaluate(inputs); });
    spit_file(out_dir / "report.json", report_to_json(report));
    spit_file(out_dir / "report.txt", report_to_text(report));
    return report;
}

}  // namespace swapscan
