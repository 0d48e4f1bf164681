// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0
//
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any fail. Thresholds are fixed here, not
// tunable from outside.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oracle.hpp"
#include "swapscan/correlate.hpp"
#include "swapscan/generate.hpp"
#include "swapscan/index.hpp"
#include "swapscan/match.hpp"
#include "swapscan/pipeline.hpp"
#include "swapscan/scan.hpp"

using namespace swapscan;
using namespace swapscan::testing;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(bool pass, const std::string& name, const std::string& detail) {
    std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string file_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct DefaultRun {
    GeneratedCorpus generated;
    std::vector<SwapCandidate> candidates;
    FunnelReport funnel;
    double scan_seconds = 0;
    std::int64_t background_txs = 0;
};

// Default corpus: >= 50,000 background txs, 200 standard + 20 disputed trades.
DefaultRun run_default_corpus() {
    GenConfig config;  // defaults: 7500 blocks, 7 tx/block, 220 trades at 1/11 disputed
    config.seed = 20'260'808;

    DefaultRun run;
    const auto t0 = Clock::now();
    run.generated = generate_corpus(config);
    const ChainIndex index =
        ChainIndex::build(run.generated.corpus.blocks, run.generated.corpus.monero_txs);
    ScanResult scanned = scan(index, HeuristicParams{});
    run.scan_seconds = seconds_since(t0);
    run.candidates = std::move(scanned.candidates);
    run.funnel = scanned.funnel;
    run.background_txs = run.funnel.total_txs - config.genesis_txs -
                         3 * config.n_planted_trades;  // two locks and a spend per trade
    return run;
}

void criterion_recall_by_construction(const DefaultRun& run) {
    const auto detected = triples_of(run.candidates);
    const auto standard = truth_triples(run.generated.ground_truth, false);
    const auto disputed = truth_triples(run.generated.ground_truth, true);

    std::size_t standard_hit = 0;
    for (const Triple& t : standard) standard_hit += detected.contains(t);
    std::size_t disputed_hit = 0;
    for (const Triple& t : disputed) disputed_hit += detected.contains(t);

    char detail[256];
    std::snprintf(detail, sizeof detail,
                  "standard %zu/%zu, disputed %zu/%zu, background txs %lld, scan %.1fs",
                  standard_hit, standard.size(), disputed_hit, disputed.size(),
                  static_cast<long long>(run.background_txs), run.scan_seconds);
    const bool pass = standard.size() == 200 && disputed.size() == 20 &&
                      standard_hit == standard.size() && disputed_hit == 0 &&
                      run.background_txs >= 50'000 && run.scan_seconds < 60.0;
    report(pass, "recall-by-construction", detail);
}

void criterion_oracle_equivalence() {
    int exact = 0;
    const int corpora = 20;
    std::int64_t max_txs = 0;
    for (int i = 0; i < corpora; ++i) {
        Rng knobs(9'000 + static_cast<std::uint64_t>(i));
        GenConfig config;
        config.seed = 77'000 + static_cast<std::uint64_t>(i);
        config.n_blocks = 460 + static_cast<std::int64_t>(knobs.below(120));
        config.block_time_s = 300;
        config.background_txs_per_block = 1.0 + knobs.unit() * 2.0;
        config.genesis_txs = 16;
        config.ring_size = 4 + static_cast<int>(knobs.below(5));
        config.n_planted_trades = static_cast<std::int64_t>(knobs.below(6));
        config.fraction_disputed = Rational(1, 4);

        GeneratedCorpus generated = generate_corpus(config);
        max_txs = std::max(max_txs, static_cast<std::int64_t>(generated.corpus.monero_txs.size()));
        if (generated.corpus.monero_txs.size() > 2'000) continue;  // counts as failure below

        const ChainIndex index =
            ChainIndex::build(generated.corpus.blocks, generated.corpus.monero_txs);
        const HeuristicParams params;
        const auto detected = triples_of(scan(index, params).candidates);
        const auto expected =
            oracle_scan(generated.corpus.blocks, generated.corpus.monero_txs, params);
        if (detected == expected) ++exact;
    }
    char detail[128];
    std::snprintf(detail, sizeof detail, "%d/%d corpora exact (largest %lld txs)", exact, corpora,
                  static_cast<long long>(max_txs));
    report(exact == corpora && max_txs <= 2'000, "oracle-equivalence", detail);
}

void criterion_funnel_shape() {
    bool pass = true;
    std::string detail;
    for (std::uint64_t seed = 501; seed <= 505; ++seed) {
        GenConfig config;
        config.seed = seed;
        config.n_blocks = 2'600;
        config.n_planted_trades = 60;
        config.fraction_disputed = Rational(1, 12);

        GeneratedCorpus generated = generate_corpus(config);
        const ChainIndex index =
            ChainIndex::build(generated.corpus.blocks, generated.corpus.monero_txs);
        const ScanResult scanned = scan(index, HeuristicParams{});
        const double pct = 100.0 * static_cast<double>(scanned.funnel.spend_shape_txs) /
                           static_cast<double>(scanned.funnel.total_txs);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f%% ", pct);
        detail += buf;
        // 3-5% nominal band with +-1pp tolerance.
        if (pct < 2.0 || pct > 6.0) pass = false;
    }
    report(pass, "funnel-shape", "spend-shape stage passes " + detail + "(band 2-6%)");
}

void criterion_correlation(const DefaultRun& run) {
    const HeuristicParams params;
    const CorrelationResult correlated =
        correlate(run.candidates, run.generated.corpus.trade_log, params);

    std::map<TradeId, const TradeSwapMatch*> by_trade;
    for (const TradeSwapMatch& m : correlated.matches) by_trade[m.trade_id] = &m;
    const auto true_swap_matched = [&](const GroundTruthTrade& t,
                                       const CorrelationResult& result) {
        (void)result;
        const auto it = by_trade.find(t.trade_id);
        if (it == by_trade.end()) return false;
        const Triple truth = make_triple(t.spend_tx_id, t.lock_a_tx_id, t.lock_b_tx_id);
        for (const SwapCandidate& c : it->second->swaps) {
            if (make_triple(c.spend_tx_id, c.lock_a_tx_id, c.lock_b_tx_id) == truth) return true;
        }
        return false;
    };

    std::size_t standard_total = 0;
    std::size_t matched = 0;
    for (const GroundTruthTrade& t : run.generated.ground_truth) {
        if (t.disputed) continue;
        ++standard_total;
        matched += true_swap_matched(t, correlated);
    }
    const double recall =
        standard_total == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(standard_total);

    // Perturbation: delaying every spend by 11 minutes must clear the window.
    std::vector<SwapCandidate> delayed = run.candidates;
    for (SwapCandidate& c : delayed) c.spend_timestamp += 11 * 60;
    const CorrelationResult perturbed =
        correlate(delayed, run.generated.corpus.trade_log, params);
    by_trade.clear();
    for (const TradeSwapMatch& m : perturbed.matches) by_trade[m.trade_id] = &m;
    std::size_t perturbed_matched = 0;
    for (const GroundTruthTrade& t : run.generated.ground_truth) {
        if (t.disputed) continue;
        perturbed_matched += true_swap_matched(t, perturbed);
    }

    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "recall %.4f (need >= 0.98), 11-min delayed true-swap matches %zu (need 0)",
                  recall, perturbed_matched);
    report(recall >= 0.98 && perturbed_matched == 0, "correlation", detail);
}

void criterion_btc_deobfuscation() {
    Rng rng(0xacce97);
    const HeuristicParams params;
    const std::vector<Rational> rates{
        {400'000, 1}, {380'000, 1}, {250'000, 1}, {1'200'000, 1}, {90'000, 1}};
    const std::vector<Rational> steps{{1, 1}, {1, 2}, {1, 4}, {1, 10}};

    const int trials = 10'000;
    int recalled = 0;
    for (int i = 0; i < trials; ++i) {
        // Profile amount: even or four-decimal, as the generator plants them.
        Piconero true_xmr;
        if (rng.chance(0.8)) {
            const Rational& step = steps[rng.below(steps.size())];
            const Piconero step_pn =
                kPiconeroPerXmr * step.num / step.den;
            true_xmr = step_pn * rng.range_i64(1, 200);
        } else {
            true_xmr = 100'000'000 * rng.range_i64(1, 500'000);
        }
        const Rational& rate = rates[i % rates.size()];
        const Satoshi payment = static_cast<Satoshi>(
            floor_div(2 * Int128(true_xmr) * rate.num + Int128(rate.den) * kPiconeroPerXmr,
                      2 * Int128(rate.den) * kPiconeroPerXmr));

        const StatFields stat = obfuscate_stat(true_xmr, 1'000'000, Rational(5, 100), 0, rng);
        TradeStatRecord record{"T", stat.published_xmr_amount, rate, stat.published_timestamp};

        TradeSwapMatch match;
        match.trade_id = "T";
        SwapCandidate c;
        c.spend_tx_id = "s";
        c.lock_a_timestamp = 0;
        c.lock_b_timestamp = 0;
        c.spend_timestamp = 2'000'000;
        match.swaps.push_back(c);

        const std::vector<BitcoinTx> btc{{"payment", 500'000, {payment}}};
        const BtcCandidateSet set = match_btc(match, record, btc, params);
        bool found = false;
        for (const BtcCandidate& cand : set.candidates) {
            if (cand.btc_tx_id == "payment") found = true;
        }
        recalled += found;
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "%d/%d trials recalled the planted payment", recalled,
                  trials);
    report(recalled == trials, "btc-deobfuscation-recall", detail);
}

void criterion_candidate_reduction(const DefaultRun& run) {
    const HeuristicParams params;
    const CorrelationResult correlated =
        correlate(run.candidates, run.generated.corpus.trade_log, params);
    const auto sets = match_btc_all(correlated.matches, run.generated.corpus.trade_stats,
                                    run.generated.corpus.bitcoin_txs, params);

    std::vector<std::int64_t> divisible_sizes;
    for (const BtcCandidateSet& s : sets) {
        std::int64_t n = 0;
        for (const BtcCandidate& c : s.candidates) n += c.divisibility_ok;
        divisible_sizes.push_back(n);
    }
    std::sort(divisible_sizes.begin(), divisible_sizes.end());
    const double median_divisible =
        divisible_sizes.empty()
            ? 0.0
            : (divisible_sizes.size() % 2 == 1
                   ? static_cast<double>(divisible_sizes[divisible_sizes.size() / 2])
                   : (static_cast<double>(divisible_sizes[divisible_sizes.size() / 2 - 1]) +
                      static_cast<double>(divisible_sizes[divisible_sizes.size() / 2])) /
                         2.0);

    std::map<TradeId, const BtcCandidateSet*> by_trade;
    for (const BtcCandidateSet& s : sets) by_trade[s.trade_id] = &s;
    std::size_t standard_total = 0;
    std::size_t rank1 = 0;
    for (const GroundTruthTrade& t : run.generated.ground_truth) {
        if (t.disputed) continue;
        ++standard_total;
        const auto it = by_trade.find(t.trade_id);
        if (it == by_trade.end() || it->second->candidates.empty()) continue;
        rank1 += it->second->candidates.front().btc_tx_id == t.btc_tx_id;
    }
    const double rank1_fraction =
        standard_total == 0 ? 0.0 : static_cast<double>(rank1) / static_cast<double>(standard_total);

    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "median divisible-set size %.1f (need <= 3), rank-1 %.4f (need >= 0.60)",
                  median_divisible, rank1_fraction);
    report(median_divisible <= 3.0 && rank1_fraction >= 0.60, "candidate-reduction", detail);
}

void criterion_determinism() {
    const fs::path dir_a = fs::temp_directory_path() / "swapscan_accept_det_a";
    const fs::path dir_b = fs::temp_directory_path() / "swapscan_accept_det_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    const GenConfig config = small_config(4'242, 12, true);
    const HeuristicParams params;
    (void)run_all(config, params, dir_a);
    (void)run_all(config, params, dir_b);

    bool identical = true;
    for (const char* name :
         {"report.json", "report.txt", "candidates.ndjson", "matches.ndjson",
          "btc_candidates.ndjson", "funnel.json", "unmatched.ndjson"}) {
        if (file_bytes(dir_a / name) != file_bytes(dir_b / name)) identical = false;
    }
    report(identical, "determinism", identical ? "two runs, byte-identical reports and stages"
                                               : "outputs differ between identical runs");
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

void criterion_exact_arithmetic() {
    Rng rng(0xe8ac7);
    const std::vector<Rational> steps{{1, 1}, {1, 2}, {1, 4}, {1, 10}};
    int disagreements = 0;
    const int trials = 10'000;
    for (int i = 0; i < trials; ++i) {
        const std::int64_t num = rng.range_i64(1, 2'000'000'000'000);
        const std::int64_t den = rng.range_i64(1, 2'000'000);
        const Rational x(num, den);

        const int d = static_cast<int>(rng.below(13));
        const bool direct = (Int128(num) * pow10_i64(d)) % den == 0;
        if (has_max_decimals(x, d) != direct) ++disagreements;

        bool oracle_even = false;
        for (const Rational& s : steps) {
            if ((Int128(num) * s.den) % (Int128(den) * s.num) == 0) oracle_even = true;
        }
        if (is_even_amount(x, steps) != oracle_even) ++disagreements;
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "%d disagreements in %d random rationals", disagreements,
                  trials);
    report(disagreements == 0, "exact-arithmetic", detail);
}

}  // namespace

int main() {
    std::printf("swapscan acceptance suite\n");
    const auto t0 = Clock::now();

    const DefaultRun run = run_default_corpus();
    criterion_recall_by_construction(run);
    criterion_oracle_equivalence();
    criterion_funnel_shape();
    criterion_correlation(run);
    criterion_btc_deobfuscation();
    criterion_candidate_reduction(run);
    criterion_determinism();
    criterion_exact_arithmetic();

    std::printf("%s (%d failures, %.1fs total)\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
                g_failures, seconds_since(t0));
    return g_failures == 0 ? 0 : 1;
}
