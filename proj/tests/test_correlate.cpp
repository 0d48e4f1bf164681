// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "helpers.hpp"
#include "swapscan/correlate.hpp"
#include "swapscan/generate.hpp"
#include "swapscan/index.hpp"
#include "swapscan/scan.hpp"

using namespace swapscan;
using namespace swapscan::testing;

namespace {

SwapCandidate candidate_at(Timestamp spend_ts, const std::string& tag) {
    SwapCandidate c;
    c.spend_tx_id = "spend-" + tag;
    c.lock_a_tx_id = "la-" + tag;
    c.lock_b_tx_id = "lb-" + tag;
    c.spend_height = 1;
    c.spend_timestamp = spend_ts;
    c.lock_a_height = 0;
    c.lock_a_timestamp = spend_ts - 600;
    c.lock_b_height = 0;
    c.lock_b_timestamp = spend_ts - 600;
    return c;
}

}  // namespace

TEST_CASE("empty candidate list leaves every trade unmatched") {
    const std::vector<TradeLogEvent> log{{"T1", 1'000}, {"T2", 2'000}};
    const CorrelationResult result = correlate({}, log, HeuristicParams{});
    CHECK(result.matches.empty());
    REQUIRE(result.unmatched.size() == 2);
    CHECK(result.unmatched[0].trade_id == "T1");
    CHECK(result.unmatched[1].trade_id == "T2");
}

TEST_CASE("window membership is the closed interval") {
    const Timestamp broadcast = 100'000;
    const HeuristicParams params;  // [-60, +600]
    const std::vector<TradeLogEvent> log{{"T1", broadcast}};

    const std::vector<SwapCandidate> candidates{
        candidate_at(broadcast - 61, "before-out"),
        candidate_at(broadcast - 60, "before-edge"),
        candidate_at(broadcast, "exact"),
        candidate_at(broadcast + 120, "inside"),
        candidate_at(broadcast + 600, "after-edge"),
        candidate_at(broadcast + 601, "after-out"),
    };
    const CorrelationResult result = correlate(candidates, log, params);
    REQUIRE(result.matches.size() == 1);
    std::set<TxId> spends;
    for (const SwapCandidate& c : result.matches[0].swaps) spends.insert(c.spend_tx_id);
    CHECK(spends == std::set<TxId>{"spend-before-edge", "spend-exact", "spend-inside",
                                   "spend-after-edge"});
    CHECK(result.matches[0].window_before_s == 60);
    CHECK(result.matches[0].window_after_s == 600);
}

TEST_CASE("one swap can serve several trades") {
    const std::vector<TradeLogEvent> log{{"T1", 1'000}, {"T2", 1'250}};
    const std::vector<SwapCandidate> candidates{candidate_at(1'200, "shared")};
    const CorrelationResult result = correlate(candidates, log, HeuristicParams{});
    REQUIRE(result.matches.size() == 2);
    CHECK(result.matches[0].swaps.front().spend_tx_id == "spend-shared");
    CHECK(result.matches[1].swaps.front().spend_tx_id == "spend-shared");
    CHECK(result.unmatched.empty());
}

TEST_CASE("shrinking the window never adds matches") {
    Rng rng(7);
    std::vector<SwapCandidate> candidates;
    for (int i = 0; i < 200; ++i) {
        candidates.push_back(candidate_at(rng.range_i64(0, 20'000), "c" + std::to_string(i)));
    }
    std::vector<TradeLogEvent> log;
    for (int i = 0; i < 40; ++i) {
        log.push_back(TradeLogEvent{"T" + std::to_string(i), rng.range_i64(0, 20'000)});
    }

    HeuristicParams wide;
    wide.correlate_before_s = 120;
    wide.correlate_after_s = 1'200;
    HeuristicParams narrow;
    narrow.correlate_before_s = 30;
    narrow.correlate_after_s = 300;

    const CorrelationResult wide_result = correlate(candidates, log, wide);
    const CorrelationResult narrow_result = correlate(candidates, log, narrow);

    std::map<TradeId, std::set<TxId>> wide_map;
    for (const TradeSwapMatch& m : wide_result.matches) {
        for (const SwapCandidate& c : m.swaps) wide_map[m.trade_id].insert(c.spend_tx_id);
    }
    for (const TradeSwapMatch& m : narrow_result.matches) {
        REQUIRE(wide_map.contains(m.trade_id));
        for (const SwapCandidate& c : m.swaps) {
            CHECK(wide_map[m.trade_id].contains(c.spend_tx_id));
        }
    }
}

TEST_CASE("planted trades correlate to their own swaps") {
    const GenConfig config = small_config(61, 14, true);
    GeneratedCorpus generated = generate_corpus(config);
    const ChainIndex index =
        ChainIndex::build(generated.corpus.blocks, generated.corpus.monero_txs);
    const HeuristicParams params;
    const ScanResult scanned = scan(index, params);
    const CorrelationResult result =
        correlate(scanned.candidates, generated.corpus.trade_log, params);

    std::map<TradeId, const TradeSwapMatch*> by_trade;
    for (const TradeSwapMatch& m : result.matches) by_trade[m.trade_id] = &m;

    for (const GroundTruthTrade& t : generated.ground_truth) {
        if (t.disputed) continue;
        CAPTURE(t.trade_id);
        REQUIRE(by_trade.contains(t.trade_id));
        const Triple truth = make_triple(t.spend_tx_id, t.lock_a_tx_id, t.lock_b_tx_id);
        bool found = false;
        for (const SwapCandidate& c : by_trade[t.trade_id]->swaps) {
            if (make_triple(c.spend_tx_id, c.lock_a_tx_id, c.lock_b_tx_id) == truth) {
                found = true;
                break;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("spends delayed by eleven minutes fall out of the window") {
    const GenConfig config = small_config(62, 10, false);
    GeneratedCorpus generated = generate_corpus(config);
    const ChainIndex index =
        ChainIndex::build(generated.corpus.blocks, generated.corpus.monero_txs);
    const HeuristicParams params;
    ScanResult scanned = scan(index, params);

    for (SwapCandidate& c : scanned.candidates) c.spend_timestamp += 11 * 60;
    const CorrelationResult result =
        correlate(scanned.candidates, generated.corpus.trade_log, params);

    for (const GroundTruthTrade& t : generated.ground_truth) {
        const Triple truth = make_triple(t.spend_tx_id, t.lock_a_tx_id, t.lock_b_tx_id);
        for (const TradeSwapMatch& m : result.matches) {
            if (m.trade_id != t.trade_id) continue;
            for (const SwapCandidate& c : m.swaps) {
                CHECK(make_triple(c.spend_tx_id, c.lock_a_tx_id, c.lock_b_tx_id) != truth);
            }
        }
    }
}
