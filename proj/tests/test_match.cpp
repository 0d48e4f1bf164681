// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <algorithm>
#include <map>

#include "helpers.hpp"
#include "swapscan/errors.hpp"
#include "swapscan/generate.hpp"
#include "swapscan/match.hpp"
#include "swapscan/rng.hpp"

using namespace swapscan;
using namespace swapscan::testing;

namespace {

TradeStatRecord stat_of(Piconero published, const Rational& rate) {
    TradeStatRecord s;
    s.trade_id = "T1";
    s.published_xmr_amount = published;
    s.exchange_rate = rate;
    s.published_timestamp = 0;
    return s;
}

TradeSwapMatch match_with_window(Timestamp lock_ts, Timestamp spend_ts) {
    TradeSwapMatch m;
    m.trade_id = "T1";
    m.broadcast_timestamp = spend_ts;
    m.window_before_s = 60;
    m.window_after_s = 600;
    SwapCandidate c;
    c.spend_tx_id = "spend";
    c.lock_a_tx_id = "la";
    c.lock_b_tx_id = "lb";
    c.spend_timestamp = spend_ts;
    c.lock_a_timestamp = lock_ts;
    c.lock_b_timestamp = lock_ts;
    m.swaps.push_back(std::move(c));
    return m;
}

BitcoinTx btc_tx(const TxId& id, Timestamp ts, std::vector<Satoshi> amounts) {
    return BitcoinTx{id, ts, std::move(amounts)};
}

}  // namespace

TEST_CASE("true_amount_range inverts the multiplicative obfuscation") {
    HeuristicParams params;
    SUBCASE("zero obfuscation degenerates to a point") {
        params.obfuscation_fraction = Rational(0, 1);
        const AmountRange r = true_amount_range(stat_of(123'456, Rational(1, 1)), params);
        CHECK(r.lo == 123'456);
        CHECK(r.hi == 123'456);
    }
    SUBCASE("published 10 XMR at five percent") {
        const Piconero published = 10 * kPiconeroPerXmr;
        const AmountRange r = true_amount_range(stat_of(published, Rational(1, 1)), params);
        // Exact rational oracle: [p*20/21, p*20/19] rounded outward.
        const Piconero lo_expected =
            static_cast<Piconero>(floor_div(Int128(published) * 20, 21));
        const Piconero hi_expected =
            static_cast<Piconero>(ceil_div(Int128(published) * 20, 19));
        CHECK(r.lo == lo_expected);
        CHECK(r.hi == hi_expected);
        CHECK(r.lo == 9'523'809'523'809);   // 9.523809... XMR floor
        CHECK(r.hi == 10'526'315'789'474);  // 10.526315... XMR ceil
    }
    SUBCASE("symmetric variant widens symmetrically") {
        params.symmetric_range = true;
        const AmountRange r =
            true_amount_range(stat_of(10 * kPiconeroPerXmr, Rational(1, 1)), params);
        CHECK(r.lo == 9'500'000'000'000);
        CHECK(r.hi == 10'500'000'000'000);
    }
}

TEST_CASE("implied_xmr computes the exact rational quotient") {
    CHECK(implied_xmr(2'000'000, Rational(400'000, 1)) == Rational(5, 1));
    // 123457 / 400000 = 0.3086425 exactly, seven decimal digits.
    CHECK(implied_xmr(123'457, Rational(400'000, 1)) == Rational(3'086'425, 10'000'000));
    CHECK_FALSE(has_max_decimals(implied_xmr(123'457, Rational(400'000, 1)), 4));
    CHECK(has_max_decimals(implied_xmr(2'000'000, Rational(400'000, 1)), 4));
    CHECK_THROWS_AS(implied_xmr(1'000, Rational(0, 1)), Error);
}

TEST_CASE("monte carlo: the true amount always survives the reversal") {
    Rng rng(2026);
    HeuristicParams params;
    const std::vector<Rational> rates{
        {400'000, 1}, {380'000, 1}, {250'000, 1}, {1'000'000, 1}, {90'000, 1}};
    int in_range = 0;
    const int trials = 10'000;
    for (int i = 0; i < trials; ++i) {
        // Amounts on the 4-decimal grid, the profile planted trades use.
        const Piconero true_xmr = rng.range_i64(1, 500'000) * 100'000'000;
        const StatFields stat =
            obfuscate_stat(true_xmr, 0, params.obfuscation_fraction, 0, rng);
        const AmountRange range =
            true_amount_range(stat_of(stat.published_xmr_amount, rates[i % rates.size()]), params);
        if (range.lo <= true_xmr && true_xmr <= range.hi) ++in_range;
    }
    CHECK(in_range == trials);
}

TEST_CASE("match_btc keeps only in-window, in-range, decimal-clean txs") {
    HeuristicParams params;
    const Rational rate(400'000, 1);
    const Piconero true_xmr = 5 * kPiconeroPerXmr;  // 2,000,000 sat
    const TradeStatRecord stat = stat_of(5'100'000'000'000, rate);  // published 5.1 XMR
    const TradeSwapMatch match = match_with_window(10'000, 50'000);

    const std::vector<BitcoinTx> btc{
        btc_tx("payment", 30'000, {2'000'000}),
        btc_tx("outside-window", 60'000, {2'000'000}),
        btc_tx("out-of-range", 30'000, {3'000'000}),     // 7.5 XMR
        btc_tx("bad-decimals", 30'000, {2'000'001}),     // 5.0000025 XMR
        btc_tx("even-competitor", 40'000, {2'100'000}),  // 5.25 XMR, divisible
    };
    const BtcCandidateSet set = match_btc(match, stat, btc, params);
    CHECK(set.trade_id == "T1");
    CHECK(set.spend_tx_id == "spend");
    REQUIRE(set.candidates.size() == 2);
    // Sorted by |implied - published|: 5.25 (0.15 away) before 5.0 (0.1 away)?
    // 5.0 is 0.1 from 5.1, 5.25 is 0.15 away, so the payment ranks first.
    CHECK(set.candidates[0].btc_tx_id == "payment");
    CHECK(set.candidates[0].implied_xmr_piconero == true_xmr);
    CHECK(set.candidates[0].divisibility_ok);  // 5 XMR is even
    CHECK(set.candidates[1].btc_tx_id == "even-competitor");
    CHECK(set.candidates[1].divisibility_ok);
    for (const BtcCandidate& c : set.candidates) {
        CHECK(c.range_ok);
        CHECK(c.decimals_ok);
    }
}

TEST_CASE("per-output and per-total amount modes") {
    HeuristicParams params;
    const TradeStatRecord stat = stat_of(5'000'000'000'000, Rational(400'000, 1));
    const TradeSwapMatch match = match_with_window(0, 100'000);
    // Two outputs that only sum to the right amount.
    const std::vector<BitcoinTx> btc{btc_tx("split", 50'000, {1'500'000, 500'000})};

    params.btc_amount_mode = BtcAmountMode::per_output;
    CHECK(match_btc(match, stat, btc, params).candidates.empty());

    params.btc_amount_mode = BtcAmountMode::total;
    const BtcCandidateSet set = match_btc(match, stat, btc, params);
    REQUIRE(set.candidates.size() == 1);
    CHECK(set.candidates[0].amount_sat == 2'000'000);
}

TEST_CASE("missing statistics record is an error") {
    const GenConfig config = small_config(81, 4, false);
    GeneratedCorpus generated = generate_corpus(config);
    TradeSwapMatch match = match_with_window(0, 1'000);
    match.trade_id = "no-such-trade";
    try {
        (void)match_btc_all({&match, 1}, generated.corpus.trade_stats,
                            generated.corpus.bitcoin_txs, HeuristicParams{});
        FAIL("expected missing_stat");
    } catch (const Error& e) {
        CHECK(e.kind() == "missing_stat");
    }
}

TEST_CASE("filter stages are monotone subsets") {
    Rng rng(31337);
    HeuristicParams params;
    const Rational rate(400'000, 1);
    for (int trial = 0; trial < 200; ++trial) {
        const Piconero published = rng.range_i64(1, 40) * kPiconeroPerXmr / 2;
        const TradeStatRecord stat = stat_of(published, rate);
        const AmountRange range = true_amount_range(stat, params);

        std::size_t n_range = 0;
        std::size_t n_decimal = 0;
        std::size_t n_divisible = 0;
        for (int i = 0; i < 100; ++i) {
            const Satoshi amount = rng.range_i64(1'000, 30'000'000);
            const Rational xmr = implied_xmr(amount, rate);
            const Int128 scaled = Int128(xmr.num) * kPiconeroPerXmr;
            const bool in_range =
                scaled >= Int128(range.lo) * xmr.den && scaled <= Int128(range.hi) * xmr.den;
            const bool decimals = in_range && has_max_decimals(xmr, params.max_decimal_digits);
            const bool divisible = decimals && is_even_amount(xmr, params.divisibility_steps);
            n_range += in_range;
            n_decimal += decimals;
            n_divisible += divisible;
        }
        CHECK(n_divisible <= n_decimal);
        CHECK(n_decimal <= n_range);
    }
}

TEST_CASE("a lone in-window payment is the whole candidate set") {
    GenConfig config = small_config(83, 1, false);
    config.btc_background_per_hour = 0.0;
    GeneratedCorpus generated = generate_corpus(config);
    const ChainIndex index =
        ChainIndex::build(generated.corpus.blocks, generated.corpus.monero_txs);
    const HeuristicParams params;
    const ScanResult scanned = scan(index, params);
    const CorrelationResult correlated =
        correlate(scanned.candidates, generated.corpus.trade_log, params);
    const auto sets = match_btc_all(correlated.matches, generated.corpus.trade_stats,
                                    generated.corpus.bitcoin_txs, params);
    REQUIRE(generated.ground_truth.size() == 1);
    REQUIRE(sets.size() == 1);
    REQUIRE(sets[0].candidates.size() == 1);
    CHECK(sets[0].candidates[0].btc_tx_id == generated.ground_truth[0].btc_tx_id);
}

TEST_CASE("full pipeline shortlists always contain the planted payment") {
    const GenConfig config = small_config(82, 12, false);
    GeneratedCorpus generated = generate_corpus(config);
    const ChainIndex index =
        ChainIndex::build(generated.corpus.blocks, generated.corpus.monero_txs);
    const HeuristicParams params;
    const ScanResult scanned = scan(index, params);
    const CorrelationResult correlated =
        correlate(scanned.candidates, generated.corpus.trade_log, params);
    const auto sets = match_btc_all(correlated.matches, generated.corpus.trade_stats,
                                    generated.corpus.bitcoin_txs, params);

    std::map<TradeId, const BtcCandidateSet*> by_trade;
    for (const BtcCandidateSet& s : sets) by_trade[s.trade_id] = &s;
    for (const GroundTruthTrade& t : generated.ground_truth) {
        CAPTURE(t.trade_id);
        REQUIRE(by_trade.contains(t.trade_id));
        bool found = false;
        for (const BtcCandidate& c : by_trade[t.trade_id]->candidates) {
            if (c.btc_tx_id == t.btc_tx_id) {
                found = true;
                CHECK(c.implied_xmr_piconero == t.true_xmr_amount);
                // The divisibility flag reflects the true amount's profile.
                const Rational true_rational(t.true_xmr_amount, kPiconeroPerXmr);
                CHECK(c.divisibility_ok ==
                      is_even_amount(true_rational, params.divisibility_steps));
            }
        }
        CHECK(found);
    }

    // Exactness: the same inputs always produce identical sets.
    const auto again = match_btc_all(correlated.matches, generated.corpus.trade_stats,
                                     generated.corpus.bitcoin_txs, params);
    REQUIRE(again.size() == sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) {
        CHECK(again[i].candidates == sets[i].candidates);
    }
}
