// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "swapscan/correlate.hpp"
#include "swapscan/rational.hpp"
#include "swapscan/types.hpp"

namespace swapscan {

struct AmountRange {
    Piconero lo = 0;
    Piconero hi = 0;
};

// Feasible true-amount interval recovered from a published amount. The
// default is the exact preimage of multiplicative obfuscation,
// [p/(1+d), p/(1-d)], rounded outward to integer piconero; the symmetric
// variant [p(1-d), p(1+d)] sits behind params.symmetric_range.
AmountRange true_amount_range(const TradeStatRecord& stat, const HeuristicParams& params);

// Exact quotient amount / rate, in XMR.
Rational implied_xmr(Satoshi amount_sat, const Rational& sat_per_xmr);

// True iff x * 10^digits is an integer. Exact, no tolerance.
bool has_max_decimals(const Rational& xmr, int digits);

// True iff x is an integer multiple of any step.
bool is_even_amount(const Rational& xmr, std::span<const Rational> steps);

struct BtcCandidate {
    TxId btc_tx_id;
    Satoshi amount_sat = 0;
    Piconero implied_xmr_piconero = 0;
    bool range_ok = false;
    bool decimals_ok = false;
    bool divisibility_ok = false;

    friend bool operator==(const BtcCandidate&, const BtcCandidate&) = default;
};

// Shortlist for one trade, sorted by |implied - published| ascending.
// Every stored candidate passed the range and decimal filters; the
// divisibility flag marks the even-amount subset.
struct BtcCandidateSet {
    TradeId trade_id;
    TxId spend_tx_id;  // representative swap: first in canonical order
    std::vector<std::pair<Timestamp, Timestamp>> window;  // merged [lock, spend] spans
    std::vector<BtcCandidate> candidates;
};

BtcCandidateSet match_btc(const TradeSwapMatch& match, const TradeStatRecord& stat,
                          std::span<const BitcoinTx> btc, const HeuristicParams& params);

// Per-trade matching over all correlated trades; parallel, canonical output
// order. Throws missing_stat if a trade has no statistics record.
std::vector<BtcCandidateSet> match_btc_all(std::span<const TradeSwapMatch> matches,
                                           std::span<const TradeStatRecord> stats,
                                           std::span<const BitcoinTx> btc,
                                           const HeuristicParams& params);

}  // namespace swapscan
