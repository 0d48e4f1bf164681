// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Reverses the trade-statistics obfuscation: the published amount pins an
// exact feasible range for the true amount, the accurate exchange rate
// converts candidate Bitcoin outputs back to XMR, and the decimal and
// even-amount predicates cut the shortlist down. Everything here is exact
// integer/rational arithmetic; re-running always yields identical sets.

#include "swapscan/match.hpp"

#include <algorithm>
#include <unordered_map>

#include "swapscan/errors.hpp"

namespace swapscan {

AmountRange true_amount_range(const TradeStatRecord& stat, const HeuristicParams& params) {
    if (stat.published_xmr_amount <= 0) {
        raise(Errc::corpus, "bad_schema", "published amount must be > 0");
    }
    const Int128 p = stat.published_xmr_amount;
    const Int128 dn = params.obfuscation_fraction.num;
    const Int128 dd = params.obfuscation_fraction.den;

    AmountRange range;
    if (params.symmetric_range) {
        // [p(1-d), p(1+d)], outward-rounded.
        range.lo = static_cast<Piconero>(floor_div(p * (dd - dn), dd));
        range.hi = static_cast<Piconero>(ceil_div(p * (dd + dn), dd));
    } else {
        // Exact preimage of p = true * f, f in [1-d, 1+d]: [p/(1+d), p/(1-d)].
        if (dn >= dd) raise(Errc::usage, "bad_params", "obfuscation_fraction must be < 1");
        range.lo = static_cast<Piconero>(floor_div(p * dd, dd + dn));
        range.hi = static_cast<Piconero>(ceil_div(p * dd, dd - dn));
    }
    return range;
}

Rational implied_xmr(Satoshi amount_sat, const Rational& sat_per_xmr) {
    if (!sat_per_xmr.positive()) {
        raise(Errc::corpus, "bad_schema", "exchange rate must be > 0");
    }
    return make_rational(Int128(amount_sat) * sat_per_xmr.den, Int128(sat_per_xmr.num));
}

bool has_max_decimals(const Rational& xmr, int digits) {
    if (digits < 0 || digits > 12) raise(Errc::usage, "bad_params", "digits must be in [0, 12]");
    // Normalized form: x * 10^d integral iff den divides 10^d.
    return pow10_i64(digits) % xmr.den == 0;
}

bool is_even_amount(const Rational& xmr, std::span<const Rational> steps) {
    for (const Rational& step : steps) {
        if (!step.positive()) continue;
        if (div(xmr, step).is_integer()) return true;
    }
    return false;
}

namespace {

// Rational XMR compared against piconero bounds via cross multiplication.
bool in_range_piconero(const Rational& xmr, const AmountRange& range) {
    const Int128 scaled = Int128(xmr.num) * kPiconeroPerXmr;
    return scaled >= Int128(range.lo) * xmr.den && scaled <= Int128(range.hi) * xmr.den;
}

std::vector<std::pair<Timestamp, Timestamp>> merged_window(const TradeSwapMatch& match) {
    std::vector<std::pair<Timestamp, Timestamp>> spans;
    spans.reserve(match.swaps.size());
    for (const SwapCandidate& swap : match.swaps) {
        spans.emplace_back(std::min(swap.lock_a_timestamp, swap.lock_b_timestamp),
                           swap.spend_timestamp);
    }
    std::sort(spans.begin(), spans.end());
    std::vector<std::pair<Timestamp, Timestamp>> merged;
    for (const auto& span : spans) {
        if (!merged.empty() && span.first <= merged.back().second) {
            merged.back().second = std::max(merged.back().second, span.second);
        } else {
            merged.push_back(span);
        }
    }
    return merged;
}

bool in_window(Timestamp t, const std::vector<std::pair<Timestamp, Timestamp>>& window) {
    for (const auto& [lo, hi] : window) {
        if (t >= lo && t <= hi) return true;
    }
    return false;
}

struct Evaluated {
    Satoshi amount = 0;
    Piconero implied = 0;
    Piconero distance = 0;
    bool divisible = false;
    bool ok = false;
};

Evaluated evaluate_amount(Satoshi amount, const TradeStatRecord& stat, const AmountRange& range,
                          const HeuristicParams& params) {
    Evaluated e;
    if (amount <= 0) return e;
    const Rational xmr = implied_xmr(amount, stat.exchange_rate);
    if (!xmr.positive()) return e;
    if (!in_range_piconero(xmr, range)) return e;
    if (!has_max_decimals(xmr, params.max_decimal_digits)) return e;
    e.ok = true;
    e.amount = amount;
    // Exact: decimal-passing amounts have denominators dividing 10^12.
    e.implied = static_cast<Piconero>(Int128(xmr.num) * (kPiconeroPerXmr / xmr.den));
    e.distance = e.implied > stat.published_xmr_amount ? e.implied - stat.published_xmr_amount
                                                       : stat.published_xmr_amount - e.implied;
    e.divisible = is_even_amount(xmr, params.divisibility_steps);
    return e;
}

}  // namespace

BtcCandidateSet match_btc(const TradeSwapMatch& match, const TradeStatRecord& stat,
                          std::span<const BitcoinTx> btc, const HeuristicParams& params) {
    if (stat.trade_id != match.trade_id) {
        raise(Errc::internal, "trade_id_mismatch",
              "stat " + stat.trade_id + " paired with match " + match.trade_id);
    }
    BtcCandidateSet set;
    set.trade_id = match.trade_id;
    set.spend_tx_id = match.swaps.empty() ? TxId{} : match.swaps.front().spend_tx_id;
    set.window = merged_window(match);

    const AmountRange range = true_amount_range(stat, params);

    std::vector<std::pair<Piconero, std::size_t>> order;
    for (const BitcoinTx& tx : btc) {
        if (!in_window(tx.timestamp, set.window)) continue;

        // A transaction qualifies when any tested amount qualifies; keep the
        // amount closest to the published one.
        Evaluated best;
        if (params.btc_amount_mode == BtcAmountMode::total) {
            Satoshi total = 0;
            for (const Satoshi a : tx.amounts) total += a;
            best = evaluate_amount(total, stat, range, params);
        } else {
            for (const Satoshi a : tx.amounts) {
                const Evaluated e = evaluate_amount(a, stat, range, params);
                if (!e.ok) continue;
                if (!best.ok || e.distance < best.distance ||
                    (e.distance == best.distance && e.amount < best.amount)) {
                    best = e;
                }
            }
        }
        if (!best.ok) continue;

        BtcCandidate candidate;
        candidate.btc_tx_id = tx.tx_id;
        candidate.amount_sat = best.amount;
        candidate.implied_xmr_piconero = best.implied;
        candidate.range_ok = true;
        candidate.decimals_ok = true;
        candidate.divisibility_ok = best.divisible;
        order.emplace_back(best.distance, set.candidates.size());
        set.candidates.push_back(std::move(candidate));
    }

    // Proximity order, ties broken by tx id for determinism.
    std::sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return set.candidates[x.second].btc_tx_id < set.candidates[y.second].btc_tx_id;
    });
    std::vector<BtcCandidate> sorted;
    sorted.reserve(set.candidates.size());
    for (const auto& entry : order) sorted.push_back(std::move(set.candidates[entry.second]));
    set.candidates = std::move(sorted);
    return set;
}

std::vector<BtcCandidateSet> match_btc_all(std::span<const TradeSwapMatch> matches,
                                           std::span<const TradeStatRecord> stats,
                                           std::span<const BitcoinTx> btc,
                                           const HeuristicParams& params) {
    params.validate();
    std::unordered_map<TradeId, const TradeStatRecord*> by_trade;
    by_trade.reserve(stats.size());
    for (const TradeStatRecord& s : stats) by_trade[s.trade_id] = &s;

    for (const TradeSwapMatch& m : matches) {
        if (!by_trade.contains(m.trade_id)) {
            raise(Errc::corpus, "missing_stat",
                  "trade " + m.trade_id + " has no statistics record");
        }
    }

    // Each trade fills its own slot, so the output order is the input order
    // no matter how the loop is scheduled.
    std::vector<BtcCandidateSet> sets(matches.size());
    const std::int64_t n = static_cast<std::int64_t>(matches.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        const TradeSwapMatch& match = matches[static_cast<std::size_t>(i)];
        sets[static_cast<std::size_t>(i)] =
            match_btc(match, *by_trade.at(match.trade_id), btc, params);
    }
    return sets;
}

}  // namespace swapscan
