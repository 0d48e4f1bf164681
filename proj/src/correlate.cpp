// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "swapscan/correlate.hpp"

#include <algorithm>

namespace swapscan {

CorrelationResult correlate(std::span<const SwapCandidate> candidates,
                            std::span<const TradeLogEvent> log,
                            const HeuristicParams& params) {
    params.validate();

    // Candidates re-sorted by spend time so each trade is a binary search.
    std::vector<const SwapCandidate*> by_time;
    by_time.reserve(candidates.size());
    for (const SwapCandidate& c : candidates) by_time.push_back(&c);
    std::sort(by_time.begin(), by_time.end(), [](const SwapCandidate* a, const SwapCandidate* b) {
        return a->spend_timestamp < b->spend_timestamp;
    });

    std::vector<TradeLogEvent> events(log.begin(), log.end());
    std::sort(events.begin(), events.end(), [](const TradeLogEvent& a, const TradeLogEvent& b) {
        return a.broadcast_timestamp != b.broadcast_timestamp
                   ? a.broadcast_timestamp < b.broadcast_timestamp
                   : a.trade_id < b.trade_id;
    });

    CorrelationResult result;
    for (const TradeLogEvent& event : events) {
        // Closed interval on both ends: boundary timestamps count.
        const Timestamp lo = event.broadcast_timestamp - params.correlate_before_s;
        const Timestamp hi = event.broadcast_timestamp + params.correlate_after_s;
        const auto first = std::lower_bound(
            by_time.begin(), by_time.end(), lo,
            [](const SwapCandidate* c, Timestamp t) { return c->spend_timestamp < t; });
        const auto last = std::upper_bound(
            by_time.begin(), by_time.end(), hi,
            [](Timestamp t, const SwapCandidate* c) { return t < c->spend_timestamp; });
        if (first == last) {
            result.unmatched.push_back(event);
            continue;
        }
        TradeSwapMatch match;
        match.trade_id = event.trade_id;
        match.broadcast_timestamp = event.broadcast_timestamp;
        match.window_before_s = params.correlate_before_s;
        match.window_after_s = params.correlate_after_s;
        for (auto it = first; it != last; ++it) match.swaps.push_back(**it);
        std::sort(match.swaps.begin(), match.swaps.end(),
                  [](const SwapCandidate& a, const SwapCandidate& b) {
                      if (a.spend_height != b.spend_height) return a.spend_height < b.spend_height;
                      if (a.spend_tx_id != b.spend_tx_id) return a.spend_tx_id < b.spend_tx_id;
                      if (a.lock_a_tx_id != b.lock_a_tx_id) return a.lock_a_tx_id < b.lock_a_tx_id;
                      return a.lock_b_tx_id < b.lock_b_tx_id;
                  });
        result.matches.push_back(std::move(match));
    }
    return result;
}

}  // namespace swapscan
