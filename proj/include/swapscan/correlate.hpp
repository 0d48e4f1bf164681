// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <span>
#include <vector>

#include "swapscan/scan.hpp"
#include "swapscan/types.hpp"

namespace swapscan {

// All candidate swaps whose spend was mined inside the broadcast window
// of one logged trade. The interval is closed at both ends; one swap may
// appear under several trades.
struct TradeSwapMatch {
    TradeId trade_id;
    Timestamp broadcast_timestamp = 0;
    std::int64_t window_before_s = 0;
    std::int64_t window_after_s = 0;
    std::vector<SwapCandidate> swaps;  // canonical order, never empty
};

struct CorrelationResult {
    std::vector<TradeSwapMatch> matches;     // one per trade with >= 1 swap
    std::vector<TradeLogEvent> unmatched;    // trades with zero swaps in window
};

CorrelationResult correlate(std::span<const SwapCandidate> candidates,
                            std::span<const TradeLogEvent> log,
                            const HeuristicParams& params);

}  // namespace swapscan
