// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Deterministic corpus builder. Emits background traffic on both chains
// plus planted trades that follow the deposit/deposit/payout protocol:
// two 2-output lock transactions at the trade fee in the same or adjacent
// block, one 2-in/2-out payout whose rings reference one output of each
// lock within the payout window, the external Bitcoin payment inside the
// trade window, the timely completion broadcast, and the obfuscated
// statistics record. Disputed trades delay the payout past the window and
// serve as negative controls.
//
// Everything is driven by per-phase child RNG streams consumed in a fixed
// order, so a config (seed included) fully determines every output byte.

#include "swapscan/generate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>

#include "json_util.hpp"
#include "swapscan/errors.hpp"

namespace swapscan {

namespace {

std::string hex16(std::uint64_t x) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

// Bijective counter -> id mapping; ids never collide within a stream.
class IdStream {
public:
    IdStream(std::uint64_t seed, std::uint64_t salt) : base_(seed * 0x9e3779b97f4a7c15ull + salt) {}
    TxId next() { return hex16(splitmix64(base_ + counter_++)); }

private:
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

OutputId output_id_of(const TxId& tx_id, int index) {
    return tx_id + ":" + std::to_string(index);
}

// Trailing window of recently created outputs, decoy source for new rings.
class RecentOutputs {
public:
    explicit RecentOutputs(std::int64_t capacity) : capacity_(capacity) {}

    void push(const OutputId& id) {
        items_.push_back(id);
        if (static_cast<std::int64_t>(items_.size()) > capacity_) items_.pop_front();
    }

    const std::deque<OutputId>& items() const { return items_; }

private:
    std::int64_t capacity_;
    std::deque<OutputId> items_;
};

MoneroInput sample_ring_deque(const std::deque<OutputId>& window, const OutputId& real,
                              int ring_size, Rng& rng) {
    MoneroInput input;
    const std::size_t n = window.size();
    // Window entries are distinct, so a window larger than the ring always
    // has enough decoys; only tight windows need the exact count.
    if (n < static_cast<std::size_t>(ring_size) + 1) {
        std::size_t available = 0;
        for (const OutputId& id : window) {
            if (id != real) ++available;
        }
        if (available + 1 < static_cast<std::size_t>(ring_size)) {
            raise(Errc::infeasible, "insufficient_decoys",
                  "need " + std::to_string(ring_size - 1) + " decoys, only " +
                      std::to_string(available) + " available");
        }
    }

    input.ring.reserve(static_cast<std::size_t>(ring_size));
    input.ring.push_back(real);
    std::size_t attempts = 0;
    const std::size_t max_attempts = 64 * static_cast<std::size_t>(ring_size);
    while (input.ring.size() < static_cast<std::size_t>(ring_size) && attempts < max_attempts) {
        ++attempts;
        const OutputId& pick = window[rng.below(n)];
        if (pick == real) continue;
        if (std::find(input.ring.begin(), input.ring.end(), pick) != input.ring.end()) continue;
        input.ring.push_back(pick);
    }
    if (input.ring.size() < static_cast<std::size_t>(ring_size)) {
        // Tight window; collect the eligible members directly.
        for (const OutputId& id : window) {
            if (input.ring.size() == static_cast<std::size_t>(ring_size)) break;
            if (id == real) continue;
            if (std::find(input.ring.begin(), input.ring.end(), id) == input.ring.end()) {
                input.ring.push_back(id);
            }
        }
    }
    rng.shuffle(std::span<OutputId>(input.ring));
    return input;
}

Piconero step_piconero(const Rational& step) {
    const Int128 scaled = Int128(kPiconeroPerXmr) * step.num;
    if (scaled % step.den != 0) {
        raise(Errc::infeasible, "config_infeasible",
              "divisibility step " + to_string(step) + " has no exact piconero value");
    }
    return static_cast<Piconero>(scaled / step.den);
}

Satoshi exact_btc_amount(Piconero xmr, const Rational& rate) {
    // round-half-up of xmr * rate / 1e12; exact for profile amounts under a
    // validated rate schedule.
    const Int128 num = Int128(xmr) * rate.num;
    const Int128 den = Int128(rate.den) * kPiconeroPerXmr;
    return static_cast<Satoshi>(floor_div(2 * num + den, 2 * den));
}

struct PlannedTrade {
    TradeId id;
    bool disputed = false;
    Height lock_height_a = 0;
    Height lock_height_b = 0;
    Height spend_height = 0;
    Timestamp completion = 0;
    Piconero true_xmr = 0;
    Rational rate;
    Satoshi btc_amount = 0;
    Piconero fee = 0;
    Timestamp btc_ts = 0;
    bool btc_change_first = false;
    Satoshi btc_change = 0;  // 0: payment only
    int real_index_a = 0;
    int real_index_b = 0;
    bool swap_inputs = false;
    StatFields stat;

    // Filled at emission time.
    TxId lock_a_tx_id;
    TxId lock_b_tx_id;
    TxId spend_tx_id;
    OutputId lock_a_real;
    OutputId lock_b_real;
    TxId btc_tx_id;
};

// Payout broadcast precedes the containing block by up to ~2 blocks and may
// trail it by just under the one-minute allowance, so the mined spend always
// lands inside the correlation window and an 11-minute delay always leaves it.
constexpr std::int64_t kSpendJitterBeforeS = 59;
constexpr std::int64_t kSpendJitterAfterS = 280;

constexpr std::int64_t kMinCompletionS = 1'800;
constexpr std::int64_t kMaxCompletionS = 72'000;
constexpr std::int64_t kMinDisputeExtraS = 3'600;
constexpr std::int64_t kMaxDisputeExtraS = 43'200;

std::int64_t schedule_margin_blocks(const GenConfig& config) {
    const std::int64_t worst =
        86'400 + kMaxDisputeExtraS + kSpendJitterAfterS + 2 * config.block_time_s;
    return worst / config.block_time_s + 4;
}

Piconero quantized_fee(const FeeTierBounds& tiers, FeeTier tier, Rng& rng) {
    constexpr Piconero kQuantum = 100'000;
    const auto t = static_cast<std::size_t>(tier);
    const Piconero lo = tiers.lower[t];
    const Piconero hi = t < 3 ? tiers.lower[t + 1] : tiers.lower[3] * 40;
    const Piconero slots = (hi - lo) / kQuantum;
    return lo + kQuantum * static_cast<Piconero>(rng.below(static_cast<std::uint64_t>(slots)));
}

}  // namespace

void GenConfig::validate() const {
    const auto bad = [](const std::string& what) {
        raise(Errc::usage, "bad_config", what);
    };
    const auto infeasible = [](const std::string& what) {
        raise(Errc::infeasible, "config_infeasible", what);
    };

    if (block_time_s < 10 || block_time_s > 300) bad("block_time_s must lie in [10, 300]");
    if (n_blocks <= 0) bad("n_blocks must be > 0");
    if (ring_size < 2) bad("ring_size must be >= 2");
    if (genesis_txs < ring_size) bad("genesis_txs must be >= ring_size");
    if (decoy_window < 2 * ring_size) bad("decoy_window must be >= 2 * ring_size");
    if (background_txs_per_block < 0) bad("background_txs_per_block must be >= 0");
    if (fraction_disputed.num < 0 || cmp(fraction_disputed, Rational(1, 1)) > 0) {
        bad("fraction_disputed must lie in [0, 1]");
    }
    const double mix =
        amount_profile.even + amount_profile.four_decimal + amount_profile.free;
    if (std::abs(mix - 1.0) > 1e-9) bad("amount_profile weights must sum to 1");
    if (even_amount_steps.empty()) bad("even_amount_steps must be non-empty");
    for (const Rational& step : even_amount_steps) {
        if (!step.positive()) bad("even_amount_steps must be > 0");
    }
    if (!(obfuscation_fraction.num >= 0) || cmp(obfuscation_fraction, Rational(1, 1)) >= 0) {
        bad("obfuscation_fraction must lie in [0, 1)");
    }
    if (min_trade_xmr <= 0 || max_trade_xmr < min_trade_xmr) bad("bad trade amount bounds");
    if (stat_shift_max_s < 0) bad("stat_shift_max_s must be >= 0");
    if (btc_background_per_hour < 0) bad("btc_background_per_hour must be >= 0");
    if (btc_confusable_fraction < 0 || btc_confusable_fraction > 1) {
        bad("btc_confusable_fraction must lie in [0, 1]");
    }
    for (std::size_t t = 1; t < fee_tiers.lower.size(); ++t) {
        if (fee_tiers.lower[t] <= fee_tiers.lower[t - 1]) {
            bad("fee tier bounds must increase");
        }
    }

    if (rate_schedule.empty()) bad("rate_schedule must be non-empty");
    if (rate_schedule.front().from_offset_s != 0) bad("rate_schedule must start at offset 0");
    for (std::size_t i = 0; i < rate_schedule.size(); ++i) {
        const RateStep& step = rate_schedule[i];
        if (i > 0 && step.from_offset_s <= rate_schedule[i - 1].from_offset_s) {
            bad("rate_schedule offsets must increase");
        }
        if (!step.sat_per_xmr.positive()) bad("exchange rates must be > 0");
        // Keeps satoshi rounding lossless for four-decimal XMR amounts.
        if (step.sat_per_xmr.num % (step.sat_per_xmr.den * 10'000) != 0) {
            infeasible("rate " + to_string(step.sat_per_xmr) +
                       " is not exactly invertible for 4-decimal amounts");
        }
    }

    if (n_planted_trades > 0) {
        const std::int64_t margin = schedule_margin_blocks(*this);
        if (n_blocks <= margin + 1) {
            infeasible("n_blocks=" + std::to_string(n_blocks) +
                       " cannot hold the payout horizon (" + std::to_string(margin) + " blocks)");
        }
    }
}

MoneroInput sample_ring(std::span<const OutputId> window, const OutputId& real, int ring_size,
                        Rng& rng) {
    std::deque<OutputId> d(window.begin(), window.end());
    return sample_ring_deque(d, real, ring_size, rng);
}

StatFields obfuscate_stat(Piconero true_xmr, Timestamp completion_ts, const Rational& delta,
                          std::int64_t shift_max_s, Rng& rng) {
    if (true_xmr <= 0) raise(Errc::usage, "bad_config", "true amount must be > 0");

    // f on a 2^32 fixed-point grid in [1-d, 1+d]; the multiply-and-round is
    // exact integer arithmetic.
    constexpr Int128 kOne = Int128(1) << 32;
    const Int128 lo = ceil_div(kOne * (delta.den - delta.num), delta.den);
    const Int128 hi = floor_div(kOne * (delta.den + delta.num), delta.den);
    const Int128 f = lo + static_cast<Int128>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));

    StatFields out;
    out.published_xmr_amount =
        static_cast<Piconero>((Int128(true_xmr) * f + (Int128(1) << 31)) >> 32);
    out.published_timestamp =
        completion_ts + (shift_max_s > 0 ? rng.range_i64(0, shift_max_s) : 0);
    return out;
}

Rational rate_at(std::span<const RateStep> schedule, Timestamp start_time, Timestamp t) {
    if (schedule.empty()) raise(Errc::usage, "bad_config", "empty rate schedule");
    Rational rate = schedule.front().sat_per_xmr;
    for (const RateStep& step : schedule) {
        if (start_time + step.from_offset_s <= t) {
            rate = step.sat_per_xmr;
        } else {
            break;
        }
    }
    return rate;
}

namespace {

// Trade sizes are log-uniform over the configured bounds, then snapped to
// the drawn profile class. The log spread keeps amounts from clustering
// into each other's obfuscation ranges.
Piconero log_uniform_piconero(Piconero lo, Piconero hi, Rng& rng) {
    const double x = rng.range_real(std::log(static_cast<double>(lo)),
                                    std::log(static_cast<double>(hi)));
    const Piconero v = static_cast<Piconero>(std::llround(std::exp(x)));
    return std::clamp(v, lo, hi);
}

Piconero snap_even(Piconero raw, const GenConfig& config, Rng& rng) {
    const std::vector<Rational>& steps = config.even_amount_steps;
    for (int attempt = 0; attempt < 64; ++attempt) {
        const Rational& step = steps[rng.below(steps.size())];
        const Piconero step_pn = step_piconero(step);
        const Piconero m_lo = std::max<Piconero>(1, (config.min_trade_xmr + step_pn - 1) / step_pn);
        const Piconero m_hi = config.max_trade_xmr / step_pn;
        if (m_lo > m_hi) continue;
        const Piconero m = std::clamp((raw + step_pn / 2) / step_pn, m_lo, m_hi);
        return step_pn * m;
    }
    raise(Errc::infeasible, "config_infeasible",
          "no divisibility step fits inside the trade amount bounds");
}

Piconero draw_trade_amount(const GenConfig& config, Rng& rng) {
    const AmountProfile& profile = config.amount_profile;
    const double weights[3] = {profile.even, profile.four_decimal, profile.free};
    const std::size_t kind = rng.pick_weighted(weights);
    const std::vector<Rational>& steps = config.even_amount_steps;

    if (kind == 0) {
        return snap_even(log_uniform_piconero(config.min_trade_xmr, config.max_trade_xmr, rng),
                         config, rng);
    }
    if (kind == 1) {
        // Four decimals, but not an even amount.
        constexpr Piconero kTenThousandth = 100'000'000;  // 1e-4 XMR
        const Piconero k_lo = (config.min_trade_xmr + kTenThousandth - 1) / kTenThousandth;
        const Piconero k_hi = config.max_trade_xmr / kTenThousandth;
        Piconero amount = k_lo * kTenThousandth;
        for (int attempt = 0; attempt < 64; ++attempt) {
            const Piconero raw =
                log_uniform_piconero(config.min_trade_xmr, config.max_trade_xmr, rng);
            amount = kTenThousandth * std::clamp((raw + kTenThousandth / 2) / kTenThousandth,
                                                 k_lo, k_hi);
            bool even = false;
            for (const Rational& step : steps) {
                if (amount % step_piconero(step) == 0) {
                    even = true;
                    break;
                }
            }
            if (!even) break;
        }
        return amount;
    }
    // Free granularity; redraw the rare ones that land on 4 decimals.
    Piconero amount = config.min_trade_xmr;
    for (int attempt = 0; attempt < 64; ++attempt) {
        amount = log_uniform_piconero(config.min_trade_xmr, config.max_trade_xmr, rng);
        if (amount % 100'000'000 != 0) break;
    }
    return amount;
}

Satoshi log_uniform_sat(Satoshi lo, Satoshi hi, Rng& rng) {
    const double x = rng.range_real(std::log(static_cast<double>(lo)),
                                    std::log(static_cast<double>(hi)));
    const Satoshi v = static_cast<Satoshi>(std::llround(std::exp(x)));
    return std::clamp(v, lo, hi);
}

}  // namespace

GeneratedCorpus generate_corpus(const GenConfig& config) {
    config.validate();

    Rng root(config.seed);
    Rng trade_rng = root.fork("trades");
    Rng block_rng = root.fork("background");
    Rng ring_rng = root.fork("rings");
    Rng btc_rng = root.fork("btc");
    Rng stat_rng = root.fork("stats");

    IdStream monero_ids(config.seed, 0x6d6f6e65726f0001ull);
    IdStream btc_ids(config.seed, 0x62746300626a0002ull);

    const auto block_ts = [&](Height h) { return config.start_time + h * config.block_time_s; };
    const Timestamp end_ts = block_ts(config.n_blocks - 1);

    // ---- phase 1: plan every trade --------------------------------------
    const std::int64_t n_trades = config.n_planted_trades;
    const std::int64_t n_disputed = static_cast<std::int64_t>(
        floor_div(Int128(n_trades) * config.fraction_disputed.num, config.fraction_disputed.den));
    std::vector<char> disputed_flags(static_cast<std::size_t>(n_trades), 0);
    std::fill_n(disputed_flags.begin(), static_cast<std::size_t>(n_disputed), 1);
    trade_rng.shuffle(std::span<char>(disputed_flags));

    const std::int64_t margin = schedule_margin_blocks(config);
    std::vector<PlannedTrade> trades(static_cast<std::size_t>(n_trades));
    std::vector<std::vector<std::size_t>> locks_at(static_cast<std::size_t>(config.n_blocks));
    std::vector<std::vector<std::size_t>> spends_at(static_cast<std::size_t>(config.n_blocks));

    for (std::int64_t i = 0; i < n_trades; ++i) {
        PlannedTrade& t = trades[static_cast<std::size_t>(i)];
        char label[24];
        std::snprintf(label, sizeof label, "T%05lld", static_cast<long long>(i + 1));
        t.id = label;
        t.disputed = disputed_flags[static_cast<std::size_t>(i)] != 0;

        t.lock_height_a = trade_rng.range_i64(1, config.n_blocks - margin - 1);
        // The arbitrator broadcasts both deposits together; they usually
        // land in one block, occasionally in neighbors.
        t.lock_height_b = trade_rng.chance(0.9) ? t.lock_height_a : t.lock_height_a + 1;

        const Timestamp later_lock_ts = block_ts(std::max(t.lock_height_a, t.lock_height_b));
        const std::int64_t offset =
            t.disputed
                ? 86'400 + trade_rng.range_i64(kMinDisputeExtraS, kMaxDisputeExtraS)
                : trade_rng.range_i64(kMinCompletionS, kMaxCompletionS);
        t.completion = later_lock_ts + offset;

        // Spend block drawn from the heights that keep the mined payout
        // inside the broadcast window.
        const Height h_lo = std::max<Height>(
            (t.completion - kSpendJitterBeforeS - config.start_time + config.block_time_s - 1) /
                config.block_time_s,
            std::max(t.lock_height_a, t.lock_height_b) + 1);
        const Height h_hi = std::min<Height>(
            (t.completion + kSpendJitterAfterS - config.start_time) / config.block_time_s,
            config.n_blocks - 1);
        t.spend_height = h_lo >= h_hi ? h_lo : trade_rng.range_i64(h_lo, h_hi);

        t.true_xmr = draw_trade_amount(config, trade_rng);
        t.rate = rate_at(config.rate_schedule, config.start_time, block_ts(t.lock_height_a));
        t.btc_amount = exact_btc_amount(t.true_xmr, t.rate);
        t.fee = quantized_fee(config.fee_tiers, config.trade_fee_tier, trade_rng);

        t.btc_ts = trade_rng.range_i64(later_lock_ts + 60, t.completion - 60);
        if (trade_rng.chance(0.5)) {
            t.btc_change = log_uniform_sat(config.btc_background_min_sat,
                                           config.btc_background_max_sat, trade_rng);
            t.btc_change_first = trade_rng.chance(0.5);
        }
        t.real_index_a = static_cast<int>(trade_rng.below(2));
        t.real_index_b = static_cast<int>(trade_rng.below(2));
        t.swap_inputs = trade_rng.chance(0.5);

        t.stat = obfuscate_stat(t.true_xmr, t.completion, config.obfuscation_fraction,
                                config.stat_shift_max_s, stat_rng);

        locks_at[static_cast<std::size_t>(t.lock_height_a)].push_back(
            static_cast<std::size_t>(i));
        spends_at[static_cast<std::size_t>(t.spend_height)].push_back(
            static_cast<std::size_t>(i));
    }

    // ---- phase 2: assemble the Monero chain ------------------------------
    GeneratedCorpus out;
    Corpus& corpus = out.corpus;
    corpus.blocks.reserve(static_cast<std::size_t>(config.n_blocks));
    RecentOutputs window(config.decoy_window);

    const auto emit_tx = [&](MoneroBlock& block, MoneroTx tx) {
        block.tx_ids.push_back(tx.tx_id);
        for (const MoneroOutput& o : tx.outputs) window.push(o.output_id);
        corpus.monero_txs.push_back(std::move(tx));
    };

    const auto fresh_outputs = [&](const TxId& tx_id, int count) {
        std::vector<MoneroOutput> outs;
        outs.reserve(static_cast<std::size_t>(count));
        for (int k = 0; k < count; ++k) outs.push_back(MoneroOutput{output_id_of(tx_id, k)});
        return outs;
    };

    const auto background_input = [&]() {
        const auto& items = window.items();
        const OutputId real = items[ring_rng.below(items.size())];
        return sample_ring_deque(items, real, config.ring_size, ring_rng);
    };

    for (Height h = 0; h < config.n_blocks; ++h) {
        MoneroBlock block;
        block.height = h;
        block.timestamp = block_ts(h);

        if (h == 0) {
            // Bootstrap block: rings reference sibling outputs in the same
            // block, which keeps every corpus self-contained.
            std::vector<TxId> ids;
            ids.reserve(static_cast<std::size_t>(config.genesis_txs));
            for (int g = 0; g < config.genesis_txs; ++g) ids.push_back(monero_ids.next());
            for (int g = 0; g < config.genesis_txs; ++g) {
                MoneroTx tx;
                tx.tx_id = ids[static_cast<std::size_t>(g)];
                tx.block_height = 0;
                tx.outputs = fresh_outputs(tx.tx_id, 2);
                MoneroInput input;
                for (int j = 1; j <= config.ring_size; ++j) {
                    const int neighbor = (g + j) % config.genesis_txs;
                    input.ring.push_back(
                        output_id_of(ids[static_cast<std::size_t>(neighbor)], j % 2));
                }
                tx.inputs.push_back(std::move(input));
                tx.fee = quantized_fee(config.fee_tiers, FeeTier::normal, block_rng);
                tx.fee_tier = FeeTier::normal;
                emit_tx(block, std::move(tx));
            }
            corpus.blocks.push_back(std::move(block));
            continue;
        }

        // Scheduled lock pairs. Lock B may belong to the next block.
        for (const std::size_t ti : locks_at[static_cast<std::size_t>(h)]) {
            PlannedTrade& t = trades[ti];
            for (const int which : {0, 1}) {
                const Height lock_h = which == 0 ? t.lock_height_a : t.lock_height_b;
                if (lock_h != h) continue;  // emitted when its block comes up
                MoneroTx tx;
                tx.tx_id = monero_ids.next();
                tx.block_height = h;
                tx.outputs = fresh_outputs(tx.tx_id, 2);
                tx.inputs.push_back(background_input());
                tx.fee = t.fee;
                tx.fee_tier = config.fee_tiers.classify(t.fee);
                if (which == 0) {
                    t.lock_a_tx_id = tx.tx_id;
                    t.lock_a_real = tx.outputs[static_cast<std::size_t>(t.real_index_a)].output_id;
                } else {
                    t.lock_b_tx_id = tx.tx_id;
                    t.lock_b_real = tx.outputs[static_cast<std::size_t>(t.real_index_b)].output_id;
                }
                emit_tx(block, std::move(tx));
            }
        }
        // Lock B transactions spilling into this block from height h-1.
        if (h >= 2) {
            for (const std::size_t ti : locks_at[static_cast<std::size_t>(h - 1)]) {
                PlannedTrade& t = trades[ti];
                if (t.lock_height_b != h) continue;
                MoneroTx tx;
                tx.tx_id = monero_ids.next();
                tx.block_height = h;
                tx.outputs = fresh_outputs(tx.tx_id, 2);
                tx.inputs.push_back(background_input());
                tx.fee = t.fee;
                tx.fee_tier = config.fee_tiers.classify(t.fee);
                t.lock_b_tx_id = tx.tx_id;
                t.lock_b_real = tx.outputs[static_cast<std::size_t>(t.real_index_b)].output_id;
                emit_tx(block, std::move(tx));
            }
        }

        // Scheduled payouts: one ring member from each lock.
        for (const std::size_t ti : spends_at[static_cast<std::size_t>(h)]) {
            PlannedTrade& t = trades[ti];
            MoneroTx tx;
            tx.tx_id = monero_ids.next();
            tx.block_height = h;
            tx.outputs = fresh_outputs(tx.tx_id, 2);
            MoneroInput from_a = sample_ring_deque(window.items(), t.lock_a_real,
                                                   config.ring_size, ring_rng);
            MoneroInput from_b = sample_ring_deque(window.items(), t.lock_b_real,
                                                   config.ring_size, ring_rng);
            if (t.swap_inputs) std::swap(from_a, from_b);
            tx.inputs.push_back(std::move(from_a));
            tx.inputs.push_back(std::move(from_b));
            tx.fee = t.fee;
            tx.fee_tier = config.fee_tiers.classify(t.fee);
            t.spend_tx_id = tx.tx_id;
            emit_tx(block, std::move(tx));
        }

        // Background traffic.
        const std::int64_t n_background = block_rng.poisson(config.background_txs_per_block);
        for (std::int64_t b = 0; b < n_background; ++b) {
            const double weights[4] = {config.shape_weights.in1_out1, config.shape_weights.in1_out2,
                                       config.shape_weights.in2_out2, config.shape_weights.in3_out2};
            const std::size_t shape = block_rng.pick_weighted(weights);
            const int n_in = shape == 0 || shape == 1 ? 1 : (shape == 2 ? 2 : 3);
            const int n_out = shape == 0 ? 1 : 2;

            MoneroTx tx;
            tx.tx_id = monero_ids.next();
            tx.block_height = h;
            tx.outputs = fresh_outputs(tx.tx_id, n_out);
            for (int in = 0; in < n_in; ++in) tx.inputs.push_back(background_input());
            const std::size_t tier_idx = block_rng.pick_weighted(config.background_fee_tier_probs);
            tx.fee_tier = static_cast<FeeTier>(tier_idx);
            tx.fee = quantized_fee(config.fee_tiers, tx.fee_tier, block_rng);
            emit_tx(block, std::move(tx));
        }

        corpus.blocks.push_back(std::move(block));
    }

    // ---- phase 3: Bitcoin side -------------------------------------------
    const double hours = static_cast<double>(end_ts - config.start_time) / 3600.0;
    const std::int64_t n_btc_background = btc_rng.poisson(config.btc_background_per_hour * hours);
    for (std::int64_t i = 0; i < n_btc_background; ++i) {
        BitcoinTx tx;
        tx.tx_id = btc_ids.next();
        tx.timestamp = btc_rng.range_i64(config.start_time, end_ts);
        const int n_out = 1 + static_cast<int>(btc_rng.below(3));
        for (int k = 0; k < n_out; ++k) {
            if (btc_rng.chance(config.btc_confusable_fraction)) {
                // Amount that looks exactly like an even-amount trade at the
                // rate in effect.
                const Piconero xmr = snap_even(
                    log_uniform_piconero(config.min_trade_xmr, config.max_trade_xmr, btc_rng),
                    config, btc_rng);
                const Rational rate = rate_at(config.rate_schedule, config.start_time, tx.timestamp);
                tx.amounts.push_back(exact_btc_amount(xmr, rate));
            } else {
                tx.amounts.push_back(log_uniform_sat(config.btc_background_min_sat,
                                                     config.btc_background_max_sat, btc_rng));
            }
        }
        corpus.bitcoin_txs.push_back(std::move(tx));
    }

    for (PlannedTrade& t : trades) {
        BitcoinTx tx;
        tx.tx_id = btc_ids.next();
        tx.timestamp = t.btc_ts;
        if (t.btc_change > 0 && t.btc_change_first) tx.amounts.push_back(t.btc_change);
        tx.amounts.push_back(t.btc_amount);
        if (t.btc_change > 0 && !t.btc_change_first) tx.amounts.push_back(t.btc_change);
        t.btc_tx_id = tx.tx_id;
        corpus.bitcoin_txs.push_back(std::move(tx));
    }

    std::sort(corpus.bitcoin_txs.begin(), corpus.bitcoin_txs.end(),
              [](const BitcoinTx& a, const BitcoinTx& b) {
                  return a.timestamp != b.timestamp ? a.timestamp < b.timestamp
                                                    : a.tx_id < b.tx_id;
              });

    // ---- phase 4: trade records -------------------------------------------
    for (const PlannedTrade& t : trades) {
        corpus.trade_log.push_back(TradeLogEvent{t.id, t.completion});
        corpus.trade_stats.push_back(TradeStatRecord{
            t.id, t.stat.published_xmr_amount, t.rate, t.stat.published_timestamp});
        out.ground_truth.push_back(GroundTruthTrade{t.id, t.lock_a_tx_id, t.lock_b_tx_id,
                                                    t.spend_tx_id, t.true_xmr, t.btc_tx_id,
                                                    t.completion, t.disputed});
    }
    std::sort(corpus.trade_log.begin(), corpus.trade_log.end(),
              [](const TradeLogEvent& a, const TradeLogEvent& b) {
                  return a.broadcast_timestamp != b.broadcast_timestamp
                             ? a.broadcast_timestamp < b.broadcast_timestamp
                             : a.trade_id < b.trade_id;
              });
    std::sort(corpus.trade_stats.begin(), corpus.trade_stats.end(),
              [](const TradeStatRecord& a, const TradeStatRecord& b) {
                  return a.published_timestamp != b.published_timestamp
                             ? a.published_timestamp < b.published_timestamp
                             : a.trade_id < b.trade_id;
              });

    return out;
}

// ---- config file ----------------------------------------------------------

namespace {

Json config_to_json(const GenConfig& c) {
    Json schedule = Json::array();
    for (const RateStep& step : c.rate_schedule) {
        schedule.push_back(Json{{"from_offset_s", step.from_offset_s},
                                {"sat_per_xmr", rational_to_json(step.sat_per_xmr)}});
    }
    return Json{
        {"seed", c.seed},
        {"n_blocks", c.n_blocks},
        {"block_time_s", c.block_time_s},
        {"start_time", c.start_time},
        {"background_txs_per_block", c.background_txs_per_block},
        {"shape_weights",
         Json{{"in1_out1", c.shape_weights.in1_out1},
              {"in1_out2", c.shape_weights.in1_out2},
              {"in2_out2", c.shape_weights.in2_out2},
              {"in3_out2", c.shape_weights.in3_out2}}},
        {"background_fee_tier_probs", c.background_fee_tier_probs},
        {"fee_tier_lower_bounds", c.fee_tiers.lower},
        {"genesis_txs", c.genesis_txs},
        {"decoy_window", c.decoy_window},
        {"ring_size", c.ring_size},
        {"n_planted_trades", c.n_planted_trades},
        {"fraction_disputed", rational_to_json(c.fraction_disputed)},
        {"amount_profile",
         Json{{"even", c.amount_profile.even},
              {"four_decimal", c.amount_profile.four_decimal},
              {"free", c.amount_profile.free}}},
        {"even_amount_steps",
         [&] {
             Json steps = Json::array();
             for (const Rational& s : c.even_amount_steps) steps.push_back(rational_to_json(s));
             return steps;
         }()},
        {"min_trade_xmr_piconero", c.min_trade_xmr},
        {"max_trade_xmr_piconero", c.max_trade_xmr},
        {"trade_fee_tier", to_string(c.trade_fee_tier)},
        {"rate_schedule", schedule},
        {"btc_background_per_hour", c.btc_background_per_hour},
        {"btc_confusable_fraction", c.btc_confusable_fraction},
        {"btc_background_min_sat", c.btc_background_min_sat},
        {"btc_background_max_sat", c.btc_background_max_sat},
        {"stat_shift_max_s", c.stat_shift_max_s},
        {"obfuscation_fraction", rational_to_json(c.obfuscation_fraction)},
    };
}

}  // namespace

GenConfig load_gen_config(const std::filesystem::path& file) {
    const std::string text = slurp_file(file);
    Json parsed = Json::parse(text, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) {
        raise(Errc::usage, "bad_config", "config file is not a JSON object: " + file.string());
    }
    GenConfig c;
    const std::string where = "config";
    const auto opt_int = [&](const char* key, auto& field) {
        if (parsed.contains(key)) field = require_int(parsed, key, where);
    };
    const auto opt_double = [&](const char* key, double& field) {
        if (parsed.contains(key)) field = parsed[key].get<double>();
    };
    if (parsed.contains("seed")) c.seed = parsed["seed"].get<std::uint64_t>();
    opt_int("n_blocks", c.n_blocks);
    opt_int("block_time_s", c.block_time_s);
    opt_int("start_time", c.start_time);
    opt_double("background_txs_per_block", c.background_txs_per_block);
    if (parsed.contains("shape_weights")) {
        const Json& w = parsed["shape_weights"];
        c.shape_weights.in1_out1 = w.value("in1_out1", c.shape_weights.in1_out1);
        c.shape_weights.in1_out2 = w.value("in1_out2", c.shape_weights.in1_out2);
        c.shape_weights.in2_out2 = w.value("in2_out2", c.shape_weights.in2_out2);
        c.shape_weights.in3_out2 = w.value("in3_out2", c.shape_weights.in3_out2);
    }
    if (parsed.contains("background_fee_tier_probs")) {
        const Json& probs = parsed["background_fee_tier_probs"];
        for (std::size_t i = 0; i < 4 && i < probs.size(); ++i) {
            c.background_fee_tier_probs[i] = probs[i].get<double>();
        }
    }
    if (parsed.contains("fee_tier_lower_bounds")) {
        const Json& bounds = parsed["fee_tier_lower_bounds"];
        for (std::size_t i = 0; i < 4 && i < bounds.size(); ++i) {
            c.fee_tiers.lower[i] = bounds[i].get<Piconero>();
        }
    }
    {
        std::int64_t tmp;
        if (parsed.contains("genesis_txs")) {
            tmp = require_int(parsed, "genesis_txs", where);
            c.genesis_txs = static_cast<int>(tmp);
        }
        if (parsed.contains("ring_size")) {
            tmp = require_int(parsed, "ring_size", where);
            c.ring_size = static_cast<int>(tmp);
        }
    }
    opt_int("decoy_window", c.decoy_window);
    opt_int("n_planted_trades", c.n_planted_trades);
    if (parsed.contains("fraction_disputed")) {
        c.fraction_disputed = rational_from_json(parsed["fraction_disputed"], where);
    }
    if (parsed.contains("amount_profile")) {
        const Json& p = parsed["amount_profile"];
        c.amount_profile.even = p.value("even", c.amount_profile.even);
        c.amount_profile.four_decimal = p.value("four_decimal", c.amount_profile.four_decimal);
        c.amount_profile.free = p.value("free", c.amount_profile.free);
    }
    if (parsed.contains("even_amount_steps")) {
        c.even_amount_steps.clear();
        for (const Json& s : parsed["even_amount_steps"]) {
            c.even_amount_steps.push_back(rational_from_json(s, where));
        }
    }
    opt_int("min_trade_xmr_piconero", c.min_trade_xmr);
    opt_int("max_trade_xmr_piconero", c.max_trade_xmr);
    if (parsed.contains("trade_fee_tier")) {
        c.trade_fee_tier = fee_tier_from_string(require_string(parsed, "trade_fee_tier", where));
    }
    if (parsed.contains("rate_schedule")) {
        c.rate_schedule.clear();
        for (const Json& s : parsed["rate_schedule"]) {
            RateStep step;
            step.from_offset_s = require_int(s, "from_offset_s", where);
            step.sat_per_xmr = rational_from_json(require_field(s, "sat_per_xmr", where), where);
            c.rate_schedule.push_back(step);
        }
    }
    opt_double("btc_background_per_hour", c.btc_background_per_hour);
    opt_double("btc_confusable_fraction", c.btc_confusable_fraction);
    opt_int("btc_background_min_sat", c.btc_background_min_sat);
    opt_int("btc_background_max_sat", c.btc_background_max_sat);
    opt_int("stat_shift_max_s", c.stat_shift_max_s);
    if (parsed.contains("obfuscation_fraction")) {
        c.obfuscation_fraction = rational_from_json(parsed["obfuscation_fraction"], where);
    }
    c.validate();
    return c;
}

void save_gen_config(const GenConfig& config, const std::filesystem::path& file) {
    spit_file(file, config_to_json(config).dump(2) + "\n");
}

}  // namespace swapscan
