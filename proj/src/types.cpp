// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "swapscan/types.hpp"

#include <charconv>
#include <cstdio>

#include "json_util.hpp"
#include "swapscan/rng.hpp"

namespace swapscan {

const char* to_string(FeeTier tier) {
    switch (tier) {
        case FeeTier::low: return "low";
        case FeeTier::normal: return "normal";
        case FeeTier::elevated: return "elevated";
        case FeeTier::high: return "high";
    }
    return "low";
}

FeeTier fee_tier_from_string(const std::string& s) {
    if (s == "low") return FeeTier::low;
    if (s == "normal") return FeeTier::normal;
    if (s == "elevated") return FeeTier::elevated;
    if (s == "high") return FeeTier::high;
    raise(Errc::corpus, "bad_schema", "unknown fee tier '" + s + "'");
}

FeeTier FeeTierBounds::classify(Piconero fee) const {
    for (int t = 3; t >= 1; --t) {
        if (fee >= lower[static_cast<std::size_t>(t)]) return static_cast<FeeTier>(t);
    }
    return FeeTier::low;
}

void HeuristicParams::validate() const {
    const auto bad = [](const std::string& what) {
        raise(Errc::usage, "bad_params", what);
    };
    if (lock_window_s <= 0) bad("lock_window_s must be > 0");
    if (neighbor_block_tolerance < 0) bad("neighbor_block_tolerance must be >= 0");
    if (correlate_before_s <= 0) bad("correlate_before_s must be > 0");
    if (correlate_after_s <= 0) bad("correlate_after_s must be > 0");
    if (!(obfuscation_fraction.num >= 0) || cmp(obfuscation_fraction, Rational(1, 1)) >= 0) {
        bad("obfuscation_fraction must lie in [0, 1)");
    }
    if (max_decimal_digits < 0 || max_decimal_digits > 12) {
        bad("max_decimal_digits must lie in [0, 12]");
    }
    if (divisibility_steps.empty()) bad("divisibility_steps must be non-empty");
    for (const Rational& s : divisibility_steps) {
        if (!s.positive()) bad("divisibility steps must be > 0");
    }
}

namespace {

Json params_to_json(const HeuristicParams& p) {
    Json steps = Json::array();
    for (const Rational& s : p.divisibility_steps) steps.push_back(rational_to_json(s));
    return Json{
        {"lock_window_s", p.lock_window_s},
        {"neighbor_block_tolerance", p.neighbor_block_tolerance},
        {"correlate_before_s", p.correlate_before_s},
        {"correlate_after_s", p.correlate_after_s},
        {"obfuscation_fraction", rational_to_json(p.obfuscation_fraction)},
        {"max_decimal_digits", p.max_decimal_digits},
        {"divisibility_steps", steps},
        {"required_fee_tier", to_string(p.required_fee_tier)},
        {"require_equal_lock_fees", p.require_equal_lock_fees},
        {"symmetric_range", p.symmetric_range},
        {"btc_amount_mode", p.btc_amount_mode == BtcAmountMode::per_output ? "per_output" : "total"},
    };
}

}  // namespace

HeuristicParams load_params(const std::filesystem::path& file) {
    const std::string text = slurp_file(file);
    Json parsed = Json::parse(text, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) {
        raise(Errc::usage, "bad_params", "params file is not a JSON object: " + file.string());
    }
    HeuristicParams p;
    const std::string where = "params";
    if (parsed.contains("lock_window_s")) p.lock_window_s = require_int(parsed, "lock_window_s", where);
    if (parsed.contains("neighbor_block_tolerance")) {
        p.neighbor_block_tolerance = static_cast<int>(require_int(parsed, "neighbor_block_tolerance", where));
    }
    if (parsed.contains("correlate_before_s")) p.correlate_before_s = require_int(parsed, "correlate_before_s", where);
    if (parsed.contains("correlate_after_s")) p.correlate_after_s = require_int(parsed, "correlate_after_s", where);
    if (parsed.contains("obfuscation_fraction")) {
        p.obfuscation_fraction = rational_from_json(parsed["obfuscation_fraction"], where);
    }
    if (parsed.contains("max_decimal_digits")) {
        p.max_decimal_digits = static_cast<int>(require_int(parsed, "max_decimal_digits", where));
    }
    if (parsed.contains("divisibility_steps")) {
        p.divisibility_steps.clear();
        for (const Json& s : parsed["divisibility_steps"]) {
            p.divisibility_steps.push_back(rational_from_json(s, where));
        }
    }
    if (parsed.contains("required_fee_tier")) {
        p.required_fee_tier = fee_tier_from_string(require_string(parsed, "required_fee_tier", where));
    }
    if (parsed.contains("require_equal_lock_fees")) {
        p.require_equal_lock_fees = parsed["require_equal_lock_fees"].get<bool>();
    }
    if (parsed.contains("symmetric_range")) p.symmetric_range = parsed["symmetric_range"].get<bool>();
    if (parsed.contains("btc_amount_mode")) {
        const std::string mode = require_string(parsed, "btc_amount_mode", where);
        if (mode == "per_output") {
            p.btc_amount_mode = BtcAmountMode::per_output;
        } else if (mode == "total") {
            p.btc_amount_mode = BtcAmountMode::total;
        } else {
            raise(Errc::usage, "bad_params", "btc_amount_mode must be per_output or total");
        }
    }
    p.validate();
    return p;
}

void save_params(const HeuristicParams& params, const std::filesystem::path& file) {
    spit_file(file, params_to_json(params).dump(2) + "\n");
}

std::string params_digest(const HeuristicParams& params) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(params_to_json(params).dump())));
    return buf;
}

}  // namespace swapscan
