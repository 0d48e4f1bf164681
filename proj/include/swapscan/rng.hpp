// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace swapscan {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const char c : s) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x00000100000001b3ull;
    }
    return h;
}

// mt19937_64 with hand-rolled mappings. The standard pins the raw engine
// sequence but not the distributions, so every mapping lives here and the
// emitted corpora stay identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed), seed_base_(seed) {}

    // Independent child stream, decorrelated from the parent by tag.
    Rng fork(std::string_view tag) const {
        return Rng(splitmix64(seed_base_ ^ fnv1a64(tag)));
    }

    std::uint64_t next_u64() { return gen_(); }

    // Unbiased integer in [0, bound) via rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % bound;
    }

    // Inclusive integer range.
    std::int64_t range_i64(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // Uniform in [0, 1) with 53 bits.
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double range_real(double lo, double hi) { return lo + unit() * (hi - lo); }

    bool chance(double p) { return unit() < p; }

    // Index drawn proportionally to the weights.
    std::size_t pick_weighted(std::span<const double> weights) {
        double total = 0.0;
        for (const double w : weights) total += w;
        double x = unit() * total;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            if (x < weights[i]) return i;
            x -= weights[i];
        }
        return weights.size() - 1;
    }

    // Knuth's method, chunked so exp(-mean) never underflows; the sum of
    // independent Poisson draws is Poisson in the summed mean.
    std::int64_t poisson(double mean) {
        std::int64_t total = 0;
        while (mean > 25.0) {
            total += poisson_small(25.0);
            mean -= 25.0;
        }
        return total + poisson_small(mean);
    }

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[below(i)]);
        }
    }

private:
    std::int64_t poisson_small(double mean) {
        const double limit = std::exp(-mean);
        double p = 1.0;
        std::int64_t k = 0;
        do {
            ++k;
            p *= unit();
        } while (p > limit);
        return k - 1;
    }

    std::mt19937_64 gen_;
    std::uint64_t seed_base_ = 0;
};

}  // namespace swapscan
