// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Compares the parallel scan kernel against the serial reference on a
// generated corpus and verifies both produce identical candidates.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "swapscan/generate.hpp"
#include "swapscan/index.hpp"
#include "swapscan/scan.hpp"

using namespace swapscan;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"swapscan scan kernel benchmark: parallel vs serial reference"};
    std::int64_t n_blocks = 7'500;
    double txs_per_block = 7.0;
    std::int64_t trades = 220;
    std::uint64_t seed = 42;
    int reps = 3;
    app.add_option("--blocks", n_blocks, "number of blocks");
    app.add_option("--txs-per-block", txs_per_block, "mean background txs per block");
    app.add_option("--trades", trades, "planted trades");
    app.add_option("--seed", seed, "corpus seed");
    app.add_option("--reps", reps, "timed repetitions");
    CLI11_PARSE(app, argc, argv);

    GenConfig config;
    config.seed = seed;
    config.n_blocks = n_blocks;
    config.background_txs_per_block = txs_per_block;
    config.n_planted_trades = trades;

    std::printf("generating corpus (seed=%llu, blocks=%lld)...\n",
                static_cast<unsigned long long>(seed), static_cast<long long>(n_blocks));
    auto t0 = Clock::now();
    GeneratedCorpus generated = generate_corpus(config);
    std::printf("  %zu txs in %.2fs\n", generated.corpus.monero_txs.size(), seconds_since(t0));

    t0 = Clock::now();
    const ChainIndex index = ChainIndex::build(std::move(generated.corpus.blocks),
                                               std::move(generated.corpus.monero_txs));
    std::printf("  indexed in %.2fs\n", seconds_since(t0));

    HeuristicParams params;

#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: not enabled, parallel path falls back to serial\n");
#endif

    double serial_best = 1e300;
    double parallel_best = 1e300;
    ScanResult serial_result;
    ScanResult parallel_result;
    for (int r = 0; r < reps; ++r) {
        t0 = Clock::now();
        serial_result = scan_serial(index, params);
        serial_best = std::min(serial_best, seconds_since(t0));

        t0 = Clock::now();
        parallel_result = scan(index, params);
        parallel_best = std::min(parallel_best, seconds_since(t0));
    }

    const bool identical = serial_result.candidates == parallel_result.candidates;
    std::printf("scan_serial : %.4fs best of %d (%lld candidates)\n", serial_best, reps,
                static_cast<long long>(serial_result.funnel.candidates));
    std::printf("scan        : %.4fs best of %d (%lld candidates)\n", parallel_best, reps,
                static_cast<long long>(parallel_result.funnel.candidates));
    std::printf("speedup     : %.2fx\n", serial_best / parallel_best);
    std::printf("outputs     : %s\n", identical ? "identical" : "DIFFER");
    return identical ? 0 : 1;
}
