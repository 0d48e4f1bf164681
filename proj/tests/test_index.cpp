// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <functional>

#include "helpers.hpp"
#include "swapscan/errors.hpp"
#include "swapscan/index.hpp"
#include "swapscan/rng.hpp"

using namespace swapscan;
using namespace swapscan::testing;

namespace {

std::string kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

}  // namespace

TEST_CASE("empty chain indexes to an empty view") {
    const ChainIndex index = ChainIndex::build({}, {});
    CHECK(index.block_count() == 0);
    CHECK(index.tx_count() == 0);
    CHECK(index.find_output("nope") == nullptr);
    CHECK_FALSE(index.has_height(0));
    CHECK_THROWS_AS(index.time_of(0), Error);
}

TEST_CASE("single self-contained tx resolves to height 0") {
    ChainBuilder chain;
    chain.add_block(1'000'000);
    const TxId tx = chain.add_tx(0, 1, 100, FeeTier::low, {{"t0:0"}});
    const ChainIndex index = chain.build();

    CHECK(index.tx_count() == 1);
    const auto* rec = index.find_output(chain.out(tx, 0));
    REQUIRE(rec != nullptr);
    CHECK(rec->height == 0);
    CHECK(rec->creating_tx == tx);
    CHECK(rec->index_in_tx == 0);
    CHECK(index.time_of(0) == 1'000'000);
}

TEST_CASE("time_of rejects heights beyond the tip") {
    ChainBuilder chain;
    chain.add_block(1'000'000);
    chain.add_block(1'000'120);
    chain.add_tx(0, 1, 100, FeeTier::low, {{"t0:0"}});
    const ChainIndex index = chain.build();
    CHECK(index.time_of(0) == 1'000'000);
    CHECK(index.time_of(1) == 1'000'120);
    CHECK(index.time_of(1) > index.time_of(0));
    CHECK(kind_of([&] { (void)index.time_of(2); }) == "unknown_height");
    CHECK(kind_of([&] { (void)index.time_of(-1); }) == "unknown_height");
}

TEST_CASE("dangling ring references are rejected") {
    ChainBuilder chain;
    chain.add_block(100);
    chain.add_tx(0, 1, 100, FeeTier::low, {{"t0:0"}});
    chain.add_tx(0, 1, 100, FeeTier::low, {{"no-such-output"}});
    CHECK(kind_of([&] { (void)chain.build(); }) == "dangling_reference");
}

TEST_CASE("ring references into the future are rejected") {
    ChainBuilder chain;
    chain.add_block(100);
    chain.add_block(220);
    chain.add_tx(0, 1, 100, FeeTier::low, {{"t1:0"}});  // block 0 ring -> block 1 output
    chain.add_tx(1, 1, 100, FeeTier::low, {{"t1:0"}});
    CHECK(kind_of([&] { (void)chain.build(); }) == "dangling_reference");
}

TEST_CASE("duplicate output ids are rejected") {
    ChainBuilder chain;
    chain.add_block(100);
    auto blocks = chain.blocks;
    MoneroTx a;
    a.tx_id = "a";
    a.block_height = 0;
    a.outputs = {MoneroOutput{"dup"}};
    a.inputs = {MoneroInput{{"dup"}}};
    a.fee = 1;
    MoneroTx b = a;
    b.tx_id = "b";
    blocks[0].tx_ids = {"a", "b"};
    CHECK(kind_of([&] { (void)ChainIndex::build(blocks, {a, b}); }) == "duplicate_output_id");
}

TEST_CASE("non-monotonic block timestamps are rejected") {
    std::vector<MoneroBlock> blocks(2);
    blocks[0].height = 0;
    blocks[0].timestamp = 100;
    blocks[1].height = 1;
    blocks[1].timestamp = 100;  // not strictly increasing
    CHECK(kind_of([&] { (void)ChainIndex::build(blocks, {}); }) == "non_monotonic_timestamps");
}

TEST_CASE("fee tier consistency is enforced when bounds are given") {
    ChainBuilder chain;
    chain.add_block(100);
    chain.add_tx(0, 1, 100, FeeTier::high, {{"t0:0"}});  // fee 100 is low-tier
    const FeeTierBounds bounds;
    CHECK(kind_of([&] { (void)ChainIndex::build(chain.blocks, chain.txs, &bounds); }) ==
          "bad_schema");
    CHECK_NOTHROW((void)ChainIndex::build(chain.blocks, chain.txs));
}

TEST_CASE("index construction is order independent") {
    const GenConfig config = small_config(31, 3, false);
    GeneratedCorpus generated = generate_corpus(config);

    const ChainIndex a = ChainIndex::build(generated.corpus.blocks, generated.corpus.monero_txs);

    auto shuffled_txs = generated.corpus.monero_txs;
    auto shuffled_blocks = generated.corpus.blocks;
    Rng rng(99);
    rng.shuffle(std::span<MoneroTx>(shuffled_txs));
    rng.shuffle(std::span<MoneroBlock>(shuffled_blocks));
    const ChainIndex b = ChainIndex::build(shuffled_blocks, shuffled_txs);

    REQUIRE(a.tx_count() == b.tx_count());
    REQUIRE(a.block_count() == b.block_count());
    for (std::uint32_t i = 0; i < a.tx_count(); ++i) {
        CHECK(a.tx_at(i).tx_id == b.tx_at(i).tx_id);
    }
    for (const MoneroTx& tx : generated.corpus.monero_txs) {
        for (const MoneroOutput& out : tx.outputs) {
            const auto* ra = a.find_output(out.output_id);
            const auto* rb = b.find_output(out.output_id);
            REQUIRE(ra != nullptr);
            REQUIRE(rb != nullptr);
            CHECK(ra->creating_tx == rb->creating_tx);
            CHECK(ra->height == rb->height);
            CHECK(ra->index_in_tx == rb->index_in_tx);
        }
    }
}

TEST_CASE("every ring member is created at or below the spender's height") {
    const GenConfig config = small_config(32, 4, true);
    GeneratedCorpus generated = generate_corpus(config);
    const ChainIndex index =
        ChainIndex::build(generated.corpus.blocks, generated.corpus.monero_txs);
    for (const MoneroTx& tx : index.txs()) {
        for (const MoneroInput& input : tx.inputs) {
            for (const OutputId& member : input.ring) {
                const auto* rec = index.find_output(member);
                REQUIRE(rec != nullptr);
                CHECK(rec->height <= tx.block_height);
            }
        }
    }
}
