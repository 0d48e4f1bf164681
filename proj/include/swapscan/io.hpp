// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "swapscan/correlate.hpp"
#include "swapscan/generate.hpp"
#include "swapscan/match.hpp"
#include "swapscan/scan.hpp"
#include "swapscan/types.hpp"

namespace swapscan {

// Corpus files are line-delimited JSON, one record per line. Stage output
// files start with one meta line carrying the stage name, the params
// digest, and the per-file corpus digests, so that any stage can verify
// its inputs came from the same corpus.

inline constexpr const char* kBlocksFile = "blocks.ndjson";
inline constexpr const char* kMoneroTxsFile = "monero_txs.ndjson";
inline constexpr const char* kBitcoinTxsFile = "bitcoin_txs.ndjson";
inline constexpr const char* kTradeStatsFile = "trade_stats.ndjson";
inline constexpr const char* kTradeLogFile = "trade_log.ndjson";
inline constexpr const char* kGroundTruthFile = "ground_truth.ndjson";
inline constexpr const char* kCorpusMetaFile = "corpus_meta.json";

// Order-independent per-file digests over canonical record encodings.
struct CorpusDigests {
    std::string blocks;
    std::string monero_txs;
    std::string bitcoin_txs;
    std::string trade_stats;
    std::string trade_log;

    std::string combined() const;
    friend bool operator==(const CorpusDigests&, const CorpusDigests&) = default;
};

struct StageMeta {
    std::string stage;
    std::string params_digest;
    CorpusDigests corpus;
};

// --- corpus files ---------------------------------------------------------

std::vector<MoneroBlock> read_blocks(const std::filesystem::path& file);
std::vector<MoneroTx> read_monero_txs(const std::filesystem::path& file);
std::vector<BitcoinTx> read_bitcoin_txs(const std::filesystem::path& file);
std::vector<TradeStatRecord> read_trade_stats(const std::filesystem::path& file);
std::vector<TradeLogEvent> read_trade_log(const std::filesystem::path& file);

Corpus read_corpus(const std::filesystem::path& dir);
void write_corpus(const std::filesystem::path& dir, const Corpus& corpus);

CorpusDigests digest_corpus(const Corpus& corpus);
CorpusDigests digest_corpus_dir(const std::filesystem::path& dir);

// Per-file digests for stages that only see one corpus file.
std::string digest_trade_log(std::span<const TradeLogEvent> records);
std::string digest_trade_stats(std::span<const TradeStatRecord> records);
std::string digest_bitcoin_txs(std::span<const BitcoinTx> records);

// --- ground truth ---------------------------------------------------------

struct GroundTruthFile {
    std::uint64_t seed = 0;
    CorpusDigests corpus;
    std::vector<GroundTruthTrade> trades;
};

void write_ground_truth(const std::filesystem::path& file, const GroundTruthFile& gt);
GroundTruthFile read_ground_truth(const std::filesystem::path& file);

// Generation metadata for humans and downstream validation.
void write_corpus_meta(const std::filesystem::path& dir, const GenConfig& config,
                       const CorpusDigests& digests);

// Fee tier boundaries recorded at generation time, when present.
std::optional<FeeTierBounds> read_corpus_meta_tiers(const std::filesystem::path& dir);

// --- stage outputs --------------------------------------------------------

void write_candidates(const std::filesystem::path& file, const StageMeta& meta,
                      std::span<const SwapCandidate> candidates);
std::pair<StageMeta, std::vector<SwapCandidate>> read_candidates(const std::filesystem::path& file);

void write_funnel(const std::filesystem::path& file, const StageMeta& meta,
                  const FunnelReport& funnel);
std::pair<StageMeta, FunnelReport> read_funnel(const std::filesystem::path& file);

void write_matches(const std::filesystem::path& file, const StageMeta& meta,
                   std::span<const TradeSwapMatch> matches);
std::pair<StageMeta, std::vector<TradeSwapMatch>> read_matches(const std::filesystem::path& file);

void write_unmatched(const std::filesystem::path& file, std::span<const TradeLogEvent> unmatched);
std::vector<TradeLogEvent> read_unmatched(const std::filesystem::path& file);

void write_btc_candidates(const std::filesystem::path& file, const StageMeta& meta,
                          std::span<const BtcCandidateSet> sets);
std::pair<StageMeta, std::vector<BtcCandidateSet>> read_btc_candidates(
    const std::filesystem::path& file);

// Throws corpus_mismatch unless both digest sets are identical.
void require_same_corpus(const CorpusDigests& a, const CorpusDigests& b,
                         const std::string& context);

}  // namespace swapscan
