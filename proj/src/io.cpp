// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "swapscan/io.hpp"

#include <fstream>

#include "json_util.hpp"
#include "swapscan/rng.hpp"

namespace swapscan {

namespace {

std::string hex16(std::uint64_t x) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

std::vector<std::string> read_lines(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) raise(Errc::io, "io", "cannot open " + file.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

// Order-independent: the sum of per-record hashes is invariant under record
// permutation, and the count is mixed in.
std::string digest_encoded(const std::vector<std::string>& lines) {
    std::uint64_t sum = 0;
    for (const std::string& line : lines) sum += splitmix64(fnv1a64(line));
    return hex16(sum + splitmix64(lines.size()));
}

std::string where_at(const char* file, std::size_t line_no) {
    return std::string(file) + " line " + std::to_string(line_no + 1);
}

// --- canonical record encodings --------------------------------------------

Json block_to_json(const MoneroBlock& b) {
    return Json{{"height", b.height}, {"timestamp", b.timestamp}, {"tx_ids", b.tx_ids}};
}

MoneroBlock block_from_json(const Json& v, const std::string& where) {
    MoneroBlock b;
    b.height = require_int(v, "height", where);
    b.timestamp = require_int(v, "timestamp", where);
    const Json& ids = require_field(v, "tx_ids", where);
    if (!ids.is_array()) raise(Errc::corpus, "bad_schema", where + ": tx_ids must be an array");
    for (const Json& id : ids) b.tx_ids.push_back(id.get<std::string>());
    return b;
}

Json monero_tx_to_json(const MoneroTx& tx) {
    Json inputs = Json::array();
    for (const MoneroInput& input : tx.inputs) {
        inputs.push_back(Json{{"ring", input.ring}});
    }
    Json outputs = Json::array();
    for (const MoneroOutput& output : tx.outputs) {
        outputs.push_back(Json{{"output_id", output.output_id}});
    }
    return Json{{"tx_id", tx.tx_id},   {"block_height", tx.block_height},
                {"fee", tx.fee},       {"fee_tier", to_string(tx.fee_tier)},
                {"inputs", inputs},    {"outputs", outputs}};
}

MoneroTx monero_tx_from_json(const Json& v, const std::string& where) {
    MoneroTx tx;
    tx.tx_id = require_string(v, "tx_id", where);
    tx.block_height = require_int(v, "block_height", where);
    tx.fee = require_int(v, "fee", where);
    tx.fee_tier = fee_tier_from_string(require_string(v, "fee_tier", where));
    const Json& inputs = require_field(v, "inputs", where);
    for (const Json& in : inputs) {
        MoneroInput input;
        const Json& ring = require_field(in, "ring", where);
        for (const Json& member : ring) input.ring.push_back(member.get<std::string>());
        tx.inputs.push_back(std::move(input));
    }
    const Json& outputs = require_field(v, "outputs", where);
    for (const Json& out : outputs) {
        tx.outputs.push_back(MoneroOutput{require_string(out, "output_id", where)});
    }
    return tx;
}

Json bitcoin_tx_to_json(const BitcoinTx& tx) {
    return Json{{"tx_id", tx.tx_id}, {"timestamp", tx.timestamp}, {"amounts", tx.amounts}};
}

BitcoinTx bitcoin_tx_from_json(const Json& v, const std::string& where) {
    BitcoinTx tx;
    tx.tx_id = require_string(v, "tx_id", where);
    tx.timestamp = require_int(v, "timestamp", where);
    const Json& amounts = require_field(v, "amounts", where);
    for (const Json& a : amounts) tx.amounts.push_back(a.get<Satoshi>());
    if (tx.amounts.empty()) {
        raise(Errc::corpus, "bad_schema", where + ": amounts must be non-empty");
    }
    for (const Satoshi a : tx.amounts) {
        if (a <= 0) raise(Errc::corpus, "bad_schema", where + ": amounts must be > 0");
    }
    return tx;
}

Json stat_to_json(const TradeStatRecord& s) {
    return Json{{"trade_id", s.trade_id},
                {"published_xmr_amount", s.published_xmr_amount},
                {"exchange_rate", rational_to_json(s.exchange_rate)},
                {"published_timestamp", s.published_timestamp}};
}

TradeStatRecord stat_from_json(const Json& v, const std::string& where) {
    TradeStatRecord s;
    s.trade_id = require_string(v, "trade_id", where);
    s.published_xmr_amount = require_int(v, "published_xmr_amount", where);
    s.exchange_rate = rational_from_json(require_field(v, "exchange_rate", where), where);
    s.published_timestamp = require_int(v, "published_timestamp", where);
    if (s.published_xmr_amount <= 0 || !s.exchange_rate.positive()) {
        raise(Errc::corpus, "bad_schema", where + ": amounts and rates must be > 0");
    }
    return s;
}

Json log_to_json(const TradeLogEvent& e) {
    return Json{{"trade_id", e.trade_id}, {"broadcast_timestamp", e.broadcast_timestamp}};
}

TradeLogEvent log_from_json(const Json& v, const std::string& where) {
    TradeLogEvent e;
    e.trade_id = require_string(v, "trade_id", where);
    e.broadcast_timestamp = require_int(v, "broadcast_timestamp", where);
    return e;
}

Json ground_truth_to_json(const GroundTruthTrade& t) {
    return Json{{"trade_id", t.trade_id},
                {"lock_a_tx_id", t.lock_a_tx_id},
                {"lock_b_tx_id", t.lock_b_tx_id},
                {"spend_tx_id", t.spend_tx_id},
                {"true_xmr_amount", t.true_xmr_amount},
                {"btc_tx_id", t.btc_tx_id},
                {"completion_timestamp", t.completion_timestamp},
                {"disputed", t.disputed}};
}

GroundTruthTrade ground_truth_from_json(const Json& v, const std::string& where) {
    GroundTruthTrade t;
    t.trade_id = require_string(v, "trade_id", where);
    t.lock_a_tx_id = require_string(v, "lock_a_tx_id", where);
    t.lock_b_tx_id = require_string(v, "lock_b_tx_id", where);
    t.spend_tx_id = require_string(v, "spend_tx_id", where);
    t.true_xmr_amount = require_int(v, "true_xmr_amount", where);
    t.btc_tx_id = require_string(v, "btc_tx_id", where);
    t.completion_timestamp = require_int(v, "completion_timestamp", where);
    t.disputed = require_field(v, "disputed", where).get<bool>();
    return t;
}

Json candidate_to_json(const SwapCandidate& c) {
    return Json{{"spend_tx_id", c.spend_tx_id},
                {"lock_a_tx_id", c.lock_a_tx_id},
                {"lock_b_tx_id", c.lock_b_tx_id},
                {"spend_height", c.spend_height},
                {"spend_timestamp", c.spend_timestamp},
                {"lock_a_height", c.lock_a_height},
                {"lock_a_timestamp", c.lock_a_timestamp},
                {"lock_b_height", c.lock_b_height},
                {"lock_b_timestamp", c.lock_b_timestamp}};
}

SwapCandidate candidate_from_json(const Json& v, const std::string& where) {
    SwapCandidate c;
    c.spend_tx_id = require_string(v, "spend_tx_id", where);
    c.lock_a_tx_id = require_string(v, "lock_a_tx_id", where);
    c.lock_b_tx_id = require_string(v, "lock_b_tx_id", where);
    c.spend_height = require_int(v, "spend_height", where);
    c.spend_timestamp = require_int(v, "spend_timestamp", where);
    c.lock_a_height = require_int(v, "lock_a_height", where);
    c.lock_a_timestamp = require_int(v, "lock_a_timestamp", where);
    c.lock_b_height = require_int(v, "lock_b_height", where);
    c.lock_b_timestamp = require_int(v, "lock_b_timestamp", where);
    return c;
}

Json match_to_json(const TradeSwapMatch& m) {
    Json swaps = Json::array();
    for (const SwapCandidate& c : m.swaps) swaps.push_back(candidate_to_json(c));
    return Json{{"trade_id", m.trade_id},
                {"broadcast_timestamp", m.broadcast_timestamp},
                {"window_before_s", m.window_before_s},
                {"window_after_s", m.window_after_s},
                {"swaps", swaps}};
}

TradeSwapMatch match_from_json(const Json& v, const std::string& where) {
    TradeSwapMatch m;
    m.trade_id = require_string(v, "trade_id", where);
    m.broadcast_timestamp = require_int(v, "broadcast_timestamp", where);
    m.window_before_s = require_int(v, "window_before_s", where);
    m.window_after_s = require_int(v, "window_after_s", where);
    for (const Json& c : require_field(v, "swaps", where)) {
        m.swaps.push_back(candidate_from_json(c, where));
    }
    if (m.swaps.empty()) {
        raise(Errc::corpus, "bad_schema", where + ": matches must list at least one swap");
    }
    return m;
}

Json btc_set_to_json(const BtcCandidateSet& s) {
    Json window = Json::array();
    for (const auto& [lo, hi] : s.window) window.push_back(Json::array({lo, hi}));
    Json candidates = Json::array();
    for (const BtcCandidate& c : s.candidates) {
        candidates.push_back(Json{{"btc_tx_id", c.btc_tx_id},
                                  {"amount_sat", c.amount_sat},
                                  {"implied_xmr_piconero", c.implied_xmr_piconero},
                                  {"range_ok", c.range_ok},
                                  {"decimals_ok", c.decimals_ok},
                                  {"divisibility_ok", c.divisibility_ok}});
    }
    return Json{{"trade_id", s.trade_id},
                {"spend_tx_id", s.spend_tx_id},
                {"window", window},
                {"candidates", candidates}};
}

BtcCandidateSet btc_set_from_json(const Json& v, const std::string& where) {
    BtcCandidateSet s;
    s.trade_id = require_string(v, "trade_id", where);
    s.spend_tx_id = require_string(v, "spend_tx_id", where);
    for (const Json& span : require_field(v, "window", where)) {
        s.window.emplace_back(span.at(0).get<Timestamp>(), span.at(1).get<Timestamp>());
    }
    for (const Json& c : require_field(v, "candidates", where)) {
        BtcCandidate cand;
        cand.btc_tx_id = require_string(c, "btc_tx_id", where);
        cand.amount_sat = require_int(c, "amount_sat", where);
        cand.implied_xmr_piconero = require_int(c, "implied_xmr_piconero", where);
        cand.range_ok = require_field(c, "range_ok", where).get<bool>();
        cand.decimals_ok = require_field(c, "decimals_ok", where).get<bool>();
        cand.divisibility_ok = require_field(c, "divisibility_ok", where).get<bool>();
        s.candidates.push_back(std::move(cand));
    }
    return s;
}

// --- stage meta -------------------------------------------------------------

Json digests_to_json(const CorpusDigests& d) {
    return Json{{"blocks", d.blocks},
                {"monero_txs", d.monero_txs},
                {"bitcoin_txs", d.bitcoin_txs},
                {"trade_stats", d.trade_stats},
                {"trade_log", d.trade_log}};
}

CorpusDigests digests_from_json(const Json& v, const std::string& where) {
    CorpusDigests d;
    d.blocks = require_string(v, "blocks", where);
    d.monero_txs = require_string(v, "monero_txs", where);
    d.bitcoin_txs = require_string(v, "bitcoin_txs", where);
    d.trade_stats = require_string(v, "trade_stats", where);
    d.trade_log = require_string(v, "trade_log", where);
    return d;
}

Json meta_to_json(const StageMeta& meta) {
    return Json{{"meta", Json{{"stage", meta.stage},
                              {"params_digest", meta.params_digest},
                              {"corpus", digests_to_json(meta.corpus)}}}};
}

StageMeta meta_from_line(const std::string& line, const std::string& where) {
    const Json v = parse_json_line(line, where);
    if (!v.contains("meta")) {
        raise(Errc::corpus, "bad_schema", where + ": expected a meta header line");
    }
    const Json& m = v["meta"];
    StageMeta meta;
    meta.stage = require_string(m, "stage", where);
    meta.params_digest = require_string(m, "params_digest", where);
    meta.corpus = digests_from_json(require_field(m, "corpus", where), where);
    return meta;
}

template <typename Record, typename Encode>
void write_ndjson(const std::filesystem::path& file, std::span<const Record> records,
                  Encode&& encode) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::io, "io", "cannot write " + file.string());
    for (const Record& r : records) out << encode(r).dump() << '\n';
    if (!out) raise(Errc::io, "io", "write failed for " + file.string());
}

template <typename Record, typename Decode>
std::vector<Record> read_ndjson(const std::filesystem::path& file, Decode&& decode) {
    std::vector<Record> records;
    const auto lines = read_lines(file);
    records.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string where = where_at(file.filename().string().c_str(), i);
        records.push_back(decode(parse_json_line(lines[i], where), where));
    }
    return records;
}

template <typename Record, typename Encode>
std::string digest_records(std::span<const Record> records, Encode&& encode) {
    std::vector<std::string> lines;
    lines.reserve(records.size());
    for (const Record& r : records) lines.push_back(encode(r).dump());
    return digest_encoded(lines);
}

}  // namespace

std::string CorpusDigests::combined() const {
    return hex16(fnv1a64(blocks + monero_txs + bitcoin_txs + trade_stats + trade_log));
}

std::vector<MoneroBlock> read_blocks(const std::filesystem::path& file) {
    return read_ndjson<MoneroBlock>(file, block_from_json);
}

std::vector<MoneroTx> read_monero_txs(const std::filesystem::path& file) {
    return read_ndjson<MoneroTx>(file, monero_tx_from_json);
}

std::vector<BitcoinTx> read_bitcoin_txs(const std::filesystem::path& file) {
    return read_ndjson<BitcoinTx>(file, bitcoin_tx_from_json);
}

std::vector<TradeStatRecord> read_trade_stats(const std::filesystem::path& file) {
    return read_ndjson<TradeStatRecord>(file, stat_from_json);
}

std::vector<TradeLogEvent> read_trade_log(const std::filesystem::path& file) {
    return read_ndjson<TradeLogEvent>(file, log_from_json);
}

Corpus read_corpus(const std::filesystem::path& dir) {
    Corpus corpus;
    corpus.blocks = read_blocks(dir / kBlocksFile);
    corpus.monero_txs = read_monero_txs(dir / kMoneroTxsFile);
    corpus.bitcoin_txs = read_bitcoin_txs(dir / kBitcoinTxsFile);
    corpus.trade_stats = read_trade_stats(dir / kTradeStatsFile);
    corpus.trade_log = read_trade_log(dir / kTradeLogFile);
    return corpus;
}

void write_corpus(const std::filesystem::path& dir, const Corpus& corpus) {
    std::filesystem::create_directories(dir);
    write_ndjson<MoneroBlock>(dir / kBlocksFile, corpus.blocks, block_to_json);
    write_ndjson<MoneroTx>(dir / kMoneroTxsFile, corpus.monero_txs, monero_tx_to_json);
    write_ndjson<BitcoinTx>(dir / kBitcoinTxsFile, corpus.bitcoin_txs, bitcoin_tx_to_json);
    write_ndjson<TradeStatRecord>(dir / kTradeStatsFile, corpus.trade_stats, stat_to_json);
    write_ndjson<TradeLogEvent>(dir / kTradeLogFile, corpus.trade_log, log_to_json);
}

CorpusDigests digest_corpus(const Corpus& corpus) {
    CorpusDigests d;
    d.blocks = digest_records<MoneroBlock>(corpus.blocks, block_to_json);
    d.monero_txs = digest_records<MoneroTx>(corpus.monero_txs, monero_tx_to_json);
    d.bitcoin_txs = digest_records<BitcoinTx>(corpus.bitcoin_txs, bitcoin_tx_to_json);
    d.trade_stats = digest_records<TradeStatRecord>(corpus.trade_stats, stat_to_json);
    d.trade_log = digest_records<TradeLogEvent>(corpus.trade_log, log_to_json);
    return d;
}

CorpusDigests digest_corpus_dir(const std::filesystem::path& dir) {
    return digest_corpus(read_corpus(dir));
}

std::string digest_trade_log(std::span<const TradeLogEvent> records) {
    return digest_records<TradeLogEvent>(records, log_to_json);
}

std::string digest_trade_stats(std::span<const TradeStatRecord> records) {
    return digest_records<TradeStatRecord>(records, stat_to_json);
}

std::string digest_bitcoin_txs(std::span<const BitcoinTx> records) {
    return digest_records<BitcoinTx>(records, bitcoin_tx_to_json);
}

void write_ground_truth(const std::filesystem::path& file, const GroundTruthFile& gt) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::io, "io", "cannot write " + file.string());
    out << Json{{"meta", Json{{"stage", "generate"},
                              {"seed", gt.seed},
                              {"corpus", digests_to_json(gt.corpus)}}}}
               .dump()
        << '\n';
    for (const GroundTruthTrade& t : gt.trades) out << ground_truth_to_json(t).dump() << '\n';
    if (!out) raise(Errc::io, "io", "write failed for " + file.string());
}

GroundTruthFile read_ground_truth(const std::filesystem::path& file) {
    const auto lines = read_lines(file);
    if (lines.empty()) raise(Errc::corpus, "bad_schema", file.string() + ": missing meta line");
    GroundTruthFile gt;
    const std::string where0 = where_at(file.filename().string().c_str(), 0);
    const Json head = parse_json_line(lines[0], where0);
    if (!head.contains("meta")) {
        raise(Errc::corpus, "bad_schema", where0 + ": expected a meta header line");
    }
    gt.seed = head["meta"].value("seed", std::uint64_t{0});
    gt.corpus = digests_from_json(require_field(head["meta"], "corpus", where0), where0);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string where = where_at(file.filename().string().c_str(), i);
        gt.trades.push_back(ground_truth_from_json(parse_json_line(lines[i], where), where));
    }
    return gt;
}

void write_corpus_meta(const std::filesystem::path& dir, const GenConfig& config,
                       const CorpusDigests& digests) {
    const Json meta{{"seed", config.seed},
                    {"n_blocks", config.n_blocks},
                    {"block_time_s", config.block_time_s},
                    {"start_time", config.start_time},
                    {"fee_tier_lower_bounds", config.fee_tiers.lower},
                    {"corpus", digests_to_json(digests)}};
    spit_file(dir / kCorpusMetaFile, meta.dump(2) + "\n");
}

std::optional<FeeTierBounds> read_corpus_meta_tiers(const std::filesystem::path& dir) {
    const std::filesystem::path file = dir / kCorpusMetaFile;
    if (!std::filesystem::exists(file)) return std::nullopt;
    const Json meta = Json::parse(slurp_file(file), nullptr, false);
    if (meta.is_discarded() || !meta.contains("fee_tier_lower_bounds")) return std::nullopt;
    FeeTierBounds bounds;
    const Json& lower = meta["fee_tier_lower_bounds"];
    for (std::size_t i = 0; i < 4 && i < lower.size(); ++i) {
        bounds.lower[i] = lower[i].get<Piconero>();
    }
    return bounds;
}

namespace {

template <typename Record, typename Encode>
void write_stage_file(const std::filesystem::path& file, const StageMeta& meta,
                      std::span<const Record> records, Encode&& encode) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::io, "io", "cannot write " + file.string());
    out << meta_to_json(meta).dump() << '\n';
    for (const Record& r : records) out << encode(r).dump() << '\n';
    if (!out) raise(Errc::io, "io", "write failed for " + file.string());
}

template <typename Record, typename Decode>
std::pair<StageMeta, std::vector<Record>> read_stage_file(const std::filesystem::path& file,
                                                          Decode&& decode) {
    const auto lines = read_lines(file);
    if (lines.empty()) raise(Errc::corpus, "bad_schema", file.string() + ": missing meta line");
    std::pair<StageMeta, std::vector<Record>> result;
    result.first = meta_from_line(lines[0], where_at(file.filename().string().c_str(), 0));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string where = where_at(file.filename().string().c_str(), i);
        result.second.push_back(decode(parse_json_line(lines[i], where), where));
    }
    return result;
}

}  // namespace

void write_candidates(const std::filesystem::path& file, const StageMeta& meta,
                      std::span<const SwapCandidate> candidates) {
    write_stage_file<SwapCandidate>(file, meta, candidates, candidate_to_json);
}

std::pair<StageMeta, std::vector<SwapCandidate>> read_candidates(
    const std::filesystem::path& file) {
    return read_stage_file<SwapCandidate>(file, candidate_from_json);
}

void write_funnel(const std::filesystem::path& file, const StageMeta& meta,
                  const FunnelReport& funnel) {
    const Json v{{"meta", meta_to_json(meta)["meta"]},
                 {"total_txs", funnel.total_txs},
                 {"spend_shape_txs", funnel.spend_shape_txs},
                 {"spends_with_lock_pair", funnel.spends_with_lock_pair},
                 {"candidates", funnel.candidates}};
    spit_file(file, v.dump(2) + "\n");
}

std::pair<StageMeta, FunnelReport> read_funnel(const std::filesystem::path& file) {
    const std::string text = slurp_file(file);
    const Json v = Json::parse(text, nullptr, false);
    if (v.is_discarded() || !v.is_object() || !v.contains("meta")) {
        raise(Errc::corpus, "bad_schema", file.string() + ": not a funnel report");
    }
    std::pair<StageMeta, FunnelReport> result;
    result.first = meta_from_line(Json{{"meta", v["meta"]}}.dump(), file.string());
    result.second.total_txs = require_int(v, "total_txs", file.string());
    result.second.spend_shape_txs = require_int(v, "spend_shape_txs", file.string());
    result.second.spends_with_lock_pair = require_int(v, "spends_with_lock_pair", file.string());
    result.second.candidates = require_int(v, "candidates", file.string());
    return result;
}

void write_matches(const std::filesystem::path& file, const StageMeta& meta,
                   std::span<const TradeSwapMatch> matches) {
    write_stage_file<TradeSwapMatch>(file, meta, matches, match_to_json);
}

std::pair<StageMeta, std::vector<TradeSwapMatch>> read_matches(const std::filesystem::path& file) {
    return read_stage_file<TradeSwapMatch>(file, match_from_json);
}

void write_unmatched(const std::filesystem::path& file, std::span<const TradeLogEvent> unmatched) {
    write_ndjson<TradeLogEvent>(file, unmatched, log_to_json);
}

std::vector<TradeLogEvent> read_unmatched(const std::filesystem::path& file) {
    return read_ndjson<TradeLogEvent>(file, log_from_json);
}

void write_btc_candidates(const std::filesystem::path& file, const StageMeta& meta,
                          std::span<const BtcCandidateSet> sets) {
    write_stage_file<BtcCandidateSet>(file, meta, sets, btc_set_to_json);
}

std::pair<StageMeta, std::vector<BtcCandidateSet>> read_btc_candidates(
    const std::filesystem::path& file) {
    return read_stage_file<BtcCandidateSet>(file, btc_set_from_json);
}

void require_same_corpus(const CorpusDigests& a, const CorpusDigests& b,
                         const std::string& context) {
    if (a == b) return;
    raise(Errc::mismatch, "corpus_mismatch",
          context + ": inputs come from different corpora (" + a.combined() + " vs " +
              b.combined() + ")");
}

}  // namespace swapscan
