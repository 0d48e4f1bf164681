// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Command-line front end. Subcommands mirror the pipeline stages; every
// stage works on files so runs can be repeated and resumed piecewise.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <tuple>

#include <CLI11.hpp>

#include "swapscan/errors.hpp"
#include "swapscan/generate.hpp"
#include "swapscan/index.hpp"
#include "swapscan/io.hpp"
#include "swapscan/pipeline.hpp"

namespace fs = std::filesystem;
using namespace swapscan;

namespace {

HeuristicParams params_from(const std::string& path) {
    if (path.empty()) {
        HeuristicParams params;
        params.validate();
        return params;
    }
    return load_params(path);
}

GenConfig config_from(const std::string& path, bool seed_given, std::uint64_t seed) {
    GenConfig config = path.empty() ? GenConfig{} : load_gen_config(path);
    if (seed_given) config.seed = seed;
    config.validate();
    return config;
}

int cmd_generate(const std::string& config_path, bool seed_given, std::uint64_t seed,
                 const std::string& out_dir) {
    const GenConfig config = config_from(config_path, seed_given, seed);
    GeneratedCorpus generated = generate_corpus(config);
    fs::create_directories(out_dir);
    write_corpus(out_dir, generated.corpus);
    const CorpusDigests digests = digest_corpus(generated.corpus);
    write_corpus_meta(out_dir, config, digests);
    write_ground_truth(fs::path(out_dir) / kGroundTruthFile,
                       GroundTruthFile{config.seed, digests, std::move(generated.ground_truth)});
    std::printf("generated %zu blocks, %zu monero txs, %zu bitcoin txs, %zu trades -> %s\n",
                generated.corpus.blocks.size(), generated.corpus.monero_txs.size(),
                generated.corpus.bitcoin_txs.size(), generated.ground_truth.size(),
                out_dir.c_str());
    return 0;
}

int cmd_scan(const std::string& chain_dir, const std::string& params_path,
             const std::string& out_file, const std::string& funnel_file, bool serial) {
    const HeuristicParams params = params_from(params_path);
    Corpus corpus = read_corpus(chain_dir);
    const CorpusDigests digests = digest_corpus(corpus);
    const auto tiers = read_corpus_meta_tiers(chain_dir);
    const ChainIndex index = ChainIndex::build(
        std::move(corpus.blocks), std::move(corpus.monero_txs), tiers ? &*tiers : nullptr);
    const ScanResult result = serial ? scan_serial(index, params) : scan(index, params);
    const StageMeta meta{"scan", params_digest(params), digests};
    write_candidates(out_file, meta, result.candidates);
    write_funnel(funnel_file, meta, result.funnel);
    std::printf("scanned %lld txs: %lld spend-shape, %lld with lock pair, %lld candidates\n",
                static_cast<long long>(result.funnel.total_txs),
                static_cast<long long>(result.funnel.spend_shape_txs),
                static_cast<long long>(result.funnel.spends_with_lock_pair),
                static_cast<long long>(result.funnel.candidates));
    return 0;
}

int cmd_correlate(const std::string& candidates_file, const std::string& trade_log_file,
                  const std::string& params_path, const std::string& out_file,
                  std::string unmatched_file) {
    const HeuristicParams params = params_from(params_path);
    auto [meta, candidates] = read_candidates(candidates_file);
    const auto log = read_trade_log(trade_log_file);
    if (digest_trade_log(log) != meta.corpus.trade_log) {
        raise(Errc::mismatch, "corpus_mismatch",
              "trade log does not belong to the scanned corpus");
    }
    const CorrelationResult result = correlate(candidates, log, params);
    if (unmatched_file.empty()) {
        unmatched_file = (fs::path(out_file).parent_path() / "unmatched.ndjson").string();
    }
    const StageMeta out_meta{"correlate", params_digest(params), meta.corpus};
    write_matches(out_file, out_meta, result.matches);
    write_unmatched(unmatched_file, result.unmatched);
    std::printf("correlated %zu trades (%zu unmatched)\n", result.matches.size(),
                result.unmatched.size());
    return 0;
}

int cmd_match_btc(const std::string& matches_file, const std::string& stats_file,
                  const std::string& btc_file, const std::string& params_path,
                  const std::string& out_file) {
    const HeuristicParams params = params_from(params_path);
    auto [meta, matches] = read_matches(matches_file);
    const auto stats = read_trade_stats(stats_file);
    const auto btc = read_bitcoin_txs(btc_file);
    if (digest_trade_stats(stats) != meta.corpus.trade_stats) {
        raise(Errc::mismatch, "corpus_mismatch",
              "trade statistics do not belong to the correlated corpus");
    }
    if (digest_bitcoin_txs(btc) != meta.corpus.bitcoin_txs) {
        raise(Errc::mismatch, "corpus_mismatch",
              "bitcoin transactions do not belong to the correlated corpus");
    }
    const auto sets = match_btc_all(matches, stats, btc, params);
    const StageMeta out_meta{"match-btc", params_digest(params), meta.corpus};
    write_btc_candidates(out_file, out_meta, sets);
    std::size_t with_candidates = 0;
    for (const BtcCandidateSet& s : sets) {
        if (!s.candidates.empty()) ++with_candidates;
    }
    std::printf("matched %zu trades, %zu with at least one btc candidate\n", sets.size(),
                with_candidates);
    return 0;
}

int cmd_evaluate(const std::string& candidates_file, const std::string& funnel_file,
                 const std::string& matches_file, std::string unmatched_file,
                 const std::string& btc_file, const std::string& ground_truth_file,
                 const std::string& out_file, const std::string& format) {
    EvalInputs inputs;
    std::tie(inputs.candidates_meta, inputs.candidates) = read_candidates(candidates_file);
    inputs.funnel = read_funnel(funnel_file).second;
    std::tie(inputs.matches_meta, inputs.matches) = read_matches(matches_file);
    if (unmatched_file.empty()) {
        unmatched_file = (fs::path(matches_file).parent_path() / "unmatched.ndjson").string();
    }
    if (fs::exists(unmatched_file)) inputs.unmatched = read_unmatched(unmatched_file);
    std::tie(inputs.btc_meta, inputs.btc_sets) = read_btc_candidates(btc_file);
    inputs.ground_truth = read_ground_truth(ground_truth_file);

    const EvaluationReport report = evaluate(inputs);
    const std::string rendered =
        format == "json" ? report_to_json(report) : report_to_text(report);
    if (!out_file.empty()) {
        std::ofstream out(out_file, std::ios::binary | std::ios::trunc);
        if (!out) raise(Errc::io, "io", "cannot write " + out_file);
        out << rendered;
    }
    std::fputs(rendered.c_str(), stdout);
    return 0;
}

int cmd_run_all(const std::string& config_path, const std::string& params_path, bool seed_given,
                std::uint64_t seed, const std::string& out_dir, const std::string& format) {
    const GenConfig config = config_from(config_path, seed_given, seed);
    const HeuristicParams params = params_from(params_path);
    const EvaluationReport report = run_all(config, params, out_dir);
    const std::string rendered =
        format == "json" ? report_to_json(report) : report_to_text(report);
    std::fputs(rendered.c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"swapscan: cross-chain DEX trade pattern scanner and corpus generator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string params_path;
    std::string out_path;
    std::string chain_dir;
    std::string funnel_file = "funnel.json";
    std::string candidates_file;
    std::string trade_log_file;
    std::string matches_file;
    std::string unmatched_file;
    std::string stats_file;
    std::string btc_file;
    std::string ground_truth_file;
    std::string format = "text";
    std::uint64_t seed = 0;
    bool serial = false;

    auto* generate = app.add_subcommand("generate", "generate a synthetic corpus");
    generate->add_option("--config", config_path, "generator config JSON");
    auto* gen_seed = generate->add_option("--seed", seed, "seed override");
    generate->add_option("--out", out_path, "output directory")->required();

    auto* scan_cmd = app.add_subcommand("scan", "scan the Monero chain for swap candidates");
    scan_cmd->add_option("--chain", chain_dir, "corpus directory")->required();
    scan_cmd->add_option("--params", params_path, "heuristic params JSON");
    scan_cmd->add_option("--out", out_path, "candidates output file")->required();
    scan_cmd->add_option("--funnel", funnel_file, "funnel report output file");
    scan_cmd->add_flag("--serial", serial, "use the serial reference scanner");

    auto* correlate_cmd = app.add_subcommand("correlate", "join candidates with the trade log");
    correlate_cmd->add_option("--candidates", candidates_file, "candidates file")->required();
    correlate_cmd->add_option("--trade-log", trade_log_file, "trade log file")->required();
    correlate_cmd->add_option("--params", params_path, "heuristic params JSON");
    correlate_cmd->add_option("--out", out_path, "matches output file")->required();
    correlate_cmd->add_option("--unmatched", unmatched_file, "unmatched trades output file");

    auto* match_cmd = app.add_subcommand("match-btc", "shortlist Bitcoin payments per trade");
    match_cmd->add_option("--matches", matches_file, "matches file")->required();
    match_cmd->add_option("--stats", stats_file, "trade statistics file")->required();
    match_cmd->add_option("--btc", btc_file, "bitcoin transactions file")->required();
    match_cmd->add_option("--params", params_path, "heuristic params JSON");
    match_cmd->add_option("--out", out_path, "btc candidates output file")->required();

    auto* evaluate_cmd = app.add_subcommand("evaluate", "score a run against ground truth");
    evaluate_cmd->add_option("--candidates", candidates_file, "candidates file")->required();
    evaluate_cmd->add_option("--funnel", funnel_file, "funnel report file")->required();
    evaluate_cmd->add_option("--matches", matches_file, "matches file")->required();
    evaluate_cmd->add_option("--unmatched", unmatched_file, "unmatched trades file");
    evaluate_cmd->add_option("--btc-candidates", btc_file, "btc candidates file")->required();
    evaluate_cmd->add_option("--ground-truth", ground_truth_file, "ground truth file")->required();
    evaluate_cmd->add_option("--out", out_path, "report output file");
    evaluate_cmd->add_option("--format", format, "report format: json|text")
        ->check(CLI::IsMember({"json", "text"}));

    auto* run_all_cmd = app.add_subcommand("run-all", "full pipeline into one directory");
    run_all_cmd->add_option("--config", config_path, "generator config JSON");
    run_all_cmd->add_option("--params", params_path, "heuristic params JSON");
    auto* run_seed = run_all_cmd->add_option("--seed", seed, "seed override");
    run_all_cmd->add_option("--out", out_path, "output directory")->required();
    run_all_cmd->add_option("--format", format, "report format: json|text")
        ->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints the usage message
        return code == 0 ? 0 : static_cast<int>(Errc::usage);
    }

    try {
        if (generate->parsed()) {
            return cmd_generate(config_path, gen_seed->count() > 0, seed, out_path);
        }
        if (scan_cmd->parsed()) {
            return cmd_scan(chain_dir, params_path, out_path, funnel_file, serial);
        }
        if (correlate_cmd->parsed()) {
            return cmd_correlate(candidates_file, trade_log_file, params_path, out_path,
                                 unmatched_file);
        }
        if (match_cmd->parsed()) {
            return cmd_match_btc(matches_file, stats_file, btc_file, params_path, out_path);
        }
        if (evaluate_cmd->parsed()) {
            return cmd_evaluate(candidates_file, funnel_file, matches_file, unmatched_file,
                                btc_file, ground_truth_file, out_path, format);
        }
        if (run_all_cmd->parsed()) {
            return cmd_run_all(config_path, params_path, run_seed->count() > 0, seed, out_path,
                               format);
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return static_cast<int>(Errc::internal);
    }
    return 0;
}
