#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "trendsim/config.hpp"
#include "trendsim/corpus.hpp"
#include "trendsim/errors.hpp"
#include "trendsim/pipeline.hpp"
#include "trendsim/ratiostats.hpp"
#include "trendsim/spamlens.hpp"
#include "trendsim/synthgen.hpp"
#include "trendsim/trendengine.hpp"
#include "trendsim/verify.hpp"

namespace ts = trendsim;

namespace {

struct CommonOpts {
    std::string config_file;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> frames;
    std::optional<double> alpha;
    std::optional<std::string> method;
};

ts::RunConfig make_run_config(const CommonOpts& opts) {
    ts::KvFile kv;
    if (!opts.config_file.empty()) kv = ts::KvFile::parse(opts.config_file);
    ts::RunConfig cfg = ts::run_config_from_kv(kv);
    if (opts.seed) cfg.gen.seed = *opts.seed;
    if (opts.frames) cfg.frames = ts::parse_frames(*opts.frames);
    if (opts.alpha) cfg.alpha = *opts.alpha;
    if (opts.method) {
        if (*opts.method == "oracle") {
            cfg.method = ts::DetectMethod::DeletionOracle;
        } else if (opts.method->starts_with("threshold:")) {
            cfg.method = ts::DetectMethod::RatioThreshold;
            cfg.threshold = std::stod(opts.method->substr(10));
        } else {
            ts::fail(ts::Errc::ConfigError, "method must be oracle or threshold:<t>");
        }
    }
    cfg.validate();
    return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_file, "flat key = value config file");
    cmd->add_option("--seed", opts.seed, "master seed (overrides the config file)");
    cmd->add_option("--frames", opts.frames, "ratio frames, e.g. 10:2,8:3");
    cmd->add_option("--alpha", opts.alpha, "significance level");
    cmd->add_option("--method", opts.method, "oracle | threshold:<t>");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"synthetic microblog trend analysis pipeline"};
    app.require_subcommand(1);

    CommonOpts opts;

    // generate
    auto* cmd_gen = app.add_subcommand("generate", "generate a corpus (with moderation sweep)");
    std::string gen_out = "corpus.txt";
    bool gen_no_moderation = false;
    add_common(cmd_gen, opts);
    cmd_gen->add_option("--out", gen_out, "corpus file to write");
    cmd_gen->add_flag("--no-moderation", gen_no_moderation, "skip the moderation sweep");

    // trends
    auto* cmd_trends = app.add_subcommand("trends", "hourly trending snapshots and lifelines");
    std::string trends_corpus, trends_dir = ".";
    int trends_top_k = ts::kDefaultTopK;
    cmd_trends->add_option("--corpus", trends_corpus, "corpus file")->required();
    cmd_trends->add_option("--out", trends_dir, "output directory");
    cmd_trends->add_option("--top-k", trends_top_k, "trending list size");

    // ratios
    auto* cmd_ratios = app.add_subcommand("ratios", "cumulative growth-ratio fits");
    std::string ratios_corpus, ratios_dir = ".";
    int ratios_top_k = ts::kDefaultTopK;
    add_common(cmd_ratios, opts);
    cmd_ratios->add_option("--corpus", ratios_corpus, "corpus file")->required();
    cmd_ratios->add_option("--out", ratios_dir, "output directory");
    cmd_ratios->add_option("--top-k", ratios_top_k, "trending list size");

    // detect
    auto* cmd_detect = app.add_subcommand("detect", "identify suspected spam accounts");
    std::string detect_corpus, detect_out = "suspects.json";
    add_common(cmd_detect, opts);
    cmd_detect->add_option("--corpus", detect_corpus, "corpus file")->required();
    cmd_detect->add_option("--out", detect_out, "suspect set file");

    // purge
    auto* cmd_purge = app.add_subcommand("purge", "remove suspect-associated tweets");
    std::string purge_corpus, purge_suspects, purge_out = "cleaned.txt",
                purge_report = "removal.json";
    cmd_purge->add_option("--corpus", purge_corpus, "corpus file")->required();
    cmd_purge->add_option("--suspects", purge_suspects, "suspect set file")->required();
    cmd_purge->add_option("--out", purge_out, "cleaned corpus file");
    cmd_purge->add_option("--report", purge_report, "removal report file");

    // report
    auto* cmd_report = app.add_subcommand("report", "full pipeline into a report bundle");
    std::string report_dir = "report";
    add_common(cmd_report, opts);
    cmd_report->add_option("--out", report_dir, "report directory");

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "brute-force oracle checks");
    std::string verify_corpus_path;
    int verify_top_k = ts::kDefaultTopK;
    std::uint64_t verify_limit = 10'000;
    cmd_verify->add_option("--corpus", verify_corpus_path, "corpus file")->required();
    cmd_verify->add_option("--top-k", verify_top_k, "trending list size");
    cmd_verify->add_option("--limit", verify_limit, "max corpus size for the oracle");

    // summary
    auto* cmd_summary = app.add_subcommand("summary", "corpus counters");
    std::string summary_corpus;
    cmd_summary->add_option("--corpus", summary_corpus, "corpus file")->required();

    // export-jsonl
    auto* cmd_jsonl = app.add_subcommand("export-jsonl", "emit the corpus as JSON lines");
    std::string jsonl_corpus, jsonl_out = "corpus.jsonl";
    cmd_jsonl->add_option("--corpus", jsonl_corpus, "corpus file")->required();
    cmd_jsonl->add_option("--out", jsonl_out, "output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_gen) {
            ts::RunConfig cfg = make_run_config(opts);
            ts::Corpus corpus = gen_no_moderation ? ts::generate(cfg.gen) : ts::stage_generate(cfg);
            ts::save_corpus(corpus, gen_out);
            auto s = corpus.summary();
            std::cout << "wrote " << gen_out << ": " << s.n_tweets << " tweets, " << s.n_users
                      << " users\n";
        } else if (*cmd_trends) {
            ts::Corpus corpus = ts::load_corpus(trends_corpus);
            auto trends = ts::stage_trends(corpus, trends_top_k);
            std::filesystem::create_directories(trends_dir);
            ts::write_snapshots_csv(trends.snapshots,
                                    std::filesystem::path(trends_dir) / "snapshots.csv");
            ts::write_lifelines_csv(trends.lifes,
                                    std::filesystem::path(trends_dir) / "lifelines.csv");
            std::cout << "wrote snapshots.csv and lifelines.csv (" << trends.lifes.size()
                      << " trending keywords)\n";
        } else if (*cmd_ratios) {
            ts::RunConfig cfg = make_run_config(opts);
            ts::Corpus corpus = ts::load_corpus(ratios_corpus);
            auto trends = ts::stage_trends(corpus, ratios_top_k);
            auto timelines = ts::stage_timelines(corpus, trends);
            auto fits = ts::stage_ratio_fits(timelines, cfg.frames, cfg.alpha, cfg.n_bootstrap,
                                             cfg.gen.seed);
            std::filesystem::create_directories(ratios_dir);
            ts::write_fits_json(fits, std::filesystem::path(ratios_dir) / "fits.json");
            for (auto [i, j] : cfg.frames) {
                for (ts::TweetClass cls : {ts::TweetClass::All, ts::TweetClass::Originals,
                                           ts::TweetClass::Retweets}) {
                    auto set = ts::ratio_samples(timelines, i, j, cls);
                    if (set.samples.empty()) continue;
                    std::string name = std::string("ratio_hist_") + ts::to_string(cls) + "_" +
                                       std::to_string(i) + "_" + std::to_string(j) + ".csv";
                    ts::write_histogram_csv(ts::histogram_linear(set.samples, 0.5),
                                            std::filesystem::path(ratios_dir) / name);
                }
            }
            std::cout << "wrote fits.json and ratio histograms\n";
        } else if (*cmd_detect) {
            ts::RunConfig cfg = make_run_config(opts);
            ts::Corpus corpus = ts::load_corpus(detect_corpus);
            auto suspects = ts::identify_suspects(corpus, cfg.method, cfg.threshold);
            ts::save_suspects(suspects, detect_out);
            std::cout << "wrote " << detect_out << ": " << suspects.users.size() << " suspects\n";
        } else if (*cmd_purge) {
            ts::Corpus corpus = ts::load_corpus(purge_corpus);
            auto suspects = ts::load_suspects(purge_suspects);
            auto [cleaned, report] = ts::remove_spam(corpus, suspects);
            ts::save_corpus(cleaned, purge_out);
            nlohmann::json j{{"n_removed_retweets", report.n_removed_retweets},
                             {"n_removed_originals", report.n_removed_originals},
                             {"pct_of_total_retweets", report.pct_of_total_retweets},
                             {"pct_of_total_tweets", report.pct_of_total_tweets},
                             {"pct_suspect_users_of_all", report.pct_suspect_users_of_all},
                             {"pct_suspect_users_of_retweeters",
                              report.pct_suspect_users_of_retweeters}};
            std::ofstream out(purge_report);
            if (!out) ts::fail(ts::Errc::FileError, "cannot write " + purge_report);
            out << j.dump(2) << '\n';
            std::cout << "wrote " << purge_out << " and " << purge_report << '\n';
        } else if (*cmd_report) {
            ts::RunConfig cfg = make_run_config(opts);
            auto bundle = ts::run_report(cfg, report_dir);
            std::cout << bundle.summary_json;
        } else if (*cmd_verify) {
            ts::Corpus corpus = ts::load_corpus(verify_corpus_path);
            auto results = ts::verify_corpus(corpus, verify_top_k, verify_limit);
            bool ok = ts::all_passed(results);
            for (const auto& r : results)
                std::cout << (r.passed ? "PASS " : "FAIL ") << r.check
                          << (r.detail.empty() ? "" : " (" + r.detail + ")") << '\n';
            if (!ok) ts::fail(ts::Errc::VerifyFailed, "oracle mismatch");
        } else if (*cmd_summary) {
            ts::Corpus corpus = ts::load_corpus(summary_corpus);
            auto s = corpus.summary();
            nlohmann::json j{{"n_tweets", s.n_tweets},
                             {"n_retweets", s.n_retweets},
                             {"n_originals", s.n_originals},
                             {"n_users", s.n_users},
                             {"n_retweeting_users", s.n_retweeting_users},
                             {"n_retweeted_users", s.n_retweeted_users}};
            std::cout << j.dump(2) << '\n';
        } else if (*cmd_jsonl) {
            ts::Corpus corpus = ts::load_corpus(jsonl_corpus);
            ts::export_jsonl(corpus, jsonl_out);
            std::cout << "wrote " << jsonl_out << '\n';
        }
    } catch (const ts::Error& e) {
        nlohmann::json err{{"error", ts::errc_name(e.code())}, {"message", e.what()}};
        std::cerr << err.dump() << '\n';
        return 1;
    } catch (const std::exception& e) {
        nlohmann::json err{{"error", "Unexpected"}, {"message", e.what()}};
        std::cerr << err.dump() << '\n';
        return 2;
    }
    return 0;
}
