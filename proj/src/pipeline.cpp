#include "trendsim/pipeline.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "trendsim/errors.hpp"
#include "trendsim/rng.hpp"
#include "trendsim/sha256.hpp"

namespace trendsim {

void RunConfig::validate() const {
    gen.validate();
    for (auto [i, j] : frames)
        if (j < 1 || i <= j)
            fail(Errc::ConfigError, "frame (" + std::to_string(i) + "," + std::to_string(j) +
                                        ") must satisfy i > j >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) fail(Errc::ConfigError, "alpha must be in (0,1)");
    if (n_bootstrap < 1) fail(Errc::ConfigError, "n_bootstrap must be >= 1");
    if (analysis_top_k < 1) fail(Errc::ConfigError, "top_k must be >= 1");
}

std::vector<std::pair<int, int>> parse_frames(const std::string& text) {
    std::vector<std::pair<int, int>> frames;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto comma = text.find(',', pos);
        std::string part = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        auto colon = part.find(':');
        if (colon == std::string::npos)
            fail(Errc::ConfigError, "frame '" + part + "' must look like i:j");
        try {
            int i = std::stoi(part.substr(0, colon));
            int j = std::stoi(part.substr(colon + 1));
            frames.emplace_back(i, j);
        } catch (const std::exception&) {
            fail(Errc::ConfigError, "frame '" + part + "' must look like i:j");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (frames.empty()) fail(Errc::ConfigError, "no frames given");
    return frames;
}

RunConfig run_config_from_kv(const KvFile& kv) {
    RunConfig cfg;
    GenConfig& g = cfg.gen;
    g.seed = kv.get_uint("seed", g.seed);
    g.n_users = kv.get_uint("n_users", g.n_users);
    g.sim_hours = kv.get_int("sim_hours", g.sim_hours);
    g.topic_birth_rate = kv.get_double("topic_birth_rate", g.topic_birth_rate);
    g.attract_min = kv.get_double("attract_min", g.attract_min);
    g.attract_max = kv.get_double("attract_max", g.attract_max);
    g.novelty_tau = kv.get_double("novelty_tau", g.novelty_tau);
    g.growth_sigma = kv.get_double("growth_sigma", g.growth_sigma);
    g.p_retweet = kv.get_double("p_retweet", g.p_retweet);
    g.verified_fraction = kv.get_double("verified_fraction", g.verified_fraction);
    g.expert_fraction = kv.get_double("expert_fraction", g.expert_fraction);
    g.retweeter_fraction = kv.get_double("retweeter_fraction", g.retweeter_fraction);
    g.activity_sigma = kv.get_double("activity_sigma", g.activity_sigma);
    g.poster_sigma = kv.get_double("poster_sigma", g.poster_sigma);
    g.spam_fraction = kv.get_double("spam_fraction", g.spam_fraction);
    g.ring_size_mean = kv.get_double("ring_size_mean", g.ring_size_mean);
    g.verified_fraction_seeds = kv.get_double("verified_fraction_seeds", g.verified_fraction_seeds);
    g.spam_intensity = kv.get_double("spam_intensity", g.spam_intensity);
    g.ignition_boost = kv.get_double("ignition_boost", g.ignition_boost);
    g.campaign_interval_hours = kv.get_double("campaign_interval_hours", g.campaign_interval_hours);
    g.campaign_hours = kv.get_double("campaign_hours", g.campaign_hours);
    g.seed_post_rate = kv.get_double("seed_post_rate", g.seed_post_rate);
    g.burst_tick_p = kv.get_double("burst_tick_p", g.burst_tick_p);
    g.member_volume_sigma = kv.get_double("member_volume_sigma", g.member_volume_sigma);
    g.camouflage_fraction = kv.get_double("camouflage_fraction", g.camouflage_fraction);
    g.camouflage_per_member = kv.get_double("camouflage_per_member", g.camouflage_per_member);
    g.jack_rate = kv.get_double("jack_rate", g.jack_rate);
    g.jack_intensity = kv.get_double("jack_intensity", g.jack_intensity);
    g.top_k = static_cast<std::uint32_t>(kv.get_uint("top_k", g.top_k));
    g.max_topic_tweets = kv.get_uint("max_topic_tweets", g.max_topic_tweets);

    ModerationPolicy& p = cfg.policy;
    p.organic_false_deletion_prob =
        kv.get_double("organic_false_deletion_prob", p.organic_false_deletion_prob);
    p.buckets_apply_to_all = kv.get_bool("buckets_apply_to_all", p.buckets_apply_to_all);
    for (int b = 0; b < kNumRatioBuckets; ++b) {
        std::string key = std::string("bucket_prob_") + ratio_bucket_label(b);
        std::replace(key.begin(), key.end(), '>', 'g');
        std::replace(key.begin(), key.end(), '=', 'e');
        std::replace(key.begin(), key.end(), '-', '_');
        p.bucket_deletion_prob[static_cast<std::size_t>(b)] =
            kv.get_double(key, p.bucket_deletion_prob[static_cast<std::size_t>(b)]);
    }

    if (kv.has("frames")) cfg.frames = parse_frames(kv.get("frames"));
    cfg.alpha = kv.get_double("alpha", cfg.alpha);
    cfg.n_bootstrap = static_cast<int>(kv.get_int("n_bootstrap", cfg.n_bootstrap));
    cfg.analysis_top_k = static_cast<int>(kv.get_int("top_k", cfg.analysis_top_k));
    std::string method = kv.get_string("method", "oracle");
    if (method == "oracle") {
        cfg.method = DetectMethod::DeletionOracle;
    } else if (method.starts_with("threshold:")) {
        cfg.method = DetectMethod::RatioThreshold;
        try {
            cfg.threshold = std::stod(method.substr(10));
        } catch (const std::exception&) {
            fail(Errc::ConfigError, "bad method '" + method + "'");
        }
    } else {
        fail(Errc::ConfigError, "method must be oracle or threshold:<t>");
    }
    cfg.validate();
    return cfg;
}

Corpus stage_generate(const RunConfig& cfg) {
    Corpus corpus = generate(cfg.gen);
    Timestamp end{cfg.gen.sim_hours * kHourMinutes};
    return apply_moderation(corpus, cfg.policy, cfg.gen.seed, end);
}

TrendArtifacts stage_trends(const Corpus& corpus, int top_k) {
    TrendArtifacts art;
    art.snapshots = compute_snapshots(corpus, top_k);
    if (!art.snapshots.empty()) art.lifes = lifelines(art.snapshots);
    return art;
}

std::vector<TopicTimeline> stage_timelines(const Corpus& corpus, const TrendArtifacts& trends) {
    std::vector<TopicTimeline> out;
    out.reserve(trends.lifes.size());
    for (const auto& life : trends.lifes) {
        auto tweets = topic_window_tweets(corpus, life);
        std::int64_t start = life.runs.front().first * kHourMinutes;
        std::int64_t n_ticks =
            (life.runs.back().last + 1 - life.runs.front().first) * kTicksPerHour;
        auto tl = build_timeline(tweets, Timestamp{start}, n_ticks);
        tl.keyword = life.keyword;
        out.push_back(std::move(tl));
    }
    return out;
}

std::vector<FitRecord> stage_ratio_fits(const std::vector<TopicTimeline>& timelines,
                                        const std::vector<std::pair<int, int>>& frames,
                                        double alpha, int n_bootstrap, std::uint64_t seed) {
    std::vector<FitRecord> out;
    for (auto [i, j] : frames) {
        for (TweetClass cls : {TweetClass::All, TweetClass::Originals, TweetClass::Retweets}) {
            auto samples = ratio_samples(timelines, i, j, cls);
            FitRecord rec;
            rec.cls = cls;
            rec.i = i;
            rec.j = j;
            rec.n = samples.samples.size();
            rec.skipped = samples.skipped;
            if (samples.samples.size() >= 20) {
                try {
                    rec.fit = fit_lognormal(samples.samples, alpha, n_bootstrap,
                                            substream_seed(seed, "ratio-fit",
                                                           static_cast<std::uint64_t>(
                                                               (i * 64 + j) * 4 +
                                                               static_cast<int>(cls))));
                } catch (const Error& e) {
                    if (e.code() != Errc::DegenerateSamples) throw;
                }
            }
            out.push_back(rec);
        }
    }
    return out;
}

void write_fits_json(const std::vector<FitRecord>& fits, const std::filesystem::path& path) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& rec : fits) {
        arr.push_back({{"class", to_string(rec.cls)},
                       {"frame", {rec.i, rec.j}},
                       {"n", rec.n},
                       {"skipped", rec.skipped},
                       {"mu", rec.fit.mu},
                       {"sigma", rec.fit.sigma},
                       {"ks", rec.fit.ks_stat},
                       {"p", rec.fit.p_value},
                       {"accepted", rec.fit.accepted}});
    }
    std::ofstream out(path);
    if (!out) fail(Errc::FileError, "cannot write " + path.string());
    out << arr.dump(2) << '\n';
}

namespace {

void add_file(std::vector<ManifestEntry>& manifest, const std::filesystem::path& dir,
              const std::string& name) {
    manifest.push_back({name, sha256_file(dir / name)});
}

}  // namespace

ReportBundle run_report(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    cfg.validate();
    std::filesystem::create_directories(out_dir);

    ReportBundle bundle;

    // generate + moderate
    Corpus corpus = stage_generate(cfg);
    save_corpus(corpus, out_dir / "corpus.txt");
    add_file(bundle.manifest, out_dir, "corpus.txt");

    // trends
    auto trends = stage_trends(corpus, cfg.analysis_top_k);
    write_snapshots_csv(trends.snapshots, out_dir / "snapshots.csv");
    write_lifelines_csv(trends.lifes, out_dir / "lifelines.csv");
    add_file(bundle.manifest, out_dir, "snapshots.csv");
    add_file(bundle.manifest, out_dir, "lifelines.csv");

    double mean_hours = 0.0;
    if (!trends.lifes.empty()) {
        for (const auto& life : trends.lifes) mean_hours += static_cast<double>(life.total_hours);
        mean_hours /= static_cast<double>(trends.lifes.size());
    }

    // ratios before removal
    auto timelines = stage_timelines(corpus, trends);
    auto fits_pre = stage_ratio_fits(timelines, cfg.frames, cfg.alpha, cfg.n_bootstrap,
                                     cfg.gen.seed);
    write_fits_json(fits_pre, out_dir / "fits_pre.json");
    add_file(bundle.manifest, out_dir, "fits_pre.json");
    {
        auto rt = ratio_samples(timelines, cfg.frames.front().first, cfg.frames.front().second,
                                TweetClass::Retweets);
        if (!rt.samples.empty()) {
            write_histogram_csv(histogram_linear(rt.samples, 0.5),
                                out_dir / "ratio_hist_retweets_pre.csv");
            add_file(bundle.manifest, out_dir, "ratio_hist_retweets_pre.csv");
        }
    }

    // detection + removal
    SuspectSet suspects = identify_suspects(corpus, cfg.method, cfg.threshold);
    save_suspects(suspects, out_dir / "suspects.json");
    add_file(bundle.manifest, out_dir, "suspects.json");

    auto [cleaned, removal] = remove_spam(corpus, suspects);
    save_corpus(cleaned, out_dir / "cleaned.txt");
    add_file(bundle.manifest, out_dir, "cleaned.txt");

    // ratios after removal (same windows, rebuilt over the cleaned corpus)
    auto timelines_post = stage_timelines(cleaned, trends);
    auto fits_post = stage_ratio_fits(timelines_post, cfg.frames, cfg.alpha, cfg.n_bootstrap,
                                      substream_seed(cfg.gen.seed, "post"));
    write_fits_json(fits_post, out_dir / "fits_post.json");
    add_file(bundle.manifest, out_dir, "fits_post.json");

    // spam reports
    auto profiles = retweet_profiles(corpus);
    write_top_ratios_csv(profiles, out_dir / "top_ratios.csv");
    add_file(bundle.manifest, out_dir, "top_ratios.csv");
    auto buckets = active_percentage_by_bucket(corpus, profiles);
    write_bucket_table_csv(buckets, out_dir / "bucket_table.csv");
    add_file(bundle.manifest, out_dir, "bucket_table.csv");
    auto ts_report = trend_setter_report(corpus, suspects, trends.snapshots);
    write_trend_setters_csv(ts_report, out_dir / "trend_setters.csv");
    add_file(bundle.manifest, out_dir, "trend_setters.csv");

    CorpusSummary before = corpus.summary();
    nlohmann::json summary{
        {"seed", cfg.gen.seed},
        {"n_users", before.n_users},
        {"n_tweets", before.n_tweets},
        {"retweet_fraction", before.n_tweets > 0 ? static_cast<double>(before.n_retweets) /
                                                       static_cast<double>(before.n_tweets)
                                                 : 0.0},
        {"mean_trending_hours", mean_hours},
        {"trending_keywords", trends.lifes.size()},
        {"suspects", suspects.users.size()},
        {"suspect_share_pct", removal.pct_suspect_users_of_all},
        {"removed_retweets_pct", removal.pct_of_total_retweets},
        {"removed_tweets_pct", removal.pct_of_total_tweets},
        {"touched_trend_setters_pct", ts_report.pct_trend_setters_touched_by_suspects},
        {"suspect_keyword_pct", ts_report.pct_trending_keywords_in_suspect_retweeted_posts},
    };
    for (const auto& rec : fits_pre)
        if (rec.i == cfg.frames.front().first && rec.j == cfg.frames.front().second)
            summary[std::string("pre_") + to_string(rec.cls) + "_accepted"] = rec.fit.accepted;
    for (const auto& rec : fits_post)
        if (rec.i == cfg.frames.front().first && rec.j == cfg.frames.front().second)
            summary[std::string("post_") + to_string(rec.cls) + "_accepted"] = rec.fit.accepted;

    bundle.summary_json = summary.dump(2) + "\n";
    {
        std::ofstream out(out_dir / "summary.json");
        if (!out) fail(Errc::FileError, "cannot write summary.json");
        out << bundle.summary_json;
    }
    add_file(bundle.manifest, out_dir, "summary.json");

    nlohmann::json manifest = nlohmann::json::array();
    for (const auto& entry : bundle.manifest)
        manifest.push_back({{"file", entry.file}, {"sha256", entry.sha256}});
    {
        std::ofstream out(out_dir / "manifest.json");
        if (!out) fail(Errc::FileError, "cannot write manifest.json");
        out << manifest.dump(2) << '\n';
    }
    return bundle;
}

}  // namespace trendsim
