#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "trendsim/config.hpp"
#include "trendsim/corpus.hpp"
#include "trendsim/ratiostats.hpp"
#include "trendsim/spamlens.hpp"
#include "trendsim/synthgen.hpp"
#include "trendsim/trendengine.hpp"

namespace trendsim {

struct RunConfig {
    GenConfig gen;
    ModerationPolicy policy;
    std::vector<std::pair<int, int>> frames{{10, 2}, {8, 3}};
    double alpha = 0.05;
    int n_bootstrap = 1000;
    DetectMethod method = DetectMethod::DeletionOracle;
    double threshold = 30.0;
    int analysis_top_k = kDefaultTopK;

    void validate() const;
};

// Applies flat key = value settings over the defaults. Recognized keys are the
// GenConfig / ModerationPolicy field names plus frames, alpha, n_bootstrap,
// method (oracle | threshold:<t>), top_k and bucket_prob_<label>.
RunConfig run_config_from_kv(const KvFile& kv);
std::vector<std::pair<int, int>> parse_frames(const std::string& text);

struct ManifestEntry {
    std::string file;
    std::string sha256;
};

struct ReportBundle {
    std::vector<ManifestEntry> manifest;
    std::string summary_json;  // headline metrics
};

// Per-stage entry points shared by the CLI subcommands.
Corpus stage_generate(const RunConfig& cfg);  // generate + moderation sweep

struct TrendArtifacts {
    std::vector<TrendingSnapshot> snapshots;
    std::vector<TopicLifeline> lifes;
};
TrendArtifacts stage_trends(const Corpus& corpus, int top_k);

struct FitRecord {
    TweetClass cls;
    int i = 0;
    int j = 0;
    std::size_t n = 0;
    std::uint64_t skipped = 0;
    LogNormalFit fit;
};

// Topic timelines anchored at each trending keyword's window start.
std::vector<TopicTimeline> stage_timelines(const Corpus& corpus, const TrendArtifacts& trends);
std::vector<FitRecord> stage_ratio_fits(const std::vector<TopicTimeline>& timelines,
                                        const std::vector<std::pair<int, int>>& frames,
                                        double alpha, int n_bootstrap, std::uint64_t seed);

// Full pipeline: generate, moderate, analyze, detect, purge, re-analyze, and
// write every artifact plus manifest.json and summary.json into out_dir.
ReportBundle run_report(const RunConfig& cfg, const std::filesystem::path& out_dir);

void write_fits_json(const std::vector<FitRecord>& fits, const std::filesystem::path& path);

}  // namespace trendsim
