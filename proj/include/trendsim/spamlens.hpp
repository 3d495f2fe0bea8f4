#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "trendsim/corpus.hpp"
#include "trendsim/trendengine.hpp"
#include "trendsim/types.hpp"

namespace trendsim {

struct RetweetProfile {
    UserId user = 0;
    std::uint64_t n_retweets = 0;  // retweets authored
    std::uint64_t n_targets = 0;   // distinct original authors retweeted
    double ur_ratio = 0.0;         // n_retweets / n_targets
    std::uint64_t topics_trended = 0;  // distinct trending keywords in this user's retweets
};

// One profile per user with >= 1 retweet authored, sorted by user id. When a
// trending keyword set is supplied, topics_trended is filled in.
std::vector<RetweetProfile> retweet_profiles(const Corpus& corpus,
                                             const std::set<Keyword>* trending = nullptr);

struct BucketRow {
    int bucket = 0;
    std::string label;
    std::uint64_t n_active = 0;
    std::uint64_t n_deleted = 0;
    double pct_active = 0.0;
    double pct_inactive = 0.0;
    bool empty = false;
};

// Table of active/deleted percentages per user-retweet-ratio bucket
// (post-moderation statuses). Empty buckets are flagged, not fatal.
std::vector<BucketRow> active_percentage_by_bucket(const Corpus& corpus,
                                                   const std::vector<RetweetProfile>& profiles);

enum class DetectMethod : std::uint8_t { DeletionOracle, RatioThreshold };

struct SuspectSet {
    DetectMethod method = DetectMethod::DeletionOracle;
    double threshold = 0.0;  // RatioThreshold only
    std::set<UserId> users;
    Timestamp read_at;

    bool contains(UserId id) const { return users.contains(id); }
};

// DeletionOracle: every account with status Deleted (requires moderation).
// RatioThreshold: every profiled account with ur_ratio >= threshold.
// Reads statuses and tweets only, never ground truth.
SuspectSet identify_suspects(const Corpus& corpus, DetectMethod method, double threshold = 30.0);

struct RemovalReport {
    std::uint64_t n_removed_retweets = 0;
    std::uint64_t n_removed_originals = 0;
    double pct_of_total_retweets = 0.0;
    double pct_of_total_tweets = 0.0;
    double pct_suspect_users_of_all = 0.0;
    double pct_suspect_users_of_retweeters = 0.0;
};

// New corpus without (a) any tweet authored by a suspect and (b) any retweet
// of a suspect-authored original. Percentages are against the input corpus.
std::pair<Corpus, RemovalReport> remove_spam(const Corpus& corpus, const SuspectSet& suspects);

struct DetectionQuality {
    double precision = 0.0;
    double recall = 0.0;
    double retweet_volume_recall = 0.0;  // spam-authored retweets removed / all spam retweets
};

// Evaluation against generator ground truth; NoGroundTruth if labels are absent.
DetectionQuality detection_quality(const SuspectSet& suspects, const Corpus& corpus);

struct TrendSetterEntry {
    UserId user = 0;
    std::uint64_t times_retweeted = 0;
    AccountType account_type = AccountType::Regular;
};

struct TrendSetterReport {
    std::uint64_t n_trend_setters = 0;  // users with >= 1 retweeted post
    std::vector<double> retweeted_counts;  // per trend-setter, for power-law fitting
    double pct_trend_setters_touched_by_suspects = 0.0;
    double pct_trending_keywords_in_suspect_retweeted_posts = 0.0;
    double pct_touched_verified = 0.0;  // account mix of touched trend-setters
    double pct_touched_expert = 0.0;
    double pct_touched_regular = 0.0;
    std::vector<TrendSetterEntry> top_retweeted;  // descending, up to top_k entries
};

TrendSetterReport trend_setter_report(const Corpus& corpus, const SuspectSet& suspects,
                                      const std::vector<TrendingSnapshot>& snapshots,
                                      std::size_t top_k = 10);

// CSV reproductions with the published column layout.
void write_top_ratios_csv(const std::vector<RetweetProfile>& profiles,
                          const std::filesystem::path& path, std::size_t top_k = 10);
void write_bucket_table_csv(const std::vector<BucketRow>& rows,
                            const std::filesystem::path& path);
void write_trend_setters_csv(const TrendSetterReport& report,
                             const std::filesystem::path& path);

void save_suspects(const SuspectSet& suspects, const std::filesystem::path& path);
SuspectSet load_suspects(const std::filesystem::path& path);

}  // namespace trendsim
