#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <vector>

#include "trendsim/corpus.hpp"
#include "trendsim/types.hpp"

namespace trendsim {

inline constexpr int kDefaultTopK = 50;

struct TrendingEntry {
    Keyword keyword;
    std::uint64_t count = 0;
};

// One hour's ranked trending list. Counts cover tweets (originals and
// retweets both) with timestamps in [hour*60, hour*60+60). Ties break by
// lexicographic keyword order.
struct TrendingSnapshot {
    std::int64_t hour = 0;
    std::vector<TrendingEntry> entries;  // rank r = index + 1
};

struct HourRun {
    std::int64_t first = 0;
    std::int64_t last = 0;  // inclusive
    std::int64_t length() const { return last - first + 1; }
};

struct TopicLifeline {
    Keyword keyword;
    std::vector<HourRun> runs;  // disjoint, sorted, non-adjacent
    std::int64_t total_hours = 0;
    std::int64_t reappearances = 0;
    // (hour, rank) for every hour the keyword trended.
    std::vector<std::pair<std::int64_t, int>> rank_history;
};

// One snapshot per hour from 0 through the last tweet's hour. Hours with no
// tweets produce an empty entry list.
std::vector<TrendingSnapshot> compute_snapshots(const Corpus& corpus, int top_k = kDefaultTopK);

std::vector<TopicLifeline> lifelines(const std::vector<TrendingSnapshot>& snapshots);

// Frequency histograms over total_hours / reappearances. EmptyInput on empty.
std::map<std::int64_t, std::uint64_t> duration_distribution(
    const std::vector<TopicLifeline>& lifelines);
std::map<std::int64_t, std::uint64_t> reappearance_distribution(
    const std::vector<TopicLifeline>& lifelines);

struct RankBandRow {
    std::int64_t duration = 0;       // total trending hours bucket
    std::uint64_t keywords = 0;      // keywords with that duration
    std::uint64_t trending_hours = 0;
    std::uint64_t bottom_hours = 0;  // trending hours spent at rank >= bottom_start
    double pct_bottom = 0.0;
};

std::vector<RankBandRow> rank_band_analysis(const std::vector<TopicLifeline>& lifelines,
                                            int bottom_start = 26);

// All tweets carrying the keyword from the start of the first run through the
// end of the last run (single enclosing window across gaps).
std::vector<Tweet> topic_window_tweets(const Corpus& corpus, const TopicLifeline& lifeline);

void write_snapshots_csv(const std::vector<TrendingSnapshot>& snapshots,
                         const std::filesystem::path& path);
void write_lifelines_csv(const std::vector<TopicLifeline>& lifelines,
                         const std::filesystem::path& path);

}  // namespace trendsim
