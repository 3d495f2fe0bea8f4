#include "trendsim/trendengine.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "trendsim/errors.hpp"

namespace trendsim {

std::vector<TrendingSnapshot> compute_snapshots(const Corpus& corpus, int top_k) {
    if (top_k <= 0) fail(Errc::ConfigError, "top_k must be positive");
    std::vector<TrendingSnapshot> out;
    if (corpus.tweets().empty()) return out;

    std::int64_t last_hour = corpus.tweets().back().at.hour();
    out.reserve(static_cast<std::size_t>(last_hour + 1));

    std::unordered_map<Keyword, std::uint64_t> counts;
    auto it = corpus.tweets().begin();
    for (std::int64_t hour = 0; hour <= last_hour; ++hour) {
        counts.clear();
        while (it != corpus.tweets().end() && it->at.hour() == hour) {
            ++counts[it->keyword];
            ++it;
        }
        TrendingSnapshot snap;
        snap.hour = hour;
        snap.entries.reserve(counts.size());
        for (const auto& [kw, c] : counts) snap.entries.push_back({kw, c});
        std::sort(snap.entries.begin(), snap.entries.end(),
                  [](const TrendingEntry& a, const TrendingEntry& b) {
                      if (a.count != b.count) return a.count > b.count;
                      return a.keyword < b.keyword;
                  });
        if (snap.entries.size() > static_cast<std::size_t>(top_k))
            snap.entries.resize(static_cast<std::size_t>(top_k));
        out.push_back(std::move(snap));
    }
    return out;
}

std::vector<TopicLifeline> lifelines(const std::vector<TrendingSnapshot>& snapshots) {
    std::unordered_map<Keyword, TopicLifeline> by_kw;
    for (const auto& snap : snapshots) {
        for (std::size_t r = 0; r < snap.entries.size(); ++r) {
            auto& life = by_kw[snap.entries[r].keyword];
            life.keyword = snap.entries[r].keyword;
            if (!life.runs.empty() && life.runs.back().last == snap.hour - 1)
                life.runs.back().last = snap.hour;
            else
                life.runs.push_back({snap.hour, snap.hour});
            life.rank_history.emplace_back(snap.hour, static_cast<int>(r + 1));
        }
    }
    std::vector<TopicLifeline> out;
    out.reserve(by_kw.size());
    for (auto& [kw, life] : by_kw) {
        life.total_hours = 0;
        for (const auto& run : life.runs) life.total_hours += run.length();
        life.reappearances = static_cast<std::int64_t>(life.runs.size()) - 1;
        out.push_back(std::move(life));
    }
    std::sort(out.begin(), out.end(),
              [](const TopicLifeline& a, const TopicLifeline& b) { return a.keyword < b.keyword; });
    return out;
}

std::map<std::int64_t, std::uint64_t> duration_distribution(
    const std::vector<TopicLifeline>& lifelines) {
    if (lifelines.empty()) fail(Errc::EmptyInput, "no lifelines");
    std::map<std::int64_t, std::uint64_t> hist;
    for (const auto& life : lifelines) ++hist[life.total_hours];
    return hist;
}

std::map<std::int64_t, std::uint64_t> reappearance_distribution(
    const std::vector<TopicLifeline>& lifelines) {
    if (lifelines.empty()) fail(Errc::EmptyInput, "no lifelines");
    std::map<std::int64_t, std::uint64_t> hist;
    for (const auto& life : lifelines) ++hist[life.reappearances];
    return hist;
}

std::vector<RankBandRow> rank_band_analysis(const std::vector<TopicLifeline>& lifelines,
                                            int bottom_start) {
    if (lifelines.empty()) fail(Errc::EmptyInput, "no lifelines");
    std::map<std::int64_t, RankBandRow> rows;
    for (const auto& life : lifelines) {
        auto& row = rows[life.total_hours];
        row.duration = life.total_hours;
        row.keywords += 1;
        for (const auto& [hour, rank] : life.rank_history) {
            ++row.trending_hours;
            if (rank >= bottom_start) ++row.bottom_hours;
        }
    }
    std::vector<RankBandRow> out;
    out.reserve(rows.size());
    for (auto& [d, row] : rows) {
        row.pct_bottom = row.trending_hours == 0
                             ? 0.0
                             : 100.0 * static_cast<double>(row.bottom_hours) /
                                   static_cast<double>(row.trending_hours);
        out.push_back(row);
    }
    return out;
}

std::vector<Tweet> topic_window_tweets(const Corpus& corpus, const TopicLifeline& lifeline) {
    std::vector<Tweet> out;
    if (lifeline.runs.empty()) return out;
    std::int64_t lo = lifeline.runs.front().first * kHourMinutes;
    std::int64_t hi = (lifeline.runs.back().last + 1) * kHourMinutes;  // exclusive
    for (const Tweet& t : corpus.tweets()) {
        if (t.at.minutes >= hi) break;
        if (t.at.minutes >= lo && t.keyword == lifeline.keyword) out.push_back(t);
    }
    return out;
}

void write_snapshots_csv(const std::vector<TrendingSnapshot>& snapshots,
                         const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::FileError, "cannot write " + path.string());
    out << "hour,rank,keyword,count\n";
    for (const auto& snap : snapshots)
        for (std::size_t r = 0; r < snap.entries.size(); ++r)
            out << snap.hour << ',' << r + 1 << ',' << snap.entries[r].keyword << ','
                << snap.entries[r].count << '\n';
}

void write_lifelines_csv(const std::vector<TopicLifeline>& lifelines,
                         const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::FileError, "cannot write " + path.string());
    out << "keyword,total_hours,reappearances,runs\n";
    for (const auto& life : lifelines) {
        out << life.keyword << ',' << life.total_hours << ',' << life.reappearances << ',';
        for (std::size_t k = 0; k < life.runs.size(); ++k) {
            if (k) out << ';';
            out << life.runs[k].first << '-' << life.runs[k].last;
        }
        out << '\n';
    }
}

}  // namespace trendsim
