#include "trendsim/spamlens.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "trendsim/errors.hpp"
#include "trendsim/synthgen.hpp"

namespace trendsim {

std::vector<RetweetProfile> retweet_profiles(const Corpus& corpus,
                                             const std::set<Keyword>* trending) {
    struct Acc {
        std::uint64_t n_retweets = 0;
        std::unordered_set<UserId> targets;
        std::unordered_set<const Keyword*> trended;  // interned by set iterator
    };
    std::unordered_map<UserId, Acc> acc;
    for (const Tweet& t : corpus.tweets()) {
        if (!t.is_retweet()) continue;
        auto& a = acc[t.author];
        ++a.n_retweets;
        a.targets.insert(t.original_author);
        if (trending) {
            auto it = trending->find(t.keyword);
            if (it != trending->end()) a.trended.insert(&*it);
        }
    }
    std::vector<RetweetProfile> out;
    out.reserve(acc.size());
    for (const auto& [user, a] : acc) {
        RetweetProfile p;
        p.user = user;
        p.n_retweets = a.n_retweets;
        p.n_targets = a.targets.size();
        p.ur_ratio = static_cast<double>(a.n_retweets) / static_cast<double>(a.targets.size());
        p.topics_trended = a.trended.size();
        out.push_back(p);
    }
    std::sort(out.begin(), out.end(),
              [](const RetweetProfile& a, const RetweetProfile& b) { return a.user < b.user; });
    return out;
}

std::vector<BucketRow> active_percentage_by_bucket(const Corpus& corpus,
                                                   const std::vector<RetweetProfile>& profiles) {
    std::vector<BucketRow> rows(kNumRatioBuckets);
    for (int b = 0; b < kNumRatioBuckets; ++b) {
        rows[b].bucket = b;
        rows[b].label = ratio_bucket_label(b);
    }
    for (const auto& p : profiles) {
        const UserRecord* u = corpus.find_user(p.user);
        if (!u) fail(Errc::UnknownUser, "profile for unknown user " + std::to_string(p.user));
        auto& row = rows[static_cast<std::size_t>(ratio_bucket(p.ur_ratio))];
        if (u->is_deleted())
            ++row.n_deleted;
        else
            ++row.n_active;
    }
    for (auto& row : rows) {
        std::uint64_t n = row.n_active + row.n_deleted;
        row.empty = n == 0;
        if (!row.empty) {
            row.pct_active = 100.0 * static_cast<double>(row.n_active) / static_cast<double>(n);
            row.pct_inactive = 100.0 - row.pct_active;
        }
    }
    return rows;
}

SuspectSet identify_suspects(const Corpus& corpus, DetectMethod method, double threshold) {
    SuspectSet set;
    set.method = method;
    std::int64_t last = corpus.tweets().empty() ? 0 : corpus.tweets().back().at.minutes;
    set.read_at.minutes = (last / kHourMinutes + 1) * kHourMinutes;
    if (method == DetectMethod::DeletionOracle) {
        if (!corpus.moderated())
            fail(Errc::ModerationNotApplied, "deletion oracle requires a moderated corpus");
        for (const auto& [id, u] : corpus.users())
            if (u.is_deleted()) set.users.insert(id);
    } else {
        set.threshold = threshold;
        for (const auto& p : retweet_profiles(corpus))
            if (p.ur_ratio >= threshold) set.users.insert(p.user);
    }
    return set;
}

std::pair<Corpus, RemovalReport> remove_spam(const Corpus& corpus, const SuspectSet& suspects) {
    Corpus cleaned;
    for (const UserRecord* u : corpus.users_by_id()) cleaned.add_user(*u);
    if (corpus.moderated()) cleaned.mark_moderated();

    RemovalReport rep;
    CorpusSummary before = corpus.summary();
    for (const Tweet& t : corpus.tweets()) {
        bool drop = suspects.contains(t.author) ||
                    (t.is_retweet() && suspects.contains(t.original_author));
        if (drop) {
            if (t.is_retweet())
                ++rep.n_removed_retweets;
            else
                ++rep.n_removed_originals;
            continue;
        }
        cleaned.append_tweet(t);
    }
    if (before.n_retweets > 0)
        rep.pct_of_total_retweets = 100.0 * static_cast<double>(rep.n_removed_retweets) /
                                    static_cast<double>(before.n_retweets);
    if (before.n_tweets > 0)
        rep.pct_of_total_tweets =
            100.0 * static_cast<double>(rep.n_removed_retweets + rep.n_removed_originals) /
            static_cast<double>(before.n_tweets);
    if (before.n_users > 0)
        rep.pct_suspect_users_of_all =
            100.0 * static_cast<double>(suspects.users.size()) / static_cast<double>(before.n_users);
    if (before.n_retweeting_users > 0)
        rep.pct_suspect_users_of_retweeters = 100.0 * static_cast<double>(suspects.users.size()) /
                                              static_cast<double>(before.n_retweeting_users);
    return {std::move(cleaned), rep};
}

DetectionQuality detection_quality(const SuspectSet& suspects, const Corpus& corpus) {
    if (!corpus.has_ground_truth())
        fail(Errc::NoGroundTruth, "corpus carries no ground-truth labels");
    DetectionQuality q;
    std::uint64_t tp = 0, spam_total = 0;
    for (const auto& [id, u] : corpus.users()) {
        if (u.is_spam()) {
            ++spam_total;
            if (suspects.contains(id)) ++tp;
        }
    }
    if (!suspects.users.empty())
        q.precision = static_cast<double>(tp) / static_cast<double>(suspects.users.size());
    if (spam_total > 0) q.recall = static_cast<double>(tp) / static_cast<double>(spam_total);

    std::uint64_t spam_rts = 0, spam_rts_removed = 0;
    for (const Tweet& t : corpus.tweets()) {
        if (!t.is_retweet()) continue;
        if (!corpus.find_user(t.author)->is_spam()) continue;
        ++spam_rts;
        if (suspects.contains(t.author) || suspects.contains(t.original_author))
            ++spam_rts_removed;
    }
    if (spam_rts > 0)
        q.retweet_volume_recall =
            static_cast<double>(spam_rts_removed) / static_cast<double>(spam_rts);
    return q;
}

TrendSetterReport trend_setter_report(const Corpus& corpus, const SuspectSet& suspects,
                                      const std::vector<TrendingSnapshot>& snapshots,
                                      std::size_t top_k) {
    TrendSetterReport rep;

    std::unordered_map<UserId, std::uint64_t> retweeted_count;
    std::unordered_set<UserId> touched;
    std::set<Keyword> trending;
    for (const auto& snap : snapshots)
        for (const auto& entry : snap.entries) trending.insert(entry.keyword);
    std::set<Keyword> suspect_retweeted_trending;

    for (const Tweet& t : corpus.tweets()) {
        if (!t.is_retweet()) continue;
        ++retweeted_count[t.original_author];
        if (suspects.contains(t.author)) {
            touched.insert(t.original_author);
            if (trending.contains(t.keyword)) suspect_retweeted_trending.insert(t.keyword);
        }
    }

    rep.n_trend_setters = retweeted_count.size();
    rep.retweeted_counts.reserve(retweeted_count.size());

    std::vector<TrendSetterEntry> entries;
    entries.reserve(retweeted_count.size());
    std::uint64_t touched_verified = 0, touched_expert = 0, touched_regular = 0;
    for (const auto& [user, count] : retweeted_count) {
        rep.retweeted_counts.push_back(static_cast<double>(count));
        entries.push_back({user, count, corpus.find_user(user)->account_type});
        if (touched.contains(user)) {
            switch (corpus.find_user(user)->account_type) {
                case AccountType::Verified: ++touched_verified; break;
                case AccountType::Expert: ++touched_expert; break;
                case AccountType::Regular: ++touched_regular; break;
            }
        }
    }
    std::sort(rep.retweeted_counts.begin(), rep.retweeted_counts.end(), std::greater<>());
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.times_retweeted != b.times_retweeted) return a.times_retweeted > b.times_retweeted;
        return a.user < b.user;
    });
    if (entries.size() > top_k) entries.resize(top_k);
    rep.top_retweeted = std::move(entries);

    if (rep.n_trend_setters > 0)
        rep.pct_trend_setters_touched_by_suspects =
            100.0 * static_cast<double>(touched.size()) / static_cast<double>(rep.n_trend_setters);
    if (!trending.empty())
        rep.pct_trending_keywords_in_suspect_retweeted_posts =
            100.0 * static_cast<double>(suspect_retweeted_trending.size()) /
            static_cast<double>(trending.size());
    if (!touched.empty()) {
        auto n = static_cast<double>(touched.size());
        rep.pct_touched_verified = 100.0 * static_cast<double>(touched_verified) / n;
        rep.pct_touched_expert = 100.0 * static_cast<double>(touched_expert) / n;
        rep.pct_touched_regular = 100.0 * static_cast<double>(touched_regular) / n;
    }
    return rep;
}

void write_top_ratios_csv(const std::vector<RetweetProfile>& profiles,
                          const std::filesystem::path& path, std::size_t top_k) {
    std::vector<RetweetProfile> sorted(profiles);
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.ur_ratio != b.ur_ratio) return a.ur_ratio > b.ur_ratio;
        return a.user < b.user;
    });
    if (sorted.size() > top_k) sorted.resize(top_k);
    std::ofstream out(path);
    if (!out) fail(Errc::FileError, "cannot write " + path.string());
    out << "user,n_retweets,n_targets,ur_ratio\n";
    for (const auto& p : sorted)
        out << p.user << ',' << p.n_retweets << ',' << p.n_targets << ',' << p.ur_ratio << '\n';
}

void write_bucket_table_csv(const std::vector<BucketRow>& rows,
                            const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::FileError, "cannot write " + path.string());
    out << "bucket,pct_active,pct_inactive\n";
    for (const auto& row : rows) {
        out << row.label << ',';
        if (row.empty)
            out << "empty,empty\n";
        else
            out << row.pct_active << ',' << row.pct_inactive << '\n';
    }
}

void write_trend_setters_csv(const TrendSetterReport& report,
                             const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::FileError, "cannot write " + path.string());
    out << "user,times_retweeted,account_type\n";
    for (const auto& e : report.top_retweeted)
        out << e.user << ',' << e.times_retweeted << ',' << to_string(e.account_type) << '\n';
}

void save_suspects(const SuspectSet& suspects, const std::filesystem::path& path) {
    nlohmann::json j;
    j["method"] = suspects.method == DetectMethod::DeletionOracle ? "oracle" : "threshold";
    if (suspects.method == DetectMethod::RatioThreshold) j["threshold"] = suspects.threshold;
    j["read_at"] = suspects.read_at.minutes;
    j["users"] = suspects.users;
    std::ofstream out(path);
    if (!out) fail(Errc::FileError, "cannot write " + path.string());
    out << j.dump(2) << '\n';
}

SuspectSet load_suspects(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::FileError, "cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
        SuspectSet set;
        set.method =
            j.at("method") == "oracle" ? DetectMethod::DeletionOracle : DetectMethod::RatioThreshold;
        set.threshold = j.value("threshold", 0.0);
        set.read_at.minutes = j.value("read_at", 0);
        for (const auto& u : j.at("users")) set.users.insert(u.get<UserId>());
        return set;
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::ParseError, path.string() + ": " + e.what());
    }
}

}  // namespace trendsim
