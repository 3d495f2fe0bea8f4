#include "trendsim/verify.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "trendsim/errors.hpp"
#include "trendsim/ratiostats.hpp"
#include "trendsim/spamlens.hpp"
#include "trendsim/trendengine.hpp"

namespace trendsim {

namespace {

// All recomputation below is deliberately naive: plain rescans with ordered
// maps, no reuse of the incremental counters or the fast analysis paths.

VerifyResult check_summary(const Corpus& corpus) {
    VerifyResult res{"summary counters", true, ""};
    CorpusSummary naive;
    std::set<UserId> retweeting, retweeted;
    for (const Tweet& t : corpus.tweets()) {
        ++naive.n_tweets;
        if (t.is_retweet()) {
            ++naive.n_retweets;
            retweeting.insert(t.author);
            retweeted.insert(t.original_author);
        } else {
            ++naive.n_originals;
        }
    }
    naive.n_users = corpus.users().size();
    naive.n_retweeting_users = retweeting.size();
    naive.n_retweeted_users = retweeted.size();
    if (!(naive == corpus.summary())) {
        res.passed = false;
        res.detail = "maintained counters differ from recount";
    }
    return res;
}

VerifyResult check_snapshots(const Corpus& corpus, int top_k) {
    VerifyResult res{"hourly snapshot counts", true, ""};
    auto fast = compute_snapshots(corpus, top_k);
    std::map<std::int64_t, std::map<Keyword, std::uint64_t>> naive;
    for (const Tweet& t : corpus.tweets()) ++naive[t.at.minutes / 60][t.keyword];
    for (const auto& snap : fast) {
        auto hour_it = naive.find(snap.hour);
        std::uint64_t prev = UINT64_MAX;
        for (const auto& entry : snap.entries) {
            std::uint64_t expect =
                hour_it == naive.end() ? 0 : hour_it->second.count(entry.keyword)
                                                 ? hour_it->second.at(entry.keyword)
                                                 : 0;
            if (expect != entry.count || entry.count > prev) {
                res.passed = false;
                res.detail = "hour " + std::to_string(snap.hour) + " keyword " + entry.keyword;
                return res;
            }
            prev = entry.count;
        }
        // the snapshot must hold the top-k: no omitted keyword may beat the tail
        if (hour_it != naive.end() &&
            snap.entries.size() < std::min<std::size_t>(static_cast<std::size_t>(top_k),
                                                        hour_it->second.size())) {
            res.passed = false;
            res.detail = "hour " + std::to_string(snap.hour) + " entry count";
            return res;
        }
    }
    return res;
}

VerifyResult check_timelines(const Corpus& corpus, int top_k) {
    VerifyResult res{"cumulative tick sums", true, ""};
    auto snaps = compute_snapshots(corpus, top_k);
    auto lifes = snaps.empty() ? std::vector<TopicLifeline>{} : lifelines(snaps);
    for (const auto& life : lifes) {
        auto tweets = topic_window_tweets(corpus, life);
        std::int64_t start = life.runs.front().first * kHourMinutes;
        std::int64_t n_ticks = (life.runs.back().last + 1 - life.runs.front().first) *
                               kTicksPerHour;
        auto tl = build_timeline(tweets, Timestamp{start}, n_ticks);
        // naive recount per tick
        for (std::int64_t k = 1; k <= tl.ticks(); ++k) {
            std::uint64_t all = 0, orig = 0, rt = 0;
            std::int64_t lo = start + (k - 1) * kTickMinutes, hi = start + k * kTickMinutes;
            for (const Tweet& t : corpus.tweets()) {
                if (t.keyword != life.keyword) continue;
                if (t.at.minutes < start || t.at.minutes >= hi) continue;
                ++all;
                if (t.is_retweet())
                    ++rt;
                else
                    ++orig;
            }
            (void)lo;
            if (tl.cumulative(TweetClass::All, k) != all ||
                tl.cumulative(TweetClass::Originals, k) != orig ||
                tl.cumulative(TweetClass::Retweets, k) != rt) {
                res.passed = false;
                res.detail = "keyword " + life.keyword + " tick " + std::to_string(k);
                return res;
            }
        }
    }
    return res;
}

VerifyResult check_profiles(const Corpus& corpus) {
    VerifyResult res{"retweet profiles", true, ""};
    auto fast = retweet_profiles(corpus);
    std::map<UserId, std::map<UserId, std::uint64_t>> naive;  // user -> target -> count
    for (const Tweet& t : corpus.tweets())
        if (t.is_retweet()) ++naive[t.author][t.original_author];
    if (fast.size() != naive.size()) {
        res.passed = false;
        res.detail = "profile count " + std::to_string(fast.size()) + " vs " +
                     std::to_string(naive.size());
        return res;
    }
    for (const auto& p : fast) {
        auto it = naive.find(p.user);
        std::uint64_t n_rt = 0;
        for (const auto& [target, c] : it->second) n_rt += c;
        if (it == naive.end() || n_rt != p.n_retweets || it->second.size() != p.n_targets ||
            p.ur_ratio != static_cast<double>(n_rt) / static_cast<double>(it->second.size())) {
            res.passed = false;
            res.detail = "user " + std::to_string(p.user);
            return res;
        }
    }
    return res;
}

}  // namespace

std::vector<VerifyResult> verify_corpus(const Corpus& corpus, int top_k,
                                        std::uint64_t max_tweets) {
    if (corpus.tweets().size() > max_tweets)
        fail(Errc::ConfigError, "corpus exceeds the verify limit of " +
                                    std::to_string(max_tweets) + " tweets");
    std::vector<VerifyResult> out;
    out.push_back(check_summary(corpus));
    out.push_back(check_snapshots(corpus, top_k));
    out.push_back(check_timelines(corpus, top_k));
    out.push_back(check_profiles(corpus));
    return out;
}

bool all_passed(const std::vector<VerifyResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const VerifyResult& r) { return r.passed; });
}

}  // namespace trendsim
