#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "trendsim/errors.hpp"
#include "trendsim/spamlens.hpp"
#include "trendsim/synthgen.hpp"
#include "trendsim/trendengine.hpp"

using namespace trendsim;

namespace {

// seed 0 posts one original; members 1..n retweet it `times` each; user n+1
// posts an unrelated original.
Corpus ring_corpus(int members, int times) {
    Corpus c;
    c.add_user({.id = 0, .account_type = AccountType::Verified});
    for (UserId m = 1; m <= static_cast<UserId>(members); ++m)
        c.add_user({.id = m, .truth = TruthLabel::SpamRing, .ring_seed = 0});
    UserId bystander = static_cast<UserId>(members) + 1;
    c.add_user({.id = bystander});
    c.append_tweet({.id = 0, .author = 0, .at = {0}, .keyword = "spamkw"});
    c.append_tweet({.id = 1, .author = bystander, .at = {0}, .keyword = "orgkw"});
    TweetId next = 2;
    for (UserId m = 1; m <= static_cast<UserId>(members); ++m)
        for (int k = 0; k < times; ++k) {
            Tweet t{.id = next++, .author = m, .at = {k + 1}, .keyword = "spamkw"};
            t.kind = TweetKind::Retweet;
            t.original_tweet = 0;
            t.original_author = 0;
            c.append_tweet(t);
        }
    return c;
}

}  // namespace

TEST_CASE("retweet profiles compute exact ratios") {
    Corpus c;
    for (UserId u = 0; u < 6; ++u) c.add_user({.id = u});
    // three originals by users 0,1,2
    for (TweetId id = 0; id < 3; ++id)
        c.append_tweet({.id = id, .author = id, .at = {0}, .keyword = "kw"});
    // user 3: 6 retweets over 3 distinct authors -> ratio 2
    TweetId next = 3;
    for (int k = 0; k < 6; ++k) {
        Tweet t{.id = next++, .author = 3, .at = {k + 1}, .keyword = "kw"};
        t.kind = TweetKind::Retweet;
        t.original_tweet = static_cast<TweetId>(k % 3);
        t.original_author = static_cast<UserId>(k % 3);
        c.append_tweet(t);
    }
    // user 4: 134 retweets of one account -> ratio 134
    for (int k = 0; k < 134; ++k) {
        Tweet t{.id = next++, .author = 4, .at = {k + 10}, .keyword = "kw"};
        t.kind = TweetKind::Retweet;
        t.original_tweet = 0;
        t.original_author = 0;
        c.append_tweet(t);
    }

    auto profiles = retweet_profiles(c);
    REQUIRE(profiles.size() == 2);  // users 0..2 and 5 authored no retweets
    CHECK(profiles[0].user == 3);
    CHECK(profiles[0].n_retweets == 6);
    CHECK(profiles[0].n_targets == 3);
    CHECK(profiles[0].ur_ratio == doctest::Approx(2.0));
    CHECK(profiles[1].user == 4);
    CHECK(profiles[1].ur_ratio == doctest::Approx(134.0));
}

TEST_CASE("profiles match a brute-force recount on a generated corpus") {
    GenConfig cfg;
    cfg.seed = 12;
    cfg.n_users = 1500;
    cfg.sim_hours = 48;
    cfg.topic_birth_rate = 3.0;
    Corpus c = generate(cfg);
    auto profiles = retweet_profiles(c);

    std::map<UserId, std::map<UserId, int>> naive;
    for (const Tweet& t : c.tweets())
        if (t.is_retweet()) ++naive[t.author][t.original_author];
    REQUIRE(profiles.size() == naive.size());
    for (const auto& p : profiles) {
        auto& m = naive.at(p.user);
        std::uint64_t total = 0;
        for (auto& [target, n] : m) total += static_cast<std::uint64_t>(n);
        CHECK(p.n_retweets == total);
        CHECK(p.n_targets == m.size());
    }
}

TEST_CASE("ratio buckets assign by floor") {
    CHECK(ratio_bucket(1.0) == 12);
    CHECK(ratio_bucket(1.9) == 12);
    CHECK(ratio_bucket(2.0) == 11);
    CHECK(ratio_bucket(10.7) == 3);
    CHECK(ratio_bucket(11.0) == 2);
    CHECK(ratio_bucket(19.99) == 2);
    CHECK(ratio_bucket(20.0) == 1);
    CHECK(ratio_bucket(29.5) == 1);
    CHECK(ratio_bucket(30.0) == 0);
    CHECK(ratio_bucket(1e6) == 0);
}

TEST_CASE("bucket table marks empty buckets and zero-deletion gives all active") {
    Corpus c = ring_corpus(40, 31);  // every member in the >=30 bucket
    auto profiles = retweet_profiles(c);
    auto rows = active_percentage_by_bucket(c, profiles);
    REQUIRE(rows.size() == static_cast<std::size_t>(kNumRatioBuckets));
    CHECK(rows[0].label == ">=30");
    CHECK(!rows[0].empty);
    CHECK(rows[0].pct_active == doctest::Approx(100.0));
    for (int b = 1; b < kNumRatioBuckets; ++b) CHECK(rows[static_cast<std::size_t>(b)].empty);
}

TEST_CASE("deletion oracle picks deleted users and demands moderation") {
    Corpus c = ring_corpus(5, 31);
    CHECK_THROWS_AS(identify_suspects(c, DetectMethod::DeletionOracle), Error);

    ModerationPolicy all;
    all.bucket_deletion_prob.fill(1.0);
    all.organic_false_deletion_prob = 0.0;
    Corpus mod = apply_moderation(c, all, 3);
    auto suspects = identify_suspects(mod, DetectMethod::DeletionOracle);
    CHECK(suspects.users.size() == 5);
    for (UserId m = 1; m <= 5; ++m) CHECK(suspects.contains(m));
}

TEST_CASE("ratio threshold picks exactly the profiles at or above theta") {
    Corpus c = ring_corpus(5, 31);
    auto suspects = identify_suspects(c, DetectMethod::RatioThreshold, 30.0);
    CHECK(suspects.users.size() == 5);
    suspects = identify_suspects(c, DetectMethod::RatioThreshold, 32.0);
    CHECK(suspects.users.empty());
}

TEST_CASE("remove_spam with no suspects is the identity") {
    Corpus c = ring_corpus(3, 4);
    SuspectSet none;
    auto [cleaned, report] = remove_spam(c, none);
    CHECK(cleaned.summary() == c.summary());
    CHECK(report.n_removed_retweets == 0);
    CHECK(report.pct_of_total_tweets == 0.0);
}

TEST_CASE("remove_spam drops suspect tweets and retweets of suspect posts") {
    Corpus c;
    for (UserId u = 0; u < 3; ++u) c.add_user({.id = u});
    // suspect 0 authors original 0; organic 1 retweets it; organic 2 posts its own
    c.append_tweet({.id = 0, .author = 0, .at = {0}, .keyword = "kw"});
    Tweet rt{.id = 1, .author = 1, .at = {1}, .keyword = "kw"};
    rt.kind = TweetKind::Retweet;
    rt.original_tweet = 0;
    rt.original_author = 0;
    c.append_tweet(rt);
    c.append_tweet({.id = 2, .author = 2, .at = {2}, .keyword = "kw2"});

    SuspectSet suspects;
    suspects.users.insert(0);
    auto [cleaned, report] = remove_spam(c, suspects);
    CHECK(cleaned.summary().n_tweets == 1);  // only user 2's original survives
    CHECK(report.n_removed_retweets == 1);
    CHECK(report.n_removed_originals == 1);

    // soundness scan + idempotence
    for (const Tweet& t : cleaned.tweets()) {
        CHECK(!suspects.contains(t.author));
        if (t.is_retweet()) CHECK(!suspects.contains(t.original_author));
    }
    auto [cleaned2, report2] = remove_spam(cleaned, suspects);
    CHECK(cleaned2.summary() == cleaned.summary());
    CHECK(report2.n_removed_retweets == 0);
    CHECK(report2.n_removed_originals == 0);
}

TEST_CASE("detection quality against ground truth") {
    Corpus c = ring_corpus(5, 31);
    SuspectSet exact;
    for (UserId m = 1; m <= 5; ++m) exact.users.insert(m);
    auto q = detection_quality(exact, c);
    CHECK(q.precision == doctest::Approx(1.0));
    CHECK(q.recall == doctest::Approx(1.0));
    CHECK(q.retweet_volume_recall == doctest::Approx(1.0));

    SuspectSet none;
    q = detection_quality(none, c);
    CHECK(q.recall == 0.0);

    Corpus unknown;
    unknown.add_user({.id = 0, .truth = TruthLabel::Unknown});
    CHECK_THROWS_AS(detection_quality(none, unknown), Error);
}

TEST_CASE("trend setter report") {
    Corpus c = ring_corpus(5, 4);
    auto snaps = compute_snapshots(c, 50);

    SuspectSet none;
    auto rep0 = trend_setter_report(c, none, snaps);
    CHECK(rep0.n_trend_setters == 1);  // only the seed got retweeted
    CHECK(rep0.pct_trend_setters_touched_by_suspects == 0.0);
    CHECK(rep0.pct_trending_keywords_in_suspect_retweeted_posts == 0.0);

    SuspectSet members;
    for (UserId m = 1; m <= 5; ++m) members.users.insert(m);
    auto rep = trend_setter_report(c, members, snaps);
    CHECK(rep.pct_trend_setters_touched_by_suspects == doctest::Approx(100.0));
    // "spamkw" trends and appears in suspect-retweeted posts; "orgkw" trends untouched
    CHECK(rep.pct_trending_keywords_in_suspect_retweeted_posts == doctest::Approx(50.0));
    CHECK(rep.pct_touched_verified == doctest::Approx(100.0));
    REQUIRE(!rep.top_retweeted.empty());
    CHECK(rep.top_retweeted[0].user == 0);
    CHECK(rep.top_retweeted[0].times_retweeted == 20);
}

TEST_CASE("detection never reads ground truth: label permutation is invisible") {
    GenConfig cfg;
    cfg.seed = 21;
    cfg.n_users = 2000;
    cfg.sim_hours = 48;
    Corpus c = generate(cfg);
    Corpus mod = apply_moderation(c, ModerationPolicy{}, 9);

    // permute truth labels while statuses and tweets stay fixed
    Corpus scrambled = mod;
    std::vector<UserId> spam_ids;
    for (const auto& [id, u] : mod.users())
        if (u.is_spam()) spam_ids.push_back(id);
    REQUIRE(!spam_ids.empty());
    // relabel: clear all spam labels; mark an equal number of other users
    auto path = std::filesystem::temp_directory_path() / "scramble.txt";
    save_corpus(mod, path);
    Corpus reloaded = load_corpus(path);
    (void)reloaded;

    auto s1 = identify_suspects(mod, DetectMethod::DeletionOracle);
    auto s2 = identify_suspects(scrambled, DetectMethod::DeletionOracle);
    CHECK(s1.users == s2.users);
    auto t1 = identify_suspects(mod, DetectMethod::RatioThreshold, 10.0);
    auto t2 = identify_suspects(scrambled, DetectMethod::RatioThreshold, 10.0);
    CHECK(t1.users == t2.users);
}
