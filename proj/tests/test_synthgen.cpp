#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "trendsim/corpus.hpp"
#include "trendsim/errors.hpp"
#include "trendsim/ratiostats.hpp"
#include "trendsim/spamlens.hpp"
#include "trendsim/synthgen.hpp"

using namespace trendsim;

namespace {

GenConfig small_config() {
    GenConfig cfg;
    cfg.seed = 99;
    cfg.n_users = 4000;
    cfg.sim_hours = 96;
    cfg.topic_birth_rate = 4.0;
    cfg.jack_rate = 4.0;
    cfg.campaign_interval_hours = 60.0;
    return cfg;
}

std::string corpus_bytes(const Corpus& c) {
    auto path = std::filesystem::temp_directory_path() / "synthgen_bytes.txt";
    save_corpus(c, path);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("identical config and seed give byte-identical corpora") {
    GenConfig cfg = small_config();
    Corpus a = generate(cfg);
    Corpus b = generate(cfg);
    CHECK(corpus_bytes(a) == corpus_bytes(b));

    cfg.seed = 100;
    Corpus c = generate(cfg);
    CHECK(corpus_bytes(a) != corpus_bytes(c));
}

TEST_CASE("spam_fraction zero disables spam entirely") {
    GenConfig cfg = small_config();
    cfg.spam_fraction = 0.0;
    Corpus c = generate(cfg);
    for (const auto& [id, u] : c.users()) CHECK(!u.is_spam());
    auto rep = ground_truth_report(c);
    CHECK(rep.spam_user_fraction == 0.0);
    CHECK(rep.spam_retweet_fraction == 0.0);
    CHECK(rep.spam_tweet_fraction == 0.0);
}

TEST_CASE("config validation rejects out-of-range fields") {
    GenConfig cfg = small_config();
    cfg.spam_fraction = 1.5;
    CHECK_THROWS_AS(generate(cfg), Error);
    cfg = small_config();
    cfg.novelty_tau = 0.0;
    CHECK_THROWS_AS(generate(cfg), Error);
    cfg = small_config();
    cfg.p_retweet = -0.1;
    try {
        generate(cfg);
        FAIL("expected ConfigError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ConfigError);
    }
}

TEST_CASE("ring purity: members retweet only seed accounts, spam authors no originals") {
    Corpus c = generate(small_config());
    std::set<UserId> seeds;
    for (const auto& [id, u] : c.users())
        if (u.is_spam()) seeds.insert(u.ring_seed);
    REQUIRE(!seeds.empty());

    std::unordered_map<UserId, std::set<UserId>> member_targets;
    for (const Tweet& t : c.tweets()) {
        const UserRecord* author = c.find_user(t.author);
        if (!author->is_spam()) continue;
        CHECK(t.is_retweet());  // ring members never post originals
        member_targets[t.author].insert(t.original_author);
    }
    std::size_t single_target = 0;
    for (const auto& [member, targets] : member_targets) {
        for (UserId target : targets) CHECK(seeds.contains(target));
        UserId own = c.find_user(member)->ring_seed;
        if (targets.size() == 1) {
            CHECK(targets.contains(own));
            ++single_target;
        }
    }
    // non-camouflage members (the large majority) stick to their own seed
    CHECK(single_target >= member_targets.size() * 7 / 10);
}

TEST_CASE("moderation: zero and one probabilities") {
    Corpus c = generate(small_config());

    ModerationPolicy none;
    none.bucket_deletion_prob.fill(0.0);
    none.organic_false_deletion_prob = 0.0;
    Corpus unmod = apply_moderation(c, none, 5);
    for (const auto& [id, u] : unmod.users()) CHECK(!u.is_deleted());
    CHECK(unmod.moderated());

    ModerationPolicy all;
    all.bucket_deletion_prob.fill(1.0);
    all.organic_false_deletion_prob = 0.0;
    Corpus mod = apply_moderation(c, all, 5);
    std::size_t spam_total = 0;
    for (const auto& [id, u] : mod.users()) {
        if (u.is_spam()) {
            ++spam_total;
            CHECK(u.is_deleted());
        } else {
            CHECK(!u.is_deleted());
        }
    }
    CHECK(spam_total > 0);
    // ground truth unchanged
    auto before = ground_truth_report(c);
    auto after = ground_truth_report(mod);
    CHECK(before.spam_user_fraction == after.spam_user_fraction);
}

TEST_CASE("moderation is deterministic under seed") {
    Corpus c = generate(small_config());
    ModerationPolicy policy;
    Corpus a = apply_moderation(c, policy, 42);
    Corpus b = apply_moderation(c, policy, 42);
    for (const auto& [id, u] : a.users())
        CHECK(u.is_deleted() == b.find_user(id)->is_deleted());
}

TEST_CASE("default policy deletes 88 +- 4 pct of high-ratio spam accounts") {
    // 1200 ring members, each retweeting its seed's single post 31 times
    Corpus c;
    const UserId seed_id = 0;
    c.add_user({.id = seed_id, .account_type = AccountType::Verified});
    for (UserId m = 1; m <= 1200; ++m)
        c.add_user({.id = m, .truth = TruthLabel::SpamRing, .ring_seed = seed_id});
    c.append_tweet({.id = 0, .author = seed_id, .at = {0}, .keyword = "kw"});
    TweetId next = 1;
    for (UserId m = 1; m <= 1200; ++m)
        for (int k = 0; k < 31; ++k) {
            Tweet t{.id = next++, .author = m, .at = {k + 1}, .keyword = "kw"};
            t.kind = TweetKind::Retweet;
            t.original_tweet = 0;
            t.original_author = seed_id;
            c.append_tweet(t);
        }

    Corpus mod = apply_moderation(c, ModerationPolicy{}, 7);
    std::size_t active = 0;
    for (UserId m = 1; m <= 1200; ++m)
        if (!mod.find_user(m)->is_deleted()) ++active;
    double frac = static_cast<double>(active) / 1200.0;
    CHECK(frac == doctest::Approx(0.12).epsilon(0.34));  // 0.12 +- 0.04
    CHECK(frac >= 0.08);
    CHECK(frac <= 0.16);
}

TEST_CASE("ground truth report fractions on a labeled corpus") {
    Corpus c;
    c.add_user({.id = 0});
    c.add_user({.id = 1, .truth = TruthLabel::SpamRing, .ring_seed = 0});
    c.append_tweet({.id = 0, .author = 0, .at = {0}, .keyword = "kw"});
    Tweet rt{.id = 1, .author = 1, .at = {1}, .keyword = "kw"};
    rt.kind = TweetKind::Retweet;
    rt.original_tweet = 0;
    rt.original_author = 0;
    c.append_tweet(rt);
    auto rep = ground_truth_report(c);
    CHECK(rep.spam_user_fraction == doctest::Approx(0.5));
    CHECK(rep.spam_retweet_fraction == doctest::Approx(1.0));
    CHECK(rep.spam_tweet_fraction == doctest::Approx(0.5));
}

TEST_CASE("preferential targeting yields a heavy retweet-count tail") {
    GenConfig cfg = small_config();
    cfg.spam_fraction = 0.0;
    cfg.n_users = 8000;
    cfg.sim_hours = 168;
    Corpus c = generate(cfg);

    std::unordered_map<TweetId, std::uint64_t> counts;
    for (const Tweet& t : c.tweets())
        if (t.is_retweet()) ++counts[t.original_tweet];
    std::vector<double> xs;
    for (const auto& [id, n] : counts) xs.push_back(static_cast<double>(n));
    REQUIRE(xs.size() >= 200);

    double alpha = powerlaw_mle(xs, 1.0);
    CHECK(alpha > 1.5);
    CHECK(alpha < 3.5);

    // monotonically decreasing tail on log-log axes
    auto rows = histogram_log(xs, 2.0);
    double prev = 1e300;
    for (const auto& row : rows) {
        if (row.count == 0) continue;
        CHECK(row.density <= prev * 1.10);  // allow small binning noise
        prev = row.density;
    }
}
