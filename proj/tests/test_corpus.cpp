#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "trendsim/corpus.hpp"
#include "trendsim/errors.hpp"

using namespace trendsim;

namespace {

Corpus three_users() {
    Corpus c;
    for (UserId id : {0, 1, 2}) c.add_user({.id = id});
    return c;
}

Tweet original(TweetId id, UserId author, std::int64_t minutes, Keyword kw) {
    return {.id = id, .author = author, .at = {minutes}, .keyword = std::move(kw)};
}

Tweet retweet(TweetId id, UserId author, std::int64_t minutes, Keyword kw, TweetId orig,
              UserId orig_author) {
    Tweet t{.id = id, .author = author, .at = {minutes}, .keyword = std::move(kw)};
    t.kind = TweetKind::Retweet;
    t.original_tweet = orig;
    t.original_author = orig_author;
    return t;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("append original and retweet update counters") {
    Corpus c = three_users();
    c.append_tweet(original(10, 0, 5, "kw"));
    CHECK(c.summary().n_tweets == 1);
    CHECK(c.summary().n_retweets == 0);

    c.append_tweet(retweet(11, 1, 6, "kw", 10, 0));
    CHECK(c.summary().n_tweets == 2);
    CHECK(c.summary().n_retweets == 1);
}

TEST_CASE("append errors") {
    Corpus c = three_users();
    c.append_tweet(original(10, 0, 5, "kw"));
    c.append_tweet(retweet(11, 1, 6, "kw", 10, 0));

    CHECK_THROWS_AS(c.append_tweet(retweet(12, 2, 7, "kw", 11, 1)), Error);
    try {
        c.append_tweet(retweet(12, 2, 7, "kw", 11, 1));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::RetweetOfRetweet);
    }

    try {
        c.append_tweet(original(13, 99, 7, "kw"));
        FAIL("expected UnknownUser");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::UnknownUser);
    }
    try {
        c.append_tweet(retweet(13, 2, 7, "kw", 999, 0));
        FAIL("expected UnknownOriginal");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::UnknownOriginal);
    }
    try {
        c.append_tweet(original(10, 0, 9, "kw"));
        FAIL("expected DuplicateId");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DuplicateId);
    }
    try {
        c.append_tweet(retweet(14, 2, 7, "other", 10, 0));
        FAIL("expected KeywordMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::KeywordMismatch);
    }
}

TEST_CASE("summary of empty and tiny corpora") {
    Corpus empty;
    CHECK(empty.summary() == CorpusSummary{});

    // 2 originals + 1 retweet of one of them
    Corpus c = three_users();
    c.append_tweet(original(0, 0, 0, "a"));
    c.append_tweet(original(1, 1, 1, "b"));
    c.append_tweet(retweet(2, 2, 2, "a", 0, 0));
    auto s = c.summary();
    CHECK(s.n_tweets == 3);
    CHECK(s.n_retweets == 1);
    CHECK(s.n_originals == 2);
    CHECK(s.n_users == 3);
    CHECK(s.n_retweeting_users == 1);
    CHECK(s.n_retweeted_users == 1);
}

TEST_CASE("save then load is the identity, bit-exact") {
    Corpus c;
    c.add_user({.id = 0, .account_type = AccountType::Verified});
    c.add_user({.id = 1,
                .truth = TruthLabel::SpamRing,
                .ring_seed = 0,
                .status = AccountStatus::Deleted,
                .deleted_at = {720}});
    c.add_user({.id = 2, .account_type = AccountType::Expert});
    c.append_tweet(original(0, 0, 0, "a"));
    c.append_tweet(original(1, 1, 3, "b"));
    c.append_tweet(retweet(2, 2, 9, "a", 0, 0));

    auto path = temp_file("corpus_roundtrip.txt");
    save_corpus(c, path);
    Corpus loaded = load_corpus(path);
    auto path2 = temp_file("corpus_roundtrip2.txt");
    save_corpus(loaded, path2);

    std::ifstream f1(path), f2(path2);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());

    CHECK(loaded.summary() == c.summary());
    CHECK(loaded.find_user(1)->truth == TruthLabel::SpamRing);
    CHECK(loaded.find_user(1)->deleted_at.minutes == 720);
    CHECK(loaded.moderated());
}

TEST_CASE("load accepts a retweet recorded before its original") {
    auto path = temp_file("corpus_order.txt");
    {
        std::ofstream out(path);
        out << "U 0 regular organic active\n";
        out << "U 1 regular organic active\n";
        out << "T 5 1 9 kw R 4 0\n";   // retweet first
        out << "T 4 0 2 kw O\n";
    }
    Corpus c = load_corpus(path);
    CHECK(c.summary().n_retweets == 1);
    // tweets come back in timestamp order
    CHECK(c.tweets().front().id == 4);
}

TEST_CASE("load rejects an unknown author with IntegrityError") {
    auto path = temp_file("corpus_badauthor.txt");
    {
        std::ofstream out(path);
        out << "U 0 regular organic active\n";
        out << "T 4 7 2 kw O\n";
    }
    try {
        load_corpus(path);
        FAIL("expected IntegrityError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::IntegrityError);
    }
}

TEST_CASE("load rejects malformed lines with ParseError") {
    auto path = temp_file("corpus_badline.txt");
    {
        std::ofstream out(path);
        out << "U 0 regular organic active\n";
        out << "T 4 0 xx kw O\n";
    }
    try {
        load_corpus(path);
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ParseError);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("counters equal a from-scratch recount on random corpora") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 20; ++round) {
        Corpus c;
        int n_users = 2 + static_cast<int>(rng() % 20);
        for (int u = 0; u < n_users; ++u) c.add_user({.id = static_cast<UserId>(u)});
        std::vector<Tweet> originals;
        TweetId next = 0;
        int n = 1 + static_cast<int>(rng() % 200);
        for (int k = 0; k < n; ++k) {
            auto author = static_cast<UserId>(rng() % n_users);
            auto minutes = static_cast<std::int64_t>(rng() % 600);
            Keyword kw = "k" + std::to_string(rng() % 5);
            if (!originals.empty() && rng() % 2 == 0) {
                const Tweet& orig = originals[rng() % originals.size()];
                if (orig.author != author) {
                    c.append_tweet(retweet(next++, author, minutes, orig.keyword, orig.id,
                                           orig.author));
                    continue;
                }
            }
            Tweet t = original(next++, author, minutes, kw);
            c.append_tweet(t);
            originals.push_back(t);
        }

        // independent recount
        CorpusSummary naive;
        std::set<UserId> retweeting, retweeted;
        std::int64_t prev = -1;
        for (const Tweet& t : c.tweets()) {
            CHECK(t.at.minutes >= prev);  // order invariant
            prev = t.at.minutes;
            ++naive.n_tweets;
            if (t.is_retweet()) {
                ++naive.n_retweets;
                retweeting.insert(t.author);
                retweeted.insert(t.original_author);
                const Tweet* target = c.find_tweet(t.original_tweet);
                REQUIRE(target != nullptr);
                CHECK(!target->is_retweet());  // one-hop rule
            } else {
                ++naive.n_originals;
            }
        }
        naive.n_users = static_cast<std::uint64_t>(n_users);
        naive.n_retweeting_users = retweeting.size();
        naive.n_retweeted_users = retweeted.size();
        CHECK(naive == c.summary());
    }
}

TEST_CASE("jsonl export emits one record per line") {
    Corpus c = three_users();
    c.append_tweet(original(0, 0, 0, "a"));
    c.append_tweet(retweet(1, 1, 2, "a", 0, 0));
    auto path = temp_file("corpus.jsonl");
    export_jsonl(c, path);
    std::ifstream in(path);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
        ++lines;
        CHECK(line.front() == '{');
        CHECK(line.back() == '}');
    }
    CHECK(lines == 5);  // 3 users + 2 tweets
}
