#include <doctest.h>

#include <cmath>
#include <random>

#include "trendsim/errors.hpp"
#include "trendsim/ratiostats.hpp"

using namespace trendsim;

namespace {

std::vector<Tweet> tweets_at(const std::vector<std::pair<std::int64_t, TweetKind>>& items,
                             Keyword kw = "kw") {
    std::vector<Tweet> out;
    TweetId id = 0;
    for (auto [minute, kind] : items) {
        Tweet t{.id = id++, .author = 0, .at = {minute}, .keyword = kw, .kind = kind};
        if (kind == TweetKind::Retweet) {
            t.original_tweet = 0;
            t.original_author = 1;
        }
        out.push_back(t);
    }
    return out;
}

}  // namespace

TEST_CASE("timeline boundary arithmetic") {
    auto tl = build_timeline(tweets_at({{0, TweetKind::Original},
                                        {9, TweetKind::Original},
                                        {10, TweetKind::Original}}),
                             Timestamp{0});
    REQUIRE(tl.ticks() == 2);
    CHECK(tl.orig[0] == 2);
    CHECK(tl.orig[1] == 1);
    CHECK(tl.cum_all[0] == 2);
    CHECK(tl.cum_all[1] == 3);
}

TEST_CASE("empty timeline is all zeros") {
    auto tl = build_timeline({}, Timestamp{0}, 4);
    CHECK(tl.ticks() == 4);
    CHECK(tl.cumulative(TweetClass::All, 4) == 0);
}

TEST_CASE("timeline splits originals and retweets") {
    auto tl = build_timeline(tweets_at({{0, TweetKind::Original},
                                        {11, TweetKind::Retweet},
                                        {12, TweetKind::Retweet}}),
                             Timestamp{0});
    CHECK(tl.cumulative(TweetClass::All, 1) == 1);
    CHECK(tl.cumulative(TweetClass::All, 2) == 3);
    CHECK(tl.cumulative(TweetClass::Retweets, 1) == 0);
    CHECK(tl.cumulative(TweetClass::Retweets, 2) == 2);
    CHECK(tl.cumulative(TweetClass::Originals, 2) == 1);
    // cumulative_all = cumulative_orig + cumulative_rt at every tick
    for (std::int64_t k = 1; k <= tl.ticks(); ++k)
        CHECK(tl.cumulative(TweetClass::All, k) ==
              tl.cumulative(TweetClass::Originals, k) + tl.cumulative(TweetClass::Retweets, k));
}

TEST_CASE("ratio samples") {
    std::vector<TopicTimeline> tls;
    {
        std::vector<std::pair<std::int64_t, TweetKind>> items;
        items.push_back({0, TweetKind::Original});
        items.push_back({5, TweetKind::Original});
        items.push_back({15, TweetKind::Original});
        for (int k = 0; k < 9; ++k) items.push_back({25 + k * 8, TweetKind::Original});
        tls.push_back(build_timeline(tweets_at(items), Timestamp{0}, 10));  // N(2)=3, N(10)=12
    }
    auto set = ratio_samples(tls, 10, 2, TweetClass::All);
    REQUIRE(set.samples.size() == 1);
    CHECK(set.samples[0] == doctest::Approx(12.0 / 3.0));

    // degenerate frame rejected
    CHECK_THROWS_AS(ratio_samples(tls, 2, 2, TweetClass::All), Error);
    try {
        ratio_samples(tls, 2, 10, TweetClass::All);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::BadFrame);
    }

    // zero denominator in the retweet class is excluded and tallied
    set = ratio_samples(tls, 10, 2, TweetClass::Retweets);
    CHECK(set.samples.empty());
    CHECK(set.skipped == 1);

    // frames beyond the recorded window are skipped too
    set = ratio_samples(tls, 11, 2, TweetClass::All);
    CHECK(set.samples.empty());
    CHECK(set.skipped == 1);
}

TEST_CASE("ratio identity C(i,j)*C(j,k) = C(i,k)") {
    std::mt19937_64 rng(3);
    std::vector<std::pair<std::int64_t, TweetKind>> items;
    for (int k = 0; k < 500; ++k)
        items.push_back({static_cast<std::int64_t>(rng() % 120),
                         rng() % 2 ? TweetKind::Original : TweetKind::Retweet});
    std::vector<TopicTimeline> tls{build_timeline(tweets_at(items), Timestamp{0}, 12)};
    auto c_ij = ratio_samples(tls, 12, 6, TweetClass::All).samples.at(0);
    auto c_jk = ratio_samples(tls, 6, 2, TweetClass::All).samples.at(0);
    auto c_ik = ratio_samples(tls, 12, 2, TweetClass::All).samples.at(0);
    CHECK(std::abs(c_ij * c_jk - c_ik) <= 1e-12 * c_ik);
    CHECK(c_ij >= 1.0);
    CHECK(c_jk >= 1.0);
}

TEST_CASE("lognormal fit accepts true lognormal samples") {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> normal(0.8, 0.6);
    std::vector<double> xs(10'000);
    for (double& x : xs) x = std::exp(normal(rng));
    auto fit = fit_lognormal(xs, 0.05, 300, 1);
    CHECK(fit.mu == doctest::Approx(0.8).epsilon(0.05));
    CHECK(fit.sigma == doctest::Approx(0.6).epsilon(0.05));
    CHECK(fit.accepted);
}

TEST_CASE("lognormal fit rejects a well-separated mixture") {
    // 50/50 mixture of two log-normals with means 3 sigma apart
    std::mt19937_64 rng(43);
    std::normal_distribution<double> a(0.0, 0.4), b(1.2, 0.4);
    std::vector<double> xs(10'000);
    for (std::size_t k = 0; k < xs.size(); ++k)
        xs[k] = std::exp(k % 2 == 0 ? a(rng) : b(rng));
    auto fit = fit_lognormal(xs, 0.05, 300, 2);
    CHECK(!fit.accepted);
}

TEST_CASE("lognormal fit error paths") {
    std::vector<double> few(5, 2.0);
    CHECK_THROWS_AS(fit_lognormal(few), Error);
    std::vector<double> equal(100, 2.0);
    try {
        fit_lognormal(equal);
        FAIL("expected DegenerateSamples");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DegenerateSamples);
    }
}

TEST_CASE("power-law MLE on the hand-computed example") {
    std::vector<double> xs{2.0, 4.0, 8.0};
    // alpha = 1 + 3 / (ln 1 + ln 2 + ln 4) = 1 + 1/ln 2
    CHECK(powerlaw_mle(xs, 2.0) == doctest::Approx(2.4426950408889634).epsilon(1e-12));

    std::vector<double> flat(60, 3.0);
    CHECK_THROWS_AS(powerlaw_mle(flat, 3.0), Error);
}

TEST_CASE("power-law MLE recovers a known exponent") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> xs(10'000);
    for (double& x : xs) x = std::pow(1.0 - unif(rng), -1.0 / 1.5);  // alpha = 2.5, x_min = 1
    CHECK(powerlaw_mle(xs, 1.0) == doctest::Approx(2.5).epsilon(0.04));

    auto fit = fit_powerlaw(xs, XMinMode::Fixed, 1.0, 0.05, 200, 5);
    CHECK(fit.alpha == doctest::Approx(2.5).epsilon(0.04));
    CHECK(fit.accepted);
}

TEST_CASE("power-law scan accepts integer power-law data") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> xs(3'000);
    for (double& x : xs) x = std::floor(std::pow(1.0 - unif(rng), -1.0 / 1.3));
    auto fit = fit_powerlaw(xs, XMinMode::Scan, 1.0, 0.05, 300, 6);
    CHECK(fit.accepted);
    CHECK(fit.n_tail >= 50);
}

TEST_CASE("power-law fit rejects obviously non-power-law data") {
    std::mt19937_64 rng(10);
    std::normal_distribution<double> normal(40.0, 3.0);
    std::vector<double> xs(3'000);
    for (double& x : xs) x = std::max(1.0, normal(rng));
    auto fit = fit_powerlaw(xs, XMinMode::Fixed, 1.0, 0.05, 200, 7);
    CHECK(!fit.accepted);
}

TEST_CASE("histograms") {
    std::vector<double> xs{1.0, 1.0, 2.0};
    auto rows = histogram_linear(xs, 1.0);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].lo == 1.0);
    CHECK(rows[0].count == 2);
    CHECK(rows[1].count == 1);

    std::vector<double> log_xs{1.0, 2.0, 3.0, 4.0};
    auto log_rows = histogram_log(log_xs, 2.0);
    REQUIRE(log_rows.size() == 3);
    CHECK(log_rows[0].count == 1);  // [1,2)
    CHECK(log_rows[1].count == 2);  // [2,4)
    CHECK(log_rows[2].count == 1);  // [4,8)

    CHECK_THROWS_AS(histogram_linear({}, 1.0), Error);
}

TEST_CASE("bootstrap acceptance is calibrated near 1 - alpha") {
    // data generated from the fitted model is accepted at rate >= 1 - alpha - 0.05
    std::mt19937_64 rng(80);
    std::normal_distribution<double> normal(0.5, 0.9);
    int accepted = 0;
    const int trials = 40;
    for (int t = 0; t < trials; ++t) {
        std::vector<double> xs(400);
        for (double& x : xs) x = std::exp(normal(rng));
        if (fit_lognormal(xs, 0.05, 200, static_cast<std::uint64_t>(t)).accepted) ++accepted;
    }
    CHECK(static_cast<double>(accepted) / trials >= 0.90);
}
