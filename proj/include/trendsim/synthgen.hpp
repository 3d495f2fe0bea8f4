#pragma once

#include <array>
#include <cstdint>
#include <filesystem>

#include "trendsim/corpus.hpp"
#include "trendsim/types.hpp"

namespace trendsim {

// Table-2-style user-retweet-ratio buckets:
// index 0 = ">=30", 1 = "20-29", 2 = "11-19", 3..12 = "10" down to "1".
inline constexpr int kNumRatioBuckets = 13;
int ratio_bucket(double ur_ratio);
const char* ratio_bucket_label(int bucket);

struct ModerationPolicy {
    // Deletion probability per ratio bucket, applied to spam-ring accounts
    // (or to every profiled account when buckets_apply_to_all is set).
    // Defaults are the inactive-percentage column of the ratio study the
    // generator is calibrated against.
    std::array<double, kNumRatioBuckets> bucket_deletion_prob{
        0.88, 0.63, 0.84, 0.78, 0.88, 0.84, 0.85, 0.79, 0.70, 0.42, 0.20, 0.04, 0.08};
    // Organic accounts with a retweet profile are deleted with this small
    // false-deletion probability.
    double organic_false_deletion_prob = 0.02;
    bool buckets_apply_to_all = false;
};

struct GenConfig {
    std::uint64_t seed = 1;
    std::uint64_t n_users = 50'000;
    std::int64_t sim_hours = 720;

    // organic topic engine
    double topic_birth_rate = 8.0;  // expected new topics per hour (Poisson)
    double attract_min = 0.016;     // a_q drawn log-uniform over [min, max]
    double attract_max = 0.38;
    double novelty_tau = 18.0;      // exponential novelty decay, in ticks
    double growth_sigma = 0.35;     // log-sd of the unit-median growth factor
    double p_retweet = 0.50;        // organic retweet probability

    // organic population
    double verified_fraction = 0.05;
    double expert_fraction = 0.02;
    double retweeter_fraction = 0.19;  // share of users that ever retweet
    double activity_sigma = 1.1;       // log-sd of retweeter activity weights
    double poster_sigma = 2.2;         // log-sd of poster weights

    // spam rings
    double spam_fraction = 0.0108;      // share of users in spam rings
    double ring_size_mean = 9.0;        // geometric ring sizes
    double verified_fraction_seeds = 0.79;
    double spam_intensity = 3.2;        // expected ring retweets per seed post per member
    double ignition_boost = 4.0;        // burst multiplier on a campaign's founding post
    double campaign_interval_hours = 160.0;  // mean hours between campaigns per ring
    double campaign_hours = 10.0;            // mean campaign duration
    double seed_post_rate = 0.30;            // seed posts per tick while campaigning
    double burst_tick_p = 0.55;              // geometric spread of bursts over ticks
    double member_volume_sigma = 1.0;        // spread of per-member retweet volume
    double camouflage_fraction = 0.10;       // members that also retweet other rings' seeds
    double camouflage_per_member = 10.0;     // expected cross-ring retweets per such member
    double jack_rate = 12.0;       // trend-riding seed posts per hour, all rings combined
    double jack_intensity = 8.0;   // expected ring retweets per trend-riding post

    std::uint32_t top_k = 50;              // trending-list size the generator steers against
    std::uint64_t max_topic_tweets = 40'000;  // per-topic safety cap

    void validate() const;  // ConfigError on out-of-range fields
};

// Seeded corpus generator. Identical config (including seed) produces a
// byte-identical corpus. Ground-truth labels are set; statuses are all
// Active until apply_moderation runs.
Corpus generate(const GenConfig& config);

// Deletes accounts with ratio-dependent probability, modeling a platform
// moderation sweep observed at `at` (defaults to the end of the corpus,
// rounded up to the next hour). Deterministic under seed.
Corpus apply_moderation(const Corpus& corpus, const ModerationPolicy& policy, std::uint64_t seed,
                        Timestamp at = {-1});

struct GroundTruthReport {
    double spam_user_fraction = 0.0;
    double spam_retweet_fraction = 0.0;
    double spam_tweet_fraction = 0.0;
};

// Evaluation-only: reads ground-truth labels, never available to detection.
GroundTruthReport ground_truth_report(const Corpus& corpus);

}  // namespace trendsim
