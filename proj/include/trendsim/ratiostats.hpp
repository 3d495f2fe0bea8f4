#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "trendsim/types.hpp"

namespace trendsim {

enum class TweetClass : std::uint8_t { All, Originals, Retweets };

const char* to_string(TweetClass cls);

// Per-10-minute-tick counts for one topic, indexed from the topic's window
// start (tick 1 covers [start, start+10)). Cumulative sums are maintained for
// all tweets, originals only and retweets only.
struct TopicTimeline {
    Keyword keyword;
    Timestamp window_start;
    std::vector<std::uint64_t> orig;  // per tick
    std::vector<std::uint64_t> rt;
    std::vector<std::uint64_t> cum_all;
    std::vector<std::uint64_t> cum_orig;
    std::vector<std::uint64_t> cum_rt;

    std::int64_t ticks() const { return static_cast<std::int64_t>(cum_all.size()); }
    // tick is 1-based and must be within [1, ticks()].
    std::uint64_t cumulative(TweetClass cls, std::int64_t tick) const;
};

// Builds the tick counts for tweets of one keyword. n_ticks < 0 sizes the
// timeline to the last tweet; otherwise the timeline is padded or truncated
// to exactly n_ticks (tweets beyond are dropped).
TopicTimeline build_timeline(std::span<const Tweet> tweets, Timestamp window_start,
                             std::int64_t n_ticks = -1);

struct RatioSampleSet {
    int i = 0;
    int j = 0;
    TweetClass cls = TweetClass::All;
    std::vector<double> samples;  // C_q(t_i, t_j), one per qualifying topic
    std::uint64_t skipped = 0;    // zero denominator, or window shorter than i ticks
};

// C_q(t_i,t_j) = N_q(t_i)/N_q(t_j) over all qualifying timelines. Topics with
// N_q(t_j) = 0 or fewer than i recorded ticks are excluded and tallied in
// skipped. Requires i > j >= 1.
RatioSampleSet ratio_samples(const std::vector<TopicTimeline>& timelines, int i, int j,
                             TweetClass cls);

struct LogNormalFit {
    double mu = 0.0;
    double sigma = 0.0;
    double ks_stat = 0.0;
    double p_value = 0.0;
    bool accepted = false;
    std::size_t n = 0;
};

// Maximum-likelihood log-normal fit with a Lilliefors-style parametric
// bootstrap: p is the fraction of n_bootstrap synthetic samples (drawn from
// the fitted distribution and refitted each time) whose KS statistic exceeds
// the observed one. Requires n >= 20 positive samples with sigma > 0.
LogNormalFit fit_lognormal(std::span<const double> samples, double alpha = 0.05,
                           int n_bootstrap = 1000, std::uint64_t seed = 0x5eed);

enum class XMinMode : std::uint8_t { Fixed, Scan };

struct PowerLawFit {
    double alpha = 0.0;
    double x_min = 1.0;
    double ks_stat = 0.0;
    double p_value = 0.0;
    bool accepted = false;
    std::size_t n_tail = 0;  // samples >= x_min
};

// Continuous maximum-likelihood exponent alpha = 1 + n / sum ln(x_k/x_min).
double powerlaw_mle(std::span<const double> samples, double x_min);

// Full power-law fit. XMinMode::Fixed uses the given x_min; XMinMode::Scan
// chooses x_min among observed values by KS minimization. The bootstrap
// draws tail replicates from the fitted law (below-cutoff values are
// resampled empirically), refitting each replicate. Integer-valued inputs
// get integer-valued replicates so the null distribution carries the same
// granularity as the data.
PowerLawFit fit_powerlaw(std::span<const double> samples, XMinMode mode, double x_min = 1.0,
                         double alpha_sig = 0.05, int n_bootstrap = 1000,
                         std::uint64_t seed = 0x5eed);

struct HistogramRow {
    double lo = 0.0;
    double hi = 0.0;
    std::uint64_t count = 0;
    double density = 0.0;
};

std::vector<HistogramRow> histogram_linear(std::span<const double> samples, double bin_width);
std::vector<HistogramRow> histogram_log(std::span<const double> samples, double base);

void write_histogram_csv(const std::vector<HistogramRow>& rows,
                         const std::filesystem::path& path);

// Kolmogorov-Smirnov distance between sorted samples and a CDF.
double ks_distance_sorted(std::span<const double> sorted, double (*cdf)(double, double, double),
                          double p1, double p2);

}  // namespace trendsim
