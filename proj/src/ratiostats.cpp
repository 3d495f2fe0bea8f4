#include "trendsim/ratiostats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "trendsim/errors.hpp"
#include "trendsim/rng.hpp"

namespace trendsim {

const char* to_string(TweetClass cls) {
    switch (cls) {
        case TweetClass::All: return "all";
        case TweetClass::Originals: return "originals";
        case TweetClass::Retweets: return "retweets";
    }
    return "all";
}

std::uint64_t TopicTimeline::cumulative(TweetClass cls, std::int64_t tick) const {
    auto idx = static_cast<std::size_t>(tick - 1);
    switch (cls) {
        case TweetClass::All: return cum_all.at(idx);
        case TweetClass::Originals: return cum_orig.at(idx);
        case TweetClass::Retweets: return cum_rt.at(idx);
    }
    return 0;
}

TopicTimeline build_timeline(std::span<const Tweet> tweets, Timestamp window_start,
                             std::int64_t n_ticks) {
    TopicTimeline tl;
    tl.window_start = window_start;
    if (!tweets.empty()) tl.keyword = tweets.front().keyword;

    std::int64_t ticks = n_ticks;
    if (ticks < 0) {
        ticks = 0;
        for (const Tweet& t : tweets) {
            std::int64_t k = (t.at.minutes - window_start.minutes) / kTickMinutes + 1;
            ticks = std::max(ticks, k);
        }
    }
    tl.orig.assign(static_cast<std::size_t>(ticks), 0);
    tl.rt.assign(static_cast<std::size_t>(ticks), 0);
    for (const Tweet& t : tweets) {
        std::int64_t offset = t.at.minutes - window_start.minutes;
        if (offset < 0) fail(Errc::BadFrame, "tweet precedes the window start");
        std::int64_t k = offset / kTickMinutes;
        if (k >= ticks) continue;
        auto idx = static_cast<std::size_t>(k);
        if (t.is_retweet())
            ++tl.rt[idx];
        else
            ++tl.orig[idx];
    }
    tl.cum_all.resize(tl.orig.size());
    tl.cum_orig.resize(tl.orig.size());
    tl.cum_rt.resize(tl.orig.size());
    std::uint64_t co = 0, cr = 0;
    for (std::size_t k = 0; k < tl.orig.size(); ++k) {
        co += tl.orig[k];
        cr += tl.rt[k];
        tl.cum_orig[k] = co;
        tl.cum_rt[k] = cr;
        tl.cum_all[k] = co + cr;
    }
    return tl;
}

RatioSampleSet ratio_samples(const std::vector<TopicTimeline>& timelines, int i, int j,
                             TweetClass cls) {
    if (j < 1 || i <= j)
        fail(Errc::BadFrame, "frame (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") requires i > j >= 1");
    RatioSampleSet set;
    set.i = i;
    set.j = j;
    set.cls = cls;
    for (const auto& tl : timelines) {
        if (tl.ticks() < i) {
            ++set.skipped;
            continue;
        }
        std::uint64_t denom = tl.cumulative(cls, j);
        if (denom == 0) {
            ++set.skipped;
            continue;
        }
        std::uint64_t num = tl.cumulative(cls, i);
        set.samples.push_back(static_cast<double>(num) / static_cast<double>(denom));
    }
    return set;
}

// --- goodness of fit ---------------------------------------------------------

namespace {

double normal_cdf(double x, double mu, double sigma) {
    return 0.5 * std::erfc(-(x - mu) / (sigma * std::sqrt(2.0)));
}

double powerlaw_cdf(double x, double x_min, double alpha) {
    if (x < x_min) return 0.0;
    return 1.0 - std::pow(x / x_min, 1.0 - alpha);
}

struct NormalParams {
    double mu = 0.0;
    double sigma = 0.0;
};

NormalParams fit_normal(std::span<const double> xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size());  // MLE variance
    return {mean, std::sqrt(var)};
}

bool all_integral(std::span<const double> xs) {
    for (double x : xs)
        if (x != std::floor(x)) return false;
    return true;
}

}  // namespace

double ks_distance_sorted(std::span<const double> sorted, double (*cdf)(double, double, double),
                          double p1, double p2) {
    double d = 0.0;
    auto n = static_cast<double>(sorted.size());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        double f = cdf(sorted[k], p1, p2);
        double lo = static_cast<double>(k) / n;
        double hi = static_cast<double>(k + 1) / n;
        d = std::max(d, std::max(f - lo, hi - f));
    }
    return d;
}

LogNormalFit fit_lognormal(std::span<const double> samples, double alpha, int n_bootstrap,
                           std::uint64_t seed) {
    if (samples.size() < 20)
        fail(Errc::TooFewSamples, "need >= 20 samples, got " + std::to_string(samples.size()));
    std::vector<double> logs;
    logs.reserve(samples.size());
    for (double x : samples) {
        if (!(x > 0.0)) fail(Errc::DegenerateSamples, "non-positive sample");
        logs.push_back(std::log(x));
    }
    std::sort(logs.begin(), logs.end());
    auto [mu, sigma] = fit_normal(logs);
    if (sigma <= 0.0) fail(Errc::DegenerateSamples, "all samples equal");

    LogNormalFit fit;
    fit.n = samples.size();
    fit.mu = mu;
    fit.sigma = sigma;
    fit.ks_stat = ks_distance_sorted(logs, normal_cdf, mu, sigma);

    auto engine = make_engine(seed, "lognormal-bootstrap");
    std::normal_distribution<double> normal(mu, sigma);
    std::vector<double> replicate(samples.size());
    int exceed = 0;
    for (int b = 0; b < n_bootstrap; ++b) {
        for (double& x : replicate) x = normal(engine);
        std::sort(replicate.begin(), replicate.end());
        auto [bmu, bsigma] = fit_normal(replicate);
        if (bsigma <= 0.0) bsigma = 1e-300;
        double d = ks_distance_sorted(replicate, normal_cdf, bmu, bsigma);
        if (d >= fit.ks_stat) ++exceed;
    }
    fit.p_value = n_bootstrap > 0 ? static_cast<double>(exceed) / n_bootstrap : 1.0;
    fit.accepted = fit.p_value >= alpha;
    return fit;
}

double powerlaw_mle(std::span<const double> samples, double x_min) {
    double log_sum = 0.0;
    std::size_t n = 0;
    for (double x : samples) {
        if (x < x_min) continue;
        log_sum += std::log(x / x_min);
        ++n;
    }
    if (n == 0) fail(Errc::AllBelowCutoff, "no samples at or above x_min");
    if (log_sum <= 0.0) fail(Errc::AllBelowCutoff, "all tail samples equal x_min");
    return 1.0 + static_cast<double>(n) / log_sum;
}

namespace {

struct TailFit {
    double alpha = 0.0;
    double x_min = 0.0;
    double ks = 0.0;
    std::size_t n_tail = 0;
};

// Fits sorted data. In Scan mode x_min candidates are distinct observed
// values that leave at least min_tail samples in the tail, thinned to a
// bounded count so the scan stays cheap inside the bootstrap loop.
TailFit fit_tail_sorted(const std::vector<double>& sorted, XMinMode mode, double fixed_x_min,
                        std::size_t min_tail) {
    const std::size_t n = sorted.size();
    std::vector<double> suffix_log(n + 1, 0.0);
    for (std::size_t k = n; k-- > 0;) suffix_log[k] = suffix_log[k + 1] + std::log(sorted[k]);

    std::vector<double> candidates;
    if (mode == XMinMode::Fixed) {
        candidates.push_back(fixed_x_min);
    } else {
        std::vector<double> distinct;
        for (std::size_t k = 0; k < n; ++k) {
            if (n - k < min_tail) break;
            if (k == 0 || sorted[k] != sorted[k - 1]) distinct.push_back(sorted[k]);
        }
        if (distinct.empty()) distinct.push_back(sorted.front());
        constexpr std::size_t kMaxCandidates = 48;
        if (distinct.size() <= kMaxCandidates) {
            candidates = std::move(distinct);
        } else {
            for (std::size_t k = 0; k < kMaxCandidates; ++k)
                candidates.push_back(distinct[k * (distinct.size() - 1) / (kMaxCandidates - 1)]);
        }
    }

    TailFit best;
    bool have = false;
    for (double xm : candidates) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), xm);
        auto first = static_cast<std::size_t>(it - sorted.begin());
        std::size_t tail = n - first;
        if (tail == 0) continue;
        double log_sum = suffix_log[first] - static_cast<double>(tail) * std::log(xm);
        if (log_sum <= 0.0) continue;
        double a = 1.0 + static_cast<double>(tail) / log_sum;
        double d = ks_distance_sorted(std::span<const double>(sorted.data() + first, tail),
                                      powerlaw_cdf, xm, a);
        if (!have || d < best.ks) {
            best = {a, xm, d, tail};
            have = true;
        }
    }
    if (!have) fail(Errc::AllBelowCutoff, "no usable x_min candidate");
    return best;
}

}  // namespace

PowerLawFit fit_powerlaw(std::span<const double> samples, XMinMode mode, double x_min,
                         double alpha_sig, int n_bootstrap, std::uint64_t seed) {
    if (samples.size() < 50)
        fail(Errc::TooFewSamples, "need >= 50 samples, got " + std::to_string(samples.size()));
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 1.0) fail(Errc::ConfigError, "power-law samples must be >= 1");

    const std::size_t min_tail = 50;
    TailFit observed = fit_tail_sorted(sorted, mode, x_min, min_tail);

    PowerLawFit fit;
    fit.alpha = observed.alpha;
    fit.x_min = observed.x_min;
    fit.ks_stat = observed.ks;
    fit.n_tail = observed.n_tail;

    if (n_bootstrap <= 0) {
        fit.p_value = 1.0;
        fit.accepted = true;
        return fit;
    }

    // Semiparametric bootstrap: below-cutoff values are resampled from the
    // data, tail values are drawn from the fitted law (floored to integers
    // when the data is integral), then the whole replicate is refitted.
    const bool integral = all_integral(sorted);
    auto head_end = std::lower_bound(sorted.begin(), sorted.end(), observed.x_min);
    std::vector<double> head(sorted.begin(), head_end);
    double p_head = static_cast<double>(head.size()) / static_cast<double>(sorted.size());

    auto engine = make_engine(seed, "powerlaw-bootstrap");
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> replicate(sorted.size());
    int exceed = 0;
    for (int b = 0; b < n_bootstrap; ++b) {
        for (double& x : replicate) {
            if (!head.empty() && unif(engine) < p_head) {
                x = head[static_cast<std::size_t>(unif(engine) * head.size()) % head.size()];
            } else {
                double u = 1.0 - unif(engine);  // in (0, 1]
                x = observed.x_min * std::pow(u, -1.0 / (observed.alpha - 1.0));
                if (integral) x = std::max(std::floor(x), std::floor(observed.x_min));
            }
        }
        std::sort(replicate.begin(), replicate.end());
        TailFit rf;
        try {
            rf = fit_tail_sorted(replicate, mode, observed.x_min, min_tail);
        } catch (const Error&) {
            ++exceed;  // degenerate replicate counts against the observed fit
            continue;
        }
        if (rf.ks >= fit.ks_stat) ++exceed;
    }
    fit.p_value = static_cast<double>(exceed) / n_bootstrap;
    fit.accepted = fit.p_value >= alpha_sig;
    return fit;
}

// --- histograms ---------------------------------------------------------------

std::vector<HistogramRow> histogram_linear(std::span<const double> samples, double bin_width) {
    if (samples.empty()) fail(Errc::EmptyInput, "no samples to bin");
    if (bin_width <= 0.0) fail(Errc::ConfigError, "bin width must be positive");
    auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    auto first_bin = static_cast<std::int64_t>(std::floor(*lo_it / bin_width));
    auto last_bin = static_cast<std::int64_t>(std::floor(*hi_it / bin_width));
    std::vector<HistogramRow> rows(static_cast<std::size_t>(last_bin - first_bin + 1));
    for (std::size_t k = 0; k < rows.size(); ++k) {
        rows[k].lo = static_cast<double>(first_bin + static_cast<std::int64_t>(k)) * bin_width;
        rows[k].hi = rows[k].lo + bin_width;
    }
    for (double x : samples) {
        auto bin = static_cast<std::size_t>(static_cast<std::int64_t>(std::floor(x / bin_width)) -
                                            first_bin);
        ++rows[bin].count;
    }
    double n = static_cast<double>(samples.size());
    for (auto& row : rows) row.density = static_cast<double>(row.count) / (n * bin_width);
    return rows;
}

std::vector<HistogramRow> histogram_log(std::span<const double> samples, double base) {
    if (samples.empty()) fail(Errc::EmptyInput, "no samples to bin");
    if (base <= 1.0) fail(Errc::ConfigError, "log base must exceed 1");
    auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    if (*lo_it <= 0.0) fail(Errc::ConfigError, "log binning needs positive samples");
    auto bin_of = [&](double x) {
        return static_cast<std::int64_t>(std::floor(std::log(x) / std::log(base) + 1e-12));
    };
    std::int64_t first_bin = bin_of(*lo_it);
    std::int64_t last_bin = bin_of(*hi_it);
    std::vector<HistogramRow> rows(static_cast<std::size_t>(last_bin - first_bin + 1));
    for (std::size_t k = 0; k < rows.size(); ++k) {
        rows[k].lo = std::pow(base, static_cast<double>(first_bin + static_cast<std::int64_t>(k)));
        rows[k].hi = rows[k].lo * base;
    }
    for (double x : samples) ++rows[static_cast<std::size_t>(bin_of(x) - first_bin)].count;
    double n = static_cast<double>(samples.size());
    for (auto& row : rows)
        row.density = static_cast<double>(row.count) / (n * (row.hi - row.lo));
    return rows;
}

void write_histogram_csv(const std::vector<HistogramRow>& rows,
                         const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::FileError, "cannot write " + path.string());
    out << "lo,hi,count,density\n";
    out.precision(17);
    for (const auto& row : rows)
        out << row.lo << ',' << row.hi << ',' << row.count << ',' << row.density << '\n';
}

}  // namespace trendsim
