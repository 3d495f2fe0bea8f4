#pragma once

#include <string>
#include <vector>

#include "trendsim/corpus.hpp"

namespace trendsim {

struct VerifyResult {
    std::string check;
    bool passed = false;
    std::string detail;  // first mismatching record on failure
};

// Brute-force recomputation of summary counters, hourly snapshot counts,
// per-topic cumulative tick sums and retweet profiles, compared exactly
// against the fast paths. Intended for corpora up to max_tweets.
std::vector<VerifyResult> verify_corpus(const Corpus& corpus, int top_k = 50,
                                        std::uint64_t max_tweets = 10'000);

bool all_passed(const std::vector<VerifyResult>& results);

}  // namespace trendsim
