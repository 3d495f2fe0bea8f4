#pragma once

#include <cstdint>
#include <filesystem>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "trendsim/types.hpp"

namespace trendsim {

struct CorpusSummary {
    std::uint64_t n_tweets = 0;
    std::uint64_t n_retweets = 0;
    std::uint64_t n_originals = 0;
    std::uint64_t n_users = 0;
    std::uint64_t n_retweeting_users = 0;  // users that authored >= 1 retweet
    std::uint64_t n_retweeted_users = 0;   // distinct original authors of retweeted posts

    friend bool operator==(const CorpusSummary&, const CorpusSummary&) = default;
};

// Canonical in-memory corpus. Single-writer append during ingestion; once
// ingestion ends the corpus is treated as immutable and may be read from any
// number of threads.
class Corpus {
  public:
    void add_user(UserRecord user);

    // Validates referential integrity up front: the author must exist and a
    // retweet must point at an existing original (never another retweet) with
    // matching keyword and author.
    void append_tweet(Tweet tweet);

    const std::vector<Tweet>& tweets() const { return tweets_; }
    const std::unordered_map<UserId, UserRecord>& users() const { return users_; }

    const UserRecord* find_user(UserId id) const;
    const Tweet* find_tweet(TweetId id) const;

    // Maintained counters; always equal to a from-scratch recount.
    CorpusSummary summary() const;

    std::uint64_t times_retweeted(TweetId original) const;

    // Moderation statuses: used by synthgen::apply_moderation and the
    // deletion-oracle detector.
    void set_user_status(UserId id, AccountStatus status, Timestamp at);
    void mark_moderated() { moderated_ = true; }
    bool moderated() const { return moderated_; }

    bool has_ground_truth() const { return !truth_unknown_; }

    // Users sorted by id (deterministic iteration for save/export).
    std::vector<const UserRecord*> users_by_id() const;

  private:
    friend Corpus load_corpus(const std::filesystem::path&);

    void index_tweet(std::size_t pos);

    std::unordered_map<UserId, UserRecord> users_;
    std::vector<Tweet> tweets_;  // nondecreasing (at, id)
    std::unordered_map<TweetId, std::size_t> tweet_index_;
    std::unordered_map<TweetId, std::uint64_t> retweet_counts_;
    std::unordered_set<UserId> retweeting_users_;
    std::unordered_set<UserId> retweeted_users_;
    std::uint64_t n_retweets_ = 0;
    bool moderated_ = false;
    bool truth_unknown_ = false;
};

// Line-delimited record format, one record per line:
//   U <id> <account_type> <truth> <status[:deleted_at]>
//   T <id> <author> <minutes> <keyword> O
//   T <id> <author> <minutes> <keyword> R <original_tweet> <original_author>
// Records may appear in any order; integrity is checked after the full read.
Corpus load_corpus(const std::filesystem::path& path);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

// JSON-lines emitter with the same fields, for interoperability.
void export_jsonl(const Corpus& corpus, const std::filesystem::path& path);

}  // namespace trendsim
