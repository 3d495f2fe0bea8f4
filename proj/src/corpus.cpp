#include "trendsim/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "trendsim/errors.hpp"

namespace trendsim {

namespace {

bool tweet_order_lt(const Tweet& a, const Tweet& b) {
    if (a.at.minutes != b.at.minutes) return a.at.minutes < b.at.minutes;
    return a.id < b.id;
}

}  // namespace

void Corpus::add_user(UserRecord user) {
    if (users_.contains(user.id))
        fail(Errc::DuplicateId, "user " + std::to_string(user.id) + " already exists");
    if (user.truth == TruthLabel::Unknown) truth_unknown_ = true;
    if (user.status == AccountStatus::Deleted) moderated_ = true;
    users_.emplace(user.id, user);
}

const UserRecord* Corpus::find_user(UserId id) const {
    auto it = users_.find(id);
    return it == users_.end() ? nullptr : &it->second;
}

const Tweet* Corpus::find_tweet(TweetId id) const {
    auto it = tweet_index_.find(id);
    return it == tweet_index_.end() ? nullptr : &tweets_[it->second];
}

void Corpus::index_tweet(std::size_t pos) {
    const Tweet& t = tweets_[pos];
    tweet_index_[t.id] = pos;
    if (t.is_retweet()) {
        ++n_retweets_;
        ++retweet_counts_[t.original_tweet];
        retweeting_users_.insert(t.author);
        retweeted_users_.insert(t.original_author);
    }
}

void Corpus::append_tweet(Tweet tweet) {
    if (tweet.at.minutes < 0)
        fail(Errc::IntegrityError, "tweet " + std::to_string(tweet.id) + " has negative timestamp");
    if (tweet_index_.contains(tweet.id))
        fail(Errc::DuplicateId, "tweet " + std::to_string(tweet.id) + " already exists");
    if (!users_.contains(tweet.author))
        fail(Errc::UnknownUser, "author " + std::to_string(tweet.author));
    if (tweet.is_retweet()) {
        const Tweet* original = find_tweet(tweet.original_tweet);
        if (!original)
            fail(Errc::UnknownOriginal, "original " + std::to_string(tweet.original_tweet));
        if (original->is_retweet())
            fail(Errc::RetweetOfRetweet,
                 "tweet " + std::to_string(tweet.id) + " retweets a retweet");
        if (original->author != tweet.original_author)
            fail(Errc::AuthorMismatch, "tweet " + std::to_string(tweet.id) +
                                           " names the wrong original author");
        if (original->keyword != tweet.keyword)
            fail(Errc::KeywordMismatch,
                 "retweet " + std::to_string(tweet.id) + " changes the keyword");
    }

    if (tweets_.empty() || !tweet_order_lt(tweet, tweets_.back())) {
        tweets_.push_back(std::move(tweet));
        index_tweet(tweets_.size() - 1);
        return;
    }
    // Out-of-order append: insert at the sorted position and reindex the tail.
    auto it = std::upper_bound(tweets_.begin(), tweets_.end(), tweet, tweet_order_lt);
    std::size_t pos = static_cast<std::size_t>(it - tweets_.begin());
    tweets_.insert(it, std::move(tweet));
    index_tweet(pos);
    for (std::size_t k = pos; k < tweets_.size(); ++k) tweet_index_[tweets_[k].id] = k;
}

CorpusSummary Corpus::summary() const {
    CorpusSummary s;
    s.n_tweets = tweets_.size();
    s.n_retweets = n_retweets_;
    s.n_originals = s.n_tweets - s.n_retweets;
    s.n_users = users_.size();
    s.n_retweeting_users = retweeting_users_.size();
    s.n_retweeted_users = retweeted_users_.size();
    return s;
}

std::uint64_t Corpus::times_retweeted(TweetId original) const {
    auto it = retweet_counts_.find(original);
    return it == retweet_counts_.end() ? 0 : it->second;
}

void Corpus::set_user_status(UserId id, AccountStatus status, Timestamp at) {
    auto it = users_.find(id);
    if (it == users_.end()) fail(Errc::UnknownUser, "user " + std::to_string(id));
    it->second.status = status;
    it->second.deleted_at = status == AccountStatus::Deleted ? at : Timestamp{};
}

std::vector<const UserRecord*> Corpus::users_by_id() const {
    std::vector<const UserRecord*> out;
    out.reserve(users_.size());
    for (const auto& [id, rec] : users_) out.push_back(&rec);
    std::sort(out.begin(), out.end(),
              [](const UserRecord* a, const UserRecord* b) { return a->id < b->id; });
    return out;
}

// --- file format ------------------------------------------------------------

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::uint64_t parse_u64(const std::string& tok, std::size_t line_no) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        fail(Errc::ParseError, "line " + std::to_string(line_no) + ": bad integer '" + tok + "'");
    return v;
}

AccountType parse_account_type(const std::string& tok, std::size_t line_no) {
    if (tok == "regular") return AccountType::Regular;
    if (tok == "verified") return AccountType::Verified;
    if (tok == "expert") return AccountType::Expert;
    fail(Errc::ParseError, "line " + std::to_string(line_no) + ": bad account type '" + tok + "'");
}

std::string truth_token(const UserRecord& u) {
    switch (u.truth) {
        case TruthLabel::Organic: return "organic";
        case TruthLabel::SpamRing: return "ring:" + std::to_string(u.ring_seed);
        case TruthLabel::Unknown: return "unknown";
    }
    return "organic";
}

std::string status_token(const UserRecord& u) {
    if (u.status == AccountStatus::Deleted)
        return "deleted:" + std::to_string(u.deleted_at.minutes);
    return "active";
}

}  // namespace

Corpus load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::FileError, "cannot open " + path.string());

    std::vector<UserRecord> users;
    std::vector<Tweet> tweets;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto tok = split_ws(line);
        if (tok.empty()) continue;
        if (tok[0] == "U") {
            if (tok.size() != 5)
                fail(Errc::ParseError, "line " + std::to_string(line_no) + ": bad user record");
            UserRecord u;
            u.id = parse_u64(tok[1], line_no);
            u.account_type = parse_account_type(tok[2], line_no);
            if (tok[3] == "organic") {
                u.truth = TruthLabel::Organic;
            } else if (tok[3] == "unknown") {
                u.truth = TruthLabel::Unknown;
            } else if (tok[3].starts_with("ring:")) {
                u.truth = TruthLabel::SpamRing;
                u.ring_seed = parse_u64(tok[3].substr(5), line_no);
            } else {
                fail(Errc::ParseError,
                     "line " + std::to_string(line_no) + ": bad truth label '" + tok[3] + "'");
            }
            if (tok[4] == "active") {
                u.status = AccountStatus::Active;
            } else if (tok[4].starts_with("deleted:")) {
                u.status = AccountStatus::Deleted;
                u.deleted_at.minutes =
                    static_cast<std::int64_t>(parse_u64(tok[4].substr(8), line_no));
            } else {
                fail(Errc::ParseError,
                     "line " + std::to_string(line_no) + ": bad status '" + tok[4] + "'");
            }
            users.push_back(u);
        } else if (tok[0] == "T") {
            if (tok.size() != 6 && tok.size() != 8)
                fail(Errc::ParseError, "line " + std::to_string(line_no) + ": bad tweet record");
            Tweet t;
            t.id = parse_u64(tok[1], line_no);
            t.author = parse_u64(tok[2], line_no);
            t.at.minutes = static_cast<std::int64_t>(parse_u64(tok[3], line_no));
            t.keyword = tok[4];
            if (tok[5] == "O" && tok.size() == 6) {
                t.kind = TweetKind::Original;
            } else if (tok[5] == "R" && tok.size() == 8) {
                t.kind = TweetKind::Retweet;
                t.original_tweet = parse_u64(tok[6], line_no);
                t.original_author = parse_u64(tok[7], line_no);
            } else {
                fail(Errc::ParseError, "line " + std::to_string(line_no) + ": bad tweet kind");
            }
            tweets.push_back(std::move(t));
        } else {
            fail(Errc::ParseError,
                 "line " + std::to_string(line_no) + ": unknown record '" + tok[0] + "'");
        }
    }

    // Integrity is validated after the full read so records may appear in any
    // order within the file.
    Corpus corpus;
    for (auto& u : users) corpus.add_user(u);
    for (const auto& [id, u] : corpus.users_) {
        if (u.truth == TruthLabel::SpamRing && (!corpus.users_.contains(u.ring_seed) || u.ring_seed == id))
            fail(Errc::IntegrityError, "user " + std::to_string(id) + " has a bad ring seed");
    }
    std::sort(tweets.begin(), tweets.end(), tweet_order_lt);
    corpus.tweets_.reserve(tweets.size());
    for (auto& t : tweets) {
        try {
            corpus.append_tweet(std::move(t));
        } catch (const Error& e) {
            if (e.code() == Errc::FileError || e.code() == Errc::ParseError) throw;
            fail(Errc::IntegrityError, e.what());
        }
    }
    return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::FileError, "cannot write " + path.string());
    for (const UserRecord* u : corpus.users_by_id()) {
        out << "U " << u->id << ' ' << to_string(u->account_type) << ' ' << truth_token(*u) << ' '
            << status_token(*u) << '\n';
    }
    for (const Tweet& t : corpus.tweets()) {
        out << "T " << t.id << ' ' << t.author << ' ' << t.at.minutes << ' ' << t.keyword;
        if (t.is_retweet())
            out << " R " << t.original_tweet << ' ' << t.original_author << '\n';
        else
            out << " O\n";
    }
    if (!out) fail(Errc::FileError, "write failed for " + path.string());
}

void export_jsonl(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::FileError, "cannot write " + path.string());
    for (const UserRecord* u : corpus.users_by_id()) {
        nlohmann::json j{{"type", "user"},
                         {"id", u->id},
                         {"account_type", to_string(u->account_type)},
                         {"truth", truth_token(*u)},
                         {"status", to_string(u->status)}};
        if (u->status == AccountStatus::Deleted) j["deleted_at"] = u->deleted_at.minutes;
        out << j.dump() << '\n';
    }
    for (const Tweet& t : corpus.tweets()) {
        nlohmann::json j{{"type", "tweet"},
                         {"id", t.id},
                         {"author", t.author},
                         {"minutes", t.at.minutes},
                         {"keyword", t.keyword},
                         {"kind", t.is_retweet() ? "retweet" : "original"}};
        if (t.is_retweet()) {
            j["original_tweet"] = t.original_tweet;
            j["original_author"] = t.original_author;
        }
        out << j.dump() << '\n';
    }
}

}  // namespace trendsim
