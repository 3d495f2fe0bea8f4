#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace trendsim {

using UserId = std::uint64_t;
using TweetId = std::uint64_t;
using Keyword = std::string;

inline constexpr std::int64_t kTickMinutes = 10;
inline constexpr std::int64_t kHourMinutes = 60;
inline constexpr std::int64_t kTicksPerHour = kHourMinutes / kTickMinutes;

// Minutes since the simulation epoch (t = 0).
struct Timestamp {
    std::int64_t minutes = 0;

    constexpr std::int64_t tick() const { return minutes / kTickMinutes; }
    constexpr std::int64_t hour() const { return minutes / kHourMinutes; }

    friend constexpr auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

enum class TweetKind : std::uint8_t { Original, Retweet };

struct Tweet {
    TweetId id = 0;
    UserId author = 0;
    Timestamp at;
    Keyword keyword;
    TweetKind kind = TweetKind::Original;
    // Set when kind == Retweet. Retweets always point at the root original,
    // never at another retweet.
    TweetId original_tweet = 0;
    UserId original_author = 0;

    bool is_retweet() const { return kind == TweetKind::Retweet; }
};

enum class AccountType : std::uint8_t { Regular, Verified, Expert };

// Generator ground truth. Detection code must never read this; only the
// evaluation path (spamlens::detection_quality) may.
enum class TruthLabel : std::uint8_t { Organic, SpamRing, Unknown };

enum class AccountStatus : std::uint8_t { Active, Deleted };

struct UserRecord {
    UserId id = 0;
    AccountType account_type = AccountType::Regular;
    TruthLabel truth = TruthLabel::Organic;
    UserId ring_seed = 0;  // valid when truth == SpamRing
    AccountStatus status = AccountStatus::Active;
    Timestamp deleted_at;  // valid when status == Deleted

    bool is_deleted() const { return status == AccountStatus::Deleted; }
    bool is_spam() const { return truth == TruthLabel::SpamRing; }
};

const char* to_string(AccountType type);
const char* to_string(AccountStatus status);

}  // namespace trendsim
