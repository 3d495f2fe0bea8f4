#include "trendsim/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "trendsim/errors.hpp"
#include "trendsim/rng.hpp"
#include "trendsim/spamlens.hpp"

namespace trendsim {

int ratio_bucket(double ur_ratio) {
    auto f = static_cast<std::int64_t>(std::floor(ur_ratio));
    if (f >= 30) return 0;
    if (f >= 20) return 1;
    if (f >= 11) return 2;
    if (f < 1) f = 1;
    return 3 + static_cast<int>(10 - f);  // 10 -> 3 ... 1 -> 12
}

const char* ratio_bucket_label(int bucket) {
    static const char* labels[kNumRatioBuckets] = {">=30", "20-29", "11-19", "10", "9", "8", "7",
                                                   "6",    "5",     "4",     "3",  "2", "1"};
    return labels[bucket];
}

void GenConfig::validate() const {
    auto check_frac = [](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0)) fail(Errc::ConfigError, std::string(name) + " not in [0,1]");
    };
    if (n_users < 2) fail(Errc::ConfigError, "n_users must be >= 2");
    if (sim_hours < 1) fail(Errc::ConfigError, "sim_hours must be >= 1");
    if (!(topic_birth_rate >= 0.0)) fail(Errc::ConfigError, "topic_birth_rate must be >= 0");
    if (!(attract_min > 0.0 && attract_max >= attract_min))
        fail(Errc::ConfigError, "attractiveness range must satisfy 0 < min <= max");
    if (!(novelty_tau > 0.0)) fail(Errc::ConfigError, "novelty_tau must be positive");
    if (!(growth_sigma > 0.0)) fail(Errc::ConfigError, "growth_sigma must be positive");
    check_frac(p_retweet, "p_retweet");
    check_frac(verified_fraction, "verified_fraction");
    check_frac(expert_fraction, "expert_fraction");
    if (verified_fraction + expert_fraction > 1.0)
        fail(Errc::ConfigError, "verified_fraction + expert_fraction exceeds 1");
    check_frac(retweeter_fraction, "retweeter_fraction");
    check_frac(spam_fraction, "spam_fraction");
    if (!(ring_size_mean >= 1.0)) fail(Errc::ConfigError, "ring_size_mean must be >= 1");
    check_frac(verified_fraction_seeds, "verified_fraction_seeds");
    check_frac(camouflage_fraction, "camouflage_fraction");
    if (!(burst_tick_p > 0.0 && burst_tick_p <= 1.0))
        fail(Errc::ConfigError, "burst_tick_p must be in (0,1]");
    if (!(spam_intensity >= 0.0) || !(jack_intensity >= 0.0) || !(jack_rate >= 0.0) ||
        !(seed_post_rate >= 0.0) || !(campaign_hours > 0.0) || !(campaign_interval_hours > 0.0))
        fail(Errc::ConfigError, "spam cadence fields must be non-negative");
    if (top_k < 1) fail(Errc::ConfigError, "top_k must be >= 1");
}

namespace {

struct Ring {
    UserId seed = 0;
    std::vector<UserId> members;
    std::vector<double> volumes;  // per-member retweet volume, sums to members.size()
    std::vector<UserId> camouflage;
    std::int64_t next_campaign_hour = 0;
};

struct Topic {
    Keyword keyword;
    std::int64_t birth_tick = 0;
    double attract = 0.0;
    bool spam = false;  // born as a ring campaign
    std::uint32_t ring = 0;
    std::int64_t campaign_end_tick = 0;
    double organic_cum = 0.0;  // N_q over the organic channel (ring retweets excluded)
    bool alive = true;
    std::int64_t idle_ticks = 0;
    std::uint64_t total_tweets = 0;

    // originals, for preferential retweet targeting (weight = 1 + times retweeted)
    std::vector<TweetId> orig_ids;
    std::vector<UserId> orig_authors;
    std::vector<std::uint32_t> orig_weights;
    std::uint64_t weight_sum = 0;

    void add_original(TweetId id, UserId author) {
        orig_ids.push_back(id);
        orig_authors.push_back(author);
        orig_weights.push_back(1);
        ++weight_sum;
    }
};

// One tweet-to-be inside a tick. Ids are assigned after the tick's events are
// sorted by minute, so the corpus receives tweets in (at, id) order.
struct Event {
    std::int64_t minute = 0;
    std::uint32_t seq = 0;
    std::uint32_t topic = 0;
    UserId author = 0;
    enum class Kind : std::uint8_t { Original, SeedPost, OrganicRetweet, RingRetweet } kind;
    std::uint32_t ring = 0;         // SeedPost: which ring bursts in response
    double burst_total = 0.0;       // SeedPost: expected ring retweets
    std::uint32_t target_orig = 0;  // RingRetweet: index into topic originals
};

struct WeightedPool {
    std::vector<UserId> users;
    std::discrete_distribution<std::size_t> pick;

    UserId draw(std::mt19937_64& engine) { return users[pick(engine)]; }
    bool empty() const { return users.empty(); }
};

Keyword make_keyword(std::size_t seq) {
    std::string s = std::to_string(seq);
    if (s.size() < 6) s.insert(0, 6 - s.size(), '0');
    return "k" + s;
}

}  // namespace

Corpus generate(const GenConfig& cfg) {
    cfg.validate();
    const std::int64_t sim_ticks = cfg.sim_hours * kTicksPerHour;

    Corpus corpus;

    // --- population -----------------------------------------------------------
    auto roles_engine = make_engine(cfg.seed, "roles");
    std::vector<UserId> perm(cfg.n_users);
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<UserId>(k);
    std::shuffle(perm.begin(), perm.end(), roles_engine);

    const auto n_spam = static_cast<std::size_t>(
        std::llround(cfg.spam_fraction * static_cast<double>(cfg.n_users)));
    std::vector<Ring> rings;
    std::size_t cursor = 0;
    {
        double p_geo = std::min(1.0, 1.0 / cfg.ring_size_mean);
        std::geometric_distribution<int> extra(p_geo);
        while (cursor < n_spam) {
            std::size_t size = 1 + static_cast<std::size_t>(extra(roles_engine));
            size = std::min(size, n_spam - cursor);
            Ring ring;
            ring.members.assign(perm.begin() + static_cast<std::ptrdiff_t>(cursor),
                                perm.begin() + static_cast<std::ptrdiff_t>(cursor + size));
            cursor += size;
            rings.push_back(std::move(ring));
        }
    }
    if (cursor + rings.size() > cfg.n_users)
        fail(Errc::ConfigError, "not enough users for spam rings and seeds");
    for (auto& ring : rings) ring.seed = perm[cursor++];

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto& ring : rings) {
        ring.volumes.resize(ring.members.size());
        double sum = 0.0;
        for (std::size_t m = 0; m < ring.members.size(); ++m) {
            bool camo = unit(roles_engine) < cfg.camouflage_fraction;
            double v = std::exp(cfg.member_volume_sigma * gauss(roles_engine));
            if (camo) {
                v *= 0.15;  // camouflage members keep their own-ring volume low
                ring.camouflage.push_back(ring.members[m]);
            }
            ring.volumes[m] = v;
            sum += v;
        }
        for (double& v : ring.volumes) v *= static_cast<double>(ring.members.size()) / sum;
    }

    {
        std::vector<std::uint8_t> is_member(cfg.n_users, 0), is_seed(cfg.n_users, 0);
        std::vector<UserId> seed_of(cfg.n_users, 0);
        for (const auto& ring : rings) {
            is_seed[ring.seed] = 1;
            for (UserId m : ring.members) {
                is_member[m] = 1;
                seed_of[m] = ring.seed;
            }
        }
        for (UserId id = 0; id < cfg.n_users; ++id) {
            UserRecord u;
            u.id = id;
            if (is_member[id]) {
                u.truth = TruthLabel::SpamRing;
                u.ring_seed = seed_of[id];
            } else if (is_seed[id]) {
                u.account_type = unit(roles_engine) < cfg.verified_fraction_seeds
                                     ? AccountType::Verified
                                     : AccountType::Regular;
            } else {
                double r = unit(roles_engine);
                u.account_type = r < cfg.verified_fraction ? AccountType::Verified
                                 : r < cfg.verified_fraction + cfg.expert_fraction
                                     ? AccountType::Expert
                                     : AccountType::Regular;
            }
            corpus.add_user(u);
        }
    }

    WeightedPool retweeters, posters;
    {
        std::vector<UserId> organic(perm.begin() + static_cast<std::ptrdiff_t>(cursor), perm.end());
        auto n_retweeters = std::min<std::size_t>(
            organic.size(), static_cast<std::size_t>(std::llround(
                                cfg.retweeter_fraction * static_cast<double>(cfg.n_users))));
        retweeters.users.assign(organic.begin(),
                                organic.begin() + static_cast<std::ptrdiff_t>(n_retweeters));
        std::vector<double> w(retweeters.users.size());
        for (double& x : w) x = std::exp(cfg.activity_sigma * gauss(roles_engine));
        if (!w.empty()) retweeters.pick = std::discrete_distribution<std::size_t>(w.begin(), w.end());

        posters.users = std::move(organic);
        std::vector<double> pw(posters.users.size());
        for (double& x : pw) x = std::exp(cfg.poster_sigma * gauss(roles_engine));
        if (!pw.empty()) posters.pick = std::discrete_distribution<std::size_t>(pw.begin(), pw.end());
    }
    if (posters.empty()) fail(Errc::ConfigError, "no organic users left to post");

    // --- simulation -------------------------------------------------------------
    auto engine = make_engine(cfg.seed, "ticks");
    std::vector<Topic> topics;
    std::vector<std::uint32_t> alive_topics;
    std::unordered_map<std::int64_t, std::vector<Event>> scheduled;  // tick -> future events
    std::deque<std::pair<std::uint32_t, std::uint32_t>> recent_seed_posts;  // (topic, orig idx)
    std::unordered_map<std::uint32_t, std::uint64_t> hour_counts;
    std::vector<std::uint32_t> trending_now;

    std::exponential_distribution<double> campaign_gap(1.0 / cfg.campaign_interval_hours);
    for (auto& ring : rings)
        ring.next_campaign_hour = static_cast<std::int64_t>(campaign_gap(engine));

    TweetId next_tweet_id = 0;
    std::uint32_t event_seq = 0;
    std::vector<Event> events;

    const double camo_rate_per_tick = [&] {
        std::size_t n_camo = 0;
        for (const auto& ring : rings) n_camo += ring.camouflage.size();
        return sim_ticks > 0 ? cfg.camouflage_per_member * static_cast<double>(n_camo) /
                                   static_cast<double>(sim_ticks)
                             : 0.0;
    }();

    auto spawn_topic = [&](std::int64_t birth_tick, bool spam, std::uint32_t ring_idx,
                           double campaign_len_hours) {
        Topic t;
        t.keyword = make_keyword(topics.size());
        t.birth_tick = birth_tick;
        t.attract = std::exp(std::log(cfg.attract_min) +
                             unit(engine) * (std::log(cfg.attract_max) - std::log(cfg.attract_min)));
        t.spam = spam;
        t.ring = ring_idx;
        t.campaign_end_tick =
            spam ? birth_tick + static_cast<std::int64_t>(std::llround(campaign_len_hours *
                                                                       kTicksPerHour))
                 : 0;
        t.organic_cum = 1.0;  // the founding original
        topics.push_back(std::move(t));
        alive_topics.push_back(static_cast<std::uint32_t>(topics.size() - 1));
        return static_cast<std::uint32_t>(topics.size() - 1);
    };

    auto schedule_event = [&](Event ev) {
        ev.seq = event_seq++;
        scheduled[ev.minute / kTickMinutes].push_back(ev);
    };

    // Ring response to a seed post: member retweets spread geometrically over
    // the following ticks.
    auto schedule_burst = [&](std::int64_t tick, std::uint32_t topic_idx, std::uint32_t orig_idx,
                              std::uint32_t ring_idx, double expected_total) {
        const Ring& ring = rings[ring_idx];
        if (ring.members.empty() || expected_total <= 0.0) return;
        std::poisson_distribution<int> total_dist(expected_total);
        int total = total_dist(engine);
        std::discrete_distribution<std::size_t> member_pick(ring.volumes.begin(),
                                                            ring.volumes.end());
        std::geometric_distribution<int> delay(cfg.burst_tick_p);
        for (int k = 0; k < total; ++k) {
            std::int64_t target_tick = tick + 1 + delay(engine);
            if (target_tick >= sim_ticks) continue;
            std::int64_t minute = target_tick * kTickMinutes +
                                  static_cast<std::int64_t>(unit(engine) * kTickMinutes);
            schedule_event({minute, 0, topic_idx, ring.members[member_pick(engine)],
                            Event::Kind::RingRetweet, 0, 0.0, orig_idx});
        }
    };

    std::int64_t hour = -1;
    for (std::int64_t tick = 0; tick < sim_ticks; ++tick) {
        const std::int64_t tick_start = tick * kTickMinutes;
        auto rand_minute = [&] {
            return tick_start + static_cast<std::int64_t>(unit(engine) * kTickMinutes);
        };
        auto rand_minute_in_hour = [&](std::int64_t h) {
            return h * kHourMinutes + static_cast<std::int64_t>(unit(engine) * kHourMinutes);
        };

        if (tick % kTicksPerHour == 0) {
            ++hour;
            // close out the previous hour's internal trending list
            trending_now.clear();
            std::vector<std::pair<std::uint64_t, std::uint32_t>> ranked;
            ranked.reserve(hour_counts.size());
            for (const auto& [topic_idx, count] : hour_counts) ranked.push_back({count, topic_idx});
            std::sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first > b.first;
                return topics[a.second].keyword < topics[b.second].keyword;
            });
            if (ranked.size() > cfg.top_k) ranked.resize(cfg.top_k);
            for (const auto& [count, topic_idx] : ranked) trending_now.push_back(topic_idx);
            hour_counts.clear();

            // organic topic births
            if (cfg.topic_birth_rate > 0.0) {
                std::poisson_distribution<int> births(cfg.topic_birth_rate);
                int n = births(engine);
                for (int k = 0; k < n; ++k) {
                    std::int64_t minute = rand_minute_in_hour(hour);
                    std::uint32_t idx = spawn_topic(minute / kTickMinutes, false, 0, 0.0);
                    schedule_event({minute, 0, idx, posters.draw(engine), Event::Kind::Original,
                                    0, 0.0, 0});
                }
            }

            // ring campaigns: found a fresh topic and ignite it
            for (std::size_t r = 0; r < rings.size(); ++r) {
                Ring& ring = rings[r];
                while (ring.next_campaign_hour <= hour) {
                    std::exponential_distribution<double> len(1.0 / cfg.campaign_hours);
                    double campaign_len = std::max(1.0, len(engine));
                    std::int64_t minute = rand_minute_in_hour(hour);
                    std::uint32_t idx = spawn_topic(minute / kTickMinutes, true,
                                                    static_cast<std::uint32_t>(r), campaign_len);
                    double burst = cfg.ignition_boost * cfg.spam_intensity *
                                   static_cast<double>(ring.members.size());
                    schedule_event({minute, 0, idx, ring.seed, Event::Kind::SeedPost,
                                    static_cast<std::uint32_t>(r), burst, 0});
                    ring.next_campaign_hour =
                        hour + 1 + static_cast<std::int64_t>(campaign_gap(engine));
                }
            }

            // trend riding: seeds post on currently trending organic keywords,
            // their rings echo with a small burst
            if (cfg.jack_rate > 0.0 && !rings.empty() && !trending_now.empty()) {
                std::poisson_distribution<int> jacks(cfg.jack_rate);
                int n = jacks(engine);
                for (int k = 0; k < n; ++k) {
                    std::uint32_t target = trending_now[static_cast<std::size_t>(
                        unit(engine) * static_cast<double>(trending_now.size()))];
                    auto ring_idx = static_cast<std::uint32_t>(
                        unit(engine) * static_cast<double>(rings.size()));
                    if (topics[target].spam) continue;
                    schedule_event({rand_minute_in_hour(hour), 0, target, rings[ring_idx].seed,
                                    Event::Kind::SeedPost, ring_idx, cfg.jack_intensity, 0});
                }
            }
        }

        // organic growth over alive topics
        for (std::uint32_t idx : alive_topics) {
            Topic& t = topics[idx];
            if (!t.alive || tick <= t.birth_tick) continue;
            double age = static_cast<double>(tick - t.birth_tick);
            double theta = std::exp(-age / cfg.novelty_tau);
            double g = std::exp(cfg.growth_sigma * gauss(engine));
            double expected = t.organic_cum * t.attract * theta * g;
            if (t.total_tweets >= cfg.max_topic_tweets) expected = 0.0;
            int n = 0;
            if (expected > 0.0) {
                std::poisson_distribution<int> dist(std::min(expected, 5000.0));
                n = dist(engine);
            }
            if (n == 0) {
                bool campaigning = t.spam && tick <= t.campaign_end_tick;
                if (t.organic_cum * t.attract * theta < 0.05 && ++t.idle_ticks > 18 && !campaigning)
                    t.alive = false;
                continue;
            }
            t.idle_ticks = 0;
            for (int k = 0; k < n; ++k) {
                bool rt = !retweeters.empty() && unit(engine) < cfg.p_retweet;
                if (rt)
                    events.push_back({rand_minute(), event_seq++, idx, retweeters.draw(engine),
                                      Event::Kind::OrganicRetweet, 0, 0.0, 0});
                else
                    events.push_back({rand_minute(), event_seq++, idx, posters.draw(engine),
                                      Event::Kind::Original, 0, 0.0, 0});
            }
        }

        // active campaigns: additional seed posts sustain the inflation
        if (cfg.seed_post_rate > 0.0) {
            for (std::uint32_t idx : alive_topics) {
                Topic& t = topics[idx];
                if (!t.spam || tick <= t.birth_tick || tick > t.campaign_end_tick) continue;
                std::poisson_distribution<int> posts(cfg.seed_post_rate);
                int n = posts(engine);
                for (int k = 0; k < n; ++k) {
                    double burst =
                        cfg.spam_intensity * static_cast<double>(rings[t.ring].members.size());
                    events.push_back({rand_minute(), event_seq++, idx, rings[t.ring].seed,
                                      Event::Kind::SeedPost, t.ring, burst, 0});
                }
            }
        }

        // camouflage: low-volume members retweet other rings' seed posts
        if (camo_rate_per_tick > 0.0 && !recent_seed_posts.empty()) {
            std::poisson_distribution<int> dist(camo_rate_per_tick);
            int n = dist(engine);
            for (int k = 0; k < n; ++k) {
                auto [topic_idx, orig_idx] = recent_seed_posts[static_cast<std::size_t>(
                    unit(engine) * static_cast<double>(recent_seed_posts.size()))];
                auto ring_idx =
                    static_cast<std::size_t>(unit(engine) * static_cast<double>(rings.size()));
                const Ring& ring = rings[ring_idx];
                if (ring.camouflage.empty() ||
                    ring.seed == topics[topic_idx].orig_authors[orig_idx])
                    continue;
                UserId member = ring.camouflage[static_cast<std::size_t>(
                    unit(engine) * static_cast<double>(ring.camouflage.size()))];
                events.push_back({rand_minute(), event_seq++, topic_idx, member,
                                  Event::Kind::RingRetweet, 0, 0.0, orig_idx});
            }
        }

        // events scheduled earlier for this tick (births, seed posts, bursts)
        if (auto it = scheduled.find(tick); it != scheduled.end()) {
            events.insert(events.end(), it->second.begin(), it->second.end());
            scheduled.erase(it);
        }

        // materialize in time order
        std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
            if (a.minute != b.minute) return a.minute < b.minute;
            return a.seq < b.seq;
        });
        for (const Event& ev : events) {
            Topic& t = topics[ev.topic];
            if (t.total_tweets >= cfg.max_topic_tweets) continue;
            Tweet tw;
            tw.id = next_tweet_id;
            tw.author = ev.author;
            tw.at.minutes = ev.minute;
            tw.keyword = t.keyword;
            switch (ev.kind) {
                case Event::Kind::Original:
                case Event::Kind::SeedPost: {
                    tw.kind = TweetKind::Original;
                    corpus.append_tweet(tw);
                    t.add_original(tw.id, tw.author);
                    t.organic_cum += 1.0;
                    if (ev.kind == Event::Kind::SeedPost) {
                        auto orig_idx = static_cast<std::uint32_t>(t.orig_ids.size() - 1);
                        if (ev.burst_total > 0.0)
                            schedule_burst(tick, ev.topic, orig_idx, ev.ring, ev.burst_total);
                        recent_seed_posts.emplace_back(ev.topic, orig_idx);
                        if (recent_seed_posts.size() > 4096) recent_seed_posts.pop_front();
                    }
                    break;
                }
                case Event::Kind::OrganicRetweet: {
                    if (t.weight_sum == 0) continue;
                    auto r = static_cast<std::uint64_t>(unit(engine) *
                                                        static_cast<double>(t.weight_sum));
                    std::size_t pick = 0;
                    for (; pick + 1 < t.orig_weights.size(); ++pick) {
                        if (r < t.orig_weights[pick]) break;
                        r -= t.orig_weights[pick];
                    }
                    if (t.orig_authors[pick] == ev.author) continue;  // no self-retweets
                    tw.kind = TweetKind::Retweet;
                    tw.original_tweet = t.orig_ids[pick];
                    tw.original_author = t.orig_authors[pick];
                    corpus.append_tweet(tw);
                    ++t.orig_weights[pick];
                    ++t.weight_sum;
                    t.organic_cum += 1.0;
                    break;
                }
                case Event::Kind::RingRetweet: {
                    tw.kind = TweetKind::Retweet;
                    tw.original_tweet = t.orig_ids[ev.target_orig];
                    tw.original_author = t.orig_authors[ev.target_orig];
                    corpus.append_tweet(tw);
                    ++t.orig_weights[ev.target_orig];
                    ++t.weight_sum;
                    break;
                }
            }
            ++next_tweet_id;
            ++t.total_tweets;
            hour_counts[ev.topic] += 1;
        }
        events.clear();

        if (tick % 64 == 0)
            std::erase_if(alive_topics, [&](std::uint32_t idx) { return !topics[idx].alive; });
    }

    return corpus;
}

Corpus apply_moderation(const Corpus& corpus, const ModerationPolicy& policy, std::uint64_t seed,
                        Timestamp at) {
    for (double p : policy.bucket_deletion_prob)
        if (!(p >= 0.0 && p <= 1.0)) fail(Errc::ConfigError, "deletion probability not in [0,1]");
    if (!(policy.organic_false_deletion_prob >= 0.0 && policy.organic_false_deletion_prob <= 1.0))
        fail(Errc::ConfigError, "organic_false_deletion_prob not in [0,1]");

    Corpus out = corpus;
    if (at.minutes < 0) {
        std::int64_t last = corpus.tweets().empty() ? 0 : corpus.tweets().back().at.minutes;
        at.minutes = (last / kHourMinutes + 1) * kHourMinutes;
    }

    std::unordered_map<UserId, double> ratio;
    for (const auto& prof : retweet_profiles(corpus)) ratio.emplace(prof.user, prof.ur_ratio);

    auto engine = make_engine(seed, "moderation");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const UserRecord* u : out.users_by_id()) {
        auto it = ratio.find(u->id);
        double p = 0.0;
        if (policy.buckets_apply_to_all) {
            if (it != ratio.end()) p = policy.bucket_deletion_prob[ratio_bucket(it->second)];
        } else if (u->is_spam()) {
            // a ring member that never got to retweet falls into the lowest bucket
            double r = it != ratio.end() ? it->second : 1.0;
            p = policy.bucket_deletion_prob[ratio_bucket(r)];
        } else if (it != ratio.end()) {
            p = policy.organic_false_deletion_prob;
        }
        if (p > 0.0 && unit(engine) < p) out.set_user_status(u->id, AccountStatus::Deleted, at);
    }
    out.mark_moderated();
    return out;
}

GroundTruthReport ground_truth_report(const Corpus& corpus) {
    GroundTruthReport rep;
    if (corpus.users().empty()) return rep;
    std::uint64_t spam_users = 0;
    for (const auto& [id, u] : corpus.users())
        if (u.is_spam()) ++spam_users;
    std::uint64_t spam_tweets = 0, spam_retweets = 0, retweets = 0;
    for (const Tweet& t : corpus.tweets()) {
        bool spam = corpus.find_user(t.author)->is_spam();
        if (spam) ++spam_tweets;
        if (t.is_retweet()) {
            ++retweets;
            if (spam) ++spam_retweets;
        }
    }
    rep.spam_user_fraction =
        static_cast<double>(spam_users) / static_cast<double>(corpus.users().size());
    if (!corpus.tweets().empty())
        rep.spam_tweet_fraction =
            static_cast<double>(spam_tweets) / static_cast<double>(corpus.tweets().size());
    if (retweets > 0)
        rep.spam_retweet_fraction =
            static_cast<double>(spam_retweets) / static_cast<double>(retweets);
    return rep;
}

}  // namespace trendsim
