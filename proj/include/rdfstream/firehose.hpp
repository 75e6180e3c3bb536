#ifndef RDFSTREAM_FIREHOSE_HPP
#define RDFSTREAM_FIREHOSE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rdfstream/rng.hpp"
#include "rdfstream/transaction.hpp"
#include "rdfstream/transport.hpp"

namespace rdfstream {

struct GeoPoint {
    double lat = 0;
    double lon = 0;

    bool operator==(const GeoPoint&) const = default;
};

// Mutable author profile as embedded in each tweet (the real stream embeds a
// full user object in every status). `fields` is index-aligned with
// VocabularyMapping::profile_predicates.
struct AuthorProfile {
    std::string screen_name;
    std::string display_name;
    std::vector<std::string> fields;
    GeoPoint geo;
};

// Synthetic social-update record. Tweet ids increase strictly within a
// stream; text is 20-140 chars of seeded pseudo-random words.
struct TweetRecord {
    std::uint64_t tweet_id = 0;
    std::uint32_t author_id = 0;
    std::string text;
    std::int64_t created_at = 0; // unix seconds
    std::vector<std::string> hashtags; // 0-3 topics
    std::vector<std::string> links;    // 0-2 IRIs
    std::optional<std::uint64_t> reply_to;
    std::optional<GeoPoint> geo;
    AuthorProfile profile;
};

// Per-author registry entry: what the rdfizer most recently emitted as adds
// for this author, which is exactly what a later tweet must remove before
// replacing.
struct UserState {
    std::uint32_t author_id = 0;
    std::string screen_name;
    std::string display_name;
    std::vector<std::string> last_emitted_fields;
    GeoPoint last_emitted_geo;
};

// Fixed IRI templates for post, author, topic, link and point resources and
// their predicates. Only the triple counts are contractual; the vocabulary
// itself is a SIOC/FOAF-flavored template.
struct VocabularyMapping {
    std::string post_prefix;
    std::string user_prefix;
    std::string topic_prefix;
    std::string point_suffix;

    std::string rdf_type;
    std::string post_type;
    std::string user_type;
    std::string content;
    std::string created;
    std::string creator;
    std::string reply_of;
    std::string topic;
    std::string links_to;
    std::string nick;
    std::string name;
    std::string based_near;
    std::string lat;
    std::string lon;
    std::vector<std::string> profile_predicates; // mutable scalar fields

    static const VocabularyMapping& standard();
};

// Every tuning constant of the generator in one place. The defaults are
// calibrated so that over the default author pool a stream averages 18 add
// and 9 remove operations per tweet, with serialized documents averaging
// 4-6 KB. Removes only occur when an author reappears, so the hot/cold draw
// and the per-field change probabilities are the calibration knobs.
struct FirehoseConfig {
    std::uint32_t author_pool = 10000;
    std::uint32_t hot_authors = 100;     // heavy posters
    double hot_draw_probability = 0.88;  // share of tweets from the hot set

    std::vector<double> hashtag_count_weights{0.20, 0.30, 0.30, 0.20}; // P(0..3)
    std::vector<double> link_count_weights{0.35, 0.30, 0.35};          // P(0..2)
    double reply_probability = 0.46;
    double geo_probability = 0.35; // tweet is geotagged; moves the author point

    // Change probability per mutable scalar field on author reappearance,
    // index-aligned with VocabularyMapping::profile_predicates. The leading
    // 1.0 is the status counter, which bumps on every tweet.
    std::vector<double> field_change_probability{1.0, 0.95, 0.95, 0.90, 0.90,
                                                 0.90, 0.85, 0.80, 0.80, 0.80, 0.70};

    std::uint32_t text_min = 20;
    std::uint32_t text_max = 140;
    std::int64_t epoch_start = 1269993600; // 2010-03-31T00:00:00Z
};

// Deterministic tweet source: the stream is a pure function of (seed,
// config). Repeat authors arrive with mutated profiles, which is what drives
// remove operations downstream.
class TweetGenerator {
public:
    explicit TweetGenerator(std::uint64_t seed, FirehoseConfig cfg = {});

    TweetRecord next();

    const FirehoseConfig& config() const { return cfg_; }

private:
    struct AuthorSlot {
        bool born = false;
        AuthorProfile profile;
    };

    std::uint32_t draw_author();
    void materialize_author(std::uint32_t author_id);
    void mutate_author(std::uint32_t author_id, bool geo_tagged);
    std::string make_text();
    std::string field_value(std::size_t field_index);

    FirehoseConfig cfg_;
    SeededRng rng_;
    std::uint64_t next_id_ = 1;
    std::vector<AuthorSlot> authors_;
};

// Translates a tweet into one atomic transaction: removes for every mutable
// author field whose value changed since last emitted (old value before new,
// so a downstream store never holds two values), then adds for the post and
// the author's current description. First-ever authors produce no removes.
class TweetRdfizer {
public:
    explicit TweetRdfizer(const VocabularyMapping& vocab = VocabularyMapping::standard());

    Transaction to_transaction(const TweetRecord& tweet);

    const std::map<std::uint32_t, UserState>& registry() const { return registry_; }

private:
    const VocabularyMapping& vocab_;
    std::map<std::uint32_t, UserState> registry_;
};

struct TimedTransaction {
    Transaction tx;
    std::chrono::duration<double> target_offset{0}; // emission time from stream start
    std::uint64_t index = 0;
};

// Lazily yields `count` transactions tagged with target emission times at
// `rate` per second.
class FirehoseStream {
public:
    FirehoseStream(std::uint64_t seed, double rate, std::uint64_t count,
                   FirehoseConfig cfg = {});

    std::optional<TimedTransaction> next();
    std::chrono::duration<double> nominal_duration() const;

private:
    TweetGenerator generator_;
    TweetRdfizer rdfizer_;
    double rate_;
    std::uint64_t count_;
    std::uint64_t produced_ = 0;
};

// TransactionSource adapter over a firehose stream.
class FirehoseSource : public TransactionSource {
public:
    FirehoseSource(std::uint64_t seed, std::uint64_t count, FirehoseConfig cfg = {})
        : stream_(seed, 1.0, count, std::move(cfg))
    {
    }

    std::optional<Transaction> next() override
    {
        auto timed = stream_.next();
        if (!timed)
            return std::nullopt;
        return std::move(timed->tx);
    }

private:
    FirehoseStream stream_;
};

} // namespace rdfstream

#endif
