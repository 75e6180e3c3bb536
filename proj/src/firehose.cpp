#include "rdfstream/firehose.hpp"

#include <cinttypes>
#include <cstdio>
#include <ctime>

namespace rdfstream {

namespace {

// Fixed word list for text, names, locations and descriptions. Word-shaped
// tokens keep the documents partially compressible: all-random bytes would
// defeat DEFLATE and constant text would overstate it.
constexpr const char* kWords[] = {
    "stream",  "signal",  "willow",  "harbor",  "copper",  "meadow",  "lantern", "ember",
    "quartz",  "fiddle",  "breeze",  "cinder",  "drift",   "fathom",  "garnet",  "hollow",
    "ivory",   "juniper", "kestrel", "lumen",   "marble",  "nectar",  "orchid",  "pebble",
    "quill",   "raven",   "saffron", "thistle", "umber",   "violet",  "walnut",  "yonder",
    "zephyr",  "anchor",  "bramble", "canyon",  "dapple",  "elm",     "fern",    "gully",
    "heather", "inlet",   "jasper",  "knoll",   "larch",   "mirth",   "nimbus",  "oriole",
    "pine",    "quarry",  "ridge",   "sage",    "tansy",   "upland",  "vale",    "wren",
    "alder",   "birch",   "cedar",   "dune",    "echo",    "flint",   "grove",   "heron",
};
constexpr std::size_t kWordCount = sizeof(kWords) / sizeof(kWords[0]);

constexpr const char* kTopics[] = {
    "music",    "weather",  "coffee",  "travel", "running", "cinema",  "books",   "cooking",
    "gardens",  "politics", "science", "sports", "art",     "history", "photos",  "maps",
    "trains",   "cycling",  "birds",   "rivers", "bridges", "markets", "museums", "parks",
    "theatre",  "poetry",   "sailing", "chess",  "radio",   "design",  "crafts",  "hiking",
};
constexpr std::size_t kTopicCount = sizeof(kTopics) / sizeof(kTopics[0]);

std::string iso8601_utc(std::int64_t unix_seconds)
{
    std::time_t t = static_cast<std::time_t>(unix_seconds);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[80];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

std::string format_coord(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5f", value);
    return buf;
}

} // namespace

const VocabularyMapping& VocabularyMapping::standard()
{
    static const VocabularyMapping vocab = [] {
        VocabularyMapping v;
        v.post_prefix = "http://rdfstream.example/post/";
        v.user_prefix = "http://rdfstream.example/user/";
        v.topic_prefix = "http://rdfstream.example/topic/";
        v.point_suffix = "/point";

        v.rdf_type = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
        v.post_type = "http://rdfs.org/sioc/types#MicroblogPost";
        v.user_type = "http://rdfs.org/sioc/ns#UserAccount";
        v.content = "http://rdfs.org/sioc/ns#content";
        v.created = "http://purl.org/dc/terms/created";
        v.creator = "http://rdfs.org/sioc/ns#has_creator";
        v.reply_of = "http://rdfs.org/sioc/ns#reply_of";
        v.topic = "http://rdfs.org/sioc/ns#topic";
        v.links_to = "http://rdfs.org/sioc/ns#links_to";
        v.nick = "http://xmlns.com/foaf/0.1/nick";
        v.name = "http://xmlns.com/foaf/0.1/name";
        v.based_near = "http://xmlns.com/foaf/0.1/based_near";
        v.lat = "http://www.w3.org/2003/01/geo/wgs84_pos#lat";
        v.lon = "http://www.w3.org/2003/01/geo/wgs84_pos#long";

        // Mutable scalar profile fields, index-aligned with
        // FirehoseConfig::field_change_probability. The status counter leads
        // because it bumps on every tweet by the same author.
        v.profile_predicates = {
            "http://rdfstream.example/profile#statusCount",
            "http://rdfstream.example/profile#followerCount",
            "http://rdfstream.example/profile#friendCount",
            "http://rdfstream.example/profile#favouriteCount",
            "http://rdfstream.example/profile#listedCount",
            "http://purl.org/dc/terms/description",
            "http://rdfstream.example/profile#location",
            "http://rdfstream.example/profile#timeZone",
            "http://rdfstream.example/profile#utcOffset",
            "http://xmlns.com/foaf/0.1/img",
            "http://xmlns.com/foaf/0.1/weblog",
        };
        return v;
    }();
    return vocab;
}

TweetGenerator::TweetGenerator(std::uint64_t seed, FirehoseConfig cfg)
    : cfg_(std::move(cfg)), rng_(seed)
{
    authors_.resize(cfg_.author_pool);
    if (cfg_.field_change_probability.size()
        != VocabularyMapping::standard().profile_predicates.size())
        throw std::invalid_argument(
            "field_change_probability must align with the profile predicates");
}

std::uint32_t TweetGenerator::draw_author()
{
    if (cfg_.hot_authors > 0 && rng_.bernoulli(cfg_.hot_draw_probability))
        return rng_.uniform_u32(std::min(cfg_.hot_authors, cfg_.author_pool));
    return rng_.uniform_u32(cfg_.author_pool);
}

std::string TweetGenerator::make_text()
{
    const std::uint32_t target = rng_.uniform_range(cfg_.text_min, cfg_.text_max);
    std::string text;
    while (text.size() < target) {
        if (!text.empty())
            text += ' ';
        text += kWords[rng_.uniform_u32(kWordCount)];
    }
    if (text.size() > cfg_.text_max)
        text.resize(cfg_.text_max);
    while (!text.empty() && text.back() == ' ')
        text.pop_back();
    return text;
}

std::string TweetGenerator::field_value(std::size_t field_index)
{
    switch (field_index) {
    case 0: // statusCount
    case 1: // followerCount
    case 2: // friendCount
    case 3: // favouriteCount
    case 4: // listedCount
        return std::to_string(rng_.uniform_u32(100000));
    case 5: { // description: a short phrase
        std::string s;
        const std::uint32_t words = rng_.uniform_range(4, 9);
        for (std::uint32_t i = 0; i < words; ++i) {
            if (!s.empty())
                s += ' ';
            s += kWords[rng_.uniform_u32(kWordCount)];
        }
        return s;
    }
    case 6: { // location: "Word City" style
        std::string s = kWords[rng_.uniform_u32(kWordCount)];
        s += ' ';
        s += kWords[rng_.uniform_u32(kWordCount)];
        return s;
    }
    case 7: // timeZone
        return std::string(kWords[rng_.uniform_u32(kWordCount)]) + "_zone";
    case 8: // utcOffset
        return std::to_string(static_cast<int>(rng_.uniform_u32(25)) - 12);
    case 9: // avatar image
        return "http://img.rdfstream.example/" + std::to_string(rng_.next_u64() % 100000000)
            + ".png";
    default: // weblog
        return "http://" + std::string(kWords[rng_.uniform_u32(kWordCount)])
            + ".example/blog";
    }
}

void TweetGenerator::materialize_author(std::uint32_t author_id)
{
    AuthorSlot& slot = authors_[author_id];
    slot.born = true;
    auto& profile = slot.profile;
    profile.screen_name =
        std::string(kWords[author_id % kWordCount]) + std::to_string(author_id);
    profile.display_name = std::string(kWords[rng_.uniform_u32(kWordCount)]) + " "
        + kWords[rng_.uniform_u32(kWordCount)];
    profile.fields.clear();
    const std::size_t field_count = cfg_.field_change_probability.size();
    for (std::size_t i = 0; i < field_count; ++i)
        profile.fields.push_back(field_value(i));
    profile.geo.lat = rng_.uniform_real() * 180.0 - 90.0;
    profile.geo.lon = rng_.uniform_real() * 360.0 - 180.0;
}

void TweetGenerator::mutate_author(std::uint32_t author_id, bool geo_tagged)
{
    auto& profile = authors_[author_id].profile;
    for (std::size_t i = 0; i < profile.fields.size(); ++i) {
        if (rng_.bernoulli(cfg_.field_change_probability[i])) {
            std::string fresh = field_value(i);
            if (fresh != profile.fields[i])
                profile.fields[i] = std::move(fresh);
            else
                profile.fields[i] += "0"; // force a visible change
        }
    }
    if (geo_tagged) {
        profile.geo.lat = rng_.uniform_real() * 180.0 - 90.0;
        profile.geo.lon = rng_.uniform_real() * 360.0 - 180.0;
    }
}

TweetRecord TweetGenerator::next()
{
    TweetRecord tweet;
    tweet.tweet_id = next_id_++;
    tweet.author_id = draw_author();
    tweet.created_at = cfg_.epoch_start + static_cast<std::int64_t>(tweet.tweet_id);
    tweet.text = make_text();

    const std::size_t hashtag_count = rng_.weighted(cfg_.hashtag_count_weights);
    for (std::size_t i = 0; i < hashtag_count; ++i)
        tweet.hashtags.push_back(kTopics[rng_.uniform_u32(kTopicCount)]);
    const std::size_t link_count = rng_.weighted(cfg_.link_count_weights);
    for (std::size_t i = 0; i < link_count; ++i)
        tweet.links.push_back("http://lnk.example/" + std::to_string(rng_.next_u64() % 100000000));
    if (tweet.tweet_id > 1 && rng_.bernoulli(cfg_.reply_probability))
        tweet.reply_to = 1 + rng_.next_u64() % (tweet.tweet_id - 1);
    const bool geo_tagged = rng_.bernoulli(cfg_.geo_probability);

    AuthorSlot& slot = authors_[tweet.author_id];
    if (!slot.born)
        materialize_author(tweet.author_id);
    else
        mutate_author(tweet.author_id, geo_tagged);
    if (geo_tagged)
        tweet.geo = slot.profile.geo;
    tweet.profile = slot.profile;
    return tweet;
}

TweetRdfizer::TweetRdfizer(const VocabularyMapping& vocab) : vocab_(vocab) {}

Transaction TweetRdfizer::to_transaction(const TweetRecord& tweet)
{
    Transaction tx;
    const auto& v = vocab_;
    const std::string user_iri = v.user_prefix + tweet.profile.screen_name;
    const std::string point_iri = user_iri + v.point_suffix;
    const std::string post_iri = v.post_prefix + std::to_string(tweet.tweet_id);

    const auto add = [&](const std::string& s, const std::string& p, Term o) {
        tx.ops.push_back(add_op({Term::iri(s), Term::iri(p), std::move(o), {}}));
    };
    const auto remove = [&](const std::string& s, const std::string& p, Term o) {
        tx.ops.push_back(remove_op({Term::iri(s), Term::iri(p), std::move(o), {}}));
    };

    auto it = registry_.find(tweet.author_id);
    const bool known = it != registry_.end();

    // Removes first: retract every mutable author value that changed since it
    // was last emitted, before the replacement add (the "mood" rule).
    std::vector<std::size_t> changed_fields;
    bool geo_changed = false;
    if (known) {
        const UserState& last = it->second;
        for (std::size_t i = 0; i < v.profile_predicates.size(); ++i) {
            if (last.last_emitted_fields[i] != tweet.profile.fields[i]) {
                changed_fields.push_back(i);
                remove(user_iri, v.profile_predicates[i],
                       Term::plain_literal(last.last_emitted_fields[i]));
            }
        }
        if (last.last_emitted_geo != tweet.profile.geo) {
            geo_changed = true;
            remove(point_iri, v.lat, Term::plain_literal(format_coord(last.last_emitted_geo.lat)));
            remove(point_iri, v.lon, Term::plain_literal(format_coord(last.last_emitted_geo.lon)));
        }
    }

    // Post adds.
    add(post_iri, v.rdf_type, Term::iri(v.post_type));
    add(post_iri, v.content, Term::plain_literal(tweet.text));
    add(post_iri, v.created, Term::plain_literal(iso8601_utc(tweet.created_at)));
    add(post_iri, v.creator, Term::iri(user_iri));
    for (const auto& tag : tweet.hashtags)
        add(post_iri, v.topic, Term::iri(v.topic_prefix + tag));
    for (const auto& link : tweet.links)
        add(post_iri, v.links_to, Term::iri(link));
    if (tweet.reply_to)
        add(post_iri, v.reply_of, Term::iri(v.post_prefix + std::to_string(*tweet.reply_to)));

    // Author adds: the full description on first sight, changed values after.
    if (!known) {
        add(user_iri, v.rdf_type, Term::iri(v.user_type));
        add(user_iri, v.nick, Term::plain_literal(tweet.profile.screen_name));
        add(user_iri, v.name, Term::plain_literal(tweet.profile.display_name));
        add(user_iri, v.based_near, Term::iri(point_iri));
        for (std::size_t i = 0; i < v.profile_predicates.size(); ++i)
            add(user_iri, v.profile_predicates[i],
                Term::plain_literal(tweet.profile.fields[i]));
        add(point_iri, v.lat, Term::plain_literal(format_coord(tweet.profile.geo.lat)));
        add(point_iri, v.lon, Term::plain_literal(format_coord(tweet.profile.geo.lon)));
    } else {
        for (std::size_t i : changed_fields)
            add(user_iri, v.profile_predicates[i],
                Term::plain_literal(tweet.profile.fields[i]));
        if (geo_changed) {
            add(point_iri, v.lat, Term::plain_literal(format_coord(tweet.profile.geo.lat)));
            add(point_iri, v.lon, Term::plain_literal(format_coord(tweet.profile.geo.lon)));
        }
    }

    // The registry mirrors exactly what has been emitted as adds.
    UserState& state = registry_[tweet.author_id];
    state.author_id = tweet.author_id;
    state.screen_name = tweet.profile.screen_name;
    state.display_name = tweet.profile.display_name;
    state.last_emitted_fields = tweet.profile.fields;
    state.last_emitted_geo = tweet.profile.geo;
    return tx;
}

FirehoseStream::FirehoseStream(std::uint64_t seed, double rate, std::uint64_t count,
                               FirehoseConfig cfg)
    : generator_(seed, std::move(cfg)), rdfizer_(), rate_(rate), count_(count)
{
    if (rate_ <= 0)
        throw std::invalid_argument("firehose rate must be positive");
}

std::optional<TimedTransaction> FirehoseStream::next()
{
    if (produced_ >= count_)
        return std::nullopt;
    TimedTransaction timed;
    timed.index = produced_;
    timed.target_offset = std::chrono::duration<double>(static_cast<double>(produced_) / rate_);
    timed.tx = rdfizer_.to_transaction(generator_.next());
    ++produced_;
    return timed;
}

std::chrono::duration<double> FirehoseStream::nominal_duration() const
{
    return std::chrono::duration<double>(static_cast<double>(count_) / rate_);
}

} // namespace rdfstream
