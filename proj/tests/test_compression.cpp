#include <doctest.h>

#include <cstdint>
#include <string>

#include "rdfstream/compression.hpp"
#include "rdfstream/rng.hpp"

using namespace rdfstream;

namespace {

// Independent RFC 1950 trailer oracle.
std::uint32_t adler32_reference(const std::string& data)
{
    std::uint32_t a = 1, b = 0;
    for (unsigned char c : data) {
        a = (a + c) % 65521;
        b = (b + a) % 65521;
    }
    return (b << 16) | a;
}

// Independent RFC 1952 trailer oracle (CRC-32, reflected 0xEDB88320).
std::uint32_t crc32_reference(const std::string& data)
{
    std::uint32_t crc = 0xFFFFFFFFu;
    for (unsigned char c : data) {
        crc ^= c;
        for (int bit = 0; bit < 8; ++bit)
            crc = (crc >> 1) ^ (0xEDB88320u & (0u - (crc & 1u)));
    }
    return ~crc;
}

std::string random_bytes(SeededRng& rng, std::size_t n)
{
    std::string s;
    s.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        s += static_cast<char>(rng.uniform_u32(256));
    return s;
}

std::uint32_t read_be32(const std::string& s, std::size_t pos)
{
    return (static_cast<std::uint32_t>(static_cast<unsigned char>(s[pos])) << 24)
        | (static_cast<std::uint32_t>(static_cast<unsigned char>(s[pos + 1])) << 16)
        | (static_cast<std::uint32_t>(static_cast<unsigned char>(s[pos + 2])) << 8)
        | static_cast<std::uint32_t>(static_cast<unsigned char>(s[pos + 3]));
}

std::uint32_t read_le32(const std::string& s, std::size_t pos)
{
    return static_cast<std::uint32_t>(static_cast<unsigned char>(s[pos]))
        | (static_cast<std::uint32_t>(static_cast<unsigned char>(s[pos + 1])) << 8)
        | (static_cast<std::uint32_t>(static_cast<unsigned char>(s[pos + 2])) << 16)
        | (static_cast<std::uint32_t>(static_cast<unsigned char>(s[pos + 3])) << 24);
}

} // namespace

TEST_CASE("identity codec returns its input unchanged")
{
    CHECK(compress(CodecId::Identity, "abc") == "abc");
    CHECK(decompress(CodecId::Identity, "abc") == "abc");
    CHECK(decompress(CodecId::Identity, "").empty());
}

TEST_CASE("deflate emits a bit-exact RFC 1950 stream")
{
    const std::string payload = "transaction transaction transaction";
    const std::string packed = compress(CodecId::Deflate, payload);
    REQUIRE(packed.size() >= 6);
    // CMF: deflate with a 32K window.
    CHECK(static_cast<unsigned char>(packed[0]) == 0x78);
    // FLG makes CMF*256+FLG a multiple of 31.
    const unsigned cmf_flg = static_cast<unsigned char>(packed[0]) * 256u
        + static_cast<unsigned char>(packed[1]);
    CHECK(cmf_flg % 31 == 0);
    // Adler-32 trailer, big-endian, over the uncompressed bytes.
    CHECK(read_be32(packed, packed.size() - 4) == adler32_reference(payload));
}

TEST_CASE("gzip emits a bit-exact RFC 1952 stream")
{
    const std::string payload = "a gzip framed update document";
    const std::string packed = compress(CodecId::Gzip, payload);
    REQUIRE(packed.size() >= 18);
    CHECK(static_cast<unsigned char>(packed[0]) == 0x1F);
    CHECK(static_cast<unsigned char>(packed[1]) == 0x8B);
    CHECK(static_cast<unsigned char>(packed[2]) == 0x08); // deflate method
    // Little-endian CRC-32 and ISIZE trailer.
    CHECK(read_le32(packed, packed.size() - 8) == crc32_reference(payload));
    CHECK(read_le32(packed, packed.size() - 4) == payload.size());
}

TEST_CASE("round-trip property over random byte strings")
{
    SeededRng rng(424242);
    for (int i = 0; i < 400; ++i) {
        // Length spread over 0..100000, biased small for speed.
        const std::size_t n = rng.bernoulli(0.1) ? rng.uniform_u32(100000)
                                                 : rng.uniform_u32(2000);
        const std::string payload = random_bytes(rng, n);
        for (CodecId codec : kAllCodecs)
            REQUIRE(decompress(codec, compress(codec, payload)) == payload);
    }
}

TEST_CASE("compression is deterministic for a fixed codec and level")
{
    SeededRng rng(7);
    const std::string payload = random_bytes(rng, 5000);
    CHECK(compress(CodecId::Deflate, payload) == compress(CodecId::Deflate, payload));
    CompressionOptions fast{.level = 1};
    CHECK(compress(CodecId::Deflate, payload, fast)
          == compress(CodecId::Deflate, payload, fast));
}

TEST_CASE("a flipped trailer byte is a corrupt stream")
{
    std::string packed = compress(CodecId::Deflate, "payload payload payload");
    packed.back() = static_cast<char>(static_cast<unsigned char>(packed.back()) ^ 0xFF);
    CHECK_THROWS_AS((void)decompress(CodecId::Deflate, packed), CompressionError);
}

TEST_CASE("truncated and trailing-garbage streams are corrupt")
{
    const std::string packed = compress(CodecId::Deflate, std::string(512, 'x'));
    CHECK_THROWS_AS((void)decompress(CodecId::Deflate, packed.substr(0, packed.size() / 2)),
                    CompressionError);
    CHECK_THROWS_AS((void)decompress(CodecId::Deflate, ""), CompressionError);
    CHECK_THROWS_AS((void)decompress(CodecId::Deflate, packed + "junk"), CompressionError);
    // Mis-framed: a gzip stream fed to the zlib decoder and vice versa.
    const std::string gz = compress(CodecId::Gzip, "abc");
    CHECK_THROWS_AS((void)decompress(CodecId::Deflate, gz), CompressionError);
    CHECK_THROWS_AS((void)decompress(CodecId::Gzip, compress(CodecId::Deflate, "abc")),
                    CompressionError);
}

TEST_CASE("decompression respects the output cap")
{
    const std::string big(1 << 20, 'z');
    const std::string packed = compress(CodecId::Deflate, big);
    CompressionOptions capped;
    capped.max_output = 1024;
    try {
        (void)decompress(CodecId::Deflate, packed, capped);
        FAIL("expected OutputTooLarge");
    } catch (const CompressionError& e) {
        CHECK(e.code() == CompressionErrc::OutputTooLarge);
    }
}

TEST_CASE("compare_codecs reports over the identical corpus")
{
    SeededRng rng(99);
    std::vector<std::string> corpus;
    for (int i = 0; i < 100; ++i)
        corpus.push_back(random_bytes(rng, 500 + rng.uniform_u32(1500)));

    const auto reports = compare_codecs(corpus);
    REQUIRE(reports.size() == 3);
    for (const auto& r : reports) {
        CHECK(r.corpus_n == corpus.size());
        CHECK(r.in_mean == reports[0].in_mean); // identical corpus for every codec
    }
    CHECK(reports[0].codec == CodecId::Identity);
    CHECK(reports[0].out_mean == doctest::Approx(reports[0].in_mean));

    const std::string csv = compression_report_csv(reports);
    CHECK(csv.find("codec,corpus_n,in_mean,in_median,out_mean,out_median,out_p95,"
                   "compress_us,decompress_us")
          == 0);
    CHECK(csv.find("identity,") != std::string::npos);
    CHECK(csv.find("deflate,") != std::string::npos);
    CHECK(csv.find("gzip,") != std::string::npos);

    CHECK_THROWS_AS((void)compare_codecs({}), CompressionError);
}

TEST_CASE("gzip output is deflate output plus constant framing overhead")
{
    // Same DEFLATE body, different framing: 2+4 bytes of zlib wrap vs
    // 10+8 bytes of gzip wrap, a fixed 12-byte difference.
    SeededRng rng(3);
    for (int i = 0; i < 20; ++i) {
        const std::string payload = random_bytes(rng, 200 + rng.uniform_u32(5000));
        const auto deflate_n = compress(CodecId::Deflate, payload).size();
        const auto gzip_n = compress(CodecId::Gzip, payload).size();
        CHECK(gzip_n == deflate_n + 12);
    }
}
