#ifndef RDFSTREAM_COMPRESSION_HPP
#define RDFSTREAM_COMPRESSION_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rdfstream {

// Payload compression codecs and their one-byte wire ids.
enum class CodecId : std::uint8_t {
    Identity = 0,
    Deflate = 1, // RFC 1950 zlib stream: 2-byte header + DEFLATE body + Adler-32
    Gzip = 2,    // RFC 1952 gzip stream
};

inline constexpr std::array<CodecId, 3> kAllCodecs{CodecId::Identity, CodecId::Deflate,
                                                   CodecId::Gzip};

const char* codec_name(CodecId id);
std::optional<CodecId> codec_from_name(std::string_view name);
std::optional<CodecId> codec_from_wire_id(std::uint8_t id);

enum class CompressionErrc {
    CorruptStream,   // bad header, failed checksum, or truncation
    OutputTooLarge,  // decompressed size exceeds the configured cap
    EmptyCorpus,
};

class CompressionError : public std::runtime_error {
public:
    CompressionError(CompressionErrc code, const std::string& what)
        : std::runtime_error(what), code_(code)
    {
    }

    CompressionErrc code() const { return code_; }

private:
    CompressionErrc code_;
};

struct CompressionOptions {
    int level = 6;                          // 1..9
    std::size_t max_output = 16u << 20;     // decompression cap per datagram
};

// Deterministic for a fixed codec and level: same input, same output bytes.
// Each call owns its own compression context; safe to call concurrently.
std::string compress(CodecId codec, std::string_view payload,
                     const CompressionOptions& opts = {});

// Exact inverse of compress for intact streams. Throws CompressionError
// {CorruptStream} on damaged or truncated input (the caller drops the
// datagram) and {OutputTooLarge} past opts.max_output.
std::string decompress(CodecId codec, std::string_view payload,
                       const CompressionOptions& opts = {});

struct CompressionReport {
    CodecId codec = CodecId::Identity;
    std::size_t corpus_n = 0;
    double in_mean = 0, in_median = 0, in_p95 = 0;
    double out_mean = 0, out_median = 0, out_p95 = 0;
    double compress_us_mean = 0;
    double decompress_us_mean = 0;
};

// One report per registered codec over the identical corpus; reproducible
// sizes for a fixed corpus. Throws CompressionError{EmptyCorpus}.
std::vector<CompressionReport> compare_codecs(const std::vector<std::string>& corpus,
                                              const CompressionOptions& opts = {});

// CSV: codec,corpus_n,in_mean,in_median,out_mean,out_median,out_p95,compress_us,decompress_us
std::string compression_report_csv(const std::vector<CompressionReport>& reports);

} // namespace rdfstream

#endif
