#include "rdfstream/compression.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include <zlib.h>

namespace rdfstream {

namespace {

[[noreturn]] void corrupt(const std::string& what)
{
    throw CompressionError(CompressionErrc::CorruptStream, what);
}

// windowBits selects the framing: 15 = RFC 1950 zlib, 15+16 = RFC 1952 gzip.
int window_bits(CodecId codec)
{
    return codec == CodecId::Gzip ? 15 + 16 : 15;
}

std::string zlib_compress(CodecId codec, std::string_view payload, int level)
{
    if (level < 1 || level > 9)
        throw std::invalid_argument("compression level must be 1..9");

    z_stream zs{};
    if (deflateInit2(&zs, level, Z_DEFLATED, window_bits(codec), 8, Z_DEFAULT_STRATEGY) != Z_OK)
        throw std::runtime_error("deflateInit2 failed");

    std::string out;
    out.resize(deflateBound(&zs, static_cast<uLong>(payload.size())));
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(payload.data()));
    zs.avail_in = static_cast<uInt>(payload.size());
    zs.next_out = reinterpret_cast<Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());

    const int rc = deflate(&zs, Z_FINISH);
    const std::size_t produced = zs.total_out;
    deflateEnd(&zs);
    if (rc != Z_STREAM_END)
        throw std::runtime_error("deflate failed: rc=" + std::to_string(rc));
    out.resize(produced);
    return out;
}

std::string zlib_decompress(CodecId codec, std::string_view payload, std::size_t max_output)
{
    if (payload.empty())
        corrupt("empty compressed stream");

    z_stream zs{};
    if (inflateInit2(&zs, window_bits(codec)) != Z_OK)
        throw std::runtime_error("inflateInit2 failed");

    std::string out;
    out.resize(std::min<std::size_t>(std::max<std::size_t>(payload.size() * 4, 1024), max_output));
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(payload.data()));
    zs.avail_in = static_cast<uInt>(payload.size());

    std::size_t written = 0;
    for (;;) {
        zs.next_out = reinterpret_cast<Bytef*>(out.data() + written);
        zs.avail_out = static_cast<uInt>(out.size() - written);
        const int rc = inflate(&zs, Z_NO_FLUSH);
        written = zs.total_out;
        if (rc == Z_STREAM_END)
            break;
        if (rc == Z_OK || rc == Z_BUF_ERROR) {
            if (zs.avail_out == 0) {
                if (out.size() >= max_output) {
                    inflateEnd(&zs);
                    throw CompressionError(CompressionErrc::OutputTooLarge,
                                           "decompressed payload exceeds "
                                               + std::to_string(max_output) + " bytes");
                }
                out.resize(std::min(out.size() * 2, max_output));
                continue;
            }
            // Output space remains but the input ran dry: truncated stream.
            inflateEnd(&zs);
            corrupt("truncated compressed stream");
        }
        const std::string detail = zs.msg != nullptr ? zs.msg : "data error";
        inflateEnd(&zs);
        corrupt("damaged compressed stream: " + detail);
    }
    const bool trailing = zs.avail_in != 0;
    inflateEnd(&zs);
    if (trailing)
        corrupt("trailing bytes after compressed stream");
    out.resize(written);
    return out;
}

double mean_of(const std::vector<double>& xs)
{
    double total = 0;
    for (double x : xs)
        total += x;
    return xs.empty() ? 0 : total / static_cast<double>(xs.size());
}

double median_of(std::vector<double> xs)
{
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    if (n == 0)
        return 0;
    return n % 2 == 1 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2.0;
}

double p95_of(std::vector<double> xs)
{
    std::sort(xs.begin(), xs.end());
    if (xs.empty())
        return 0;
    const auto rank = static_cast<std::size_t>(
        std::ceil(0.95 * static_cast<double>(xs.size())));
    return xs[std::max<std::size_t>(rank, 1) - 1];
}

} // namespace

const char* codec_name(CodecId id)
{
    switch (id) {
    case CodecId::Identity: return "identity";
    case CodecId::Deflate: return "deflate";
    case CodecId::Gzip: return "gzip";
    }
    return "unknown";
}

std::optional<CodecId> codec_from_name(std::string_view name)
{
    if (name == "identity")
        return CodecId::Identity;
    if (name == "deflate")
        return CodecId::Deflate;
    if (name == "gzip")
        return CodecId::Gzip;
    return std::nullopt;
}

std::optional<CodecId> codec_from_wire_id(std::uint8_t id)
{
    if (id > 2)
        return std::nullopt;
    return static_cast<CodecId>(id);
}

std::string compress(CodecId codec, std::string_view payload, const CompressionOptions& opts)
{
    if (codec == CodecId::Identity)
        return std::string(payload);
    return zlib_compress(codec, payload, opts.level);
}

std::string decompress(CodecId codec, std::string_view payload, const CompressionOptions& opts)
{
    if (codec == CodecId::Identity)
        return std::string(payload);
    return zlib_decompress(codec, payload, opts.max_output);
}

std::vector<CompressionReport> compare_codecs(const std::vector<std::string>& corpus,
                                              const CompressionOptions& opts)
{
    if (corpus.empty())
        throw CompressionError(CompressionErrc::EmptyCorpus, "compare_codecs needs a corpus");

    using clock = std::chrono::steady_clock;
    std::vector<CompressionReport> reports;
    for (CodecId codec : kAllCodecs) {
        CompressionReport report;
        report.codec = codec;
        report.corpus_n = corpus.size();

        std::vector<double> in_sizes, out_sizes;
        in_sizes.reserve(corpus.size());
        out_sizes.reserve(corpus.size());
        double compress_us = 0;
        double decompress_us = 0;
        for (const auto& doc : corpus) {
            const auto t0 = clock::now();
            std::string packed = compress(codec, doc, opts);
            const auto t1 = clock::now();
            std::string restored = decompress(codec, packed, opts);
            const auto t2 = clock::now();
            if (restored != doc)
                throw std::logic_error("codec round-trip mismatch");
            compress_us += std::chrono::duration<double, std::micro>(t1 - t0).count();
            decompress_us += std::chrono::duration<double, std::micro>(t2 - t1).count();
            in_sizes.push_back(static_cast<double>(doc.size()));
            out_sizes.push_back(static_cast<double>(packed.size()));
        }
        report.in_mean = mean_of(in_sizes);
        report.in_median = median_of(in_sizes);
        report.in_p95 = p95_of(in_sizes);
        report.out_mean = mean_of(out_sizes);
        report.out_median = median_of(out_sizes);
        report.out_p95 = p95_of(out_sizes);
        report.compress_us_mean = compress_us / static_cast<double>(corpus.size());
        report.decompress_us_mean = decompress_us / static_cast<double>(corpus.size());
        reports.push_back(report);
    }
    return reports;
}

std::string compression_report_csv(const std::vector<CompressionReport>& reports)
{
    std::string out =
        "codec,corpus_n,in_mean,in_median,out_mean,out_median,out_p95,compress_us,decompress_us\n";
    char row[256];
    for (const auto& r : reports) {
        std::snprintf(row, sizeof row, "%s,%zu,%.1f,%.1f,%.1f,%.1f,%.1f,%.2f,%.2f\n",
                      codec_name(r.codec), r.corpus_n, r.in_mean, r.in_median, r.out_mean,
                      r.out_median, r.out_p95, r.compress_us_mean, r.decompress_us_mean);
        out += row;
    }
    return out;
}

} // namespace rdfstream
