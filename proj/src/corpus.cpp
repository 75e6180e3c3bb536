#include "rdfstream/corpus.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

namespace rdfstream {

void write_corpus_record(std::ostream& out, std::string_view document)
{
    const auto n = static_cast<std::uint32_t>(document.size());
    const char prefix[4] = {
        static_cast<char>((n >> 24) & 0xFF),
        static_cast<char>((n >> 16) & 0xFF),
        static_cast<char>((n >> 8) & 0xFF),
        static_cast<char>(n & 0xFF),
    };
    out.write(prefix, 4);
    out.write(document.data(), static_cast<std::streamsize>(document.size()));
    if (!out)
        throw std::runtime_error("corpus write failed");
}

std::optional<std::string> read_corpus_record(std::istream& in)
{
    char prefix[4];
    in.read(prefix, 4);
    if (in.gcount() == 0 && in.eof())
        return std::nullopt;
    if (in.gcount() != 4)
        throw std::runtime_error("corpus record truncated in length prefix");
    const std::uint32_t n = (static_cast<std::uint32_t>(static_cast<unsigned char>(prefix[0])) << 24)
        | (static_cast<std::uint32_t>(static_cast<unsigned char>(prefix[1])) << 16)
        | (static_cast<std::uint32_t>(static_cast<unsigned char>(prefix[2])) << 8)
        | static_cast<std::uint32_t>(static_cast<unsigned char>(prefix[3]));
    std::string document(n, '\0');
    in.read(document.data(), static_cast<std::streamsize>(n));
    if (static_cast<std::uint32_t>(in.gcount()) != n)
        throw std::runtime_error("corpus record truncated in body");
    return document;
}

} // namespace rdfstream
