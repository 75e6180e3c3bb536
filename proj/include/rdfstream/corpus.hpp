#ifndef RDFSTREAM_CORPUS_HPP
#define RDFSTREAM_CORPUS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace rdfstream {

// Replayable offline corpus: one serialized RDF-transaction document per
// record, length-prefixed with a 4-byte big-endian length.

void write_corpus_record(std::ostream& out, std::string_view document);

// Returns nullopt at a clean end of stream; throws std::runtime_error on a
// truncated record.
std::optional<std::string> read_corpus_record(std::istream& in);

} // namespace rdfstream

#endif
