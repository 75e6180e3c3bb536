#ifndef RDFSTREAM_RDFTX_CODEC_HPP
#define RDFSTREAM_RDFTX_CODEC_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "rdfstream/transaction.hpp"

namespace rdfstream {

inline constexpr const char* kRdfTransactionMediaType = "application/x-rdftransaction";

enum class CodecErrc {
    MalformedXml,
    UnknownElement,
    MissingNode,
    NonIriPredicate,
    InvalidTerm,
    UnknownCommand,
    CursorUnset,
    BadObjectType,
    Unserializable,
};

class CodecError : public std::runtime_error {
public:
    CodecError(CodecErrc code, const std::string& what)
        : std::runtime_error(what), code_(code)
    {
    }

    CodecErrc code() const { return code_; }

private:
    CodecErrc code_;
};

// Parses an application/x-rdftransaction document: a `transaction` root with
// `add`/`remove` children, each holding three term nodes (`uri`, `bnode`, or
// `literal`) and one `contexts` element. `xml:lang` and `datatype` attributes
// on `literal` map to language tag and datatype IRI; language tags are
// lowercased on parse.
//
// The accepted XML subset is deliberately small: elements, attributes,
// character data, comments and an XML declaration. No namespaces, DTDs,
// CDATA or external entities — entity expansion is an attack surface on a
// network-facing parser. Any byte sequence either parses or raises
// CodecError; it never crashes or mis-reads.
Transaction parse_rdftx(std::string_view document);

// Emits ops in order, pretty-printed like the reference documents, escaping
// & < > " in text and attribute values. Output re-parses to an equal
// Transaction. Throws CodecError{InvalidTerm} on invalid input terms.
std::string serialize_rdftx(const Transaction& t);

} // namespace rdfstream

#endif
