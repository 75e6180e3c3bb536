#ifndef RDFSTREAM_DATAGRAM_HPP
#define RDFSTREAM_DATAGRAM_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "rdfstream/compression.hpp"
#include "rdfstream/constants.hpp"
#include "rdfstream/transaction.hpp"

namespace rdfstream {

enum class TransportErrc {
    OversizePayload, // compressed document exceeds 1491 content bytes
    UnknownCodecId,
    EmptyPayload,
    SocketSetup,
    BindFailure,
};

class TransportError : public std::runtime_error {
public:
    TransportError(TransportErrc code, const std::string& what)
        : std::runtime_error(what), code_(code)
    {
    }

    TransportErrc code() const { return code_; }

private:
    TransportErrc code_;
};

// UDP wire format (bit-exact): byte 0 = codec id (0 identity, 1 deflate/
// RFC 1950, 2 gzip/RFC 1952); bytes 1..n = compressed
// application/x-rdftransaction document; total length <= 1492 bytes.
//
// Oversize transactions are rejected, never fragmented: splitting has to
// happen at the transaction level upstream.
std::string encode_datagram(const Transaction& t, CodecId codec,
                            const CompressionOptions& opts = {});

// Same framing for an already-serialized document (e.g. a corpus replay).
std::string encode_datagram_document(std::string_view rdftx_document, CodecId codec,
                                     const CompressionOptions& opts = {});

// Inverse of encode_datagram for uncorrupted payloads. Throws TransportError
// {UnknownCodecId, EmptyPayload}, CompressionError{CorruptStream} or
// CodecError{MalformedXml, ...}; a failed datagram is dropped and counted by
// the caller, never partially applied.
Transaction decode_datagram(std::string_view payload, const CompressionOptions& opts = {});

} // namespace rdfstream

#endif
