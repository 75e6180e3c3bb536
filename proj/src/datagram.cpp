#include "rdfstream/datagram.hpp"

#include "rdfstream/rdftx_codec.hpp"

namespace rdfstream {

std::string encode_datagram_document(std::string_view rdftx_document, CodecId codec,
                                     const CompressionOptions& opts)
{
    std::string body = compress(codec, rdftx_document, opts);
    if (1 + body.size() > kMaxPayloadBytes)
        throw TransportError(TransportErrc::OversizePayload,
                             "compressed document needs " + std::to_string(1 + body.size())
                                 + " bytes, datagram limit is "
                                 + std::to_string(kMaxPayloadBytes)
                                 + "; split the transaction upstream");
    std::string payload;
    payload.reserve(1 + body.size());
    payload += static_cast<char>(static_cast<std::uint8_t>(codec));
    payload += body;
    return payload;
}

std::string encode_datagram(const Transaction& t, CodecId codec, const CompressionOptions& opts)
{
    return encode_datagram_document(serialize_rdftx(t), codec, opts);
}

Transaction decode_datagram(std::string_view payload, const CompressionOptions& opts)
{
    if (payload.empty())
        throw TransportError(TransportErrc::EmptyPayload, "empty datagram payload");
    const auto codec = codec_from_wire_id(static_cast<std::uint8_t>(payload[0]));
    if (!codec)
        throw TransportError(TransportErrc::UnknownCodecId,
                             "unknown codec id "
                                 + std::to_string(static_cast<unsigned>(
                                     static_cast<std::uint8_t>(payload[0]))));
    const std::string document = decompress(*codec, payload.substr(1), opts);
    return parse_rdftx(document);
}

} // namespace rdfstream
