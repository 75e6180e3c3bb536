#ifndef RDFSTREAM_TRANSPORT_HPP
#define RDFSTREAM_TRANSPORT_HPP

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rdfstream/datagram.hpp"
#include "rdfstream/transaction.hpp"

namespace rdfstream {

struct Endpoint {
    std::string host;
    std::uint16_t port = 0;
};

// Parses "host:port". Throws std::invalid_argument on malformed input.
Endpoint parse_endpoint(std::string_view text);

// Non-empty ordered receiver list with a round-robin cursor that advances by
// one per datagram, modulo the list length.
class EndpointSet {
public:
    explicit EndpointSet(std::vector<Endpoint> endpoints);

    std::size_t next_index();
    const Endpoint& at(std::size_t idx) const { return endpoints_[idx]; }
    std::size_t size() const { return endpoints_.size(); }
    const std::vector<Endpoint>& endpoints() const { return endpoints_; }

private:
    std::vector<Endpoint> endpoints_;
    std::size_t cursor_ = 0;
};

struct SendStats {
    std::uint64_t sent = 0;
    std::uint64_t bytes_sent = 0;
    std::uint64_t oversize_rejected = 0;
    std::uint64_t send_failures = 0;
    std::vector<std::uint64_t> per_endpoint_sent;
    std::chrono::duration<double> duration{0};
};

struct RecvStats {
    std::uint64_t received = 0;
    std::uint64_t bytes_received = 0;
    std::uint64_t decode_failures = 0;
    std::chrono::duration<double> duration{0};
};

struct SendConfig {
    double target_rate = 0.0; // datagrams/second; 0 = unpaced
    CodecId codec = CodecId::Deflate;
    CompressionOptions compression{};
};

// Pull-based transaction supply so 30k-transaction streams never need to be
// materialized. Returns nullopt at end of stream.
class TransactionSource {
public:
    virtual ~TransactionSource() = default;
    virtual std::optional<Transaction> next() = 0;
};

class VectorTransactionSource : public TransactionSource {
public:
    explicit VectorTransactionSource(std::vector<Transaction> txs)
        : txs_(std::move(txs))
    {
    }

    std::optional<Transaction> next() override
    {
        if (pos_ >= txs_.size())
            return std::nullopt;
        return txs_[pos_++];
    }

private:
    std::vector<Transaction> txs_;
    std::size_t pos_ = 0;
};

// writer(endpoint_index, payload) -> accepted by the medium? Lets the same
// pacing/encoding loop drive real sockets and the in-process channel.
using DatagramWriter = std::function<bool(std::size_t, const std::string&)>;

// Encodes and dispatches every transaction round-robin across
// `endpoint_count` targets at most `cfg.target_rate` datagrams/second.
// One-way: never blocks on acknowledgment. Oversize transactions are
// counted and skipped; per-datagram write failures are counted, not fatal.
//
// Pacing uses a monotonic clock with catch-up bounded to one 10 ms batch, so
// a stalled sender does not burst unboundedly.
SendStats stream_datagrams(TransactionSource& source, std::size_t endpoint_count,
                           const SendConfig& cfg, const DatagramWriter& writer);

// stream_datagrams over one real UDP socket. Throws TransportError
// {SocketSetup} when the socket cannot be created or an endpoint does not
// resolve.
SendStats udp_send_stream(TransactionSource& source, EndpointSet& endpoints,
                          const SendConfig& cfg);

using TransactionSink = std::function<void(Transaction&&)>;
using DatagramReader = std::function<std::optional<std::string>(std::chrono::milliseconds)>;

// Decodes datagrams from `reader` and hands each intact transaction to
// `sink` exactly once until `stop` is set (plus a short drain). Decode
// failures are counted and dropped; no partial transaction ever reaches the
// sink.
RecvStats receive_datagrams(const DatagramReader& reader, const TransactionSink& sink,
                            const std::atomic<bool>& stop,
                            const CompressionOptions& opts = {});

// receive_datagrams on a bound UDP port. Throws TransportError{BindFailure}.
RecvStats udp_receive_loop(std::uint16_t port, const TransactionSink& sink,
                           const std::atomic<bool>& stop,
                           const CompressionOptions& opts = {});

// Thin RAII wrapper over an IPv4 UDP socket, shared by the send/receive
// paths and the raw throughput sweeps.
class UdpSocket {
public:
    UdpSocket();                          // unbound sender socket
    explicit UdpSocket(std::uint16_t port); // bound receiver socket
    ~UdpSocket();

    UdpSocket(UdpSocket&& other) noexcept;
    UdpSocket& operator=(UdpSocket&& other) noexcept;
    UdpSocket(const UdpSocket&) = delete;
    UdpSocket& operator=(const UdpSocket&) = delete;

    bool send_to(const Endpoint& ep, std::string_view payload);
    std::optional<std::string> receive(std::chrono::milliseconds timeout);
    std::uint16_t local_port() const;

private:
    int fd_ = -1;
};

} // namespace rdfstream

#endif
