#include "rdfstream/transport.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>
#include <thread>

#include "rdfstream/rdftx_codec.hpp"

namespace rdfstream {

Endpoint parse_endpoint(std::string_view text)
{
    const auto colon = text.rfind(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == text.size())
        throw std::invalid_argument("endpoint must be host:port, got '" + std::string(text)
                                    + "'");
    unsigned long port = 0;
    for (char c : text.substr(colon + 1)) {
        if (c < '0' || c > '9')
            throw std::invalid_argument("bad port in endpoint '" + std::string(text) + "'");
        port = port * 10 + static_cast<unsigned long>(c - '0');
        if (port > 65535)
            throw std::invalid_argument("port out of range in '" + std::string(text) + "'");
    }
    if (port == 0)
        throw std::invalid_argument("port 0 in endpoint '" + std::string(text) + "'");
    return Endpoint{std::string(text.substr(0, colon)), static_cast<std::uint16_t>(port)};
}

EndpointSet::EndpointSet(std::vector<Endpoint> endpoints) : endpoints_(std::move(endpoints))
{
    if (endpoints_.empty())
        throw std::invalid_argument("endpoint set must not be empty");
}

std::size_t EndpointSet::next_index()
{
    const std::size_t idx = cursor_;
    cursor_ = (cursor_ + 1) % endpoints_.size();
    return idx;
}

namespace {

// Pacing in 10 ms slices; if the sender stalls, catch-up is capped at one
// slice so it never bursts unboundedly.
class TokenPacer {
public:
    explicit TokenPacer(double rate)
        : enabled_(rate > 0),
          slice_(std::chrono::duration<double>(0.01)),
          per_slice_(enabled_ ? rate * 0.01 : 0),
          next_slice_(std::chrono::steady_clock::now())
    {
    }

    void wait_for_token()
    {
        if (!enabled_)
            return;
        while (tokens_ < 1.0) {
            const auto now = std::chrono::steady_clock::now();
            if (next_slice_ > now)
                std::this_thread::sleep_until(next_slice_);
            const auto after = std::chrono::steady_clock::now();
            if (after - next_slice_ > slice_)
                next_slice_ = after; // bounded catch-up
            next_slice_ +=
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(slice_);
            tokens_ += per_slice_;
        }
        tokens_ -= 1.0;
    }

private:
    bool enabled_;
    std::chrono::duration<double> slice_;
    double per_slice_;
    double tokens_ = 0;
    std::chrono::steady_clock::time_point next_slice_;
};

sockaddr_in resolve_ipv4(const Endpoint& ep)
{
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(ep.port);
    if (inet_pton(AF_INET, ep.host.c_str(), &addr.sin_addr) == 1)
        return addr;

    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_DGRAM;
    addrinfo* result = nullptr;
    if (getaddrinfo(ep.host.c_str(), nullptr, &hints, &result) != 0 || result == nullptr)
        throw TransportError(TransportErrc::SocketSetup, "cannot resolve host " + ep.host);
    addr.sin_addr = reinterpret_cast<sockaddr_in*>(result->ai_addr)->sin_addr;
    freeaddrinfo(result);
    return addr;
}

void set_buffer_size(int fd, int option, int bytes)
{
    ::setsockopt(fd, SOL_SOCKET, option, &bytes, sizeof bytes);
}

} // namespace

UdpSocket::UdpSocket()
{
    fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
    if (fd_ < 0)
        throw TransportError(TransportErrc::SocketSetup,
                             std::string("socket: ") + std::strerror(errno));
    set_buffer_size(fd_, SO_SNDBUF, 8 << 20);
}

UdpSocket::UdpSocket(std::uint16_t port)
{
    fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
    if (fd_ < 0)
        throw TransportError(TransportErrc::SocketSetup,
                             std::string("socket: ") + std::strerror(errno));
    set_buffer_size(fd_, SO_RCVBUF, 8 << 20);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    addr.sin_addr.s_addr = htonl(INADDR_ANY);
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
        const std::string what = std::string("bind port ") + std::to_string(port) + ": "
            + std::strerror(errno);
        ::close(fd_);
        fd_ = -1;
        throw TransportError(TransportErrc::BindFailure, what);
    }
}

UdpSocket::~UdpSocket()
{
    if (fd_ >= 0)
        ::close(fd_);
}

UdpSocket::UdpSocket(UdpSocket&& other) noexcept : fd_(other.fd_)
{
    other.fd_ = -1;
}

UdpSocket& UdpSocket::operator=(UdpSocket&& other) noexcept
{
    if (this != &other) {
        if (fd_ >= 0)
            ::close(fd_);
        fd_ = other.fd_;
        other.fd_ = -1;
    }
    return *this;
}

bool UdpSocket::send_to(const Endpoint& ep, std::string_view payload)
{
    const sockaddr_in addr = resolve_ipv4(ep);
    const ssize_t n = ::sendto(fd_, payload.data(), payload.size(), 0,
                               reinterpret_cast<const sockaddr*>(&addr), sizeof addr);
    return n == static_cast<ssize_t>(payload.size());
}

std::optional<std::string> UdpSocket::receive(std::chrono::milliseconds timeout)
{
    timeval tv{};
    tv.tv_sec = static_cast<time_t>(timeout.count() / 1000);
    tv.tv_usec = static_cast<suseconds_t>((timeout.count() % 1000) * 1000);
    ::setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);

    char buffer[65536];
    const ssize_t n = ::recv(fd_, buffer, sizeof buffer, 0);
    if (n < 0)
        return std::nullopt; // timeout or transient error
    return std::string(buffer, static_cast<std::size_t>(n));
}

std::uint16_t UdpSocket::local_port() const
{
    sockaddr_in addr{};
    socklen_t len = sizeof addr;
    ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    return ntohs(addr.sin_port);
}

SendStats stream_datagrams(TransactionSource& source, std::size_t endpoint_count,
                           const SendConfig& cfg, const DatagramWriter& writer)
{
    SendStats stats;
    stats.per_endpoint_sent.assign(endpoint_count, 0);
    TokenPacer pacer(cfg.target_rate);
    std::size_t cursor = 0;

    const auto start = std::chrono::steady_clock::now();
    for (;;) {
        auto tx = source.next();
        if (!tx)
            break;
        std::string payload;
        try {
            payload = encode_datagram(*tx, cfg.codec, cfg.compression);
        } catch (const TransportError& e) {
            if (e.code() == TransportErrc::OversizePayload) {
                ++stats.oversize_rejected;
                continue;
            }
            throw;
        }
        pacer.wait_for_token();
        const std::size_t idx = cursor;
        cursor = (cursor + 1) % endpoint_count;
        ++stats.per_endpoint_sent[idx];
        if (writer(idx, payload)) {
            ++stats.sent;
            stats.bytes_sent += payload.size();
        } else {
            ++stats.send_failures;
        }
    }
    stats.duration = std::chrono::steady_clock::now() - start;
    return stats;
}

SendStats udp_send_stream(TransactionSource& source, EndpointSet& endpoints,
                          const SendConfig& cfg)
{
    UdpSocket socket;
    // Resolve every endpoint up front so a bad host fails before any send.
    std::vector<Endpoint> resolved = endpoints.endpoints();
    for (const auto& ep : resolved)
        (void)resolve_ipv4(ep);

    return stream_datagrams(source, endpoints.size(), cfg,
                            [&](std::size_t idx, const std::string& payload) {
                                return socket.send_to(resolved[idx], payload);
                            });
}

RecvStats receive_datagrams(const DatagramReader& reader, const TransactionSink& sink,
                            const std::atomic<bool>& stop, const CompressionOptions& opts)
{
    RecvStats stats;
    const auto start = std::chrono::steady_clock::now();
    bool draining = false;
    for (;;) {
        if (!draining && stop.load(std::memory_order_relaxed))
            draining = true;
        auto payload = reader(draining ? std::chrono::milliseconds(20)
                                       : std::chrono::milliseconds(100));
        if (!payload) {
            if (draining)
                break;
            continue;
        }
        stats.bytes_received += payload->size();
        try {
            Transaction tx = decode_datagram(*payload, opts);
            ++stats.received;
            sink(std::move(tx));
        } catch (const TransportError&) {
            ++stats.decode_failures;
        } catch (const CompressionError&) {
            ++stats.decode_failures;
        } catch (const CodecError&) {
            ++stats.decode_failures;
        }
    }
    stats.duration = std::chrono::steady_clock::now() - start;
    return stats;
}

RecvStats udp_receive_loop(std::uint16_t port, const TransactionSink& sink,
                           const std::atomic<bool>& stop, const CompressionOptions& opts)
{
    UdpSocket socket(port);
    return receive_datagrams(
        [&](std::chrono::milliseconds timeout) { return socket.receive(timeout); }, sink, stop,
        opts);
}

} // namespace rdfstream
