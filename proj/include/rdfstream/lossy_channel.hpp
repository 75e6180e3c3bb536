#ifndef RDFSTREAM_LOSSY_CHANNEL_HPP
#define RDFSTREAM_LOSSY_CHANNEL_HPP

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>

namespace rdfstream {

struct LossyChannelConfig {
    double drop_probability = 0.0;    // p in [0,1]
    double reorder_probability = 0.0; // chance an arriving datagram jumps the queue
    std::uint64_t seed = 0;
};

// In-process datagram network with per-port FIFO queues and seeded Bernoulli
// loss. With drop_probability == 0 and reorder_probability == 0 the channel
// is a perfect FIFO. Models the UDP contract: a datagram arrives intact or
// not at all, possibly out of order.
class LossyNetwork {
public:
    explicit LossyNetwork(LossyChannelConfig cfg = {});

    // Returns false when the datagram was dropped by the channel.
    bool send(std::uint16_t port, std::string payload);

    // Blocks up to `timeout` for a datagram on `port`. Returns nullopt on
    // timeout, or immediately once the network is closed and the queue
    // drained.
    std::optional<std::string> receive(std::uint16_t port, std::chrono::milliseconds timeout);

    // Wakes receivers; subsequent receives drain remaining datagrams and
    // then return nullopt without waiting.
    void close();

    std::uint64_t offered() const;
    std::uint64_t delivered() const;
    std::uint64_t dropped() const;

private:
    LossyChannelConfig cfg_;
    mutable std::mutex mu_;
    std::condition_variable cv_;
    std::map<std::uint16_t, std::deque<std::string>> queues_;
    std::mt19937_64 rng_;
    std::uint64_t offered_ = 0;
    std::uint64_t delivered_ = 0;
    std::uint64_t dropped_ = 0;
    bool closed_ = false;
};

} // namespace rdfstream

#endif
