#include "rdfstream/lossy_channel.hpp"

namespace rdfstream {

LossyNetwork::LossyNetwork(LossyChannelConfig cfg) : cfg_(cfg), rng_(cfg.seed) {}

bool LossyNetwork::send(std::uint16_t port, std::string payload)
{
    std::lock_guard lock(mu_);
    ++offered_;
    const double draw =
        static_cast<double>(rng_() >> 11) * 0x1.0p-53; // one draw per datagram, drop first
    if (cfg_.drop_probability > 0 && draw < cfg_.drop_probability) {
        ++dropped_;
        return false;
    }
    auto& queue = queues_[port];
    bool reorder = false;
    if (cfg_.reorder_probability > 0 && !queue.empty()) {
        const double r = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        reorder = r < cfg_.reorder_probability;
    }
    if (reorder)
        queue.insert(queue.end() - 1, std::move(payload)); // swap with the datagram ahead
    else
        queue.push_back(std::move(payload));
    ++delivered_;
    cv_.notify_all();
    return true;
}

std::optional<std::string> LossyNetwork::receive(std::uint16_t port,
                                                 std::chrono::milliseconds timeout)
{
    std::unique_lock lock(mu_);
    auto& queue = queues_[port];
    cv_.wait_for(lock, timeout, [&] { return !queue.empty() || closed_; });
    if (queue.empty())
        return std::nullopt;
    std::string payload = std::move(queue.front());
    queue.pop_front();
    return payload;
}

void LossyNetwork::close()
{
    std::lock_guard lock(mu_);
    closed_ = true;
    cv_.notify_all();
}

std::uint64_t LossyNetwork::offered() const
{
    std::lock_guard lock(mu_);
    return offered_;
}

std::uint64_t LossyNetwork::delivered() const
{
    std::lock_guard lock(mu_);
    return delivered_;
}

std::uint64_t LossyNetwork::dropped() const
{
    std::lock_guard lock(mu_);
    return dropped_;
}

} // namespace rdfstream
