#ifndef RDFSTREAM_RNG_HPP
#define RDFSTREAM_RNG_HPP

#include <cstdint>
#include <random>
#include <span>

namespace rdfstream {

// Deterministic draws layered directly on mt19937_64. The standard pins the
// engine's output sequence but not the distributions', so generated streams
// stay byte-identical across standard library implementations.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, bound); bound > 0. Rejection-sampled, unbiased.
    std::uint32_t uniform_u32(std::uint32_t bound)
    {
        const std::uint64_t span = bound;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x = engine_();
        while (x >= limit)
            x = engine_();
        return static_cast<std::uint32_t>(x % span);
    }

    // Uniform in [lo, hi] inclusive.
    std::uint32_t uniform_range(std::uint32_t lo, std::uint32_t hi)
    {
        return lo + uniform_u32(hi - lo + 1);
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform_real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform_real() < p; }

    // Index drawn with the given (not necessarily normalized) weights.
    std::size_t weighted(std::span<const double> weights)
    {
        double total = 0;
        for (double w : weights)
            total += w;
        double x = uniform_real() * total;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            if (x < weights[i])
                return i;
            x -= weights[i];
        }
        return weights.empty() ? 0 : weights.size() - 1;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace rdfstream

#endif
