#ifndef RDFSTREAM_CONSTANTS_HPP
#define RDFSTREAM_CONSTANTS_HPP

#include <cstddef>

namespace rdfstream {

// Wire and batching constants shared across the toolkit.
//
// Ethernet v2 imposes a 1500-byte MTU; a UDP datagram spends 8 bytes on its
// header, so a payload larger than 1492 bytes fragments. All IPv4 hosts must
// accept 576-byte datagrams, so payloads under 568 bytes waste the frame.
inline constexpr std::size_t kEthernetMtu = 1500;
inline constexpr std::size_t kUdpHeaderBytes = 8;
inline constexpr std::size_t kMaxPayloadBytes = kEthernetMtu - kUdpHeaderBytes;
inline constexpr std::size_t kMinEfficientPayloadBytes = 576 - kUdpHeaderBytes;

// Batching one commit per 100 transactions (~3000 update operations)
// amortizes a fixed per-commit cost that is at least ~4 ms in the modeled
// store.
inline constexpr std::size_t kDefaultCommitBatch = 100;

// A tweet translates to ~18 added triples plus ~9 removes that retract the
// author's previous mutable profile values.
inline constexpr int kAvgAddsPerTweet = 18;
inline constexpr int kAvgRemovesPerTweet = 9;

static_assert(kMaxPayloadBytes == 1492);
static_assert(kMinEfficientPayloadBytes == 568);

} // namespace rdfstream

#endif
