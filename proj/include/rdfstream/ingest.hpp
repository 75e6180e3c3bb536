#ifndef RDFSTREAM_INGEST_HPP
#define RDFSTREAM_INGEST_HPP

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "rdfstream/quad_store.hpp"
#include "rdfstream/transport.hpp"

namespace rdfstream {

struct IngestWorkerStats {
    std::uint16_t port = 0;
    std::uint64_t received = 0;
    std::uint64_t decode_failures = 0;
    std::uint64_t applied = 0;
    std::uint64_t applied_ops = 0;
    std::uint64_t committed_tx = 0;
    std::uint64_t commits = 0;
    double tx_per_sec = 0;
};

struct IngestStats {
    std::vector<IngestWorkerStats> workers;
    std::uint64_t total_received = 0;
    std::uint64_t total_applied = 0;
    std::uint64_t total_committed_tx = 0;
    std::uint64_t total_commits = 0;
    double tx_per_sec = 0;
    std::chrono::duration<double> duration{0};
};

// CSV: worker,received,applied,committed_tx,commits,tx_per_sec
// One row per worker plus a "total" row.
std::string ingest_stats_csv(const IngestStats& stats);

struct IngestConfig {
    std::vector<std::uint16_t> ports; // one receive worker per port
    CommitPolicy policy{};
    // Positive = timed run; zero = zero-length run; negative = run until the
    // caller's stop flag fires.
    std::chrono::duration<double> duration{0};
    CompressionOptions compression{};
};

// Starts one receive worker per port, each applying datagram transactions to
// its own pending buffer and committing every policy.batch_size
// transactions. All ports are bound before any ingest begins; a bind failure
// aborts the run. On shutdown each worker drains its socket briefly and runs
// a final flush commit.
IngestStats ingest_run(QuadStore& store, const IngestConfig& cfg,
                       const std::atomic<bool>& stop);

// Same worker loop over caller-supplied datagram readers (e.g. a
// LossyNetwork), for in-process experiments.
IngestStats ingest_run_readers(QuadStore& store, const std::vector<DatagramReader>& readers,
                               const IngestConfig& cfg, const std::atomic<bool>& stop);

} // namespace rdfstream

#endif
