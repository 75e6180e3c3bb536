#ifndef RDFSTREAM_BENCH_HPP
#define RDFSTREAM_BENCH_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rdfstream/compression.hpp"
#include "rdfstream/quad_store.hpp"

namespace rdfstream {

// One benchmark measurement row. Every row echoes its full configuration so
// any figure can be regenerated from its CSV alone.
struct ThroughputSample {
    std::string experiment; // e.g. "http-get", "udp-size", "udp-loss", "workers"
    std::string variable;   // independent variable name
    double value = 0;       // its value for this row
    std::uint64_t n = 0;    // requests or datagrams behind the row
    double duration_s = 0;
    double requests_per_sec = 0; // requests or datagrams per second
    double bytes_per_sec = 0;
    double tx_per_sec = 0; // transactions/second where applicable, else 0
    std::string config;    // "key=value;key=value" echo of the run configuration
};

std::string throughput_csv_header();
std::string throughput_csv_row(const ThroughputSample& s);

// Loopback HTTP/1.1 benchmark peer: `GET /blob?size=N` returns N bytes,
// `POST /sink` accepts any body and returns 200 with an empty body. Binds an
// ephemeral port on 127.0.0.1 and serves until destroyed.
class BlobServer {
public:
    BlobServer();
    ~BlobServer();

    BlobServer(const BlobServer&) = delete;
    BlobServer& operator=(const BlobServer&) = delete;

    std::uint16_t port() const;
    // Distinct client ports seen, which counts TCP connections: a keep-alive
    // client shows up once.
    std::size_t connections_seen() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Issues `request_count` GETs for a `body_size`-byte blob over one
// persistent connection. Throws std::runtime_error on connection failure or
// a non-200 response.
ThroughputSample http_get_bench(std::uint16_t port, std::size_t body_size,
                                std::size_t request_count);

// Same with the body on the request side, POSTed to /sink.
ThroughputSample http_post_bench(std::uint16_t port, std::size_t body_size,
                                 std::size_t request_count);

// Raw datagram goodput at a given payload size: blasts `count` datagrams at
// a loopback receiver and reports receiver-side bytes/second.
ThroughputSample udp_size_bench(std::size_t payload_bytes, std::uint64_t count);

// Goodput through the in-process lossy channel at drop probability p.
ThroughputSample udp_loss_bench(double drop_probability, std::uint64_t count,
                                std::uint64_t seed);

// Ingest throughput with `workers` receive workers under saturating offered
// load generated from a seeded corpus. Returns transactions/second applied.
ThroughputSample worker_scaling_bench(std::size_t workers, double offered_rate,
                                      double duration_s, std::uint64_t seed,
                                      const CommitPolicy& policy);

} // namespace rdfstream

#endif
