#include "rdfstream/bench.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include <httplib.h>

#include "rdfstream/csv.hpp"
#include "rdfstream/datagram.hpp"
#include "rdfstream/firehose.hpp"
#include "rdfstream/ingest.hpp"
#include "rdfstream/lossy_channel.hpp"
#include "rdfstream/rdftx_codec.hpp"
#include "rdfstream/transport.hpp"

namespace rdfstream {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start)
{
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::string throughput_csv_header()
{
    return "experiment,variable,value,n,duration_s,requests_per_sec,bytes_per_sec,tx_per_sec,"
           "config\n";
}

std::string throughput_csv_row(const ThroughputSample& s)
{
    const std::string fields[] = {
        s.experiment,
        s.variable,
        format_double(s.value),
        std::to_string(s.n),
        format_double(s.duration_s),
        format_double(s.requests_per_sec),
        format_double(s.bytes_per_sec),
        format_double(s.tx_per_sec),
        s.config,
    };
    return csv_join(fields) + "\n";
}

struct BlobServer::Impl {
    httplib::Server server;
    std::thread thread;
    int port = 0;
    mutable std::mutex mu;
    std::set<int> client_ports;

    Impl()
    {
        // The whole point of the bench is a persistent connection; never let
        // the server hang up mid-series.
        server.set_keep_alive_max_count(1u << 20);
        server.Get("/blob", [this](const httplib::Request& req, httplib::Response& res) {
            note_client(req);
            std::size_t size = 0;
            if (auto it = req.params.find("size"); it != req.params.end())
                size = static_cast<std::size_t>(std::stoull(it->second));
            res.set_content(std::string(size, 'b'), "application/octet-stream");
        });
        server.Post("/sink", [this](const httplib::Request& req, httplib::Response& res) {
            note_client(req);
            (void)req.body;
            res.status = 200;
        });
        port = server.bind_to_any_port("127.0.0.1");
        if (port <= 0)
            throw std::runtime_error("benchmark server failed to bind");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }

    ~Impl()
    {
        server.stop();
        if (thread.joinable())
            thread.join();
    }

    void note_client(const httplib::Request& req)
    {
        std::lock_guard lock(mu);
        client_ports.insert(req.remote_port);
    }
};

BlobServer::BlobServer() : impl_(std::make_unique<Impl>()) {}

BlobServer::~BlobServer() = default;

std::uint16_t BlobServer::port() const
{
    return static_cast<std::uint16_t>(impl_->port);
}

std::size_t BlobServer::connections_seen() const
{
    std::lock_guard lock(impl_->mu);
    return impl_->client_ports.size();
}

ThroughputSample http_get_bench(std::uint16_t port, std::size_t body_size,
                                std::size_t request_count)
{
    httplib::Client client("127.0.0.1", port);
    client.set_keep_alive(true);
    const std::string path = "/blob?size=" + std::to_string(body_size);

    std::uint64_t bytes = 0;
    const auto start = clock_type::now();
    for (std::size_t i = 0; i < request_count; ++i) {
        auto res = client.Get(path);
        if (!res)
            throw std::runtime_error("HTTP GET failed: " + httplib::to_string(res.error()));
        if (res->status != 200)
            throw std::runtime_error("HTTP GET returned " + std::to_string(res->status));
        bytes += res->body.size();
    }
    const double elapsed = seconds_since(start);

    ThroughputSample sample;
    sample.experiment = "http-get";
    sample.variable = "body_bytes";
    sample.value = static_cast<double>(body_size);
    sample.n = request_count;
    sample.duration_s = elapsed;
    sample.requests_per_sec = elapsed > 0 ? static_cast<double>(request_count) / elapsed : 0;
    sample.bytes_per_sec = elapsed > 0 ? static_cast<double>(bytes) / elapsed : 0;
    sample.config = "transport=http;method=GET;body=" + std::to_string(body_size)
        + ";requests=" + std::to_string(request_count) + ";connection=persistent";
    return sample;
}

ThroughputSample http_post_bench(std::uint16_t port, std::size_t body_size,
                                 std::size_t request_count)
{
    httplib::Client client("127.0.0.1", port);
    client.set_keep_alive(true);
    const std::string body(body_size, 'p');

    std::uint64_t bytes = 0;
    const auto start = clock_type::now();
    for (std::size_t i = 0; i < request_count; ++i) {
        auto res = client.Post("/sink", body, "application/octet-stream");
        if (!res)
            throw std::runtime_error("HTTP POST failed: " + httplib::to_string(res.error()));
        if (res->status != 200)
            throw std::runtime_error("HTTP POST returned " + std::to_string(res->status));
        bytes += body.size();
    }
    const double elapsed = seconds_since(start);

    ThroughputSample sample;
    sample.experiment = "http-post";
    sample.variable = "body_bytes";
    sample.value = static_cast<double>(body_size);
    sample.n = request_count;
    sample.duration_s = elapsed;
    sample.requests_per_sec = elapsed > 0 ? static_cast<double>(request_count) / elapsed : 0;
    sample.bytes_per_sec = elapsed > 0 ? static_cast<double>(bytes) / elapsed : 0;
    sample.config = "transport=http;method=POST;body=" + std::to_string(body_size)
        + ";requests=" + std::to_string(request_count) + ";connection=persistent";
    return sample;
}

ThroughputSample udp_size_bench(std::size_t payload_bytes, std::uint64_t count)
{
    UdpSocket receiver(0);
    const std::uint16_t port = receiver.local_port();

    std::atomic<bool> stop{false};
    std::uint64_t received = 0;
    std::uint64_t received_bytes = 0;
    std::thread drain([&] {
        while (true) {
            auto payload = receiver.receive(std::chrono::milliseconds(50));
            if (payload) {
                ++received;
                received_bytes += payload->size();
            } else if (stop.load()) {
                break;
            }
        }
    });

    UdpSocket sender;
    const Endpoint ep{"127.0.0.1", port};
    const std::string payload(payload_bytes, 'u');
    const auto start = clock_type::now();
    for (std::uint64_t i = 0; i < count; ++i)
        sender.send_to(ep, payload);
    const double send_elapsed = seconds_since(start);
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
    stop.store(true);
    drain.join();
    const double elapsed = std::max(send_elapsed, 1e-9);

    ThroughputSample sample;
    sample.experiment = "udp-size";
    sample.variable = "payload_bytes";
    sample.value = static_cast<double>(payload_bytes);
    sample.n = count;
    sample.duration_s = elapsed;
    sample.requests_per_sec = static_cast<double>(received) / elapsed;
    sample.bytes_per_sec = static_cast<double>(received_bytes) / elapsed;
    sample.config = "transport=udp;payload=" + std::to_string(payload_bytes)
        + ";datagrams=" + std::to_string(count) + ";path=loopback";
    return sample;
}

ThroughputSample udp_loss_bench(double drop_probability, std::uint64_t count,
                                std::uint64_t seed)
{
    LossyNetwork net({drop_probability, 0.0, seed});
    const std::uint16_t port = 1;
    const std::string payload(200, 'x');

    const auto start = clock_type::now();
    for (std::uint64_t i = 0; i < count; ++i)
        net.send(port, payload);
    std::uint64_t received = 0;
    std::uint64_t received_bytes = 0;
    while (auto p = net.receive(port, std::chrono::milliseconds(0))) {
        ++received;
        received_bytes += p->size();
    }
    const double elapsed = std::max(seconds_since(start), 1e-9);

    ThroughputSample sample;
    sample.experiment = "udp-loss";
    sample.variable = "drop_probability";
    sample.value = drop_probability;
    sample.n = count;
    sample.duration_s = elapsed;
    sample.requests_per_sec = static_cast<double>(received) / elapsed;
    sample.bytes_per_sec = static_cast<double>(received_bytes) / elapsed;
    sample.config = "transport=lossy-channel;p=" + format_double(drop_probability)
        + ";datagrams=" + std::to_string(count) + ";seed=" + std::to_string(seed)
        + ";received=" + std::to_string(received) + ";goodput_ratio="
        + format_double(static_cast<double>(received) / static_cast<double>(count));
    return sample;
}

ThroughputSample worker_scaling_bench(std::size_t workers, double offered_rate,
                                      double duration_s, std::uint64_t seed,
                                      const CommitPolicy& policy)
{
    // Pre-encode a corpus once so the sender costs nothing but sendto(); the
    // receive side (inflate + parse + apply) is what scales with workers.
    std::vector<std::string> payloads;
    {
        FirehoseSource source(seed, 400);
        while (auto tx = source.next())
            payloads.push_back(encode_datagram(*tx, CodecId::Deflate));
    }

    QuadStore store(policy);
    std::vector<std::shared_ptr<UdpSocket>> sockets;
    std::vector<DatagramReader> readers;
    std::vector<Endpoint> endpoints;
    for (std::size_t i = 0; i < workers; ++i) {
        auto socket = std::make_shared<UdpSocket>(static_cast<std::uint16_t>(0));
        endpoints.push_back({"127.0.0.1", socket->local_port()});
        readers.push_back(
            [socket](std::chrono::milliseconds timeout) { return socket->receive(timeout); });
        sockets.push_back(std::move(socket));
    }

    std::atomic<bool> stop{false};
    std::atomic<bool> sender_stop{false};
    IngestConfig cfg;
    cfg.policy = policy;
    cfg.duration = std::chrono::duration<double>(duration_s);

    // The sender must fall silent at the deadline or the receive loops'
    // drain phase never sees a quiet socket.
    std::thread watchdog([&] {
        std::this_thread::sleep_for(std::chrono::duration<double>(duration_s));
        sender_stop.store(true);
    });

    std::thread sender([&] {
        UdpSocket tx_socket;
        const auto slice = std::chrono::duration<double>(0.01);
        const double per_slice = offered_rate * 0.01;
        auto next_slice = clock_type::now();
        double tokens = 0;
        std::size_t cursor = 0;
        std::size_t target = 0;
        while (!sender_stop.load(std::memory_order_relaxed)) {
            if (offered_rate > 0) {
                while (tokens < 1.0 && !sender_stop.load(std::memory_order_relaxed)) {
                    std::this_thread::sleep_until(next_slice);
                    const auto now = clock_type::now();
                    if (now - next_slice > slice)
                        next_slice = now; // bounded catch-up
                    next_slice +=
                        std::chrono::duration_cast<clock_type::duration>(slice);
                    tokens += per_slice;
                }
                tokens -= 1.0;
            }
            tx_socket.send_to(endpoints[target], payloads[cursor]);
            target = (target + 1) % endpoints.size();
            cursor = (cursor + 1) % payloads.size();
        }
    });

    IngestStats stats = ingest_run_readers(store, readers, cfg, stop);
    sender_stop.store(true);
    watchdog.join();
    sender.join();

    ThroughputSample sample;
    sample.experiment = "workers";
    sample.variable = "worker_count";
    sample.value = static_cast<double>(workers);
    sample.n = stats.total_applied;
    sample.duration_s = stats.duration.count();
    sample.requests_per_sec =
        stats.duration.count() > 0
            ? static_cast<double>(stats.total_received) / stats.duration.count()
            : 0;
    sample.tx_per_sec = stats.tx_per_sec;
    sample.config = "transport=udp;workers=" + std::to_string(workers)
        + ";offered_rate=" + format_double(offered_rate) + ";batch="
        + std::to_string(policy.batch_size) + ";seed=" + std::to_string(seed);
    return sample;
}

} // namespace rdfstream
