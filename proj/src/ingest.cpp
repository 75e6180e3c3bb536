#include "rdfstream/ingest.hpp"

#include <memory>
#include <thread>

#include "rdfstream/csv.hpp"

namespace rdfstream {

namespace {

struct WorkerOutcome {
    RecvStats recv;
    std::uint64_t applied = 0;
    std::uint64_t applied_ops = 0;
    std::uint64_t committed_tx = 0;
    std::uint64_t commits = 0;
};

WorkerOutcome run_worker(QuadStore& store, const DatagramReader& reader,
                         const CommitPolicy& policy, const std::atomic<bool>& stop,
                         const CompressionOptions& compression)
{
    WorkerOutcome outcome;
    QuadStore::Worker worker = store.make_worker();
    outcome.recv = receive_datagrams(
        reader,
        [&](Transaction&& tx) {
            worker.apply(std::move(tx));
            if (worker.pending_transactions() >= policy.batch_size)
                worker.commit();
        },
        stop, compression);
    worker.commit(); // final flush
    outcome.applied = worker.applied_transactions();
    outcome.applied_ops = worker.applied_ops();
    outcome.committed_tx = worker.committed_transactions();
    outcome.commits = worker.commits();
    return outcome;
}

IngestStats aggregate(std::vector<IngestWorkerStats> workers,
                      std::chrono::duration<double> elapsed)
{
    IngestStats stats;
    stats.workers = std::move(workers);
    stats.duration = elapsed;
    for (const auto& w : stats.workers) {
        stats.total_received += w.received;
        stats.total_applied += w.applied;
        stats.total_committed_tx += w.committed_tx;
        stats.total_commits += w.commits;
    }
    if (elapsed.count() > 0)
        stats.tx_per_sec = static_cast<double>(stats.total_applied) / elapsed.count();
    return stats;
}

} // namespace

IngestStats ingest_run_readers(QuadStore& store, const std::vector<DatagramReader>& readers,
                               const IngestConfig& cfg, const std::atomic<bool>& stop)
{
    const auto start = std::chrono::steady_clock::now();
    std::atomic<bool> local_stop{false};
    std::vector<WorkerOutcome> outcomes(readers.size());
    std::vector<std::thread> threads;
    threads.reserve(readers.size());
    for (std::size_t i = 0; i < readers.size(); ++i) {
        threads.emplace_back([&, i] {
            outcomes[i] =
                run_worker(store, readers[i], cfg.policy, local_stop, cfg.compression);
        });
    }

    // Owner thread watches the deadline and the caller's stop flag. A
    // negative duration means "run until stop"; zero means a zero-length run.
    const bool run_until_stop = cfg.duration.count() < 0;
    const auto deadline = start
        + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
            cfg.duration.count() > 0 ? cfg.duration : std::chrono::duration<double>(0));
    for (;;) {
        if (stop.load(std::memory_order_relaxed))
            break;
        if (!run_until_stop && std::chrono::steady_clock::now() >= deadline)
            break;
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    local_stop.store(true);
    for (auto& t : threads)
        t.join();

    std::vector<IngestWorkerStats> rows;
    rows.reserve(readers.size());
    for (std::size_t i = 0; i < readers.size(); ++i) {
        const auto& o = outcomes[i];
        IngestWorkerStats row;
        row.port = i < cfg.ports.size() ? cfg.ports[i] : static_cast<std::uint16_t>(i);
        row.received = o.recv.received;
        row.decode_failures = o.recv.decode_failures;
        row.applied = o.applied;
        row.applied_ops = o.applied_ops;
        row.committed_tx = o.committed_tx;
        row.commits = o.commits;
        if (o.recv.duration.count() > 0)
            row.tx_per_sec = static_cast<double>(o.applied) / o.recv.duration.count();
        rows.push_back(row);
    }
    return aggregate(std::move(rows), std::chrono::steady_clock::now() - start);
}

IngestStats ingest_run(QuadStore& store, const IngestConfig& cfg, const std::atomic<bool>& stop)
{
    // Bind every port before any ingest begins; one failure aborts the run.
    std::vector<std::shared_ptr<UdpSocket>> sockets;
    sockets.reserve(cfg.ports.size());
    for (std::uint16_t port : cfg.ports)
        sockets.push_back(std::make_shared<UdpSocket>(port));

    std::vector<DatagramReader> readers;
    readers.reserve(sockets.size());
    for (auto& socket : sockets) {
        readers.push_back([socket](std::chrono::milliseconds timeout) {
            return socket->receive(timeout);
        });
    }
    return ingest_run_readers(store, readers, cfg, stop);
}

std::string ingest_stats_csv(const IngestStats& stats)
{
    std::string out = "worker,received,applied,committed_tx,commits,tx_per_sec\n";
    char row[160];
    for (std::size_t i = 0; i < stats.workers.size(); ++i) {
        const auto& w = stats.workers[i];
        std::snprintf(row, sizeof row, "%zu,%llu,%llu,%llu,%llu,%.1f\n", i,
                      static_cast<unsigned long long>(w.received),
                      static_cast<unsigned long long>(w.applied),
                      static_cast<unsigned long long>(w.committed_tx),
                      static_cast<unsigned long long>(w.commits), w.tx_per_sec);
        out += row;
    }
    std::snprintf(row, sizeof row, "total,%llu,%llu,%llu,%llu,%.1f\n",
                  static_cast<unsigned long long>(stats.total_received),
                  static_cast<unsigned long long>(stats.total_applied),
                  static_cast<unsigned long long>(stats.total_committed_tx),
                  static_cast<unsigned long long>(stats.total_commits), stats.tx_per_sec);
    out += row;
    return out;
}

} // namespace rdfstream
