#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rdfstream/bench.hpp"
#include "rdfstream/corpus.hpp"
#include "rdfstream/csv.hpp"
#include "rdfstream/firehose.hpp"
#include "rdfstream/ingest.hpp"
#include "rdfstream/rdftx_codec.hpp"
#include "rdfstream/transport.hpp"

using namespace rdfstream;

namespace {

// Exit codes: 0 success, 2 usage, 3 socket/bind, 4 I/O.
constexpr int kExitUsage = 2;
constexpr int kExitBind = 3;
constexpr int kExitIo = 4;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::atomic<bool> g_signalled{false};

void handle_signal(int)
{
    g_signalled.store(true);
}

std::uint64_t effective_seed(std::uint64_t cli_seed)
{
    // RDFSTREAM_SEED overrides --seed when set.
    if (const char* env = std::getenv("RDFSTREAM_SEED"); env != nullptr && *env != '\0')
        return std::strtoull(env, nullptr, 10);
    return cli_seed;
}

class CorpusSource : public TransactionSource {
public:
    explicit CorpusSource(const std::string& path) : in_(path, std::ios::binary)
    {
        if (!in_)
            throw IoError("cannot open corpus file: " + path);
    }

    std::optional<Transaction> next() override
    {
        auto doc = read_corpus_record(in_);
        if (!doc)
            return std::nullopt;
        return parse_rdftx(*doc);
    }

private:
    std::ifstream in_;
};

std::ofstream open_output(const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open output file: " + path);
    return out;
}

// ---------------------------------------------------------------------------
// gen

int cmd_gen(std::uint64_t count, std::uint64_t seed, const std::string& out_path)
{
    auto out = open_output(out_path);
    FirehoseStream stream(effective_seed(seed), 1000.0, count);
    std::uint64_t written = 0;
    while (auto timed = stream.next()) {
        write_corpus_record(out, serialize_rdftx(timed->tx));
        ++written;
    }
    out.flush();
    if (!out)
        throw IoError("write failed: " + out_path);
    std::cerr << "wrote " << written << " transactions to " << out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// send

int cmd_send(const std::vector<std::string>& endpoint_args, double rate,
             const std::string& codec_name_arg, const std::string& corpus_path,
             std::uint64_t count, std::uint64_t seed)
{
    std::vector<Endpoint> endpoints;
    for (const auto& text : endpoint_args)
        endpoints.push_back(parse_endpoint(text));
    EndpointSet endpoint_set(std::move(endpoints));

    const auto codec = codec_from_name(codec_name_arg);
    if (!codec)
        throw UsageError("unknown codec: " + codec_name_arg);

    SendConfig cfg;
    cfg.target_rate = rate;
    cfg.codec = *codec;

    std::unique_ptr<TransactionSource> source;
    if (!corpus_path.empty())
        source = std::make_unique<CorpusSource>(corpus_path);
    else
        source = std::make_unique<FirehoseSource>(effective_seed(seed), count);

    const SendStats stats = udp_send_stream(*source, endpoint_set, cfg);

    std::cout << "sent,bytes_sent,oversize_rejected,send_failures,duration_s,achieved_per_sec,"
                 "per_endpoint_sent\n";
    std::string per_endpoint;
    for (std::size_t i = 0; i < stats.per_endpoint_sent.size(); ++i) {
        if (i > 0)
            per_endpoint += '|';
        per_endpoint += std::to_string(stats.per_endpoint_sent[i]);
    }
    const double achieved =
        stats.duration.count() > 0 ? static_cast<double>(stats.sent) / stats.duration.count()
                                   : 0;
    char line[256];
    std::snprintf(line, sizeof line, "%llu,%llu,%llu,%llu,%.3f,%.1f,%s\n",
                  static_cast<unsigned long long>(stats.sent),
                  static_cast<unsigned long long>(stats.bytes_sent),
                  static_cast<unsigned long long>(stats.oversize_rejected),
                  static_cast<unsigned long long>(stats.send_failures),
                  stats.duration.count(), achieved, per_endpoint.c_str());
    std::cout << line;
    return 0;
}

// ---------------------------------------------------------------------------
// recv

int cmd_recv(std::vector<std::uint16_t> ports, std::size_t batch, std::size_t workers,
             double commit_floor_ms, double duration_s, const std::string& snapshot_path)
{
    if (ports.empty())
        throw UsageError("recv needs at least one port");
    if (workers > 0 && ports.size() == 1 && workers > 1) {
        // One base port + a worker count expands to consecutive ports.
        const std::uint16_t base = ports[0];
        ports.clear();
        for (std::size_t i = 0; i < workers; ++i)
            ports.push_back(static_cast<std::uint16_t>(base + i));
    } else if (workers > 0 && workers != ports.size()) {
        throw UsageError("--workers must match the number of --ports");
    }

    IngestConfig cfg;
    cfg.ports = ports;
    cfg.policy.batch_size = batch;
    cfg.policy.simulated_commit_floor =
        std::chrono::microseconds(static_cast<long>(commit_floor_ms * 1000));
    cfg.duration = duration_s >= 0 ? std::chrono::duration<double>(duration_s)
                                   : std::chrono::duration<double>(-1);

    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);

    QuadStore store(cfg.policy);
    const IngestStats stats = ingest_run(store, cfg, g_signalled);
    std::cout << ingest_stats_csv(stats);

    if (!snapshot_path.empty()) {
        auto out = open_output(snapshot_path);
        store.write_nquads(out);
        if (!out)
            throw IoError("snapshot write failed: " + snapshot_path);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// bench

void write_samples(const std::vector<ThroughputSample>& samples, const std::string& out_path)
{
    std::string text = throughput_csv_header();
    for (const auto& s : samples)
        text += throughput_csv_row(s);
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    auto out = open_output(out_path);
    out << text;
    if (!out)
        throw IoError("write failed: " + out_path);
}

int cmd_bench_http(bool post, const std::vector<std::size_t>& series, std::size_t requests,
                   const std::string& out_path)
{
    BlobServer server;
    std::vector<ThroughputSample> samples;
    for (std::size_t body : series)
        samples.push_back(post ? http_post_bench(server.port(), body, requests)
                               : http_get_bench(server.port(), body, requests));
    write_samples(samples, out_path);
    return 0;
}

int cmd_bench_udp_size(const std::vector<std::size_t>& series, std::uint64_t datagrams,
                       const std::string& out_path)
{
    std::vector<ThroughputSample> samples;
    for (std::size_t size : series)
        samples.push_back(udp_size_bench(size, datagrams));
    write_samples(samples, out_path);
    return 0;
}

int cmd_bench_udp_loss(const std::vector<double>& series, std::uint64_t datagrams,
                       std::uint64_t seed, const std::string& out_path)
{
    std::vector<ThroughputSample> samples;
    for (double p : series) {
        if (p < 0 || p > 1)
            throw UsageError("drop probability must be in [0,1]");
        samples.push_back(udp_loss_bench(p, datagrams, effective_seed(seed)));
    }
    write_samples(samples, out_path);
    return 0;
}

int cmd_bench_workers(const std::vector<std::size_t>& series, double duration_s, double rate,
                      std::size_t batch, std::uint64_t seed, const std::string& out_path)
{
    CommitPolicy policy;
    policy.batch_size = batch;
    std::vector<ThroughputSample> samples;
    for (std::size_t workers : series) {
        if (workers == 0)
            throw UsageError("worker count must be positive");
        samples.push_back(
            worker_scaling_bench(workers, rate, duration_s, effective_seed(seed), policy));
    }
    write_samples(samples, out_path);
    return 0;
}

// ---------------------------------------------------------------------------
// report

struct ReportRow {
    ThroughputSample sample;
    std::string origin; // file:line
};

double parse_number(const std::string& text, const std::string& origin)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size())
            throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw IoError(origin + ": malformed row: bad number '" + text + "'");
    }
}

int cmd_report(const std::vector<std::string>& paths)
{
    std::vector<ReportRow> rows;
    for (const auto& path : paths) {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot open " + path);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty())
                continue;
            const std::string origin = path + ":" + std::to_string(line_no);
            std::vector<std::string> fields;
            try {
                fields = parse_csv_row(line);
            } catch (const std::exception& e) {
                throw IoError(origin + ": malformed row: " + e.what());
            }
            if (line_no == 1) {
                if (csv_join(fields) + "\n" != throughput_csv_header())
                    throw IoError(origin + ": not a throughput CSV header");
                continue;
            }
            if (fields.size() != 9)
                throw IoError(origin + ": malformed row: expected 9 fields, got "
                              + std::to_string(fields.size()));
            ReportRow row;
            row.origin = origin;
            row.sample.experiment = fields[0];
            row.sample.variable = fields[1];
            row.sample.value = parse_number(fields[2], origin);
            row.sample.n = static_cast<std::uint64_t>(parse_number(fields[3], origin));
            row.sample.duration_s = parse_number(fields[4], origin);
            row.sample.requests_per_sec = parse_number(fields[5], origin);
            row.sample.bytes_per_sec = parse_number(fields[6], origin);
            row.sample.tx_per_sec = parse_number(fields[7], origin);
            row.sample.config = fields[8];
            rows.push_back(std::move(row));
        }
    }

    // The same experiment and variable value under two different configs is
    // flagged: those rows are not comparable.
    std::map<std::string, std::string> seen_config;
    std::vector<std::string> conflicts;
    for (const auto& row : rows) {
        const std::string key = row.sample.experiment + "\x1f" + row.sample.variable + "\x1f"
            + std::to_string(row.sample.value);
        auto [it, inserted] = seen_config.try_emplace(key, row.sample.config);
        if (!inserted && it->second != row.sample.config)
            conflicts.push_back("conflicting config for experiment '" + row.sample.experiment
                                + "' at " + row.sample.variable + "="
                                + std::to_string(row.sample.value) + " (" + row.origin + ")");
    }

    std::map<std::string, std::vector<const ReportRow*>> by_experiment;
    for (const auto& row : rows)
        by_experiment[row.sample.experiment].push_back(&row);

    char line[256];
    std::printf("%-12s %-16s %12s %12s %14s %12s\n", "experiment", "variable", "value",
                "requests/s", "bytes/s", "tx/s");
    for (auto& [experiment, group] : by_experiment) {
        std::sort(group.begin(), group.end(), [](const ReportRow* a, const ReportRow* b) {
            return a->sample.value < b->sample.value;
        });
        double rq_min = 1e300, rq_max = -1e300, rq_sum = 0;
        double by_min = 1e300, by_max = -1e300, by_sum = 0;
        for (const ReportRow* row : group) {
            const auto& s = row->sample;
            std::snprintf(line, sizeof line, "%-12s %-16s %12.6g %12.6g %14.6g %12.6g\n",
                          s.experiment.c_str(), s.variable.c_str(), s.value,
                          s.requests_per_sec, s.bytes_per_sec, s.tx_per_sec);
            std::fputs(line, stdout);
            rq_min = std::min(rq_min, s.requests_per_sec);
            rq_max = std::max(rq_max, s.requests_per_sec);
            rq_sum += s.requests_per_sec;
            by_min = std::min(by_min, s.bytes_per_sec);
            by_max = std::max(by_max, s.bytes_per_sec);
            by_sum += s.bytes_per_sec;
        }
        const double n = static_cast<double>(group.size());
        std::snprintf(line, sizeof line,
                      "  -> %s: %zu rows; requests/s min=%.6g max=%.6g mean=%.6g; "
                      "bytes/s min=%.6g max=%.6g mean=%.6g\n",
                      experiment.c_str(), group.size(), rq_min, rq_max, rq_sum / n, by_min,
                      by_max, by_sum / n);
        std::fputs(line, stdout);
    }
    for (const auto& conflict : conflicts)
        std::printf("CONFLICT: %s\n", conflict.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"UDP/HTTP streaming of atomic RDF update transactions, with an embedded "
                 "quad store and throughput benchmark suites"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a replayable transaction corpus");
    std::uint64_t gen_count = 1000;
    std::uint64_t gen_seed = 42;
    std::string gen_out;
    gen->add_option("--count", gen_count, "Transactions to generate");
    gen->add_option("--seed", gen_seed, "Stream seed (RDFSTREAM_SEED overrides)");
    gen->add_option("--out", gen_out, "Output corpus path")->required();

    // send
    auto* send = app.add_subcommand("send", "Stream transactions over UDP datagrams");
    std::vector<std::string> send_endpoints;
    double send_rate = 1000;
    std::string send_codec = "deflate";
    std::string send_corpus;
    std::uint64_t send_count = 30000;
    std::uint64_t send_seed = 42;
    send->add_option("--endpoints", send_endpoints, "host:port receiver list")
        ->required()
        ->delimiter(',');
    send->add_option("--rate", send_rate, "Datagrams per second (0 = unpaced)");
    send->add_option("--codec", send_codec, "identity|deflate|gzip");
    send->add_option("--corpus", send_corpus, "Replay a corpus file instead of generating");
    send->add_option("--count", send_count, "Transactions to generate when no corpus is given");
    send->add_option("--seed", send_seed, "Generator seed (RDFSTREAM_SEED overrides)");

    // recv
    auto* recv = app.add_subcommand("recv", "Receive datagrams into the quad store");
    std::vector<std::uint16_t> recv_ports;
    std::size_t recv_batch = kDefaultCommitBatch;
    std::size_t recv_workers = 0;
    double recv_floor_ms = 0;
    double recv_duration = -1;
    std::string recv_snapshot;
    recv->add_option("--ports", recv_ports, "UDP ports, one worker each")
        ->required()
        ->delimiter(',');
    recv->add_option("--batch", recv_batch, "Transactions per commit");
    recv->add_option("--workers", recv_workers,
                     "Worker count; with one base port, binds that many consecutive ports");
    recv->add_option("--commit-floor-ms", recv_floor_ms,
                     "Simulated minimum commit latency in milliseconds");
    recv->add_option("--duration", recv_duration,
                     "Run time in seconds; omit to run until SIGINT/SIGTERM");
    recv->add_option("--snapshot", recv_snapshot, "Write an N-Quads snapshot at shutdown");

    // bench
    auto* bench = app.add_subcommand("bench", "Throughput benchmark sweeps");
    bench->require_subcommand(1);
    std::string bench_out;

    auto* bench_get = bench->add_subcommand("http-get", "GET bytes/s vs body size");
    auto* bench_post = bench->add_subcommand("http-post", "POST bytes/s vs body size");
    std::vector<std::size_t> http_series{1000, 10000, 100000};
    std::size_t http_requests = 100;
    for (auto* sub : {bench_get, bench_post}) {
        sub->add_option("--series", http_series, "Body sizes in bytes")->delimiter(',');
        sub->add_option("--requests", http_requests, "Requests per data point");
        sub->add_option("--out", bench_out, "CSV output path (default stdout)");
    }

    auto* bench_size = bench->add_subcommand("udp-size", "Datagram goodput vs payload size");
    std::vector<std::size_t> size_series{200, 568, 1000, 1492, 2000};
    std::uint64_t size_datagrams = 1000;
    bench_size->add_option("--series", size_series, "Payload sizes in bytes")->delimiter(',');
    bench_size->add_option("--datagrams", size_datagrams, "Datagrams per data point");
    bench_size->add_option("--out", bench_out, "CSV output path (default stdout)");

    auto* bench_loss = bench->add_subcommand("udp-loss", "Goodput vs drop probability");
    std::vector<double> loss_series{0.0, 0.1, 0.3, 0.5};
    std::uint64_t loss_datagrams = 10000;
    std::uint64_t loss_seed = 42;
    bench_loss->add_option("--series", loss_series, "Drop probabilities")->delimiter(',');
    bench_loss->add_option("--datagrams", loss_datagrams, "Datagrams per data point");
    bench_loss->add_option("--seed", loss_seed, "Channel seed (RDFSTREAM_SEED overrides)");
    bench_loss->add_option("--out", bench_out, "CSV output path (default stdout)");

    auto* bench_workers = bench->add_subcommand("workers", "Ingest throughput vs worker count");
    std::vector<std::size_t> worker_series{1, 2, 4};
    double worker_duration = 3.0;
    double worker_rate = 0;
    std::size_t worker_batch = kDefaultCommitBatch;
    std::uint64_t worker_seed = 42;
    bench_workers->add_option("--series", worker_series, "Worker counts")->delimiter(',');
    bench_workers->add_option("--duration", worker_duration, "Seconds per data point");
    bench_workers->add_option("--rate", worker_rate, "Offered datagrams/s (0 = blast)");
    bench_workers->add_option("--batch", worker_batch, "Transactions per commit");
    bench_workers->add_option("--seed", worker_seed, "Corpus seed (RDFSTREAM_SEED overrides)");
    bench_workers->add_option("--out", bench_out, "CSV output path (default stdout)");

    // report
    auto* report = app.add_subcommand("report", "Merge and summarize benchmark CSVs");
    std::vector<std::string> report_paths;
    report->add_option("paths", report_paths, "CSV files to merge")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_gen(gen_count, gen_seed, gen_out);
        if (send->parsed())
            return cmd_send(send_endpoints, send_rate, send_codec, send_corpus, send_count,
                            send_seed);
        if (recv->parsed())
            return cmd_recv(recv_ports, recv_batch, recv_workers, recv_floor_ms, recv_duration,
                            recv_snapshot);
        if (bench->parsed()) {
            if (bench_get->parsed())
                return cmd_bench_http(false, http_series, http_requests, bench_out);
            if (bench_post->parsed())
                return cmd_bench_http(true, http_series, http_requests, bench_out);
            if (bench_size->parsed())
                return cmd_bench_udp_size(size_series, size_datagrams, bench_out);
            if (bench_loss->parsed())
                return cmd_bench_udp_loss(loss_series, loss_datagrams, loss_seed, bench_out);
            if (bench_workers->parsed())
                return cmd_bench_workers(worker_series, worker_duration, worker_rate,
                                         worker_batch, worker_seed, bench_out);
        }
        if (report->parsed())
            return cmd_report(report_paths);
        throw UsageError("no subcommand selected");
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const TransportError& e) {
        std::cerr << "transport error: " << e.what() << "\n";
        return (e.code() == TransportErrc::BindFailure || e.code() == TransportErrc::SocketSetup)
            ? kExitBind
            : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
