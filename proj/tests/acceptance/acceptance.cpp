// Acceptance suite: one check per shipping criterion, one PASS/FAIL line
// each. Exit code is the number of failed criteria. An optional numeric
// argument runs a single criterion.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rdfstream/bench.hpp"
#include "rdfstream/compression.hpp"
#include "rdfstream/constants.hpp"
#include "rdfstream/datagram.hpp"
#include "rdfstream/firehose.hpp"
#include "rdfstream/gruf_codec.hpp"
#include "rdfstream/ingest.hpp"
#include "rdfstream/lossy_channel.hpp"
#include "rdfstream/quad_store.hpp"
#include "rdfstream/rdftx_codec.hpp"
#include "rdfstream/rng.hpp"
#include "rdfstream/transport.hpp"

#include "../test_support.hpp"

using namespace rdfstream;
using namespace testsupport;
using clock_type = std::chrono::steady_clock;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define REQUIRE_MSG(cond, ...)                                                                 \
    do {                                                                                       \
        if (!(cond)) {                                                                         \
            char buf_[512];                                                                    \
            std::snprintf(buf_, sizeof buf_, __VA_ARGS__);                                     \
            throw Failure(std::string("violated: ") + #cond + " (" + buf_ + ")");              \
        }                                                                                      \
    } while (0)

double seconds_since(clock_type::time_point start)
{
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

std::string g_note; // one-line detail appended to the PASS line

void note(const char* fmt, ...)
{
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    g_note = buf;
}

// ---------------------------------------------------------------------------
// 1. Codec round-trip: parse(serialize(t)) == t for XML and GRUF over >=10k
//    generated transactions; zero failures; < 30 s.

void criterion_01_codec_round_trip()
{
    const auto start = clock_type::now();
    FirehoseStream stream(42, 1000, 10000);
    std::uint64_t checked = 0;
    while (auto timed = stream.next()) {
        const Transaction& tx = timed->tx;
        if (parse_rdftx(serialize_rdftx(tx)) != tx)
            throw Failure("XML round-trip mismatch at transaction "
                          + std::to_string(checked));
        if (parse_gruf(serialize_gruf(tx)) != tx)
            throw Failure("GRUF round-trip mismatch at transaction "
                          + std::to_string(checked));
        ++checked;
    }
    const double elapsed = seconds_since(start);
    REQUIRE_MSG(checked == 10000, "checked %llu", (unsigned long long)checked);
    REQUIRE_MSG(elapsed < 30.0, "round-trips took %.1f s", elapsed);
    note("10000 transactions through both codecs, %.1f s", elapsed);
}

// ---------------------------------------------------------------------------
// 2. Reference fixtures: the XML document parses to exactly 1 remove + 1 add
//    with the documented terms; the GRUF document parses to the same
//    transaction. Exact match.

void criterion_02_reference_fixtures()
{
    const Transaction expected = title_replacement_transaction();

    const Transaction from_xml = parse_rdftx(fig_rdftx_document());
    REQUIRE_MSG(from_xml.ops.size() == 2, "got %zu ops", from_xml.ops.size());
    const auto stats = transaction_stats(from_xml);
    REQUIRE_MSG(stats.remove_count == 1 && stats.add_count == 1, "partition %zu/%zu",
                stats.add_count, stats.remove_count);
    REQUIRE_MSG(from_xml == expected, "XML fixture transaction differs");

    const Transaction from_gruf = parse_gruf(fig_gruf_document());
    REQUIRE_MSG(from_gruf == expected, "GRUF fixture transaction differs");
    REQUIRE_MSG(from_gruf == from_xml, "the two fixtures disagree");
    note("both documents decode to the exact two-op transaction");
}

// ---------------------------------------------------------------------------
// 3. Compression size: 1000-tweet corpus, mean uncompressed 4000-6000 bytes,
//    deflate median <= 1492 and >= 95%% fit one datagram; < 10 s.

void criterion_03_compression_size()
{
    const auto start = clock_type::now();
    FirehoseStream stream(42, 1000, 1000);
    std::vector<double> in_sizes, out_sizes;
    std::uint64_t fit = 0;
    while (auto timed = stream.next()) {
        const std::string doc = serialize_rdftx(timed->tx);
        const std::string packed = compress(CodecId::Deflate, doc);
        in_sizes.push_back(static_cast<double>(doc.size()));
        out_sizes.push_back(static_cast<double>(packed.size()));
        if (1 + packed.size() <= kMaxPayloadBytes)
            ++fit;
    }
    double in_mean = 0;
    for (double s : in_sizes)
        in_mean += s;
    in_mean /= static_cast<double>(in_sizes.size());
    std::sort(out_sizes.begin(), out_sizes.end());
    const double out_median = out_sizes[out_sizes.size() / 2];
    const double fit_ratio = static_cast<double>(fit) / static_cast<double>(in_sizes.size());
    const double elapsed = seconds_since(start);

    REQUIRE_MSG(in_mean >= 4000.0 && in_mean <= 6000.0, "mean uncompressed %.0f", in_mean);
    REQUIRE_MSG(out_median <= 1492.0, "deflate median %.0f", out_median);
    REQUIRE_MSG(fit_ratio >= 0.95, "fit ratio %.4f", fit_ratio);
    REQUIRE_MSG(elapsed < 10.0, "took %.1f s", elapsed);
    note("mean doc %.0f B, deflate median %.0f B, %.1f%% fit, %.1f s", in_mean, out_median,
         fit_ratio * 100.0, elapsed);
}

// ---------------------------------------------------------------------------
// 4. Compression timing: deflate compress and decompress of a 100000-byte
//    document each complete in < 5 ms, median over 100 iterations.

void criterion_04_compression_timing()
{
    // One large transaction document just under 100 KB, grown from the
    // generator so its entropy matches real traffic.
    TweetGenerator gen(42);
    TweetRdfizer rdfizer;
    Transaction big;
    std::string doc;
    for (;;) {
        Transaction tx = rdfizer.to_transaction(gen.next());
        for (auto& op : tx.ops)
            big.ops.push_back(std::move(op));
        doc = serialize_rdftx(big);
        if (doc.size() >= 95000)
            break;
    }
    REQUIRE_MSG(doc.size() <= 105000, "document grew to %zu bytes", doc.size());

    std::vector<double> compress_ms, decompress_ms;
    std::string packed;
    for (int i = 0; i < 100; ++i) {
        const auto t0 = clock_type::now();
        packed = compress(CodecId::Deflate, doc);
        const auto t1 = clock_type::now();
        const std::string restored = decompress(CodecId::Deflate, packed);
        const auto t2 = clock_type::now();
        if (restored != doc)
            throw Failure("round-trip mismatch");
        compress_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
        decompress_ms.push_back(std::chrono::duration<double, std::milli>(t2 - t1).count());
    }
    std::sort(compress_ms.begin(), compress_ms.end());
    std::sort(decompress_ms.begin(), decompress_ms.end());
    const double c_median = compress_ms[50];
    const double d_median = decompress_ms[50];
    REQUIRE_MSG(c_median < 5.0, "compress median %.2f ms", c_median);
    REQUIRE_MSG(d_median < 5.0, "decompress median %.2f ms", d_median);
    note("%zu-byte document: compress %.2f ms, decompress %.2f ms (medians)", doc.size(),
         c_median, d_median);
}

// ---------------------------------------------------------------------------
// 5. Datagram constraint: encode_datagram never exceeds 1492 bytes; oversize
//    inputs raise the oversize error. Adversarial incompressible literals.

void criterion_05_datagram_constraint()
{
    SeededRng rng(1492);
    std::uint64_t encoded = 0, rejected = 0;
    for (int i = 0; i < 2000; ++i) {
        // Random-hex literals resist DEFLATE at ~4 bits of entropy per byte.
        const std::size_t noise_len = rng.uniform_u32(4000);
        std::string noise;
        noise.reserve(noise_len);
        for (std::size_t b = 0; b < noise_len; ++b)
            noise += "0123456789abcdef"[rng.uniform_u32(16)];
        Transaction tx;
        tx.ops.push_back(add_op({random_iri(rng), random_iri(rng),
                                 Term::plain_literal(noise), {}}));
        const CodecId codec = kAllCodecs[rng.uniform_u32(3)];
        try {
            const std::string payload = encode_datagram(tx, codec);
            if (payload.size() > kMaxPayloadBytes)
                throw Failure("datagram of " + std::to_string(payload.size()) + " bytes");
            ++encoded;
        } catch (const TransportError& e) {
            if (e.code() != TransportErrc::OversizePayload)
                throw Failure(std::string("unexpected transport error: ") + e.what());
            ++rejected;
        }
    }
    REQUIRE_MSG(encoded > 0 && rejected > 0, "encoded %llu rejected %llu",
                (unsigned long long)encoded, (unsigned long long)rejected);

    // Regular generated traffic must never trip the limit with deflate.
    FirehoseStream stream(42, 1000, 500);
    while (auto timed = stream.next()) {
        const std::string payload = encode_datagram(timed->tx, CodecId::Deflate);
        if (payload.size() > kMaxPayloadBytes)
            throw Failure("generated transaction exceeded the limit");
    }
    note("%llu adversarial payloads within 1492 B, %llu oversize rejections",
         (unsigned long long)encoded, (unsigned long long)rejected);
}

// ---------------------------------------------------------------------------
// 6. Loss proportionality: >=10000 datagrams through the lossy channel at
//    p in {0.1, 0.3, 0.5}; received/sent within +-0.05 of 1-p; < 60 s.

void criterion_06_loss_proportionality()
{
    const auto start = clock_type::now();
    std::vector<std::string> payloads;
    {
        FirehoseStream stream(42, 1000, 2000);
        while (auto timed = stream.next())
            payloads.push_back(encode_datagram(timed->tx, CodecId::Deflate));
    }

    std::string detail;
    for (double p : {0.1, 0.3, 0.5}) {
        LossyNetwork net({p, 0.0, 60 + static_cast<std::uint64_t>(p * 10)});
        const std::uint64_t sent = 10000;
        for (std::uint64_t i = 0; i < sent; ++i)
            net.send(0, payloads[i % payloads.size()]);
        net.close();

        std::atomic<bool> stop{true};
        RecvStats stats = receive_datagrams(
            [&](std::chrono::milliseconds timeout) { return net.receive(0, timeout); },
            [](Transaction&&) {}, stop);
        const double ratio = static_cast<double>(stats.received) / static_cast<double>(sent);
        REQUIRE_MSG(std::abs(ratio - (1.0 - p)) <= 0.05, "p=%.1f ratio=%.4f", p, ratio);
        REQUIRE_MSG(stats.decode_failures == 0, "decode failures at p=%.1f", p);
        char buf[64];
        std::snprintf(buf, sizeof buf, "p=%.1f:%.4f ", p, ratio);
        detail += buf;
    }
    const double elapsed = seconds_since(start);
    REQUIRE_MSG(elapsed < 60.0, "took %.1f s", elapsed);
    note("received/sent %s(%.1f s)", detail.c_str(), elapsed);
}

// ---------------------------------------------------------------------------
// 7. Atomicity under loss: at p=0.3 the committed store equals a sequential
//    replay of exactly the delivered subset; zero deviations.

void criterion_07_atomicity_under_loss()
{
    LossyNetwork net({0.3, 0.0, 7});
    std::vector<Transaction> delivered;
    std::uint64_t sent = 0;
    {
        FirehoseStream stream(13, 1000, 3000);
        while (auto timed = stream.next()) {
            ++sent;
            if (net.send(0, encode_datagram(timed->tx, CodecId::Deflate)))
                delivered.push_back(std::move(timed->tx));
        }
    }

    QuadStore store;
    IngestConfig cfg;
    cfg.policy.batch_size = 100;
    cfg.duration = std::chrono::duration<double>(2.0);
    std::vector<DatagramReader> readers{
        [&net](std::chrono::milliseconds timeout) { return net.receive(0, timeout); }};
    std::atomic<bool> stop{false};
    const IngestStats stats = ingest_run_readers(store, readers, cfg, stop);

    REQUIRE_MSG(stats.total_applied == delivered.size(), "applied %llu delivered %zu",
                (unsigned long long)stats.total_applied, delivered.size());

    NaiveStore oracle;
    for (const auto& tx : delivered)
        oracle.apply(tx);
    REQUIRE_MSG(sorted(store.all_quads()) == oracle.sorted_quads(),
                "store state diverges from the delivered-subset replay");
    // Whole transactions only: committed transactions match the applied count
    // after the final flush.
    REQUIRE_MSG(stats.total_committed_tx == stats.total_applied, "committed %llu != applied %llu",
                (unsigned long long)stats.total_committed_tx,
                (unsigned long long)stats.total_applied);
    note("%zu of %llu transactions delivered; store == replay, no partial data", delivered.size(),
         (unsigned long long)sent);
}

// ---------------------------------------------------------------------------
// 8. Commit batching arithmetic: 4 ms floor, offered 1000 tx/s -> batch 1
//    sustains <= 260 tx/s, batch 100 sustains >= 900 tx/s; < 60 s.

double batched_rate(std::size_t batch_size, double offered_window_s)
{
    LossyNetwork net({0.0, 0.0, 8});
    CommitPolicy policy;
    policy.batch_size = batch_size;
    policy.simulated_commit_floor = std::chrono::milliseconds(4);

    QuadStore store(policy);
    IngestConfig cfg;
    cfg.policy = policy;
    // Window plus headroom; the worker then drains its backlog, which keeps
    // the measured rate honest for slow configurations.
    cfg.duration = std::chrono::duration<double>(offered_window_s + 0.15);

    std::thread sender([&] {
        FirehoseStream stream(21, 1000,
                              static_cast<std::uint64_t>(offered_window_s * 1000));
        const auto start = clock_type::now();
        while (auto timed = stream.next()) {
            std::this_thread::sleep_until(
                start
                + std::chrono::duration_cast<clock_type::duration>(timed->target_offset));
            net.send(0, encode_datagram(timed->tx, CodecId::Deflate));
        }
        net.close();
    });

    std::vector<DatagramReader> readers{
        [&net](std::chrono::milliseconds timeout) { return net.receive(0, timeout); }};
    std::atomic<bool> stop{false};
    const IngestStats stats = ingest_run_readers(store, readers, cfg, stop);
    sender.join();
    return stats.tx_per_sec;
}

void criterion_08_commit_batching()
{
    const auto start = clock_type::now();
    const double rate_batch_1 = batched_rate(1, 3.0);
    const double rate_batch_100 = batched_rate(100, 4.0);
    const double elapsed = seconds_since(start);
    REQUIRE_MSG(rate_batch_1 <= 260.0, "batch 1 sustained %.1f tx/s", rate_batch_1);
    REQUIRE_MSG(rate_batch_100 >= 900.0, "batch 100 sustained %.1f tx/s", rate_batch_100);
    REQUIRE_MSG(elapsed < 60.0, "took %.1f s", elapsed);
    note("batch 1: %.0f tx/s, batch 100: %.0f tx/s at 4 ms floor (%.1f s)", rate_batch_1,
         rate_batch_100, elapsed);
}

// ---------------------------------------------------------------------------
// 9. End-to-end rate: loopback gen -> send -> recv at 1000 tx/s for 30 s,
//    4 workers, batch 100 -> applied >= 95% of sent; generated == sent.

void criterion_09_end_to_end_rate()
{
    const std::vector<std::uint16_t> ports{39801, 39802, 39803, 39804};
    QuadStore store;
    IngestConfig cfg;
    cfg.ports = ports;
    cfg.policy.batch_size = 100;
    cfg.duration = std::chrono::duration<double>(-1);
    std::atomic<bool> stop{false};

    IngestStats stats;
    std::thread ingest([&] { stats = ingest_run(store, cfg, stop); });
    std::this_thread::sleep_for(std::chrono::milliseconds(150));

    const std::uint64_t generated = 30000;
    FirehoseSource source(42, generated);
    std::vector<Endpoint> endpoints;
    for (std::uint16_t port : ports)
        endpoints.push_back({"127.0.0.1", port});
    EndpointSet endpoint_set(std::move(endpoints));
    SendConfig send_cfg;
    send_cfg.target_rate = 1000;
    const SendStats sent = udp_send_stream(source, endpoint_set, send_cfg);

    std::this_thread::sleep_for(std::chrono::milliseconds(500));
    stop.store(true);
    ingest.join();

    REQUIRE_MSG(sent.sent == generated, "sent %llu of %llu generated",
                (unsigned long long)sent.sent, (unsigned long long)generated);
    REQUIRE_MSG(sent.duration.count() > 28.0 && sent.duration.count() < 32.0,
                "send took %.1f s", sent.duration.count());
    const double applied_ratio =
        static_cast<double>(stats.total_applied) / static_cast<double>(sent.sent);
    REQUIRE_MSG(applied_ratio >= 0.95, "applied %.4f of sent", applied_ratio);
    note("sent %llu in %.1f s; applied %.2f%% across 4 workers",
         (unsigned long long)sent.sent, sent.duration.count(), applied_ratio * 100.0);
}

// ---------------------------------------------------------------------------
// 10. Worker scaling: on >= 4 cores, 4-worker throughput >= 2.5x 1-worker
//     and monotone over {1, 2, 4} under saturating offered load. The premise
//     is hardware: on fewer cores the sweep still runs and is reported, but
//     the bound cannot be asserted against hardware that is not there.

void criterion_10_worker_scaling()
{
    const unsigned cores = std::thread::hardware_concurrency();
    CommitPolicy policy;
    policy.batch_size = 100;

    std::map<std::size_t, double> throughput;
    for (std::size_t workers : {1u, 2u, 4u}) {
        const auto sample = worker_scaling_bench(workers, 0.0, 2.5, 42, policy);
        throughput[workers] = sample.tx_per_sec;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "t1=%.0f t2=%.0f t4=%.0f tx/s on %u cores", throughput[1],
                  throughput[2], throughput[4], cores);

    if (cores < 4) {
        note("PRECONDITION UNMET: %u cores < 4; sweep recorded: %s", cores, buf);
        return;
    }
    REQUIRE_MSG(throughput[2] > throughput[1], "%s", buf);
    REQUIRE_MSG(throughput[4] > throughput[2], "%s", buf);
    REQUIRE_MSG(throughput[4] >= 2.5 * throughput[1], "%s", buf);
    note("%s", buf);
}

// ---------------------------------------------------------------------------
// 11. HTTP monotonicity: GET and POST at body sizes {1k, 10k, 100k} give
//     strictly increasing bytes/s, and 100k >= 5x 1k.

void criterion_11_http_monotonicity()
{
    BlobServer server;
    const std::size_t sizes[] = {1000, 10000, 100000};

    for (bool post : {false, true}) {
        double previous = -1;
        double first = 0, last = 0;
        for (std::size_t body : sizes) {
            const auto sample = post ? http_post_bench(server.port(), body, 100)
                                     : http_get_bench(server.port(), body, 100);
            REQUIRE_MSG(sample.bytes_per_sec > previous, "%s not increasing at %zu B",
                        post ? "POST" : "GET", body);
            previous = sample.bytes_per_sec;
            if (body == sizes[0])
                first = sample.bytes_per_sec;
            last = sample.bytes_per_sec;
        }
        REQUIRE_MSG(last >= 5.0 * first, "%s 100k/1k ratio %.2f", post ? "POST" : "GET",
                    last / first);
        if (post)
            note("GET and POST bytes/s strictly increasing; 100k/1k ratio %.1fx (POST)",
                 last / first);
    }
}

// ---------------------------------------------------------------------------
// 12. Generator calibration: 10000 tweets -> mean adds 18 +- 1 and mean
//     removes 9 +- 1; byte-identical streams for one seed.

void criterion_12_generator_calibration()
{
    FirehoseStream a(42, 1000, 10000);
    FirehoseStream b(42, 1000, 10000);
    std::uint64_t adds = 0, removes = 0, count = 0;
    while (auto ta = a.next()) {
        auto tb = b.next();
        if (!tb || serialize_rdftx(ta->tx) != serialize_rdftx(tb->tx))
            throw Failure("streams with one seed diverge at transaction "
                          + std::to_string(count));
        const auto stats = transaction_stats(ta->tx);
        adds += stats.add_count;
        removes += stats.remove_count;
        ++count;
    }
    const double mean_adds = static_cast<double>(adds) / static_cast<double>(count);
    const double mean_removes = static_cast<double>(removes) / static_cast<double>(count);
    REQUIRE_MSG(std::abs(mean_adds - 18.0) <= 1.0, "mean adds %.3f", mean_adds);
    REQUIRE_MSG(std::abs(mean_removes - 9.0) <= 1.0, "mean removes %.3f", mean_removes);
    note("mean adds %.2f, mean removes %.2f over 10000 tweets; streams byte-identical",
         mean_adds, mean_removes);
}

// ---------------------------------------------------------------------------
// 13. Store-query oracle: on a store near 1e5 quads, every single-bound
//     pattern agrees with a linear-scan oracle; zero deviations.

void criterion_13_store_query_oracle()
{
    // Bounded vocabularies keep the per-position sweeps exhaustive.
    SeededRng rng(105);
    std::vector<Term> subjects, predicates, objects, graphs;
    for (int i = 0; i < 30000; ++i)
        subjects.push_back(Term::iri("http://s.example/r" + std::to_string(i)));
    for (int i = 0; i < 40; ++i)
        predicates.push_back(Term::iri("http://p.example/p" + std::to_string(i)));
    for (int i = 0; i < 2000; ++i) {
        switch (i % 4) {
        case 0: objects.push_back(Term::iri("http://o.example/o" + std::to_string(i))); break;
        case 1: objects.push_back(Term::bnode("b" + std::to_string(i))); break;
        case 2: objects.push_back(Term::plain_literal("value " + std::to_string(i))); break;
        default:
            objects.push_back(Term::typed_literal(
                std::to_string(i), "http://www.w3.org/2001/XMLSchema#integer"));
        }
    }
    for (int i = 0; i < 8; ++i)
        graphs.push_back(Term::iri("http://g.example/g" + std::to_string(i)));

    QuadStore store;
    NaiveStore oracle;
    auto worker = store.make_worker();
    std::vector<Statement> inserted;
    Transaction tx;
    const auto flush = [&] {
        worker.apply(tx);
        oracle.apply(tx);
        tx.ops.clear();
        if (worker.pending_transactions() >= 50)
            worker.commit();
    };
    for (int i = 0; i < 100000; ++i) {
        Statement stmt;
        stmt.subject = subjects[rng.uniform_u32(30000)];
        stmt.predicate = predicates[rng.uniform_u32(40)];
        stmt.object = objects[rng.uniform_u32(2000)];
        if (rng.bernoulli(0.3))
            stmt.contexts.push_back(graphs[rng.uniform_u32(8)]);
        if (inserted.size() < 8000 || rng.bernoulli(0.97)) {
            if (inserted.size() < 20000)
                inserted.push_back(stmt);
            tx.ops.push_back(add_op(std::move(stmt)));
        } else {
            // Remove something known to have been added, sometimes wildcard.
            Statement victim = inserted[rng.uniform_u32(
                static_cast<std::uint32_t>(inserted.size()))];
            if (rng.bernoulli(0.5))
                victim.contexts.clear();
            tx.ops.push_back(remove_op(std::move(victim)));
        }
        if (tx.ops.size() >= 50)
            flush();
    }
    flush();
    worker.commit();

    REQUIRE_MSG(store.quad_count() <= 100000, "%zu quads", store.quad_count());
    REQUIRE_MSG(store.quad_count() >= 80000, "only %zu quads", store.quad_count());
    REQUIRE_MSG(sorted(store.all_quads()) == oracle.sorted_quads(), "store != oracle set");

    // Group the oracle's quads once per position (a single linear scan per
    // position), then compare match() against every group exhaustively.
    const std::vector<Quad> all = oracle.sorted_quads();
    std::map<Term, std::vector<Quad>> by_s, by_p, by_o, by_g;
    for (const auto& q : all) {
        by_s[q.subject].push_back(q);
        by_p[q.predicate].push_back(q);
        by_o[q.object].push_back(q);
        if (q.graph)
            by_g[*q.graph].push_back(q);
    }
    std::uint64_t checked = 0;
    for (const auto& [s, expected] : by_s) {
        if (sorted(store.match(s, std::nullopt, std::nullopt, std::nullopt)) != expected)
            throw Failure("subject sweep deviation at " + s.value());
        ++checked;
    }
    for (const auto& [p, expected] : by_p) {
        if (sorted(store.match(std::nullopt, p, std::nullopt, std::nullopt)) != expected)
            throw Failure("predicate sweep deviation at " + p.value());
        ++checked;
    }
    for (const auto& [o, expected] : by_o) {
        if (sorted(store.match(std::nullopt, std::nullopt, o, std::nullopt)) != expected)
            throw Failure("object sweep deviation at " + o.value());
        ++checked;
    }
    for (const auto& [g, expected] : by_g) {
        if (sorted(store.match(std::nullopt, std::nullopt, std::nullopt, g)) != expected)
            throw Failure("graph sweep deviation at " + g.value());
        ++checked;
    }

    // Absent terms match nothing.
    REQUIRE_MSG(store.match(Term::iri("http://s.example/absent"), std::nullopt, std::nullopt,
                            std::nullopt)
                    .empty(),
                "absent subject matched");

    // Spot-check mixed multi-bound patterns against true per-query scans.
    for (int i = 0; i < 300; ++i) {
        const Quad& pick = all[rng.uniform_u32(static_cast<std::uint32_t>(all.size()))];
        const TermPattern s = rng.bernoulli(0.5) ? TermPattern(pick.subject) : std::nullopt;
        const TermPattern p = rng.bernoulli(0.5) ? TermPattern(pick.predicate) : std::nullopt;
        const TermPattern o = rng.bernoulli(0.5) ? TermPattern(pick.object) : std::nullopt;
        const TermPattern g =
            (pick.graph && rng.bernoulli(0.3)) ? TermPattern(*pick.graph) : std::nullopt;
        if (sorted(store.match(s, p, o, g)) != oracle.match(s, p, o, g))
            throw Failure("sampled pattern deviation");
        ++checked;
    }
    note("%zu quads; %llu patterns checked, zero deviations", store.quad_count(),
         (unsigned long long)checked);
}

// ---------------------------------------------------------------------------

struct Criterion {
    int number;
    const char* name;
    std::function<void()> run;
};

} // namespace

int main(int argc, char** argv)
{
    const std::vector<Criterion> criteria = {
        {1, "codec round-trip (XML + GRUF, 10k transactions)", criterion_01_codec_round_trip},
        {2, "reference fixture documents decode exactly", criterion_02_reference_fixtures},
        {3, "compression reaches datagram size on the tweet corpus",
         criterion_03_compression_size},
        {4, "deflate timing on a 100 kB document", criterion_04_compression_timing},
        {5, "datagram payloads never exceed 1492 bytes", criterion_05_datagram_constraint},
        {6, "goodput tracks 1-p on the lossy channel", criterion_06_loss_proportionality},
        {7, "atomicity under 30% loss (replay oracle)", criterion_07_atomicity_under_loss},
        {8, "commit batching arithmetic at a 4 ms floor", criterion_08_commit_batching},
        {9, "end-to-end 1000 tx/s for 30 s over loopback UDP", criterion_09_end_to_end_rate},
        {10, "ingest throughput scales with workers", criterion_10_worker_scaling},
        {11, "HTTP GET/POST throughput grows with body size", criterion_11_http_monotonicity},
        {12, "generator calibration: 18 adds / 9 removes", criterion_12_generator_calibration},
        {13, "match agrees with the linear-scan oracle at 1e5 quads",
         criterion_13_store_query_oracle},
    };

    int only = 0;
    if (argc > 1)
        only = std::atoi(argv[1]);

    int failures = 0;
    for (const auto& criterion : criteria) {
        if (only != 0 && criterion.number != only)
            continue;
        g_note.clear();
        const auto start = clock_type::now();
        try {
            criterion.run();
            std::printf("[%2d] PASS  (%5.1fs) %s", criterion.number, seconds_since(start),
                        criterion.name);
            if (!g_note.empty())
                std::printf(": %s", g_note.c_str());
            std::printf("\n");
        } catch (const std::exception& e) {
            ++failures;
            std::printf("[%2d] FAIL  (%5.1fs) %s: %s\n", criterion.number, seconds_since(start),
                        criterion.name, e.what());
        }
        std::fflush(stdout);
    }
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures;
}
