#include <doctest.h>

#include "rdfstream/bench.hpp"

using namespace rdfstream;

TEST_CASE("GET bench returns the requested bytes over one persistent connection")
{
    BlobServer server;
    const auto sample = http_get_bench(server.port(), 1000, 50);
    CHECK(sample.experiment == "http-get");
    CHECK(sample.n == 50);
    CHECK(sample.bytes_per_sec > 0);
    CHECK(sample.requests_per_sec > 0);
    CHECK(sample.bytes_per_sec == doctest::Approx(sample.requests_per_sec * 1000.0));
    // Keep-alive means a single TCP connection serviced all 50 requests.
    CHECK(server.connections_seen() == 1);
}

TEST_CASE("POST bench pushes the body to the sink")
{
    BlobServer server;
    const auto sample = http_post_bench(server.port(), 2000, 50);
    CHECK(sample.experiment == "http-post");
    CHECK(sample.bytes_per_sec == doctest::Approx(sample.requests_per_sec * 2000.0));
    CHECK(server.connections_seen() == 1);
}

TEST_CASE("zero-byte bodies give finite request rates and zero bytes")
{
    BlobServer server;
    const auto get = http_get_bench(server.port(), 0, 20);
    CHECK(get.requests_per_sec > 0);
    CHECK(get.bytes_per_sec == 0);
    const auto post = http_post_bench(server.port(), 0, 20);
    CHECK(post.requests_per_sec > 0);
    CHECK(post.bytes_per_sec == 0);
}

TEST_CASE("bigger bodies carry more bytes per second")
{
    BlobServer server;
    const auto small = http_get_bench(server.port(), 1000, 30);
    const auto large = http_get_bench(server.port(), 100000, 30);
    CHECK(large.bytes_per_sec > small.bytes_per_sec);
}

TEST_CASE("an unreachable server raises instead of returning zeros")
{
    CHECK_THROWS_AS((void)http_get_bench(1, 10, 1), std::runtime_error);
}

TEST_CASE("throughput CSV rows are self-describing")
{
    ThroughputSample s;
    s.experiment = "http-get";
    s.variable = "body_bytes";
    s.value = 1000;
    s.n = 100;
    s.duration_s = 1.5;
    s.requests_per_sec = 66.7;
    s.bytes_per_sec = 66700;
    s.config = "transport=http;method=GET;body=1000";
    CHECK(throughput_csv_header()
          == "experiment,variable,value,n,duration_s,requests_per_sec,bytes_per_sec,tx_per_sec,"
             "config\n");
    const std::string row = throughput_csv_row(s);
    CHECK(row.find("http-get,body_bytes,1000,100,1.5,66.7,66700,0,") == 0);
    CHECK(row.find("transport=http") != std::string::npos);
}
