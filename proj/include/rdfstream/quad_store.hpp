#ifndef RDFSTREAM_QUAD_STORE_HPP
#define RDFSTREAM_QUAD_STORE_HPP

#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <shared_mutex>
#include <vector>

#include "rdfstream/constants.hpp"
#include "rdfstream/transaction.hpp"

namespace rdfstream {

struct CommitPolicy {
    std::size_t batch_size = kDefaultCommitBatch; // transactions per commit, >= 1
    // Fixed minimum commit latency for benchmark realism; zero disables it.
    // 4 ms emulates the modeled store's per-commit cost.
    std::chrono::microseconds simulated_commit_floor{0};
};

// A committed statement: single concrete graph (nullopt = default graph).
struct Quad {
    Term subject;
    Term predicate;
    Term object;
    std::optional<Term> graph;

    bool operator==(const Quad&) const = default;
    auto operator<=>(const Quad&) const = default;
};

// nullopt position = wildcard.
using TermPattern = std::optional<Term>;

struct CommitStats {
    std::uint64_t transactions = 0;
    std::uint64_t ops = 0;
    std::chrono::duration<double> duration{0};
};

// Embedded in-memory transactional quad store with batched commits.
//
// Writers go through per-worker pending buffers holding whole transactions;
// commit replays a worker's buffer into the committed indexes under one
// global commit lock. Applies proceed in parallel, commits serialize, and
// match() observes only committed state. Indexes cover the (s,p,o,g),
// (p,o,s,g) and (g,s,p,o) orderings so every single-bound pattern has a
// range scan.
class QuadStore {
public:
    class Worker {
    public:
        // Buffers the whole transaction; ops execute in order at commit.
        // Removing an absent statement is a no-op (diff/patch tolerance).
        void apply(Transaction t);

        // Atomically publishes every buffered transaction. Empty buffer is a
        // no-op that leaves the commit counter unchanged.
        CommitStats commit();

        std::size_t pending_transactions() const { return pending_.size(); }
        std::uint64_t applied_transactions() const { return applied_tx_; }
        std::uint64_t applied_ops() const { return applied_ops_; }
        std::uint64_t committed_transactions() const { return committed_tx_; }
        std::uint64_t commits() const { return commits_; }

    private:
        friend class QuadStore;
        explicit Worker(QuadStore& store) : store_(&store) {}

        QuadStore* store_;
        std::vector<Transaction> pending_;
        std::uint64_t applied_tx_ = 0;
        std::uint64_t applied_ops_ = 0;
        std::uint64_t committed_tx_ = 0;
        std::uint64_t commits_ = 0;
    };

    explicit QuadStore(CommitPolicy policy = {});

    // Each worker owns an independent pending buffer; the store must outlive
    // its workers. Safe to call from one thread at a time.
    Worker make_worker() { return Worker(*this); }

    const CommitPolicy& policy() const { return policy_; }

    // All committed quads matching every bound position. Runs concurrently
    // with apply(); excludes pending data.
    std::vector<Quad> match(const TermPattern& subject, const TermPattern& predicate,
                            const TermPattern& object, const TermPattern& graph) const;

    std::vector<Quad> all_quads() const;
    std::size_t quad_count() const;
    std::uint64_t commit_count() const { return commit_count_.load(); }

    // N-Quads-compatible snapshot, one quad per line, in (s,p,o,g) index
    // order, for post-run verification.
    void write_nquads(std::ostream& out) const;

private:
    using TermId = std::uint32_t;
    using QuadKey = std::array<TermId, 4>; // s,p,o,g with g==0 for the default graph

    TermId intern(const Term& t);                       // commit lock held
    std::optional<TermId> lookup(const Term& t) const;  // shared lock held
    Quad materialize(const QuadKey& spog) const;
    void insert_quad(const QuadKey& spog);
    void erase_quad(const QuadKey& spog);
    void commit_transactions(const std::vector<Transaction>& txs);

    CommitPolicy policy_;
    mutable std::shared_mutex commit_mu_;
    std::mutex commit_serialize_mu_; // commits are mutually exclusive end to end
    std::vector<Term> terms_;        // id -> term; slot 0 reserved for "default graph"
    std::map<Term, TermId> term_ids_;
    std::set<QuadKey> spog_;
    std::set<QuadKey> posg_; // keys stored permuted (p,o,s,g)
    std::set<QuadKey> gspo_; // keys stored permuted (g,s,p,o)
    std::atomic<std::uint64_t> commit_count_{0};
};

} // namespace rdfstream

#endif
