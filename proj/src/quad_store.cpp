#include "rdfstream/quad_store.hpp"

#include <thread>

namespace rdfstream {

namespace {

using QuadKey = std::array<std::uint32_t, 4>;

QuadKey permute_posg(const QuadKey& spog)
{
    return {spog[1], spog[2], spog[0], spog[3]};
}

QuadKey permute_gspo(const QuadKey& spog)
{
    return {spog[3], spog[0], spog[1], spog[2]};
}

void nquads_escape(std::ostream& out, const std::string& text)
{
    for (char c : text) {
        switch (c) {
        case '"': out << "\\\""; break;
        case '\\': out << "\\\\"; break;
        case '\n': out << "\\n"; break;
        case '\r': out << "\\r"; break;
        case '\t': out << "\\t"; break;
        default: out << c;
        }
    }
}

void nquads_term(std::ostream& out, const Term& t)
{
    switch (t.kind()) {
    case TermKind::Iri:
        out << '<' << t.value() << '>';
        break;
    case TermKind::BlankNode:
        out << "_:" << t.value();
        break;
    case TermKind::PlainLiteral:
        out << '"';
        nquads_escape(out, t.value());
        out << '"';
        break;
    case TermKind::LangLiteral:
        out << '"';
        nquads_escape(out, t.value());
        out << "\"@" << t.language();
        break;
    case TermKind::TypedLiteral:
        out << '"';
        nquads_escape(out, t.value());
        out << "\"^^<" << t.datatype() << '>';
        break;
    }
}

} // namespace

QuadStore::QuadStore(CommitPolicy policy) : policy_(policy)
{
    if (policy_.batch_size < 1)
        policy_.batch_size = 1;
    terms_.push_back(Term::iri("urn:rdfstream:default-graph")); // slot 0, never matched
}

QuadStore::TermId QuadStore::intern(const Term& t)
{
    auto [it, inserted] = term_ids_.try_emplace(t, static_cast<TermId>(terms_.size()));
    if (inserted)
        terms_.push_back(t);
    return it->second;
}

std::optional<QuadStore::TermId> QuadStore::lookup(const Term& t) const
{
    auto it = term_ids_.find(t);
    if (it == term_ids_.end())
        return std::nullopt;
    return it->second;
}

Quad QuadStore::materialize(const QuadKey& spog) const
{
    Quad q{terms_[spog[0]], terms_[spog[1]], terms_[spog[2]], std::nullopt};
    if (spog[3] != 0)
        q.graph = terms_[spog[3]];
    return q;
}

void QuadStore::insert_quad(const QuadKey& spog)
{
    if (spog_.insert(spog).second) { // adds are idempotent
        posg_.insert(permute_posg(spog));
        gspo_.insert(permute_gspo(spog));
    }
}

void QuadStore::erase_quad(const QuadKey& spog)
{
    if (spog_.erase(spog) > 0) {
        posg_.erase(permute_posg(spog));
        gspo_.erase(permute_gspo(spog));
    }
}

void QuadStore::commit_transactions(const std::vector<Transaction>& txs)
{
    for (const auto& tx : txs) {
        for (const auto& op : tx.ops) {
            const auto& stmt = op.statement;
            const TermId s = intern(stmt.subject);
            const TermId p = intern(stmt.predicate);
            const TermId o = intern(stmt.object);
            if (op.kind == OpKind::Add) {
                // Empty contexts = the default graph.
                if (stmt.contexts.empty()) {
                    insert_quad({s, p, o, 0});
                } else {
                    for (const auto& ctx : stmt.contexts)
                        insert_quad({s, p, o, intern(ctx)});
                }
            } else {
                // Empty contexts = all graphs; exact (s,p,o) match either way.
                if (stmt.contexts.empty()) {
                    auto it = spog_.lower_bound({s, p, o, 0});
                    std::vector<QuadKey> doomed;
                    while (it != spog_.end() && (*it)[0] == s && (*it)[1] == p && (*it)[2] == o)
                        doomed.push_back(*it++);
                    for (const auto& key : doomed)
                        erase_quad(key);
                } else {
                    for (const auto& ctx : stmt.contexts) {
                        if (auto g = lookup(ctx))
                            erase_quad({s, p, o, *g});
                    }
                }
            }
        }
    }
}

void QuadStore::Worker::apply(Transaction t)
{
    ++applied_tx_;
    applied_ops_ += t.ops.size();
    pending_.push_back(std::move(t));
}

CommitStats QuadStore::Worker::commit()
{
    CommitStats stats;
    if (pending_.empty())
        return stats; // no-op; commit counter unchanged

    const auto start = std::chrono::steady_clock::now();
    {
        // Commits are mutually exclusive end to end, including the simulated
        // floor: the modeled store's commit cost serializes writers too.
        std::lock_guard serialize(store_->commit_serialize_mu_);
        {
            std::unique_lock lock(store_->commit_mu_);
            store_->commit_transactions(pending_);
        }
        if (store_->policy_.simulated_commit_floor.count() > 0) {
            const auto deadline = start + store_->policy_.simulated_commit_floor;
            std::this_thread::sleep_until(deadline);
        }
    }
    store_->commit_count_.fetch_add(1);
    ++commits_;
    stats.transactions = pending_.size();
    committed_tx_ += stats.transactions;
    for (const auto& tx : pending_)
        stats.ops += tx.ops.size();
    pending_.clear();
    stats.duration = std::chrono::steady_clock::now() - start;
    return stats;
}

std::vector<Quad> QuadStore::match(const TermPattern& subject, const TermPattern& predicate,
                                   const TermPattern& object, const TermPattern& graph) const
{
    std::shared_lock lock(commit_mu_);
    std::vector<Quad> result;

    std::optional<TermId> s, p, o, g;
    if (subject) {
        if (!(s = lookup(*subject)))
            return result;
    }
    if (predicate) {
        if (!(p = lookup(*predicate)))
            return result;
    }
    if (object) {
        if (!(o = lookup(*object)))
            return result;
    }
    if (graph) {
        if (!(g = lookup(*graph)))
            return result;
    }

    const auto emit_if_matches = [&](const QuadKey& spog) {
        if (s && spog[0] != *s)
            return;
        if (p && spog[1] != *p)
            return;
        if (o && spog[2] != *o)
            return;
        if (g && spog[3] != *g)
            return;
        result.push_back(materialize(spog));
    };

    // Pick the index whose ordering turns the longest bound prefix into a
    // range scan; leftovers are filtered per quad.
    if (s) {
        for (auto it = spog_.lower_bound({*s, p ? *p : 0, (p && o) ? *o : 0, 0});
             it != spog_.end() && (*it)[0] == *s; ++it)
            emit_if_matches(*it);
    } else if (p) {
        for (auto it = posg_.lower_bound({*p, o ? *o : 0, 0, 0});
             it != posg_.end() && (*it)[0] == *p; ++it)
            emit_if_matches({(*it)[2], (*it)[0], (*it)[1], (*it)[3]});
    } else if (g) {
        for (auto it = gspo_.lower_bound({*g, 0, 0, 0});
             it != gspo_.end() && (*it)[0] == *g; ++it)
            emit_if_matches({(*it)[1], (*it)[2], (*it)[3], (*it)[0]});
    } else if (o) {
        for (const auto& spog : spog_) // object-only patterns have no covering index
            emit_if_matches(spog);
    } else {
        for (const auto& spog : spog_)
            result.push_back(materialize(spog));
    }
    return result;
}

std::vector<Quad> QuadStore::all_quads() const
{
    std::shared_lock lock(commit_mu_);
    std::vector<Quad> result;
    result.reserve(spog_.size());
    for (const auto& spog : spog_)
        result.push_back(materialize(spog));
    return result;
}

std::size_t QuadStore::quad_count() const
{
    std::shared_lock lock(commit_mu_);
    return spog_.size();
}

void QuadStore::write_nquads(std::ostream& out) const
{
    std::shared_lock lock(commit_mu_);
    for (const auto& spog : spog_) {
        nquads_term(out, terms_[spog[0]]);
        out << ' ';
        nquads_term(out, terms_[spog[1]]);
        out << ' ';
        nquads_term(out, terms_[spog[2]]);
        if (spog[3] != 0) {
            out << ' ';
            nquads_term(out, terms_[spog[3]]);
        }
        out << " .\n";
    }
}

} // namespace rdfstream
