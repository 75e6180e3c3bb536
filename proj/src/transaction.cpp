#include "rdfstream/transaction.hpp"

#include <set>

namespace rdfstream {

TransactionStats transaction_stats(const Transaction& t)
{
    TransactionStats stats;
    for (const auto& op : t.ops) {
        if (op.kind == OpKind::Add)
            ++stats.add_count;
        else
            ++stats.remove_count;
    }
    stats.total_ops = t.ops.size();
    return stats;
}

Validity validate_statement(const Statement& s)
{
    if (s.subject.is_literal())
        return invalid("subject is a literal");
    if (auto v = validate_term(s.subject); !v)
        return invalid("subject: " + v.diagnostic);
    if (!s.predicate.is_iri())
        return invalid("predicate is not an iri");
    if (auto v = validate_term(s.predicate); !v)
        return invalid("predicate: " + v.diagnostic);
    if (auto v = validate_term(s.object); !v)
        return invalid("object: " + v.diagnostic);
    std::set<std::string> seen;
    for (const auto& ctx : s.contexts) {
        if (!ctx.is_iri())
            return invalid("context is not an iri");
        if (auto v = validate_term(ctx); !v)
            return invalid("context: " + v.diagnostic);
        if (!seen.insert(ctx.value()).second)
            return invalid("duplicate context: " + ctx.value());
    }
    return valid();
}

Validity validate_transaction(const Transaction& t)
{
    for (std::size_t i = 0; i < t.ops.size(); ++i) {
        if (auto v = validate_statement(t.ops[i].statement); !v)
            return invalid("op " + std::to_string(i) + ": " + v.diagnostic);
    }
    return valid();
}

} // namespace rdfstream
