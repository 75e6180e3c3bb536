#ifndef RDFSTREAM_TRANSACTION_HPP
#define RDFSTREAM_TRANSACTION_HPP

#include <cstddef>
#include <vector>

#include "rdfstream/term.hpp"

namespace rdfstream {

// Subject/predicate/object plus zero-or-more named-graph contexts.
// An empty context list means "default graph" for adds and "all graphs"
// (wildcard) for removes; the statement itself just records the empty list.
struct Statement {
    Term subject;
    Term predicate;
    Term object;
    std::vector<Term> contexts;

    bool operator==(const Statement&) const = default;
};

enum class OpKind { Add, Remove };

struct UpdateOp {
    OpKind kind;
    Statement statement;

    bool operator==(const UpdateOp&) const = default;
};

// Ordered list of add/remove operations; the atomic unit of streaming.
// Order is preserved end to end (a remove of an old value precedes the add
// of its replacement). Blank node identifiers are scoped to one Transaction.
struct Transaction {
    std::vector<UpdateOp> ops;

    bool operator==(const Transaction&) const = default;
};

inline UpdateOp add_op(Statement s) { return {OpKind::Add, std::move(s)}; }
inline UpdateOp remove_op(Statement s) { return {OpKind::Remove, std::move(s)}; }

struct TransactionStats {
    std::size_t add_count = 0;
    std::size_t remove_count = 0;
    std::size_t total_ops = 0;
};

TransactionStats transaction_stats(const Transaction& t);

// Statement invariants: predicate is an IRI, subject is an IRI or blank node,
// contexts are IRIs with no duplicates, and every term is itself valid.
Validity validate_statement(const Statement& s);
Validity validate_transaction(const Transaction& t);

} // namespace rdfstream

#endif
