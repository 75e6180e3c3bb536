#include "rdfstream/gruf_codec.hpp"

#include <optional>

namespace rdfstream {

namespace {

[[noreturn]] void fail(CodecErrc code, const std::string& what)
{
    throw CodecError(code, what);
}

Term require_valid(Term t)
{
    if (auto v = validate_term(t); !v)
        fail(CodecErrc::InvalidTerm, v.diagnostic);
    return t;
}

struct Cursor {
    std::optional<Term> subject;
    std::optional<Term> property;
    std::optional<Term> graph; // nullopt = default graph
};

// First token of a line and the remainder after one separating space.
std::pair<std::string_view, std::string_view> split_command(std::string_view line)
{
    const auto space = line.find(' ');
    if (space == std::string_view::npos)
        return {line, {}};
    return {line.substr(0, space), line.substr(space + 1)};
}

Term parse_object(std::string_view type_token, std::string_view value, std::size_t line_no)
{
    if (type_token == "text")
        return Term::plain_literal(std::string(value));
    if (type_token == "uri")
        return require_valid(Term::iri(std::string(value)));
    if (type_token == "bnode")
        return require_valid(Term::bnode(std::string(value)));
    fail(CodecErrc::BadObjectType,
         "line " + std::to_string(line_no) + ": unknown object type token: "
             + std::string(type_token));
}

} // namespace

Transaction parse_gruf(std::string_view document)
{
    Transaction tx;
    Cursor cursor;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= document.size()) {
        if (pos == document.size())
            break;
        auto eol = document.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = document.size();
        std::string_view line = document.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty())
            continue;

        const auto [command, rest] = split_command(line);
        if (command == "set_subject") {
            cursor.subject = require_valid(Term::iri(std::string(rest)));
        } else if (command == "set_property") {
            cursor.property = require_valid(Term::iri(std::string(rest)));
        } else if (command == "set_graph") {
            if (rest.empty())
                cursor.graph.reset();
            else
                cursor.graph = require_valid(Term::iri(std::string(rest)));
        } else if (command == "add" || command == "delete") {
            if (!cursor.subject || !cursor.property)
                fail(CodecErrc::CursorUnset,
                     "line " + std::to_string(line_no) + ": " + std::string(command)
                         + " before set_subject/set_property");
            const auto [type_token, value] = split_command(rest);
            Statement stmt;
            stmt.subject = *cursor.subject;
            stmt.predicate = *cursor.property;
            stmt.object = parse_object(type_token, value, line_no);
            if (cursor.graph)
                stmt.contexts.push_back(*cursor.graph);
            tx.ops.push_back({command == "add" ? OpKind::Add : OpKind::Remove, std::move(stmt)});
        } else {
            fail(CodecErrc::UnknownCommand,
                 "line " + std::to_string(line_no) + ": unknown command: "
                     + std::string(command));
        }
    }
    return tx;
}

bool gruf_expressible(const Transaction& t)
{
    if (!validate_transaction(t))
        return false;
    for (const auto& op : t.ops) {
        const auto& stmt = op.statement;
        if (!stmt.subject.is_iri())
            return false;
        if (stmt.contexts.size() > 1)
            return false;
        const auto& obj = stmt.object;
        if (obj.kind() == TermKind::LangLiteral || obj.kind() == TermKind::TypedLiteral)
            return false;
        if (obj.kind() == TermKind::PlainLiteral
            && obj.value().find_first_of("\r\n") != std::string::npos)
            return false;
    }
    return true;
}

std::string serialize_gruf(const Transaction& t)
{
    if (auto v = validate_transaction(t); !v)
        fail(CodecErrc::InvalidTerm, v.diagnostic);

    std::string out;
    Cursor cursor;
    for (const auto& op : t.ops) {
        const auto& stmt = op.statement;
        if (!stmt.subject.is_iri())
            fail(CodecErrc::Unserializable, "GRUF subjects must be IRIs");
        if (stmt.contexts.size() > 1)
            fail(CodecErrc::Unserializable, "GRUF carries at most one graph per statement");
        const auto& obj = stmt.object;
        if (obj.kind() == TermKind::LangLiteral || obj.kind() == TermKind::TypedLiteral)
            fail(CodecErrc::Unserializable,
                 "GRUF literals carry no language tag or datatype");
        if (obj.is_literal() && obj.value().find_first_of("\r\n") != std::string::npos)
            fail(CodecErrc::Unserializable, "GRUF literal contains a newline");

        if (!cursor.subject || *cursor.subject != stmt.subject) {
            cursor.subject = stmt.subject;
            out += "set_subject " + stmt.subject.value() + "\n";
        }
        if (!cursor.property || *cursor.property != stmt.predicate) {
            cursor.property = stmt.predicate;
            out += "set_property " + stmt.predicate.value() + "\n";
        }
        const std::optional<Term> graph =
            stmt.contexts.empty() ? std::nullopt : std::optional<Term>(stmt.contexts[0]);
        if (graph != cursor.graph) {
            cursor.graph = graph;
            out += graph ? "set_graph " + graph->value() + "\n" : "set_graph\n";
        }

        out += op.kind == OpKind::Add ? "add " : "delete ";
        switch (obj.kind()) {
        case TermKind::Iri: out += "uri " + obj.value(); break;
        case TermKind::BlankNode: out += "bnode " + obj.value(); break;
        default: out += "text " + obj.value(); break;
        }
        out += "\n";
    }
    return out;
}

} // namespace rdfstream
