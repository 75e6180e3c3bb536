#ifndef RDFSTREAM_TERM_HPP
#define RDFSTREAM_TERM_HPP

#include <compare>
#include <string>

namespace rdfstream {

enum class TermKind { Iri, BlankNode, PlainLiteral, LangLiteral, TypedLiteral };

// An RDF node: IRI, blank node, or literal (plain, language-tagged, or
// datatyped). Immutable after construction and safe to share across threads.
//
// Equality is structural and literals compare by lexical form, so "01" and
// "1" are distinct terms. IRIs are stored as opaque validated strings; no
// normalization is applied.
class Term {
public:
    // Empty plain literal; useful as a slot before assignment.
    Term() : kind_(TermKind::PlainLiteral) {}

    static Term iri(std::string value);
    static Term bnode(std::string id);
    static Term plain_literal(std::string lexical);
    static Term lang_literal(std::string lexical, std::string language);
    static Term typed_literal(std::string lexical, std::string datatype_iri);
    // General literal factory for decode paths; may represent a literal that
    // violates the lang/datatype mutual exclusion, which validate_term flags.
    static Term literal(std::string lexical, std::string language, std::string datatype_iri);

    TermKind kind() const { return kind_; }
    bool is_iri() const { return kind_ == TermKind::Iri; }
    bool is_bnode() const { return kind_ == TermKind::BlankNode; }
    bool is_literal() const
    {
        return kind_ == TermKind::PlainLiteral || kind_ == TermKind::LangLiteral
            || kind_ == TermKind::TypedLiteral;
    }

    // IRI text, blank node identifier, or literal lexical form.
    const std::string& value() const { return value_; }
    // Language tag; empty unless kind() == LangLiteral.
    const std::string& language() const { return language_; }
    // Datatype IRI; empty unless kind() == TypedLiteral.
    const std::string& datatype() const { return datatype_; }

    bool operator==(const Term&) const = default;
    auto operator<=>(const Term&) const = default;

private:
    Term(TermKind kind, std::string value, std::string language, std::string datatype);

    TermKind kind_;
    std::string value_;
    std::string language_;
    std::string datatype_;
};

struct Validity {
    bool ok = true;
    std::string diagnostic;

    explicit operator bool() const { return ok; }
};

inline Validity valid() { return {}; }
inline Validity invalid(std::string diagnostic) { return {false, std::move(diagnostic)}; }

// Total verdict function: never throws, reports the first violated Term
// invariant. Checked invariants: IRIs are non-empty and contain no whitespace
// or angle brackets; blank node ids match [A-Za-z0-9]+; a literal carries at
// most one of {language tag, datatype IRI}; language tags are lowercase.
Validity validate_term(const Term& t);

} // namespace rdfstream

#endif
