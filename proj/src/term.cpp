#include "rdfstream/term.hpp"

#include <cctype>

namespace rdfstream {

Term::Term(TermKind kind, std::string value, std::string language, std::string datatype)
    : kind_(kind), value_(std::move(value)), language_(std::move(language)),
      datatype_(std::move(datatype))
{
}

Term Term::iri(std::string value)
{
    return Term(TermKind::Iri, std::move(value), {}, {});
}

Term Term::bnode(std::string id)
{
    return Term(TermKind::BlankNode, std::move(id), {}, {});
}

Term Term::plain_literal(std::string lexical)
{
    return Term(TermKind::PlainLiteral, std::move(lexical), {}, {});
}

Term Term::lang_literal(std::string lexical, std::string language)
{
    return Term(TermKind::LangLiteral, std::move(lexical), std::move(language), {});
}

Term Term::typed_literal(std::string lexical, std::string datatype_iri)
{
    return Term(TermKind::TypedLiteral, std::move(lexical), {}, std::move(datatype_iri));
}

Term Term::literal(std::string lexical, std::string language, std::string datatype_iri)
{
    TermKind kind = TermKind::PlainLiteral;
    if (!language.empty())
        kind = TermKind::LangLiteral;
    else if (!datatype_iri.empty())
        kind = TermKind::TypedLiteral;
    return Term(kind, std::move(lexical), std::move(language), std::move(datatype_iri));
}

namespace {

Validity validate_iri_text(const std::string& value, const char* what)
{
    if (value.empty())
        return invalid(std::string(what) + " is empty");
    for (char c : value) {
        const auto uc = static_cast<unsigned char>(c);
        if (uc == ' ' || uc == '\t' || uc == '\n' || uc == '\r')
            return invalid(std::string(what) + " contains whitespace: " + value);
        if (c == '<' || c == '>')
            return invalid(std::string(what) + " contains an angle bracket: " + value);
    }
    return valid();
}

} // namespace

Validity validate_term(const Term& t)
{
    switch (t.kind()) {
    case TermKind::Iri:
        return validate_iri_text(t.value(), "iri");
    case TermKind::BlankNode: {
        if (t.value().empty())
            return invalid("bnode identifier is empty");
        for (char c : t.value()) {
            if (!std::isalnum(static_cast<unsigned char>(c)))
                return invalid("bnode identifier must match [A-Za-z0-9]+: " + t.value());
        }
        return valid();
    }
    case TermKind::PlainLiteral:
        return valid();
    case TermKind::LangLiteral: {
        if (!t.datatype().empty())
            return invalid("literal carries both language tag and datatype");
        if (t.language().empty())
            return invalid("language-tagged literal with empty tag");
        for (char c : t.language()) {
            const auto uc = static_cast<unsigned char>(c);
            if (!(std::islower(uc) || std::isdigit(uc) || c == '-'))
                return invalid("language tag must be lowercase BCP-47: " + t.language());
        }
        return valid();
    }
    case TermKind::TypedLiteral: {
        if (!t.language().empty())
            return invalid("literal carries both language tag and datatype");
        if (auto v = validate_iri_text(t.datatype(), "datatype iri"); !v)
            return v;
        return valid();
    }
    }
    return invalid("unknown term kind");
}

} // namespace rdfstream
