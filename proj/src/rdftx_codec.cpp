#include "rdfstream/rdftx_codec.hpp"

#include <cctype>
#include <utility>
#include <vector>

namespace rdfstream {

namespace {

[[noreturn]] void fail(CodecErrc code, const std::string& what)
{
    throw CodecError(code, what);
}

// ---------------------------------------------------------------------------
// Minimal XML subset parser. Supports elements, attributes, character data,
// comments, an XML declaration and the five predefined entities plus numeric
// references. Rejects DTDs, CDATA, processing instructions in content, and
// anything else the transaction format never uses. Bounds-checked cursor and
// a fixed depth limit keep arbitrary input from crashing it.

struct XmlElement {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<XmlElement> children;
    std::string text; // concatenated character data
};

constexpr int kMaxDepth = 64;

class XmlParser {
public:
    explicit XmlParser(std::string_view input) : in_(input) {}

    XmlElement parse_document()
    {
        skip_prolog();
        if (eof() || peek() != '<')
            fail(CodecErrc::MalformedXml, "expected root element");
        XmlElement root = parse_element(0);
        skip_misc();
        if (!eof())
            fail(CodecErrc::MalformedXml, "content after root element");
        return root;
    }

private:
    bool eof() const { return pos_ >= in_.size(); }
    char peek() const { return in_[pos_]; }
    char peek_at(std::size_t off) const
    {
        return pos_ + off < in_.size() ? in_[pos_ + off] : '\0';
    }

    bool starts_with(std::string_view s) const { return in_.substr(pos_, s.size()) == s; }

    static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

    static bool is_name_start(char c)
    {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
    }

    static bool is_name_char(char c)
    {
        return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-'
            || c == '.';
    }

    void skip_ws()
    {
        while (!eof() && is_space(peek()))
            ++pos_;
    }

    void skip_comment()
    {
        pos_ += 4; // "<!--"
        const auto end = in_.find("-->", pos_);
        if (end == std::string_view::npos)
            fail(CodecErrc::MalformedXml, "unterminated comment");
        pos_ = end + 3;
    }

    void skip_pi()
    {
        pos_ += 2; // "<?"
        const auto end = in_.find("?>", pos_);
        if (end == std::string_view::npos)
            fail(CodecErrc::MalformedXml, "unterminated processing instruction");
        pos_ = end + 2;
    }

    void skip_prolog()
    {
        for (;;) {
            skip_ws();
            if (starts_with("<?"))
                skip_pi();
            else if (starts_with("<!--"))
                skip_comment();
            else if (starts_with("<!"))
                fail(CodecErrc::MalformedXml, "DTD sections are not supported");
            else
                return;
        }
    }

    void skip_misc()
    {
        for (;;) {
            skip_ws();
            if (starts_with("<!--"))
                skip_comment();
            else
                return;
        }
    }

    std::string parse_name()
    {
        if (eof() || !is_name_start(peek()))
            fail(CodecErrc::MalformedXml, "expected a name");
        const std::size_t start = pos_;
        while (!eof() && is_name_char(peek()))
            ++pos_;
        return std::string(in_.substr(start, pos_ - start));
    }

    void append_entity(std::string& out)
    {
        ++pos_; // '&'
        const auto end = in_.find(';', pos_);
        if (end == std::string_view::npos || end - pos_ > 10)
            fail(CodecErrc::MalformedXml, "unterminated entity reference");
        const std::string_view name = in_.substr(pos_, end - pos_);
        pos_ = end + 1;
        if (name == "amp")
            out += '&';
        else if (name == "lt")
            out += '<';
        else if (name == "gt")
            out += '>';
        else if (name == "quot")
            out += '"';
        else if (name == "apos")
            out += '\'';
        else if (!name.empty() && name[0] == '#')
            append_char_ref(out, name.substr(1));
        else
            fail(CodecErrc::MalformedXml, "unknown entity: &" + std::string(name) + ";");
    }

    static void append_char_ref(std::string& out, std::string_view digits)
    {
        unsigned long code = 0;
        bool any = false;
        if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
            for (char c : digits.substr(1)) {
                if (!std::isxdigit(static_cast<unsigned char>(c)))
                    fail(CodecErrc::MalformedXml, "bad character reference");
                code = code * 16 + static_cast<unsigned long>(
                    std::isdigit(static_cast<unsigned char>(c))
                        ? c - '0'
                        : std::tolower(static_cast<unsigned char>(c)) - 'a' + 10);
                any = true;
            }
        } else {
            for (char c : digits) {
                if (!std::isdigit(static_cast<unsigned char>(c)))
                    fail(CodecErrc::MalformedXml, "bad character reference");
                code = code * 10 + static_cast<unsigned long>(c - '0');
                any = true;
            }
        }
        if (!any || code == 0 || code > 0x10FFFF)
            fail(CodecErrc::MalformedXml, "character reference out of range");
        // UTF-8 encode.
        if (code < 0x80) {
            out += static_cast<char>(code);
        } else if (code < 0x800) {
            out += static_cast<char>(0xC0 | (code >> 6));
            out += static_cast<char>(0x80 | (code & 0x3F));
        } else if (code < 0x10000) {
            out += static_cast<char>(0xE0 | (code >> 12));
            out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (code & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (code >> 18));
            out += static_cast<char>(0x80 | ((code >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (code & 0x3F));
        }
    }

    std::string parse_attribute_value()
    {
        if (eof() || (peek() != '"' && peek() != '\''))
            fail(CodecErrc::MalformedXml, "expected quoted attribute value");
        const char quote = peek();
        ++pos_;
        std::string value;
        while (!eof() && peek() != quote) {
            if (peek() == '<')
                fail(CodecErrc::MalformedXml, "'<' in attribute value");
            if (peek() == '&')
                append_entity(value);
            else
                value += in_[pos_++];
        }
        if (eof())
            fail(CodecErrc::MalformedXml, "unterminated attribute value");
        ++pos_; // closing quote
        return value;
    }

    XmlElement parse_element(int depth)
    {
        if (depth > kMaxDepth)
            fail(CodecErrc::MalformedXml, "document nests too deeply");
        ++pos_; // '<'
        XmlElement elem;
        elem.name = parse_name();
        for (;;) {
            const bool had_space = !eof() && is_space(peek());
            skip_ws();
            if (eof())
                fail(CodecErrc::MalformedXml, "unterminated start tag");
            if (peek() == '>') {
                ++pos_;
                parse_content(elem, depth);
                return elem;
            }
            if (peek() == '/' && peek_at(1) == '>') {
                pos_ += 2;
                return elem;
            }
            if (!had_space)
                fail(CodecErrc::MalformedXml, "expected whitespace before attribute");
            std::string attr_name = parse_name();
            skip_ws();
            if (eof() || peek() != '=')
                fail(CodecErrc::MalformedXml, "expected '=' after attribute name");
            ++pos_;
            skip_ws();
            std::string attr_value = parse_attribute_value();
            for (const auto& [existing, _] : elem.attributes) {
                if (existing == attr_name)
                    fail(CodecErrc::MalformedXml, "duplicate attribute: " + attr_name);
            }
            elem.attributes.emplace_back(std::move(attr_name), std::move(attr_value));
        }
    }

    void parse_content(XmlElement& elem, int depth)
    {
        for (;;) {
            if (eof())
                fail(CodecErrc::MalformedXml, "unterminated element: " + elem.name);
            if (peek() == '<') {
                if (starts_with("</")) {
                    pos_ += 2;
                    std::string name = parse_name();
                    if (name != elem.name)
                        fail(CodecErrc::MalformedXml,
                             "mismatched end tag: expected </" + elem.name + ">, got </" + name
                                 + ">");
                    skip_ws();
                    if (eof() || peek() != '>')
                        fail(CodecErrc::MalformedXml, "unterminated end tag");
                    ++pos_;
                    return;
                }
                if (starts_with("<!--")) {
                    skip_comment();
                    continue;
                }
                if (starts_with("<!"))
                    fail(CodecErrc::MalformedXml, "declaration inside content");
                if (starts_with("<?"))
                    fail(CodecErrc::MalformedXml, "processing instruction inside content");
                elem.children.push_back(parse_element(depth + 1));
                continue;
            }
            if (peek() == '&') {
                append_entity(elem.text);
                continue;
            }
            elem.text += in_[pos_++];
        }
    }

    std::string_view in_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Transaction mapping.

bool is_all_whitespace(const std::string& s)
{
    for (char c : s) {
        if (c != ' ' && c != '\t' && c != '\n' && c != '\r')
            return false;
    }
    return true;
}

std::string ascii_lower(std::string s)
{
    for (char& c : s)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

Term node_to_term(const XmlElement& node)
{
    if (!node.children.empty())
        fail(CodecErrc::UnknownElement, "unexpected child element inside <" + node.name + ">");
    if (node.name == "uri") {
        if (!node.attributes.empty())
            fail(CodecErrc::MalformedXml, "unexpected attribute on <uri>");
        return Term::iri(node.text);
    }
    if (node.name == "bnode") {
        if (!node.attributes.empty())
            fail(CodecErrc::MalformedXml, "unexpected attribute on <bnode>");
        return Term::bnode(node.text);
    }
    // literal: xml:lang -> language tag (lowercased), datatype -> datatype IRI
    std::string language;
    std::string datatype;
    for (const auto& [name, value] : node.attributes) {
        if (name == "xml:lang")
            language = ascii_lower(value);
        else if (name == "datatype")
            datatype = value;
        else
            fail(CodecErrc::MalformedXml, "unexpected attribute on <literal>: " + name);
    }
    if (!language.empty() && !datatype.empty())
        fail(CodecErrc::InvalidTerm, "literal carries both xml:lang and datatype");
    return Term::literal(node.text, std::move(language), std::move(datatype));
}

Term require_valid(Term t)
{
    if (auto v = validate_term(t); !v)
        fail(CodecErrc::InvalidTerm, v.diagnostic);
    return t;
}

std::vector<Term> parse_contexts(const XmlElement& elem)
{
    if (!elem.attributes.empty())
        fail(CodecErrc::MalformedXml, "unexpected attribute on <contexts>");
    if (!is_all_whitespace(elem.text))
        fail(CodecErrc::MalformedXml, "character data inside <contexts>");
    std::vector<Term> contexts;
    for (const auto& child : elem.children) {
        if (child.name != "uri")
            fail(CodecErrc::UnknownElement, "unexpected element in <contexts>: " + child.name);
        Term ctx = require_valid(node_to_term(child));
        for (const auto& existing : contexts) {
            if (existing == ctx)
                fail(CodecErrc::InvalidTerm, "duplicate context: " + ctx.value());
        }
        contexts.push_back(std::move(ctx));
    }
    return contexts;
}

UpdateOp parse_op(const XmlElement& elem)
{
    const OpKind kind = elem.name == "add" ? OpKind::Add : OpKind::Remove;
    if (!elem.attributes.empty())
        fail(CodecErrc::MalformedXml, "unexpected attribute on <" + elem.name + ">");
    if (!is_all_whitespace(elem.text))
        fail(CodecErrc::MalformedXml, "character data inside <" + elem.name + ">");

    std::vector<Term> terms;
    std::vector<Term> contexts;
    bool have_contexts = false;
    for (const auto& child : elem.children) {
        if (child.name == "uri" || child.name == "bnode" || child.name == "literal") {
            if (have_contexts)
                fail(CodecErrc::MalformedXml, "term node after <contexts>");
            terms.push_back(node_to_term(child));
        } else if (child.name == "contexts") {
            if (have_contexts)
                fail(CodecErrc::MalformedXml, "multiple <contexts> elements");
            contexts = parse_contexts(child);
            have_contexts = true;
        } else {
            fail(CodecErrc::UnknownElement,
                 "unexpected element in <" + elem.name + ">: " + child.name);
        }
    }
    if (terms.size() != 3)
        fail(CodecErrc::MissingNode, "<" + elem.name + "> holds " + std::to_string(terms.size())
                                         + " term nodes, expected 3");
    if (!have_contexts)
        fail(CodecErrc::MissingNode, "<" + elem.name + "> is missing its <contexts> element");
    if (terms[0].is_literal())
        fail(CodecErrc::InvalidTerm, "subject is a literal");
    if (!terms[1].is_iri())
        fail(CodecErrc::NonIriPredicate, "predicate must be a <uri> node");

    Statement stmt{require_valid(std::move(terms[0])), require_valid(std::move(terms[1])),
                   require_valid(std::move(terms[2])), std::move(contexts)};
    return {kind, std::move(stmt)};
}

void escape_into(std::string& out, const std::string& text)
{
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
}

void serialize_term(std::string& out, const Term& t, const char* indent)
{
    out += indent;
    switch (t.kind()) {
    case TermKind::Iri:
        out += "<uri>";
        escape_into(out, t.value());
        out += "</uri>\n";
        break;
    case TermKind::BlankNode:
        out += "<bnode>";
        escape_into(out, t.value());
        out += "</bnode>\n";
        break;
    case TermKind::PlainLiteral:
        out += "<literal>";
        escape_into(out, t.value());
        out += "</literal>\n";
        break;
    case TermKind::LangLiteral:
        out += "<literal xml:lang=\"";
        escape_into(out, t.language());
        out += "\">";
        escape_into(out, t.value());
        out += "</literal>\n";
        break;
    case TermKind::TypedLiteral:
        out += "<literal datatype=\"";
        escape_into(out, t.datatype());
        out += "\">";
        escape_into(out, t.value());
        out += "</literal>\n";
        break;
    }
}

} // namespace

Transaction parse_rdftx(std::string_view document)
{
    XmlParser parser(document);
    XmlElement root = parser.parse_document();
    if (root.name != "transaction")
        fail(CodecErrc::UnknownElement, "root element is <" + root.name + ">, expected <transaction>");
    if (!root.attributes.empty())
        fail(CodecErrc::MalformedXml, "unexpected attribute on <transaction>");
    if (!is_all_whitespace(root.text))
        fail(CodecErrc::MalformedXml, "character data inside <transaction>");

    Transaction tx;
    for (const auto& child : root.children) {
        if (child.name != "add" && child.name != "remove")
            fail(CodecErrc::UnknownElement, "unexpected element: " + child.name);
        tx.ops.push_back(parse_op(child));
    }
    return tx;
}

std::string serialize_rdftx(const Transaction& t)
{
    if (auto v = validate_transaction(t); !v)
        fail(CodecErrc::InvalidTerm, v.diagnostic);

    if (t.ops.empty())
        return "<transaction/>\n";

    std::string out = "<transaction>\n";
    for (const auto& op : t.ops) {
        const char* tag = op.kind == OpKind::Add ? "add" : "remove";
        out += "    <";
        out += tag;
        out += ">\n";
        const auto& stmt = op.statement;
        serialize_term(out, stmt.subject, "        ");
        serialize_term(out, stmt.predicate, "        ");
        serialize_term(out, stmt.object, "        ");
        if (stmt.contexts.empty()) {
            out += "        <contexts/>\n";
        } else {
            out += "        <contexts>\n";
            for (const auto& ctx : stmt.contexts)
                serialize_term(out, ctx, "            ");
            out += "        </contexts>\n";
        }
        out += "    </";
        out += tag;
        out += ">\n";
    }
    out += "</transaction>\n";
    return out;
}

} // namespace rdfstream
