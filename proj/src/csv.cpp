#include "rdfstream/csv.hpp"

#include <stdexcept>

namespace rdfstream {

std::vector<std::string> parse_csv_row(std::string_view line)
{
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    std::size_t i = 0;
    bool field_was_quoted = false;
    while (i < line.size()) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    i += 2;
                    continue;
                }
                quoted = false;
                ++i;
                continue;
            }
            current += c;
            ++i;
            continue;
        }
        if (c == '"') {
            if (!current.empty() || field_was_quoted)
                throw std::runtime_error("stray quote inside unquoted field");
            quoted = true;
            field_was_quoted = true;
            ++i;
            continue;
        }
        if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
            field_was_quoted = false;
            ++i;
            continue;
        }
        if (c == '\n' || c == '\r')
            throw std::runtime_error("embedded newline in CSV field");
        if (field_was_quoted)
            throw std::runtime_error("characters after closing quote");
        current += c;
        ++i;
    }
    if (quoted)
        throw std::runtime_error("unbalanced quote in CSV row");
    fields.push_back(std::move(current));
    return fields;
}

std::string csv_join(std::span<const std::string> fields)
{
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0)
            out += ',';
        const std::string& f = fields[i];
        const bool needs_quotes = f.find_first_of(",\"") != std::string::npos
            || (!f.empty() && (f.front() == ' ' || f.back() == ' '));
        if (!needs_quotes) {
            out += f;
            continue;
        }
        out += '"';
        for (char c : f) {
            if (c == '"')
                out += "\"\"";
            else
                out += c;
        }
        out += '"';
    }
    return out;
}

} // namespace rdfstream
