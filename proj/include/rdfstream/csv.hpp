#ifndef RDFSTREAM_CSV_HPP
#define RDFSTREAM_CSV_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rdfstream {

// RFC 4180 fields on a single line: quoted fields may contain commas and
// doubled quotes. Embedded newlines are not used by any format in this
// toolkit and are rejected. Throws std::runtime_error on unbalanced quotes
// or stray characters after a closing quote.
std::vector<std::string> parse_csv_row(std::string_view line);

// Joins fields, quoting any that contain a comma, quote, or leading/trailing
// whitespace.
std::string csv_join(std::span<const std::string> fields);

} // namespace rdfstream

#endif
