#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace foresight::csv {

struct Row {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line on which the row starts
};

/// Parses RFC 4180 text: comma separated, fields optionally double-quoted,
/// quotes inside quoted fields doubled, CRLF or LF line ends, quoted fields
/// may span lines. Blank lines are skipped.
/// Throws ParseError on a stray quote in an unquoted field, text after a
/// closing quote, or an unterminated quoted field.
std::vector<Row> parse(std::string_view text);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

/// Joins fields with commas, escaping as needed. No line terminator.
std::string join(const std::vector<std::string>& fields);

}  // namespace foresight::csv

namespace foresight::utf8 {

/// Byte offset of the first ill-formed sequence, or npos.
std::size_t first_invalid(std::string_view bytes) noexcept;

inline bool is_valid(std::string_view bytes) noexcept {
  return first_invalid(bytes) == std::string_view::npos;
}

/// Drops a leading UTF-8 byte-order mark if present.
std::string_view strip_bom(std::string_view bytes) noexcept;

/// Number of code points; input must be valid UTF-8.
std::size_t length(std::string_view text) noexcept;

}  // namespace foresight::utf8
