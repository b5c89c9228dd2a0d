#include "foresight/csv.hpp"

#include <cstdint>

#include "foresight/error.hpp"

namespace foresight::csv {

namespace {

bool is_blank(const std::vector<std::string>& fields) {
  return fields.size() == 1 && fields.front().empty();
}

}  // namespace

std::vector<Row> parse(std::string_view text) {
  std::vector<Row> rows;
  std::vector<std::string> fields;
  std::string field;
  std::size_t line = 1;
  std::size_t row_line = 1;
  std::size_t quote_line = 0;

  enum class State { FieldStart, Unquoted, Quoted, QuoteInQuoted };
  State state = State::FieldStart;

  auto end_field = [&] {
    fields.push_back(std::move(field));
    field.clear();
  };
  auto end_row = [&] {
    end_field();
    if (!is_blank(fields)) rows.push_back(Row{std::move(fields), row_line});
    fields.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    switch (state) {
      case State::FieldStart:
      case State::Unquoted:
        if (c == ',') {
          end_field();
          state = State::FieldStart;
        } else if (c == '\n' || c == '\r') {
          if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
          end_row();
          ++line;
          row_line = line;
          state = State::FieldStart;
        } else if (c == '"') {
          if (state == State::Unquoted) throw ParseError("unexpected quote inside unquoted field", line);
          quote_line = line;
          state = State::Quoted;
        } else {
          field.push_back(c);
          state = State::Unquoted;
        }
        break;
      case State::Quoted:
        if (c == '"') {
          state = State::QuoteInQuoted;
        } else {
          if (c == '\n') ++line;
          else if (c == '\r' && !(i + 1 < text.size() && text[i + 1] == '\n')) ++line;
          field.push_back(c);
        }
        break;
      case State::QuoteInQuoted:
        if (c == '"') {
          field.push_back('"');
          state = State::Quoted;
        } else if (c == ',') {
          end_field();
          state = State::FieldStart;
        } else if (c == '\n' || c == '\r') {
          if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
          end_row();
          ++line;
          row_line = line;
          state = State::FieldStart;
        } else {
          throw ParseError("unexpected character after closing quote", line);
        }
        break;
    }
  }

  if (state == State::Quoted) throw ParseError("unterminated quoted field", quote_line);
  if (state != State::FieldStart || !fields.empty()) end_row();
  return rows;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += escape(fields[i]);
  }
  return out;
}

}  // namespace foresight::csv

namespace foresight::utf8 {

std::size_t first_invalid(std::string_view bytes) noexcept {
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    const auto b0 = static_cast<unsigned char>(bytes[i]);
    if (b0 < 0x80) {
      ++i;
      continue;
    }
    std::size_t len;
    std::uint32_t cp;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      return i;
    }
    if (i + len > n) return i;
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(bytes[i + k]);
      if ((b & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (b & 0x3F);
    }
    // overlong forms, surrogates, out of range
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000)) return i;
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return i;
    i += len;
  }
  return std::string_view::npos;
}

std::string_view strip_bom(std::string_view bytes) noexcept {
  if (bytes.starts_with("\xEF\xBB\xBF")) bytes.remove_prefix(3);
  return bytes;
}

std::size_t length(std::string_view text) noexcept {
  std::size_t n = 0;
  for (char c : text) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

}  // namespace foresight::utf8
