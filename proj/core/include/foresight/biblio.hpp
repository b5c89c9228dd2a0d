#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace foresight::biblio {

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 2100;

/// The search string used to assemble the reference corpus. Stored verbatim in
/// QueryMeta when the caller does not supply one.
inline constexpr std::string_view kDefaultQuery =
    R"(TITLE-ABS-KEY ( ("artificial intelligence" OR "AI") AND ("ethics" OR "societal impact" OR "policy" OR "regulation" OR "economy") AND ("predictions" OR "trends" OR "future directions" OR "forecasts") ))";

struct BiblioRecord {
  std::string id;
  std::string title;
  std::string abstract;
  std::vector<std::string> keywords;
  std::optional<int> year;
  std::string source;

  bool operator==(const BiblioRecord&) const = default;
};

struct QueryMeta {
  std::string query_string{kDefaultQuery};
  std::string retrieved_at;  // ISO-8601 UTC
  std::string source_label = "Scopus export";

  bool operator==(const QueryMeta&) const = default;
};

struct Warning {
  std::size_t index;  // 0-based data row / entry index in the source file
  std::string reason;

  bool operator==(const Warning&) const = default;
};

struct RecordSet {
  std::vector<BiblioRecord> records;
  QueryMeta provenance;
  std::vector<Warning> warnings;

  bool operator==(const RecordSet&) const = default;
};

enum class Format { Csv, Ris };

/// Maps "csv" / "ris" (case-insensitive). Throws UsageError otherwise.
Format parse_format(std::string_view tag);

/// Infers the format from a file extension. Throws UsageError when unknown.
Format format_from_path(std::string_view path);

/// Parses an exported record file. Bad rows are skipped with a warning;
/// structural problems (invalid UTF-8, broken CSV quoting) throw ParseError,
/// and an input without a single usable record throws ValidationError.
RecordSet parse_export(std::string_view bytes, Format format, QueryMeta meta = {});

struct Filter {
  std::optional<int> min_year;
  std::optional<int> max_year;
  bool require_abstract = false;
};

/// Keeps the records that satisfy every supplied predicate. Records without a
/// year fail any year predicate. Warnings are carried through unchanged.
RecordSet filter_records(const RecordSet& rs, const Filter& filter);

struct CorpusStats {
  std::size_t record_count = 0;
  std::map<int, std::size_t> year_histogram;
  std::size_t unknown_year = 0;
  double mean_abstract_length = 0.0;  // in code points
};

CorpusStats corpus_stats(const RecordSet& rs);

nlohmann::json to_json(const RecordSet& rs);

/// Throws ValidationError when the document does not follow the corpus schema.
RecordSet record_set_from_json(const nlohmann::json& j);

}  // namespace foresight::biblio
