#include "foresight/biblio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <unordered_set>

#include "foresight/csv.hpp"
#include "foresight/error.hpp"
#include "strings.hpp"

namespace foresight::biblio {

namespace {

using detail::lower;
using detail::trim;

std::vector<std::string> split_keywords(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(';', start), text.size());
    auto kw = trim(text.substr(start, end - start));
    if (!kw.empty()) out.emplace_back(kw);
    start = end + 1;
  }
  return out;
}

// Parses a year from the leading four digits ("2021", "2021/05/01").
// Returns the reason on failure.
std::optional<std::string> assign_year(std::string_view raw, BiblioRecord& rec) {
  raw = trim(raw);
  if (raw.empty()) return std::nullopt;
  int year = 0;
  if (raw.size() < 4 ||
      !std::all_of(raw.begin(), raw.begin() + 4, [](char c) { return c >= '0' && c <= '9'; }) ||
      (raw.size() > 4 && std::isdigit(static_cast<unsigned char>(raw[4])))) {
    return "unparseable year '" + std::string(raw) + "'";
  }
  std::from_chars(raw.data(), raw.data() + 4, year);
  if (year < kMinYear || year > kMaxYear) {
    return "year " + std::to_string(year) + " outside [" + std::to_string(kMinYear) + ", " +
           std::to_string(kMaxYear) + "]";
  }
  rec.year = year;
  return std::nullopt;
}

// Shared tail of both parsers: applies row-level soft validation and appends
// accepted records.
class Collector {
 public:
  explicit Collector(RecordSet& rs) : rs_(rs) {}

  void add(std::size_t index, BiblioRecord rec, std::string_view raw_year) {
    rec.title = std::string(trim(rec.title));
    rec.abstract = std::string(trim(rec.abstract));
    rec.source = std::string(trim(rec.source));
    if (rec.title.empty() && rec.abstract.empty()) {
      rs_.warnings.push_back({index, "missing both title and abstract; row skipped"});
      return;
    }
    bool warned = false;
    if (auto reason = assign_year(raw_year, rec)) {
      rs_.warnings.push_back({index, *reason + "; year left unknown"});
      warned = true;
    }
    rec.id = std::string(trim(rec.id));
    if (rec.id.empty()) rec.id = "rec-" + std::to_string(index + 1);
    if (ids_.contains(rec.id)) {
      std::string base = rec.id;
      std::size_t n = 2;
      while (ids_.contains(base + "#" + std::to_string(n))) ++n;
      rec.id = base + "#" + std::to_string(n);
      if (!warned) rs_.warnings.push_back({index, "duplicate id '" + base + "' renamed to '" + rec.id + "'"});
    }
    ids_.insert(rec.id);
    rs_.records.push_back(std::move(rec));
  }

 private:
  RecordSet& rs_;
  std::unordered_set<std::string> ids_;
};

enum class Column { Ignore, Id, Title, Abstract, Keywords, Year, Source };

Column classify_header(std::string_view header) {
  const std::string h = lower(trim(header));
  if (h == "title") return Column::Title;
  if (h == "abstract") return Column::Abstract;
  if (h == "author keywords" || h == "keywords") return Column::Keywords;
  if (h == "year") return Column::Year;
  if (h == "source title" || h == "source") return Column::Source;
  if (h == "eid" || h == "id") return Column::Id;
  return Column::Ignore;
}

void parse_csv(std::string_view text, RecordSet& rs) {
  const auto rows = csv::parse(text);
  if (rows.empty()) throw ValidationError("no records");

  const auto& header = rows.front().fields;
  std::vector<Column> columns;
  columns.reserve(header.size());
  bool has_text_column = false;
  bool has_id = false;
  std::optional<std::size_t> doi_column;
  for (std::size_t i = 0; i < header.size(); ++i) {
    columns.push_back(classify_header(header[i]));
    has_text_column |= columns.back() == Column::Title || columns.back() == Column::Abstract;
    has_id |= columns.back() == Column::Id;
    if (lower(trim(header[i])) == "doi") doi_column = i;
  }
  if (!has_text_column) throw ParseError("header has neither a Title nor an Abstract column", rows.front().line);
  if (!has_id && doi_column) columns[*doi_column] = Column::Id;
  if (rows.size() == 1) throw ValidationError("no records");

  Collector collect(rs);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& fields = rows[r].fields;
    BiblioRecord rec;
    std::string_view raw_year;
    for (std::size_t c = 0; c < columns.size() && c < fields.size(); ++c) {
      switch (columns[c]) {
        case Column::Title: rec.title = fields[c]; break;
        case Column::Abstract: rec.abstract = fields[c]; break;
        case Column::Keywords: rec.keywords = split_keywords(fields[c]); break;
        case Column::Year: raw_year = fields[c]; break;
        case Column::Source: rec.source = fields[c]; break;
        case Column::Id: rec.id = fields[c]; break;
        case Column::Ignore: break;
      }
    }
    collect.add(r - 1, std::move(rec), raw_year);
  }
}

bool is_ris_tag_line(std::string_view line) {
  return line.size() >= 5 && std::isupper(static_cast<unsigned char>(line[0])) &&
         std::isalnum(static_cast<unsigned char>(line[1])) && line[2] == ' ' && line[3] == ' ' &&
         line[4] == '-';
}

void parse_ris(std::string_view text, RecordSet& rs) {
  Collector collect(rs);
  std::optional<BiblioRecord> current;
  std::string raw_year;
  std::string id_fallback;
  std::string* last_field = nullptr;
  std::size_t entry_index = 0;
  bool saw_entry = false;

  auto close = [&] {
    if (!current) return;
    if (current->id.empty()) current->id = id_fallback;
    collect.add(entry_index++, std::move(*current), raw_year);
    current.reset();
    raw_year.clear();
    id_fallback.clear();
    last_field = nullptr;
  };
  auto append = [](std::string& dst, std::string_view v) {
    if (!dst.empty() && !v.empty()) dst.push_back(' ');
    dst.append(v);
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (!is_ris_tag_line(line)) {
      auto cont = trim(line);
      if (current && last_field && !cont.empty()) append(*last_field, cont);
      continue;
    }
    const std::string tag(line.substr(0, 2));
    const std::string_view value = trim(line.size() > 5 ? line.substr(5) : std::string_view{});

    if (tag == "TY") {
      close();
      current.emplace();
      saw_entry = true;
      continue;
    }
    if (tag == "ER") {
      close();
      continue;
    }
    if (!current) {
      current.emplace();
      saw_entry = true;
    }
    last_field = nullptr;
    if (tag == "TI" || tag == "T1") {
      if (current->title.empty()) {
        current->title = std::string(value);
        last_field = &current->title;
      }
    } else if (tag == "AB" || tag == "N2") {
      if (current->abstract.empty()) {
        current->abstract = std::string(value);
        last_field = &current->abstract;
      }
    } else if (tag == "KW") {
      for (auto& kw : split_keywords(value)) current->keywords.push_back(std::move(kw));
    } else if (tag == "PY" || tag == "Y1") {
      if (raw_year.empty()) raw_year = std::string(value);
    } else if (tag == "JO" || tag == "T2" || tag == "JF" || tag == "JA") {
      if (current->source.empty()) current->source = std::string(value);
    } else if (tag == "ID") {
      current->id = std::string(value);
    } else if (tag == "DO") {
      if (id_fallback.empty()) id_fallback = std::string(value);
    }
  }
  close();
  if (!saw_entry) throw ValidationError("no records");
}

}  // namespace

Format parse_format(std::string_view tag) {
  const std::string t = lower(trim(tag));
  if (t == "csv") return Format::Csv;
  if (t == "ris") return Format::Ris;
  throw UsageError("unknown format '" + std::string(tag) + "' (expected csv or ris)");
}

Format format_from_path(std::string_view path) {
  const auto dot = path.rfind('.');
  if (dot == std::string_view::npos) throw UsageError("cannot infer format of '" + std::string(path) + "'; pass --format");
  return parse_format(path.substr(dot + 1));
}

RecordSet parse_export(std::string_view bytes, Format format, QueryMeta meta) {
  if (const auto bad = utf8::first_invalid(bytes); bad != std::string_view::npos) {
    const auto line = 1 + static_cast<std::size_t>(std::count(bytes.begin(), bytes.begin() + bad, '\n'));
    throw ParseError("input is not valid UTF-8", line);
  }
  const std::string_view text = utf8::strip_bom(bytes);
  if (trim(text).empty()) throw ValidationError("no records");

  RecordSet rs;
  rs.provenance = std::move(meta);
  switch (format) {
    case Format::Csv: parse_csv(text, rs); break;
    case Format::Ris: parse_ris(text, rs); break;
  }
  if (rs.records.empty()) throw ValidationError("no records");
  return rs;
}

RecordSet filter_records(const RecordSet& rs, const Filter& filter) {
  if (filter.min_year && filter.max_year && *filter.min_year > *filter.max_year) {
    throw UsageError("min_year " + std::to_string(*filter.min_year) + " exceeds max_year " +
                     std::to_string(*filter.max_year));
  }
  RecordSet out;
  out.provenance = rs.provenance;
  out.warnings = rs.warnings;
  for (const auto& rec : rs.records) {
    if (filter.min_year && (!rec.year || *rec.year < *filter.min_year)) continue;
    if (filter.max_year && (!rec.year || *rec.year > *filter.max_year)) continue;
    if (filter.require_abstract && trim(rec.abstract).empty()) continue;
    out.records.push_back(rec);
  }
  return out;
}

CorpusStats corpus_stats(const RecordSet& rs) {
  CorpusStats st;
  st.record_count = rs.records.size();
  std::size_t total_len = 0;
  for (const auto& rec : rs.records) {
    if (rec.year) ++st.year_histogram[*rec.year];
    else ++st.unknown_year;
    total_len += utf8::length(rec.abstract);
  }
  if (st.record_count) st.mean_abstract_length = static_cast<double>(total_len) / st.record_count;
  return st;
}

nlohmann::json to_json(const RecordSet& rs) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : rs.records) {
    records.push_back({{"id", r.id},
                       {"title", r.title},
                       {"abstract", r.abstract},
                       {"keywords", r.keywords},
                       {"year", r.year ? nlohmann::json(*r.year) : nlohmann::json(nullptr)},
                       {"source", r.source}});
  }
  nlohmann::json warnings = nlohmann::json::array();
  for (const auto& w : rs.warnings) warnings.push_back({{"index", w.index}, {"reason", w.reason}});
  return {{"provenance",
           {{"query_string", rs.provenance.query_string},
            {"retrieved_at", rs.provenance.retrieved_at},
            {"source_label", rs.provenance.source_label}}},
          {"records", std::move(records)},
          {"warnings", std::move(warnings)}};
}

RecordSet record_set_from_json(const nlohmann::json& j) {
  try {
    RecordSet rs;
    const auto& prov = j.at("provenance");
    rs.provenance.query_string = prov.at("query_string").get<std::string>();
    rs.provenance.retrieved_at = prov.at("retrieved_at").get<std::string>();
    rs.provenance.source_label = prov.at("source_label").get<std::string>();
    std::set<std::string> ids;
    for (const auto& r : j.at("records")) {
      BiblioRecord rec;
      rec.id = r.at("id").get<std::string>();
      rec.title = r.at("title").get<std::string>();
      rec.abstract = r.at("abstract").get<std::string>();
      rec.keywords = r.at("keywords").get<std::vector<std::string>>();
      if (!r.at("year").is_null()) {
        const int y = r.at("year").get<int>();
        if (y < kMinYear || y > kMaxYear) throw ValidationError("record '" + rec.id + "': year out of range");
        rec.year = y;
      }
      rec.source = r.at("source").get<std::string>();
      if (!ids.insert(rec.id).second) throw ValidationError("duplicate record id '" + rec.id + "'");
      rs.records.push_back(std::move(rec));
    }
    for (const auto& w : j.at("warnings")) {
      rs.warnings.push_back({w.at("index").get<std::size_t>(), w.at("reason").get<std::string>()});
    }
    return rs;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("corpus schema: ") + e.what());
  }
}

}  // namespace foresight::biblio
