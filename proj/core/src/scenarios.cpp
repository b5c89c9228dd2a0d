#include "foresight/scenarios.hpp"

#include <cmath>
#include <set>

#include "foresight/csv.hpp"
#include "foresight/error.hpp"
#include "strings.hpp"

namespace foresight::scenarios {

namespace {

void check_unit_interval(const char* field, double v) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw FieldError(field, "value " + detail::format_double(v) + " outside the allowed range [0, 1]");
  }
}

}  // namespace

void DriverLevels::validate() const {
  check_unit_interval("A", ai_education);
  check_unit_interval("R", renewables);
}

const Scenario& ScenarioTable::find(std::string_view name) const {
  for (const auto& s : scenarios) {
    if (s.name == name) return s;
  }
  throw NotFoundError("unknown scenario '" + std::string(name) + "'");
}

void ScenarioTable::validate() const {
  std::set<std::string> names;
  const std::set<std::string> dims(dimensions.begin(), dimensions.end());
  if (dims.size() != dimensions.size()) throw ValidationError("duplicate dimension name");
  for (const auto& s : scenarios) {
    if (detail::trim(s.name).empty()) throw ValidationError("scenario name must not be empty");
    if (!names.insert(s.name).second) throw ValidationError("duplicate scenario name '" + s.name + "'");
    s.drivers.validate();
    std::set<std::string> keys;
    for (const auto& [k, _] : s.narratives) keys.insert(k);
    if (keys != dims) {
      throw ValidationError("scenario '" + s.name + "' narratives must be keyed by exactly the table dimensions");
    }
  }
}

ScenarioTable builtin_scenarios() {
  const std::string edu = "AI & Digital Education";
  const std::string energy = "Renewable Energy & Sustainability";
  const std::string fin = "Financial Markets & Fintech";
  ScenarioTable t;
  t.dimensions = {edu, energy, fin};
  t.scenarios = {
      {"Optimistic Future",
       {{edu, "Rapid, inclusive AI integration leads to personalized, adaptive learning environments."},
        {energy, "Accelerated transition to renewables with widespread grid modernization."},
        {fin, "Stable and secure digital financial ecosystems bolstered by strong fintech growth."}},
       {0.9, 0.9}},
      {"Technological Stagnation",
       {{edu, "Slow integration with persistent digital divides and outdated pedagogical methods."},
        {energy, "Limited breakthroughs with reliance on legacy energy systems."},
        {fin, "Heightened market volatility due to sluggish fintech adoption and minimal innovation."}},
       {0.3, 0.3}},
      {"Sustainability Focus",
       {{edu, "Targeted interventions ensuring equitable access and blended learning environments."},
        {energy, "High investments in renewable infrastructure driven by strong climate policies."},
        {fin, "Stable markets oriented toward green finance, with moderate fintech innovation."}},
       {0.6, 0.9}},
      {"Economic Downturn",
       {{edu, "Budget constraints lead to reduced funding for edtech innovation and digital initiatives."},
        {energy, "Minimal investments in renewables result in compromised infrastructure development."},
        {fin, "Declining markets and reduced fintech activity elevate exposure to financial risks."}},
       {0.2, 0.2}},
  };
  return t;
}

Scenario custom_scenario(std::string name, double a, double r, std::map<std::string, std::string> narratives) {
  Scenario s{std::move(name), std::move(narratives), {a, r}};
  s.drivers.validate();
  return s;
}

TableFormat table_format_from_string(std::string_view s) {
  const std::string v = detail::lower(detail::trim(s));
  if (v == "markdown" || v == "md") return TableFormat::Markdown;
  if (v == "csv") return TableFormat::Csv;
  throw UsageError("unknown table format '" + std::string(s) + "' (expected markdown or csv)");
}

namespace {

std::string md_cell(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '|') out += "\\|";
    else if (c == '\n' || c == '\r') out += ' ';
    else out.push_back(c);
  }
  return out;
}

std::string narrative_or_empty(const Scenario& s, const std::string& dim) {
  auto it = s.narratives.find(dim);
  return it == s.narratives.end() ? std::string{} : it->second;
}

}  // namespace

std::string render_table(const ScenarioTable& t, TableFormat format) {
  std::vector<std::string> header{"Scenario"};
  header.insert(header.end(), t.dimensions.begin(), t.dimensions.end());
  header.emplace_back("A");
  header.emplace_back("R");

  std::vector<std::vector<std::string>> rows;
  for (const auto& s : t.scenarios) {
    std::vector<std::string> row{s.name};
    for (const auto& d : t.dimensions) row.push_back(narrative_or_empty(s, d));
    row.push_back(detail::format_double(s.drivers.ai_education));
    row.push_back(detail::format_double(s.drivers.renewables));
    rows.push_back(std::move(row));
  }

  std::string out;
  if (format == TableFormat::Csv) {
    out += csv::join(header) + "\n";
    for (const auto& r : rows) out += csv::join(r) + "\n";
    return out;
  }
  auto md_row = [](const std::vector<std::string>& cells) {
    std::string line = "|";
    for (const auto& c : cells) line += " " + md_cell(c) + " |";
    return line + "\n";
  };
  out += md_row(header);
  out += "|";
  for (std::size_t i = 0; i < header.size(); ++i) out += " --- |";
  out += "\n";
  for (const auto& r : rows) out += md_row(r);
  return out;
}

nlohmann::json to_json(const DriverLevels& d) { return {{"A", d.ai_education}, {"R", d.renewables}}; }

nlohmann::json to_json(const ScenarioTable& t) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : t.scenarios) {
    arr.push_back({{"name", s.name}, {"narratives", s.narratives}, {"drivers", to_json(s.drivers)}});
  }
  return {{"dimensions", t.dimensions}, {"scenarios", std::move(arr)}};
}

ScenarioTable scenario_table_from_json(const nlohmann::json& j) {
  try {
    ScenarioTable t;
    t.dimensions = j.at("dimensions").get<std::vector<std::string>>();
    for (const auto& s : j.at("scenarios")) {
      Scenario sc;
      sc.name = s.at("name").get<std::string>();
      sc.narratives = s.at("narratives").get<std::map<std::string, std::string>>();
      sc.drivers.ai_education = s.at("drivers").at("A").get<double>();
      sc.drivers.renewables = s.at("drivers").at("R").get<double>();
      t.scenarios.push_back(std::move(sc));
    }
    t.validate();
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("scenarios schema: ") + e.what());
  }
}

}  // namespace foresight::scenarios
