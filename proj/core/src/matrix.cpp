#include "foresight/matrix.hpp"

#include <set>

#include "foresight/error.hpp"
#include "strings.hpp"

namespace foresight::matrix {

std::string_view to_string(Level l) {
  switch (l) {
    case Level::Low: return "Low";
    case Level::Medium: return "Medium";
    case Level::High: return "High";
  }
  return "?";
}

std::string_view to_string(Relevance r) {
  switch (r) {
    case Relevance::Monitor: return "Monitor";
    case Relevance::Important: return "Important";
    case Relevance::Critical: return "Critical";
  }
  return "?";
}

Level level_from_string(std::string_view s) {
  const std::string v = detail::lower(detail::trim(s));
  if (v == "low") return Level::Low;
  if (v == "medium") return Level::Medium;
  if (v == "high") return Level::High;
  throw ValidationError("unknown level '" + std::string(s) + "' (expected Low, Medium or High)");
}

Relevance relevance_from_string(std::string_view s) {
  const std::string v = detail::lower(detail::trim(s));
  if (v == "monitor") return Relevance::Monitor;
  if (v == "important") return Relevance::Important;
  if (v == "critical") return Relevance::Critical;
  throw ValidationError("unknown relevance '" + std::string(s) + "'");
}

ImpactMatrix build_matrix(std::vector<FactorAssessment> factors) {
  ImpactMatrix m;
  std::set<std::string> seen;
  m.entries.reserve(factors.size());
  for (auto& f : factors) {
    if (detail::trim(f.name).empty()) throw ValidationError("factor name must not be empty");
    if (!seen.insert(f.name).second) throw ValidationError("duplicate factor name '" + f.name + "'");
    const Relevance r = derive_relevance(f.impact, f.uncertainty);
    m.entries.push_back({std::move(f), r});
  }
  return m;
}

std::vector<std::string> select_critical(const ImpactMatrix& m) {
  std::vector<std::string> out;
  for (const auto& e : m.entries) {
    if (e.relevance == Relevance::Critical) out.push_back(e.factor.name);
  }
  return out;
}

const std::vector<FactorAssessment>& builtin_factors() {
  static const std::vector<FactorAssessment> factors{
      {"AI & Digital Education", Level::High, Level::High,
       "Transforms learning with personalized and adaptive methods; risks include widening the digital divide and "
       "ethical concerns.",
       "Invest in robust digital infrastructure, develop ethical AI guidelines, and promote digital inclusion.", 0},
      {"Molecular Medicine & Oncology", Level::High, Level::Medium,
       "Promises breakthroughs in targeted therapies and diagnostics yet faces regulatory, ethical, and translational "
       "challenges.",
       "Enhance R&D funding; streamline clinical trial and approval processes; ensure ethical oversight.", 1},
      {"Machine Learning & Predictive Analytics", Level::High, Level::Medium,
       "Drives innovation in multiple sectors; issues of data governance, transparency, and algorithmic bias persist. "
       "Essential for combating climate change, uncertainty in technological breakthroughs and market adoption "
       "remains.",
       "Strengthen data transparency and fairness; invest in scalable, secure ML frameworks.", 2},
      {"Renewable Energy & Sustainability", Level::High, Level::High,
       "Essential for combating climate change, uncertainty in technological breakthroughs and market adoption "
       "remains.",
       "Support clean technology R&D; provide policy incentives; upgrade energy infrastructures.", 3},
      {"Financial Markets & Fintech", Level::High, Level::High,
       "Disrupts traditional finance with digital innovations but may increase market volatility and cybersecurity "
       "risks.",
       "Implement robust regulatory frameworks; foster innovation in fintech; enhance digital literacy.", 4},
      {"Healthcare Systems & Public Health", Level::High, Level::Medium,
       "Can revolutionize care delivery and patient management; challenges include data privacy, system integration, "
       "and equity.",
       "Prioritize secure and interoperable health data systems; invest in telemedicine; enforce strict privacy "
       "protocols.",
       5},
  };
  return factors;
}

namespace {

nlohmann::json factor_json(const FactorAssessment& f) {
  return {{"name", f.name},
          {"impact", to_string(f.impact)},
          {"uncertainty", to_string(f.uncertainty)},
          {"implications", f.implications},
          {"strategies", f.strategies},
          {"linked_topic", f.linked_topic ? nlohmann::json(*f.linked_topic) : nlohmann::json(nullptr)}};
}

FactorAssessment factor_from(const nlohmann::json& j) {
  FactorAssessment f;
  f.name = j.at("name").get<std::string>();
  f.impact = level_from_string(j.at("impact").get<std::string>());
  f.uncertainty = level_from_string(j.at("uncertainty").get<std::string>());
  f.implications = j.value("implications", std::string{});
  f.strategies = j.value("strategies", std::string{});
  if (j.contains("linked_topic") && !j.at("linked_topic").is_null()) {
    const int t = j.at("linked_topic").get<int>();
    if (t < 0) throw ValidationError("factor '" + f.name + "': linked_topic must be non-negative");
    f.linked_topic = t;
  }
  return f;
}

}  // namespace

nlohmann::json factors_to_json(const std::vector<FactorAssessment>& factors) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& f : factors) arr.push_back(factor_json(f));
  return arr;
}

nlohmann::json to_json(const ImpactMatrix& m) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : m.entries) {
    auto f = factor_json(e.factor);
    f["relevance"] = to_string(e.relevance);
    arr.push_back(std::move(f));
  }
  return {{"factors", std::move(arr)}, {"critical", select_critical(m)}};
}

ImpactMatrix matrix_from_json(const nlohmann::json& j) {
  try {
    const nlohmann::json& arr = j.is_array() ? j : j.at("factors");
    if (!arr.is_array()) throw ValidationError("matrix schema: factors must be an array");
    std::vector<FactorAssessment> factors;
    for (const auto& item : arr) factors.push_back(factor_from(item));
    ImpactMatrix m = build_matrix(std::move(factors));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (arr[i].contains("relevance") &&
          relevance_from_string(arr[i].at("relevance").get<std::string>()) != m.entries[i].relevance) {
        throw ValidationError("matrix schema: stored relevance of '" + m.entries[i].factor.name +
                              "' disagrees with its impact and uncertainty");
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("matrix schema: ") + e.what());
  }
}

}  // namespace foresight::matrix
