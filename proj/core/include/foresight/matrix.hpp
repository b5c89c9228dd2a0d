#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace foresight::matrix {

enum class Level { Low = 0, Medium = 1, High = 2 };
enum class Relevance { Monitor = 0, Important = 1, Critical = 2 };

std::string_view to_string(Level l);
std::string_view to_string(Relevance r);
/// Case-insensitive; throws ValidationError on anything else.
Level level_from_string(std::string_view s);
Relevance relevance_from_string(std::string_view s);

struct FactorAssessment {
  std::string name;
  Level impact = Level::Low;
  Level uncertainty = Level::Low;
  std::string implications;
  std::string strategies;
  std::optional<int> linked_topic;

  bool operator==(const FactorAssessment&) const = default;
};

struct Entry {
  FactorAssessment factor;
  Relevance relevance;

  bool operator==(const Entry&) const = default;
};

struct ImpactMatrix {
  std::vector<Entry> entries;  // input order

  bool operator==(const ImpactMatrix&) const = default;
};

/// High impact splits on uncertainty (High -> Critical, otherwise Important);
/// anything below High impact is Monitor.
constexpr Relevance derive_relevance(Level impact, Level uncertainty) noexcept {
  if (impact != Level::High) return Relevance::Monitor;
  return uncertainty == Level::High ? Relevance::Critical : Relevance::Important;
}

/// Throws ValidationError on an empty or duplicate factor name.
ImpactMatrix build_matrix(std::vector<FactorAssessment> factors);

/// Names of the Critical factors in input order.
std::vector<std::string> select_critical(const ImpactMatrix& m);

/// The six assessed topics with their implications and strategies.
const std::vector<FactorAssessment>& builtin_factors();

nlohmann::json to_json(const ImpactMatrix& m);
/// Accepts either the matrix config (array of factors) or a serialized
/// ImpactMatrix ({"factors": [...]}). Stored relevance values are
/// re-derived and checked.
ImpactMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json factors_to_json(const std::vector<FactorAssessment>& factors);

}  // namespace foresight::matrix
