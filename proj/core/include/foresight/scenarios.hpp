#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace foresight::scenarios {

/// Scalar driver levels, each in [0, 1].
struct DriverLevels {
  double ai_education = 0.0;  // A
  double renewables = 0.0;    // R

  /// Throws ValidationError naming the offending field and the bound.
  void validate() const;

  bool operator==(const DriverLevels&) const = default;
};

struct Scenario {
  std::string name;
  std::map<std::string, std::string> narratives;  // dimension -> text
  DriverLevels drivers;

  bool operator==(const Scenario&) const = default;
};

struct ScenarioTable {
  std::vector<std::string> dimensions;
  std::vector<Scenario> scenarios;

  /// Throws NotFoundError.
  const Scenario& find(std::string_view name) const;
  /// Throws ValidationError on duplicate names or narratives not keyed by
  /// exactly the table dimensions.
  void validate() const;

  bool operator==(const ScenarioTable&) const = default;
};

/// The four reference scenarios over the three critical dimensions. Driver
/// levels are modelling defaults: Optimistic (0.9, 0.9), Stagnation
/// (0.3, 0.3), Sustainability (0.6, 0.9), Downturn (0.2, 0.2).
ScenarioTable builtin_scenarios();

/// Throws ValidationError when a driver is outside [0, 1].
Scenario custom_scenario(std::string name, double a, double r,
                         std::map<std::string, std::string> narratives = {});

enum class TableFormat { Markdown, Csv };

TableFormat table_format_from_string(std::string_view s);

/// One row per scenario: name, one column per dimension, then A and R.
std::string render_table(const ScenarioTable& t, TableFormat format);

nlohmann::json to_json(const ScenarioTable& t);
ScenarioTable scenario_table_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DriverLevels& d);

}  // namespace foresight::scenarios
