#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "foresight/quant.hpp"
#include "foresight/scenarios.hpp"
#include "foresight/store.hpp"

namespace foresight::api {

inline constexpr std::size_t kMaxRuns = 100000;
inline constexpr std::size_t kMaxTimePoints = 100000;

/// Body of POST /api/simulate:
///   {"scenario": name} or {"drivers": {"A": a, "R": r}},
///   optional "params" (ParamSet overrides), "horizon", "dt", "n_runs", "seed".
struct SimRequest {
  std::optional<std::string> scenario;
  std::optional<scenarios::DriverLevels> drivers;
  nlohmann::json param_overrides = nlohmann::json::object();
  double horizon = 10.0;
  double dt = 0.1;
  std::size_t n_runs = 200;
  std::uint64_t seed = 0;
};

/// Throws FieldError naming the offending field.
SimRequest parse_sim_request(const nlohmann::json& body);

struct Response {
  int status = 200;
  nlohmann::json body;
};

/// Stateless request handlers over an immutable snapshot of a project store
/// taken at construction. Safe to call from several threads.
class Service {
 public:
  explicit Service(const ProjectStore& store);

  Response health() const;
  Response topics() const;
  Response matrix() const;
  Response scenarios() const;
  Response simulate(std::string_view body) const;

  /// Routes "GET /api/..." and "POST /api/simulate"; 404 for anything else.
  Response handle(std::string_view method, std::string_view path, std::string_view body) const;

 private:
  struct Loaded {
    std::optional<nlohmann::json> value;
    std::optional<Response> failure;
  };

  static Response failure_response(const std::exception& e);

  Loaded topics_;
  Loaded matrix_;
  Loaded scenarios_;
  std::optional<scenarios::ScenarioTable> scenario_table_;
  quant::ParamSet params_;
  std::optional<Response> params_failure_;
};

}  // namespace foresight::api
