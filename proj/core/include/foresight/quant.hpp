#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "foresight/scenarios.hpp"

namespace foresight::quant {

/// Growth-curve parameters. Defaults are a desk-scale configuration, not
/// calibrated values.
struct ParamSet {
  double E0 = 0.5, S0 = 0.5, T0 = 0.5;

  double alpha = 0.3;    // A -> economic growth
  double beta = 0.3;     // R -> economic growth
  double gamma = 0.0;    // A*R -> economic growth
  double delta = 0.3;    // A -> social well-being
  double eps_sr = 0.3;   // R -> social well-being
  double zeta = 0.0;     // A*R -> social well-being
  double eta = 0.3;      // A -> technology advancement
  double theta = 0.3;    // A*R -> technology advancement

  double k_E = 1.0, k_S = 1.0, k_T = 1.0;
  double t0_E = 5.0, t0_S = 5.0, t0_T = 5.0;
  double sigma_E = 0.05, sigma_S = 0.05, sigma_T = 0.05;

  /// Checks k > 0, sigma >= 0 and finite values. Throws ValidationError.
  void validate() const;

  /// Sets all three noise levels.
  void set_sigma(double sigma) { sigma_E = sigma_S = sigma_T = sigma; }

  bool operator==(const ParamSet&) const = default;
};

nlohmann::json to_json(const ParamSet& p);
/// Missing keys keep their defaults; unknown keys are rejected.
ParamSet params_from_json(const nlohmann::json& j, ParamSet base = {});

/// ceiling / (1 + exp(-k (t - t0))), evaluated without overflow for either
/// sign of the exponent. Throws ValidationError when k <= 0.
double logistic_index(double ceiling, double k, double t0, double t);

/// d/dt of logistic_index: k y (1 - y / ceiling).
double logistic_slope(double ceiling, double k, double t0, double t);

/// ceiling * exp(-exp(-k (t - t0))). Throws ValidationError when k <= 0.
double gompertz_index(double ceiling, double k, double t0, double t);

struct Ceilings {
  double economic;
  double social;
  double technology;
};

/// E0 + aA + bR + gAR, S0 + dA + eR + zAR, T0 + hA + thAR.
/// Throws ValidationError when any ceiling is not positive.
Ceilings ceilings(const ParamSet& p, const scenarios::DriverLevels& d);

/// Sample times 0, dt, 2dt, ... up to and including horizon (within a
/// relative 1e-9 slack). Throws UsageError on non-positive horizon or dt.
std::vector<double> time_grid(double horizon, double dt);

struct Trajectory {
  std::vector<double> times;
  std::vector<double> E, S, T;
  std::uint64_t seed = 0;
  scenarios::DriverLevels drivers;

  bool operator==(const Trajectory&) const = default;
};

/// Deterministic curves plus i.i.d. Gaussian noise. Noise is drawn from
/// Rng(seed) in the order eps_E, eps_S, eps_T for each time step. A zero
/// sigma still consumes its draw, so paths with different sigmas share the
/// same underlying normals.
Trajectory simulate_path(const ParamSet& p, const scenarios::DriverLevels& d, double horizon,
                         double dt, std::uint64_t seed);

/// Seed of run i in an ensemble: splitmix64(base_seed + i).
std::uint64_t run_seed(std::uint64_t base_seed, std::size_t run_index) noexcept;

enum class Index { Economic = 0, Social = 1, Technology = 2 };
inline constexpr std::array<Index, 3> kIndices{Index::Economic, Index::Social, Index::Technology};
std::string_view to_string(Index i);  // "E", "S", "T"
std::string_view long_name(Index i);

struct IndexStats {
  std::vector<double> mean, std, q05, q50, q95;
};

struct Ensemble {
  std::size_t n_runs = 0;
  std::uint64_t base_seed = 0;
  scenarios::DriverLevels drivers;
  std::vector<double> times;
  std::array<IndexStats, 3> stats;

  const IndexStats& of(Index i) const { return stats[static_cast<std::size_t>(i)]; }
};

struct MonteCarloOptions {
  std::size_t threads = 1;  // 0 picks hardware concurrency
};

/// Runs n_runs paths and reduces them per time point. Standard deviation
/// uses the n-1 denominator (0 for a single run); quantiles interpolate
/// linearly between order statistics. The result does not depend on the
/// number of threads.
Ensemble monte_carlo(const ParamSet& p, const scenarios::DriverLevels& d, double horizon, double dt,
                     std::size_t n_runs, std::uint64_t base_seed, const MonteCarloOptions& opts = {});

struct ScenarioOutcome {
  std::string scenario;
  scenarios::DriverLevels drivers;
  double terminal_E;
  double terminal_S;
  double terminal_T;
};

/// Ensemble per scenario (same base seed for each), reporting terminal means.
std::vector<ScenarioOutcome> compare_scenarios(const ParamSet& p,
                                               const scenarios::ScenarioTable& table,
                                               double horizon, double dt, std::size_t n_runs,
                                               std::uint64_t base_seed,
                                               const MonteCarloOptions& opts = {});

/// Linear-interpolation quantile of unsorted data, q in [0, 1].
double quantile(std::vector<double> values, double q);

}  // namespace foresight::quant
