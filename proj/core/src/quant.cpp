#include "foresight/quant.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <utility>

#include "foresight/error.hpp"
#include "foresight/rng.hpp"
#include "strings.hpp"

namespace foresight::quant {

namespace {

struct Field {
  const char* name;
  double ParamSet::*member;
};

constexpr std::array<Field, 20> kFields{{
    {"E0", &ParamSet::E0},         {"S0", &ParamSet::S0},           {"T0", &ParamSet::T0},
    {"alpha", &ParamSet::alpha},   {"beta", &ParamSet::beta},       {"gamma", &ParamSet::gamma},
    {"delta", &ParamSet::delta},   {"eps_sr", &ParamSet::eps_sr},   {"zeta", &ParamSet::zeta},
    {"eta", &ParamSet::eta},       {"theta", &ParamSet::theta},     {"k_E", &ParamSet::k_E},
    {"k_S", &ParamSet::k_S},       {"k_T", &ParamSet::k_T},         {"t0_E", &ParamSet::t0_E},
    {"t0_S", &ParamSet::t0_S},     {"t0_T", &ParamSet::t0_T},       {"sigma_E", &ParamSet::sigma_E},
    {"sigma_S", &ParamSet::sigma_S}, {"sigma_T", &ParamSet::sigma_T},
}};

void require_rate(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw ValidationError("growth rate k must be positive and finite, got " + detail::format_double(k));
  }
}

// 1 / (1 + exp(-x)) without overflow.
double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

void ParamSet::validate() const {
  for (const auto& f : kFields) {
    if (!std::isfinite(this->*f.member)) throw FieldError(f.name, "must be finite");
  }
  for (const auto& [name, v] : {std::pair{"E0", E0}, {"S0", S0}, {"T0", T0}}) {
    if (v < 0.0) throw FieldError(name, "initial value must be non-negative");
  }
  for (const auto& [name, v] : {std::pair{"k_E", k_E}, {"k_S", k_S}, {"k_T", k_T}}) {
    if (!(v > 0.0)) throw FieldError(name, "growth rate must be positive");
  }
  for (const auto& [name, v] : {std::pair{"sigma_E", sigma_E}, {"sigma_S", sigma_S}, {"sigma_T", sigma_T}}) {
    if (v < 0.0) throw FieldError(name, "noise standard deviation must be non-negative");
  }
}

nlohmann::json to_json(const ParamSet& p) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& f : kFields) j[f.name] = p.*f.member;
  return j;
}

ParamSet params_from_json(const nlohmann::json& j, ParamSet base) {
  if (!j.is_object()) throw ValidationError("params must be a JSON object");
  auto number = [](const std::string& key, const nlohmann::json& v) {
    if (!v.is_number()) throw FieldError(key, "must be a number");
    return v.get<double>();
  };
  // shared shorthands first so specific keys win
  if (j.contains("sigma")) base.set_sigma(number("sigma", j.at("sigma")));
  if (j.contains("t0")) base.t0_E = base.t0_S = base.t0_T = number("t0", j.at("t0"));
  for (const auto& [key, value] : j.items()) {
    if (key == "sigma" || key == "t0") continue;
    const auto it = std::find_if(kFields.begin(), kFields.end(), [&](const Field& f) { return key == f.name; });
    if (it == kFields.end()) throw FieldError(key, "unknown parameter");
    base.*(it->member) = number(key, value);
  }
  base.validate();
  return base;
}

double logistic_index(double ceiling, double k, double t0, double t) {
  require_rate(k);
  return ceiling * sigmoid(k * (t - t0));
}

double logistic_slope(double ceiling, double k, double t0, double t) {
  require_rate(k);
  const double x = k * (t - t0);
  return k * ceiling * sigmoid(x) * sigmoid(-x);
}

double gompertz_index(double ceiling, double k, double t0, double t) {
  require_rate(k);
  return ceiling * std::exp(-std::exp(-k * (t - t0)));
}

Ceilings ceilings(const ParamSet& p, const scenarios::DriverLevels& d) {
  const double a = d.ai_education;
  const double r = d.renewables;
  const Ceilings c{p.E0 + p.alpha * a + p.beta * r + p.gamma * a * r,
                   p.S0 + p.delta * a + p.eps_sr * r + p.zeta * a * r,
                   p.T0 + p.eta * a + p.theta * a * r};
  for (const auto& [name, v] :
       {std::pair{"economic growth", c.economic}, {"social well-being", c.social}, {"technology", c.technology}}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError(std::string(name) + " ceiling must be positive, got " + detail::format_double(v));
    }
  }
  return c;
}

std::vector<double> time_grid(double horizon, double dt) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw UsageError("horizon must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw UsageError("dt must be positive");
  const double steps = std::floor(horizon / dt * (1.0 + 1e-9));
  if (steps > 1e7) throw UsageError("horizon / dt yields too many time points");
  const auto n = static_cast<std::size_t>(steps) + 1;
  std::vector<double> times(n);
  for (std::size_t i = 0; i < n; ++i) times[i] = static_cast<double>(i) * dt;
  return times;
}

Trajectory simulate_path(const ParamSet& p, const scenarios::DriverLevels& d, double horizon, double dt,
                         std::uint64_t seed) {
  p.validate();
  d.validate();
  const Ceilings c = ceilings(p, d);
  Trajectory tr;
  tr.times = time_grid(horizon, dt);
  tr.seed = seed;
  tr.drivers = d;
  const std::size_t n = tr.times.size();
  tr.E.resize(n);
  tr.S.resize(n);
  tr.T.resize(n);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = tr.times[i];
    const double noise_e = rng.gaussian();
    const double noise_s = rng.gaussian();
    const double noise_t = rng.gaussian();
    tr.E[i] = logistic_index(c.economic, p.k_E, p.t0_E, t) + p.sigma_E * noise_e;
    tr.S[i] = logistic_index(c.social, p.k_S, p.t0_S, t) + p.sigma_S * noise_s;
    tr.T[i] = gompertz_index(c.technology, p.k_T, p.t0_T, t) + p.sigma_T * noise_t;
  }
  return tr;
}

std::uint64_t run_seed(std::uint64_t base_seed, std::size_t run_index) noexcept {
  return splitmix64(base_seed + static_cast<std::uint64_t>(run_index));
}

std::string_view to_string(Index i) {
  switch (i) {
    case Index::Economic: return "E";
    case Index::Social: return "S";
    case Index::Technology: return "T";
  }
  return "?";
}

std::string_view long_name(Index i) {
  switch (i) {
    case Index::Economic: return "Economic Growth";
    case Index::Social: return "Social Well-being";
    case Index::Technology: return "Technology Advancement";
  }
  return "?";
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw ValidationError("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * std::clamp(q, 0.0, 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

Ensemble monte_carlo(const ParamSet& p, const scenarios::DriverLevels& d, double horizon, double dt,
                     std::size_t n_runs, std::uint64_t base_seed, const MonteCarloOptions& opts) {
  if (n_runs < 1) throw UsageError("n_runs must be at least 1");
  p.validate();
  d.validate();
  ceilings(p, d);

  Ensemble e;
  e.n_runs = n_runs;
  e.base_seed = base_seed;
  e.drivers = d;
  e.times = time_grid(horizon, dt);
  const std::size_t n_t = e.times.size();

  // samples[index][t * n_runs + run]; each run owns its own column
  std::array<std::vector<double>, 3> samples;
  for (auto& s : samples) s.resize(n_t * n_runs);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const Trajectory tr = simulate_path(p, d, horizon, dt, run_seed(base_seed, r));
      for (std::size_t t = 0; t < n_t; ++t) {
        samples[0][t * n_runs + r] = tr.E[t];
        samples[1][t * n_runs + r] = tr.S[t];
        samples[2][t * n_runs + r] = tr.T[t];
      }
    }
  };

  std::size_t threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n_runs);
  if (threads <= 1) {
    run_range(0, n_runs);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n_runs + threads - 1) / threads;
    for (std::size_t b = 0; b < n_runs; b += chunk) pool.emplace_back(run_range, b, std::min(n_runs, b + chunk));
  }

  std::vector<double> column(n_runs);
  for (std::size_t idx = 0; idx < 3; ++idx) {
    auto& st = e.stats[idx];
    for (auto* v : {&st.mean, &st.std, &st.q05, &st.q50, &st.q95}) v->resize(n_t);
    for (std::size_t t = 0; t < n_t; ++t) {
      std::copy_n(samples[idx].begin() + static_cast<std::ptrdiff_t>(t * n_runs), n_runs, column.begin());
      // shifted by the first run so identical samples reduce to exactly zero spread
      const double shift = column.front();
      double sum = 0.0;
      for (double v : column) sum += v - shift;
      const double mean_dev = sum / static_cast<double>(n_runs);
      const double mean = shift + mean_dev;
      double ss = 0.0;
      for (double v : column) ss += (v - shift - mean_dev) * (v - shift - mean_dev);
      st.mean[t] = mean;
      st.std[t] = n_runs > 1 ? std::sqrt(ss / static_cast<double>(n_runs - 1)) : 0.0;
      std::sort(column.begin(), column.end());
      auto q = [&](double level) {
        const double h = (static_cast<double>(n_runs) - 1.0) * level;
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const std::size_t hi = std::min(lo + 1, n_runs - 1);
        return column[lo] + (h - static_cast<double>(lo)) * (column[hi] - column[lo]);
      };
      st.q05[t] = q(0.05);
      st.q50[t] = q(0.50);
      st.q95[t] = q(0.95);
    }
  }
  return e;
}

std::vector<ScenarioOutcome> compare_scenarios(const ParamSet& p, const scenarios::ScenarioTable& table,
                                               double horizon, double dt, std::size_t n_runs,
                                               std::uint64_t base_seed, const MonteCarloOptions& opts) {
  std::vector<ScenarioOutcome> out;
  out.reserve(table.scenarios.size());
  for (const auto& s : table.scenarios) {
    const Ensemble e = monte_carlo(p, s.drivers, horizon, dt, n_runs, base_seed, opts);
    out.push_back({s.name, s.drivers, e.of(Index::Economic).mean.back(), e.of(Index::Social).mean.back(),
                   e.of(Index::Technology).mean.back()});
  }
  return out;
}

}  // namespace foresight::quant
