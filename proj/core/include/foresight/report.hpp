#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "foresight/quant.hpp"

namespace foresight::report {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// "t,E,S,T" header then one line per time point.
std::string trajectory_csv(const quant::Trajectory& tr);

/// Long format "t,stat,index,value" with stats mean, std, q05, q50, q95.
std::string ensemble_csv(const quant::Ensemble& e);

nlohmann::json to_json(const quant::Trajectory& tr);
nlohmann::json to_json(const quant::Ensemble& e);

/// Three stacked panels (economic growth, social well-being, technology
/// advancement) with the ensemble mean and its 5-95% band.
std::string ensemble_svg(const quant::Ensemble& e, std::string_view title);

}  // namespace foresight::report
