#include "foresight/api.hpp"

#include <cmath>
#include <set>

#include "foresight/error.hpp"
#include "foresight/report.hpp"
#include "foresight/topics.hpp"

namespace foresight::api {

namespace {

const std::set<std::string> kRequestFields{"scenario", "drivers", "params", "horizon", "dt", "n_runs", "seed"};

double positive_number(const nlohmann::json& body, const char* key, double fallback) {
  if (!body.contains(key)) return fallback;
  const auto& v = body.at(key);
  if (!v.is_number()) throw FieldError(key, "must be a number");
  const double x = v.get<double>();
  if (!(x > 0.0) || !std::isfinite(x)) throw FieldError(key, "must be positive");
  return x;
}

Response error_response(int status, const std::string& message, const std::optional<std::string>& field = {}) {
  nlohmann::json body{{"error", message}};
  if (field) body["field"] = *field;
  return {status, std::move(body)};
}

nlohmann::json topics_view(const topics::TopicModel& model, const biblio::RecordSet& corpus,
                           const topics::SteepLexicon& lex) {
  nlohmann::json list = nlohmann::json::array();
  for (std::size_t k = 0; k < model.n_topics(); ++k) {
    const auto words = topics::top_words(model, k, 10);
    const auto cats = topics::categorize_topic(words, lex);
    nlohmann::json cat_names = nlohmann::json::array();
    for (auto c : cats) cat_names.push_back(topics::to_string(c));
    list.push_back({{"id", k}, {"top_words", words}, {"categories", cat_names}, {"label", topics::category_label(cats)}});
  }
  nlohmann::json years = nlohmann::json::array();
  nlohmann::json series = nlohmann::json::array();
  for (const auto& [year, vec] : topics::topic_trends(model, corpus)) {
    years.push_back(year);
    series.push_back(vec);
  }
  return {{"topics", std::move(list)}, {"trends", {{"years", std::move(years)}, {"weights", std::move(series)}}}};
}

}  // namespace

SimRequest parse_sim_request(const nlohmann::json& body) {
  if (!body.is_object()) throw FieldError("body", "must be a JSON object");
  for (const auto& [key, _] : body.items()) {
    if (!kRequestFields.contains(key)) throw FieldError(key, "unknown field");
  }
  SimRequest req;
  const bool has_scenario = body.contains("scenario");
  const bool has_drivers = body.contains("drivers");
  if (has_scenario == has_drivers) throw FieldError("scenario", "exactly one of 'scenario' or 'drivers' is required");
  if (has_scenario) {
    if (!body.at("scenario").is_string()) throw FieldError("scenario", "must be a string");
    req.scenario = body.at("scenario").get<std::string>();
  } else {
    const auto& d = body.at("drivers");
    if (!d.is_object()) throw FieldError("drivers", "must be an object with A and R");
    scenarios::DriverLevels levels;
    for (const auto& [key, _] : d.items()) {
      if (key != "A" && key != "R") throw FieldError("drivers." + key, "unknown driver");
    }
    for (const char* key : {"A", "R"}) {
      if (!d.contains(key) || !d.at(key).is_number()) throw FieldError(key, "must be a number in [0, 1]");
    }
    levels.ai_education = d.at("A").get<double>();
    levels.renewables = d.at("R").get<double>();
    levels.validate();
    req.drivers = levels;
  }
  if (body.contains("params")) {
    if (!body.at("params").is_object()) throw FieldError("params", "must be an object");
    req.param_overrides = body.at("params");
  }
  req.horizon = positive_number(body, "horizon", req.horizon);
  req.dt = positive_number(body, "dt", req.dt);
  if (req.horizon / req.dt > static_cast<double>(kMaxTimePoints)) {
    throw FieldError("dt", "horizon / dt exceeds " + std::to_string(kMaxTimePoints) + " time points");
  }
  if (body.contains("n_runs")) {
    const auto& v = body.at("n_runs");
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1 || v.get<std::int64_t>() > static_cast<std::int64_t>(kMaxRuns)) {
      throw FieldError("n_runs", "must be an integer in [1, " + std::to_string(kMaxRuns) + "]");
    }
    req.n_runs = v.get<std::size_t>();
  }
  if (body.contains("seed")) {
    const auto& v = body.at("seed");
    if (!v.is_number_unsigned()) throw FieldError("seed", "must be a non-negative integer");
    req.seed = v.get<std::uint64_t>();
  }
  return req;
}

Response Service::failure_response(const std::exception& e) {
  if (const auto* missing = dynamic_cast<const MissingArtifactError*>(&e)) {
    return {409, {{"error", missing->what()}, {"artifact", missing->artifact()}, {"stage", missing->stage()}}};
  }
  return error_response(500, std::string("invalid project artifact: ") + e.what());
}

Service::Service(const ProjectStore& store) {
  auto load = [](auto&& f) {
    Loaded l;
    try {
      l.value = f();
    } catch (const Error& e) {
      l.failure = failure_response(e);
    }
    return l;
  };
  topics_ = load([&] {
    // lda.json first so a fresh home points at the topics stage
    auto lda = store.load_lda();
    auto corpus = store.load_corpus();
    return topics_view(lda, corpus, store.load_lexicon());
  });
  matrix_ = load([&] { return matrix::to_json(store.load_matrix()); });
  scenarios_ = load([&] {
    scenario_table_ = store.load_scenarios();
    return scenarios::to_json(*scenario_table_);
  });
  try {
    params_ = store.load_params();
  } catch (const Error& e) {
    params_failure_ = failure_response(e);
  }
}

Response Service::health() const { return {200, {{"status", "ok"}}}; }

Response Service::topics() const { return topics_.failure ? *topics_.failure : Response{200, *topics_.value}; }

Response Service::matrix() const { return matrix_.failure ? *matrix_.failure : Response{200, *matrix_.value}; }

Response Service::scenarios() const {
  return scenarios_.failure ? *scenarios_.failure : Response{200, *scenarios_.value};
}

Response Service::simulate(std::string_view body) const {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    return error_response(400, std::string("malformed JSON body: ") + e.what(), "body");
  }
  try {
    const SimRequest req = parse_sim_request(doc);
    if (params_failure_) return *params_failure_;

    scenarios::DriverLevels drivers;
    nlohmann::json result;
    if (req.scenario) {
      if (!scenario_table_) return *scenarios_.failure;
      drivers = scenario_table_->find(*req.scenario).drivers;
      result["scenario"] = *req.scenario;
    } else {
      drivers = *req.drivers;
    }
    quant::ParamSet params;
    try {
      params = quant::params_from_json(req.param_overrides, params_);
    } catch (const FieldError& e) {
      return error_response(400, e.what(), "params." + e.field());
    }
    const auto ensemble = quant::monte_carlo(params, drivers, req.horizon, req.dt, req.n_runs, req.seed);
    result.update(report::to_json(ensemble));
    result["params"] = quant::to_json(params);
    return {200, std::move(result)};
  } catch (const FieldError& e) {
    return error_response(400, e.what(), e.field());
  } catch (const NotFoundError& e) {
    return error_response(404, e.what());
  } catch (const ValidationError& e) {
    return error_response(400, e.what());
  } catch (const UsageError& e) {
    return error_response(400, e.what());
  }
}

Response Service::handle(std::string_view method, std::string_view path, std::string_view body) const {
  if (method == "GET") {
    if (path == "/api/health") return health();
    if (path == "/api/topics") return topics();
    if (path == "/api/matrix") return matrix();
    if (path == "/api/scenarios") return scenarios();
  } else if (method == "POST" && path == "/api/simulate") {
    return simulate(body);
  }
  if (path == "/api/simulate" || path == "/api/health" || path == "/api/topics" || path == "/api/matrix" ||
      path == "/api/scenarios") {
    return error_response(405, "method not allowed");
  }
  return error_response(404, "no such endpoint");
}

}  // namespace foresight::api
