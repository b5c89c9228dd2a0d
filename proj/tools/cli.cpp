#include "cli.hpp"

#include <limits>
#include <algorithm>
#include <cctype>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "foresight/api.hpp"
#include "foresight/biblio.hpp"
#include "foresight/csv.hpp"
#include "foresight/error.hpp"
#include "foresight/matrix.hpp"
#include "foresight/quant.hpp"
#include "foresight/report.hpp"
#include "foresight/scenarios.hpp"
#include "foresight/store.hpp"
#include "foresight/text.hpp"
#include "foresight/topics.hpp"
#include "http_server.hpp"

namespace foresight::cli {

namespace {

std::string utc_now_iso() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

std::string slug(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!out.empty() && out.back() != '-') {
      out.push_back('-');
    }
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out;
}

struct IngestOptions {
  std::string file;
  std::string format;
  std::optional<std::string> query;
  std::string source_label = "Scopus export";
  std::string retrieved_at;
  std::optional<int> min_year;
  std::optional<int> max_year;
  bool require_abstract = false;
};

struct TopicsOptions {
  std::size_t k = 6;
  std::optional<double> alpha;
  double beta = 0.01;
  std::size_t iterations = 1000;
  std::size_t burn_in = 200;
  std::uint64_t seed = 0;
  std::size_t min_df = 2;
  double max_df = 0.95;
  std::size_t min_token_len = 2;
  std::string stopwords;
  std::string lexicon;
  std::size_t top = 10;
};

struct ScenarioOptions {
  bool list = false;
  bool table = false;
  std::string format = "markdown";
  std::string file;
};

struct SimulateOptions {
  std::string scenario;
  std::optional<double> a;
  std::optional<double> r;
  bool all_scenarios = false;
  std::size_t runs = 100;
  std::uint64_t seed = 0;
  double horizon = 10.0;
  double dt = 0.1;
  bool csv = false;
  bool svg = false;
  bool json = false;
  bool to_stdout = false;
  std::string params_file;
  std::optional<double> sigma;
  std::size_t threads = 1;
};

struct ServeOptions {
  int port = 8080;
  std::string host = "127.0.0.1";
  bool dev = false;
  std::string static_dir;
};

void cmd_ingest(const ProjectStore& store, const IngestOptions& o, std::ostream& out) {
  const auto format = o.format.empty() ? biblio::format_from_path(o.file) : biblio::parse_format(o.format);
  biblio::QueryMeta meta;
  if (o.query) meta.query_string = *o.query;
  meta.source_label = o.source_label;
  meta.retrieved_at = o.retrieved_at.empty() ? utc_now_iso() : o.retrieved_at;

  auto rs = biblio::parse_export(read_file(o.file), format, std::move(meta));
  rs = biblio::filter_records(rs, {o.min_year, o.max_year, o.require_abstract});
  store.save(Artifact::Corpus, biblio::to_json(rs));

  const auto st = biblio::corpus_stats(rs);
  out << "ingested " << st.record_count << " records (" << rs.warnings.size() << " warnings) into "
      << store.path_of(Artifact::Corpus).string() << "\n";
  for (const auto& w : rs.warnings) out << "  warning: row " << w.index + 1 << ": " << w.reason << "\n";
  out << "years:";
  for (const auto& [year, n] : st.year_histogram) out << " " << year << "=" << n;
  if (st.unknown_year) out << " unknown=" << st.unknown_year;
  out << "\nmean abstract length: " << std::fixed << std::setprecision(1) << st.mean_abstract_length
      << " characters\n";
}

void cmd_topics(const ProjectStore& store, const TopicsOptions& o, std::ostream& out) {
  const auto corpus = store.load_corpus();

  text::TokenizerConfig tok;
  tok.min_token_len = o.min_token_len;
  if (!o.stopwords.empty()) tok.stopwords = text::load_stopwords(read_file(o.stopwords));
  std::vector<text::Tokens> docs;
  docs.reserve(corpus.records.size());
  for (const auto& r : corpus.records) docs.push_back(text::tokenize(r.title + "\n" + r.abstract, tok));

  const auto dtm = text::build_matrix(docs, {o.min_df, o.max_df});
  store.save(Artifact::Dtm, text::to_json(dtm));

  auto cfg = topics::LdaConfig::with_topics(o.k);
  if (o.alpha) cfg.alpha = *o.alpha;
  cfg.beta = o.beta;
  cfg.iterations = o.iterations;
  cfg.burn_in = o.burn_in;
  cfg.seed = o.seed;
  const auto model = topics::fit_lda(topics::corpus_from_counts(dtm), cfg);
  store.save(Artifact::Lda, topics::to_json(model));

  topics::SteepLexicon lex = store.load_lexicon();
  if (!o.lexicon.empty()) {
    lex = topics::SteepLexicon::from_json(nlohmann::json::parse(read_file(o.lexicon)));
    store.save(Artifact::Lexicon, lex.to_json());
  }

  const auto summary = text::matrix_summary(dtm);
  out << "document-term matrix: " << summary.n_docs << " docs x " << summary.n_terms << " terms, density "
      << std::setprecision(4) << summary.density << "\n";
  out << "== Identified Topics ==\n";
  for (std::size_t k = 0; k < model.n_topics(); ++k) {
    const auto words = topics::top_words(model, k, o.top);
    out << "Topic " << k + 1 << ":";
    for (const auto& w : words) out << " " << w;
    out << " --> " << topics::category_label(topics::categorize_topic(words, lex)) << "\n";
  }
}

void cmd_trends(const ProjectStore& store, std::ostream& out) {
  const auto model = store.load_lda();
  const auto corpus = store.load_corpus();
  const auto trends = topics::topic_trends(model, corpus);

  std::vector<std::string> header{"year"};
  for (std::size_t k = 0; k < model.n_topics(); ++k) header.push_back("topic_" + std::to_string(k + 1));
  std::string csv_text;
  for (std::size_t i = 0; i < header.size(); ++i) csv_text += (i ? "," : "") + header[i];
  csv_text += "\n";
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [year, vec] : trends) {
    csv_text += std::to_string(year);
    for (double v : vec) csv_text += "," + report::format_double(v);
    csv_text += "\n";
    j[std::to_string(year)] = vec;
  }
  const auto csv_path = store.save_result("trends.csv", csv_text);
  store.save_result("trends.json", j.dump(2) + "\n");

  out << "relative topic weight by year (" << csv_path.string() << ")\n";
  out << std::fixed << std::setprecision(3);
  for (const auto& [year, vec] : trends) {
    out << year;
    for (double v : vec) out << "  " << v;
    out << "\n";
  }
}

void cmd_matrix(const ProjectStore& store, const std::string& config, std::ostream& out) {
  const auto m = config.empty() ? matrix::build_matrix(matrix::builtin_factors())
                                : matrix::matrix_from_json(nlohmann::json::parse(read_file(config)));
  store.save(Artifact::Matrix, matrix::to_json(m));
  out << "Impact-Uncertainty Matrix (" << store.path_of(Artifact::Matrix).string() << ")\n";
  for (const auto& e : m.entries) {
    out << "  " << std::left << std::setw(42) << e.factor.name << std::setw(8) << matrix::to_string(e.factor.impact)
        << std::setw(8) << matrix::to_string(e.factor.uncertainty) << matrix::to_string(e.relevance) << "\n";
  }
  out << "Critical dimensions:\n";
  std::size_t i = 0;
  for (const auto& name : matrix::select_critical(m)) out << "  " << ++i << ". " << name << "\n";
}

void cmd_scenarios(const ProjectStore& store, const ScenarioOptions& o, std::ostream& out) {
  scenarios::ScenarioTable table;
  if (!o.file.empty()) {
    table = scenarios::scenario_table_from_json(nlohmann::json::parse(read_file(o.file)));
    store.save(Artifact::Scenarios, scenarios::to_json(table));
  } else if (store.has(Artifact::Scenarios)) {
    table = store.load_scenarios();
  } else {
    table = scenarios::builtin_scenarios();
    store.save(Artifact::Scenarios, scenarios::to_json(table));
  }
  if (!store.has(Artifact::Params)) store.save(Artifact::Params, quant::to_json(quant::ParamSet{}));

  if (o.table) {
    out << scenarios::render_table(table, scenarios::table_format_from_string(o.format));
    return;
  }
  for (const auto& s : table.scenarios) {
    out << s.name << "  (A=" << report::format_double(s.drivers.ai_education)
        << ", R=" << report::format_double(s.drivers.renewables) << ")\n";
  }
}

void cmd_simulate(const ProjectStore& store, const SimulateOptions& o, std::ostream& out) {
  quant::ParamSet params = store.load_params();
  if (!o.params_file.empty()) params = quant::params_from_json(nlohmann::json::parse(read_file(o.params_file)), params);
  if (o.sigma) {
    params.set_sigma(*o.sigma);
    params.validate();
  }
  const quant::MonteCarloOptions mc{o.threads};

  if (o.all_scenarios) {
    const auto table = store.load_scenarios();
    const auto rows = quant::compare_scenarios(params, table, o.horizon, o.dt, o.runs, o.seed, mc);
    std::string csv_text = "scenario,A,R,E,S,T\n";
    out << "terminal means at t=" << report::format_double(quant::time_grid(o.horizon, o.dt).back()) << " over "
        << o.runs << " runs\n";
    for (const auto& r : rows) {
      csv_text += csv::join({r.scenario, report::format_double(r.drivers.ai_education),
                             report::format_double(r.drivers.renewables), report::format_double(r.terminal_E),
                             report::format_double(r.terminal_S), report::format_double(r.terminal_T)}) +
                  "\n";
      out << "  " << std::left << std::setw(26) << r.scenario << std::fixed << std::setprecision(4)
          << " E=" << r.terminal_E << " S=" << r.terminal_S << " T=" << r.terminal_T << "\n";
    }
    if (o.to_stdout) {
      out << csv_text;
    } else {
      out << "wrote " << store.save_result("compare_seed" + std::to_string(o.seed) + ".csv", csv_text).string() << "\n";
    }
    return;
  }

  scenarios::DriverLevels drivers;
  std::string label;
  if (!o.scenario.empty()) {
    drivers = store.load_scenarios().find(o.scenario).drivers;
    label = o.scenario;
  } else {
    drivers = {*o.a, *o.r};
    drivers.validate();
    label = "A=" + report::format_double(*o.a) + " R=" + report::format_double(*o.r);
  }
  const std::string stem =
      (o.scenario.empty() ? "custom-a" + report::format_double(*o.a) + "-r" + report::format_double(*o.r)
                          : slug(o.scenario)) +
      "_seed" + std::to_string(o.seed) + "_runs" + std::to_string(o.runs);

  bool csv = o.csv;
  if (!o.csv && !o.svg && !o.json) csv = true;
  if (o.to_stdout && (int(csv) + int(o.svg) + int(o.json)) > 1) {
    throw UsageError("--stdout accepts exactly one of --csv, --svg, --json");
  }

  std::vector<std::pair<std::string, std::string>> outputs;
  if (csv) {
    if (o.runs == 1) {
      outputs.emplace_back(stem + ".csv",
                           report::trajectory_csv(quant::simulate_path(params, drivers, o.horizon, o.dt,
                                                                       quant::run_seed(o.seed, 0))));
    }
  }
  if (o.svg || o.json || (csv && o.runs > 1)) {
    const auto ens = quant::monte_carlo(params, drivers, o.horizon, o.dt, o.runs, o.seed, mc);
    if (csv && o.runs > 1) outputs.emplace_back(stem + ".csv", report::ensemble_csv(ens));
    if (o.svg) outputs.emplace_back(stem + ".svg", report::ensemble_svg(ens, label));
    if (o.json) {
      auto j = report::to_json(ens);
      if (!o.scenario.empty()) j["scenario"] = o.scenario;
      j["params"] = quant::to_json(params);
      outputs.emplace_back(stem + ".json", j.dump(2) + "\n");
    }
  }
  for (const auto& [name, content] : outputs) {
    if (o.to_stdout) {
      out << content;
    } else {
      out << "wrote " << store.save_result(name, content).string() << "\n";
    }
  }
}

void cmd_serve(const ProjectStore& store, const ServeOptions& o, std::ostream& out) {
  const api::Service service(store);
  http::ServerConfig cfg{o.host, o.port, o.dev, o.static_dir};
  out << "serving " << store.root().string() << " on http://" << o.host << ":" << o.port << std::endl;
  if (!http::serve(service, cfg)) throw Error("could not bind " + o.host + ":" + std::to_string(o.port));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantitative foresight pipeline: corpus -> topics -> impact-uncertainty matrix -> scenarios -> "
               "simulation",
               "foresight"};
  app.require_subcommand(1);
  std::optional<std::string> home;
  app.add_option("--home", home, "Project directory (default: $FORESIGHT_HOME or the working directory)");

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse a CSV or RIS export into corpus.json");
  ingest_cmd->add_option("file", ingest.file, "Exported record file")->required();
  ingest_cmd->add_option("--format", ingest.format, "csv or ris (default: from the file extension)");
  ingest_cmd->add_option("--query", ingest.query, "Search query recorded as provenance");
  ingest_cmd->add_option("--source-label", ingest.source_label, "Provenance label");
  ingest_cmd->add_option("--retrieved-at", ingest.retrieved_at, "Retrieval timestamp (default: now, UTC)");
  ingest_cmd->add_option("--min-year", ingest.min_year);
  ingest_cmd->add_option("--max-year", ingest.max_year);
  ingest_cmd->add_flag("--require-abstract", ingest.require_abstract);

  TopicsOptions topics_opts;
  auto* topics_cmd = app.add_subcommand("topics", "Vectorize the corpus and fit an LDA topic model");
  topics_cmd->add_option("--k", topics_opts.k, "Number of topics")->capture_default_str();
  topics_cmd->add_option("--seed", topics_opts.seed)->capture_default_str();
  topics_cmd->add_option("--iters", topics_opts.iterations, "Gibbs sweeps")->capture_default_str();
  topics_cmd->add_option("--burn-in", topics_opts.burn_in)->capture_default_str();
  topics_cmd->add_option("--alpha", topics_opts.alpha, "Document-topic prior (default 50/k)");
  topics_cmd->add_option("--beta", topics_opts.beta, "Topic-word prior")->capture_default_str();
  topics_cmd->add_option("--min-df", topics_opts.min_df)->capture_default_str();
  topics_cmd->add_option("--max-df", topics_opts.max_df)->capture_default_str();
  topics_cmd->add_option("--min-token-len", topics_opts.min_token_len)->capture_default_str();
  topics_cmd->add_option("--stopwords", topics_opts.stopwords, "Stopword file, one word per line");
  topics_cmd->add_option("--lexicon", topics_opts.lexicon, "STEEP lexicon JSON");
  topics_cmd->add_option("--top", topics_opts.top, "Words shown per topic")->capture_default_str();

  auto* trends_cmd = app.add_subcommand("trends", "Per-year relative topic weights");

  std::string matrix_config;
  auto* matrix_cmd = app.add_subcommand("matrix", "Build the Impact-Uncertainty Matrix");
  matrix_cmd->add_option("--config", matrix_config, "Factor assessments JSON (default: bundled assessment)");

  ScenarioOptions scen;
  auto* scen_cmd = app.add_subcommand("scenarios", "Write and show the scenario table");
  auto* list_flag = scen_cmd->add_flag("--list", scen.list, "List scenario names and drivers");
  scen_cmd->add_flag("--table", scen.table, "Render the full table")->excludes(list_flag);
  scen_cmd->add_option("--format", scen.format, "markdown or csv")->capture_default_str();
  scen_cmd->add_option("--file", scen.file, "Load scenarios from a JSON file");

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate E, S and T growth paths");
  auto* scen_opt = sim_cmd->add_option("--scenario", sim.scenario, "Scenario name");
  auto* a_opt = sim_cmd->add_option("--A", sim.a, "AI and digital education level in [0, 1]");
  auto* r_opt = sim_cmd->add_option("--R", sim.r, "Renewable energy and sustainability level in [0, 1]");
  auto* all_opt = sim_cmd->add_flag("--all-scenarios", sim.all_scenarios, "Compare every scenario");
  a_opt->needs(r_opt)->excludes(scen_opt)->excludes(all_opt);
  r_opt->needs(a_opt)->excludes(scen_opt)->excludes(all_opt);
  scen_opt->excludes(all_opt);
  sim_cmd->add_option("--runs", sim.runs, "Monte Carlo runs")->capture_default_str()->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
  sim_cmd->add_option("--seed", sim.seed)->capture_default_str();
  sim_cmd->add_option("--horizon", sim.horizon)->capture_default_str();
  sim_cmd->add_option("--dt", sim.dt)->capture_default_str();
  sim_cmd->add_flag("--csv", sim.csv, "Write CSV (default)");
  sim_cmd->add_flag("--svg", sim.svg, "Write an SVG chart");
  sim_cmd->add_flag("--json", sim.json, "Write JSON");
  sim_cmd->add_flag("--stdout", sim.to_stdout, "Print the output instead of writing under results/");
  sim_cmd->add_option("--params", sim.params_file, "Parameter overrides JSON");
  sim_cmd->add_option("--sigma", sim.sigma, "Noise level for all three indices");
  sim_cmd->add_option("--threads", sim.threads, "Worker threads (0 = all cores)")->capture_default_str();

  ServeOptions serve_opts;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the JSON API");
  serve_cmd->add_option("--port", serve_opts.port)->capture_default_str();
  serve_cmd->add_option("--host", serve_opts.host)->capture_default_str();
  serve_cmd->add_flag("--dev", serve_opts.dev, "Enable CORS for a local UI dev server");
  serve_cmd->add_option("--static", serve_opts.static_dir, "Directory with the built explorer UI");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim_cmd->parsed() && sim.scenario.empty() && !sim.a && !sim.all_scenarios) {
      throw UsageError("simulate needs --scenario NAME, --A x --R y, or --all-scenarios");
    }
    const ProjectStore store(ProjectStore::resolve_root(home));
    if (ingest_cmd->parsed()) cmd_ingest(store, ingest, out);
    else if (topics_cmd->parsed()) cmd_topics(store, topics_opts, out);
    else if (trends_cmd->parsed()) cmd_trends(store, out);
    else if (matrix_cmd->parsed()) cmd_matrix(store, matrix_config, out);
    else if (scen_cmd->parsed()) cmd_scenarios(store, scen, out);
    else if (sim_cmd->parsed()) cmd_simulate(store, sim, out);
    else if (serve_cmd->parsed()) cmd_serve(store, serve_opts, out);
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace foresight::cli
