#include "foresight/store.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "foresight/error.hpp"

namespace foresight {

std::string_view artifact_file(Artifact a) {
  switch (a) {
    case Artifact::Corpus: return "corpus.json";
    case Artifact::Dtm: return "dtm.json";
    case Artifact::Lda: return "lda.json";
    case Artifact::Matrix: return "matrix.json";
    case Artifact::Scenarios: return "scenarios.json";
    case Artifact::Params: return "params.json";
    case Artifact::Lexicon: return "lexicon.json";
  }
  return "";
}

std::string_view producing_stage(Artifact a) {
  switch (a) {
    case Artifact::Corpus: return "ingest";
    case Artifact::Dtm:
    case Artifact::Lda: return "topics";
    case Artifact::Matrix: return "matrix";
    case Artifact::Scenarios: return "scenarios";
    case Artifact::Params: return "scenarios";
    case Artifact::Lexicon: return "topics";
  }
  return "";
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& p, std::string_view content) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  auto tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write to '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, p);
}

ProjectStore::ProjectStore(std::filesystem::path root) : root_(std::move(root)) {}

std::filesystem::path ProjectStore::resolve_root(const std::optional<std::string>& explicit_root) {
  if (explicit_root && !explicit_root->empty()) return *explicit_root;
  if (const char* env = std::getenv("FORESIGHT_HOME"); env && *env) return env;
  return std::filesystem::current_path();
}

std::filesystem::path ProjectStore::path_of(Artifact a) const { return root_ / artifact_file(a); }

bool ProjectStore::has(Artifact a) const { return std::filesystem::exists(path_of(a)); }

nlohmann::json ProjectStore::read_json(Artifact a) const {
  if (!has(a)) throw MissingArtifactError(std::string(artifact_file(a)), std::string(producing_stage(a)));
  try {
    return nlohmann::json::parse(read_file(path_of(a)));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string(artifact_file(a)) + ": " + e.what());
  }
}

namespace {

template <typename F>
auto with_context(Artifact a, F&& f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(artifact_file(a)) + ": " + e.what());
  }
}

}  // namespace

biblio::RecordSet ProjectStore::load_corpus() const {
  return with_context(Artifact::Corpus, [&] { return biblio::record_set_from_json(read_json(Artifact::Corpus)); });
}

text::DocTermMatrix ProjectStore::load_dtm() const {
  return with_context(Artifact::Dtm, [&] { return text::doc_term_matrix_from_json(read_json(Artifact::Dtm)); });
}

topics::TopicModel ProjectStore::load_lda() const {
  return with_context(Artifact::Lda, [&] { return topics::topic_model_from_json(read_json(Artifact::Lda)); });
}

matrix::ImpactMatrix ProjectStore::load_matrix() const {
  return with_context(Artifact::Matrix, [&] { return matrix::matrix_from_json(read_json(Artifact::Matrix)); });
}

scenarios::ScenarioTable ProjectStore::load_scenarios() const {
  return with_context(Artifact::Scenarios,
                      [&] { return scenarios::scenario_table_from_json(read_json(Artifact::Scenarios)); });
}

quant::ParamSet ProjectStore::load_params() const {
  if (!has(Artifact::Params)) return {};
  return with_context(Artifact::Params, [&] { return quant::params_from_json(read_json(Artifact::Params)); });
}

topics::SteepLexicon ProjectStore::load_lexicon() const {
  if (!has(Artifact::Lexicon)) return topics::SteepLexicon::builtin();
  return with_context(Artifact::Lexicon, [&] { return topics::SteepLexicon::from_json(read_json(Artifact::Lexicon)); });
}

void ProjectStore::save(Artifact a, const nlohmann::json& doc) const {
  write_file(path_of(a), doc.dump(2) + "\n");
}

std::filesystem::path ProjectStore::save_result(std::string_view name, std::string_view content) const {
  const auto p = results_dir() / name;
  write_file(p, content);
  return p;
}

}  // namespace foresight
