#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "foresight/biblio.hpp"
#include "foresight/matrix.hpp"
#include "foresight/quant.hpp"
#include "foresight/scenarios.hpp"
#include "foresight/text.hpp"
#include "foresight/topics.hpp"

namespace foresight {

enum class Artifact { Corpus, Dtm, Lda, Matrix, Scenarios, Params, Lexicon };

/// File name inside the project root, e.g. "corpus.json".
std::string_view artifact_file(Artifact a);
/// CLI subcommand that produces the artifact.
std::string_view producing_stage(Artifact a);

/// File-backed handoff between pipeline stages. Every load validates the
/// document against the module schema; a missing file raises
/// MissingArtifactError naming the stage to run.
class ProjectStore {
 public:
  explicit ProjectStore(std::filesystem::path root);

  /// explicit_root if given, else $FORESIGHT_HOME, else the working directory.
  static std::filesystem::path resolve_root(const std::optional<std::string>& explicit_root);

  const std::filesystem::path& root() const noexcept { return root_; }
  std::filesystem::path path_of(Artifact a) const;
  std::filesystem::path results_dir() const { return root_ / "results"; }
  bool has(Artifact a) const;

  biblio::RecordSet load_corpus() const;
  text::DocTermMatrix load_dtm() const;
  topics::TopicModel load_lda() const;
  matrix::ImpactMatrix load_matrix() const;
  scenarios::ScenarioTable load_scenarios() const;
  /// Defaults when params.json is absent.
  quant::ParamSet load_params() const;
  /// Builtin lexicon when lexicon.json is absent.
  topics::SteepLexicon load_lexicon() const;

  void save(Artifact a, const nlohmann::json& doc) const;
  /// Writes a file under results/, creating the directory. Returns its path.
  std::filesystem::path save_result(std::string_view name, std::string_view content) const;

 private:
  nlohmann::json read_json(Artifact a) const;

  std::filesystem::path root_;
};

/// Reads a whole file. Throws Error when it cannot be opened.
std::string read_file(const std::filesystem::path& p);
/// Writes via a temporary file and rename.
void write_file(const std::filesystem::path& p, std::string_view content);

}  // namespace foresight
