#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "foresight/biblio.hpp"
#include "foresight/text.hpp"

namespace foresight::topics {

struct LdaConfig {
  std::size_t n_topics = 6;
  double alpha = 50.0 / 6.0;
  double beta = 0.01;
  std::size_t iterations = 1000;
  std::size_t burn_in = 200;
  std::uint64_t seed = 0;

  /// Config with alpha reset to 50 / k.
  static LdaConfig with_topics(std::size_t k);
  /// Throws UsageError on a violated invariant.
  void validate() const;

  bool operator==(const LdaConfig&) const = default;
};

/// Bag-of-words corpus in token form: each document is a sequence of term ids.
struct Corpus {
  std::vector<std::string> terms;
  std::vector<std::vector<std::uint32_t>> docs;

  std::size_t n_terms() const noexcept { return terms.size(); }
  std::size_t n_tokens() const noexcept;
};

/// Expands the integer count matrix into token sequences (terms in column
/// order, each repeated by its count).
Corpus corpus_from_counts(const text::DocTermMatrix& m);

/// Row-major dense matrix of probabilities.
struct ProbMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
  std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct TopicModel {
  LdaConfig config;
  std::vector<std::string> terms;
  ProbMatrix phi;    // K x V
  ProbMatrix theta;  // D x K
  std::vector<double> log_likelihood_trace;  // one entry per sweep

  std::size_t n_topics() const noexcept { return phi.rows; }
};

/// Sampler counts exposed to an observer after every sweep.
struct GibbsState {
  std::size_t sweep;  // 1-based
  std::size_t n_topics;
  std::size_t n_terms;
  std::span<const std::int64_t> topic_word;   // K x V
  std::span<const std::int64_t> topic_total;  // K
  std::span<const std::int64_t> doc_topic;    // D x K
};

using SweepObserver = std::function<void(const GibbsState&)>;

/// Collapsed Gibbs sampling for LDA. The point estimate is taken from the
/// final state:
///   phi[k][w]   = (n_kw + beta)  / (n_k + V beta)
///   theta[d][k] = (n_dk + alpha) / (n_d + K alpha)
/// Throws ValidationError naming the first empty document, UsageError when
/// the config is invalid or K exceeds the vocabulary size.
TopicModel fit_lda(const Corpus& corpus, const LdaConfig& cfg, const SweepObserver& observer = {});

/// Top n terms of topic k by probability, ties broken lexicographically.
std::vector<std::string> top_words(const TopicModel& m, std::size_t k, std::size_t n = 10);

/// Mean theta row per publication year. Documents without a year are skipped.
/// Throws ValidationError when theta and the record set disagree in size.
std::map<int, std::vector<double>> topic_trends(const TopicModel& m, const biblio::RecordSet& rs);

/// Fold-in estimate of theta for unseen documents under a fixed phi
/// (deterministic fixed-point iteration).
ProbMatrix infer_theta(const TopicModel& m, const Corpus& docs, std::size_t iterations = 200);

/// exp(-sum log p(w|d) / N) with theta from infer_theta.
double perplexity(const TopicModel& m, const Corpus& docs, std::size_t fold_in_iterations = 200);

enum class Steep { Social, Technological, Economic, Environmental, Political };

std::string_view to_string(Steep c);
/// Case-insensitive. Throws ValidationError on an unknown name.
Steep steep_from_string(std::string_view name);

struct SteepLexicon {
  std::map<Steep, std::set<std::string, std::less<>>> triggers;

  static const SteepLexicon& builtin();
  /// Throws ValidationError on an unknown category or an empty trigger set.
  static SteepLexicon from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Categories whose triggers hit the word list at least min_hits times.
/// An empty result means the topic is unclassified.
std::set<Steep> categorize_topic(std::span<const std::string> words,
                                 const SteepLexicon& lex = SteepLexicon::builtin(),
                                 std::size_t min_hits = 1);

/// "Social, Technological" or "Unclassified".
std::string category_label(const std::set<Steep>& cats);

nlohmann::json to_json(const TopicModel& m);
TopicModel topic_model_from_json(const nlohmann::json& j);

}  // namespace foresight::topics
