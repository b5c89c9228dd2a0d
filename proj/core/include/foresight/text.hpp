#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

namespace foresight::text {

using Tokens = std::vector<std::string>;

/// Built-in English stopword list.
const std::set<std::string, std::less<>>& default_stopwords();

/// Reads one stopword per line; blank lines and surrounding whitespace ignored.
std::set<std::string, std::less<>> load_stopwords(std::string_view file_text);

struct TokenizerConfig {
  bool lowercase = true;
  std::size_t min_token_len = 2;
  std::set<std::string, std::less<>> stopwords = default_stopwords();
};

/// Splits on anything that is not an ASCII letter, then applies case folding,
/// the length cutoff and the stopword list. Order and duplicates are kept.
Tokens tokenize(std::string_view text, const TokenizerConfig& cfg = {});

struct Vocabulary {
  std::vector<std::string> terms;  // sorted
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<std::size_t> df;  // document frequency, parallel to terms

  std::size_t size() const noexcept { return terms.size(); }
  /// Returns -1 when the term is not in the vocabulary.
  std::int64_t find(std::string_view term) const;
};

/// Row-compressed document-term matrix holding raw counts and TF-IDF weights
/// over the same sparsity pattern.
struct DocTermMatrix {
  std::size_t n_docs = 0;
  Vocabulary vocab;
  std::vector<std::size_t> row_ptr;  // n_docs + 1 entries
  std::vector<std::uint32_t> cols;   // ascending within a row
  std::vector<std::uint32_t> counts;
  std::vector<double> weights;

  std::size_t nnz() const noexcept { return cols.size(); }
  std::size_t row_begin(std::size_t d) const { return row_ptr[d]; }
  std::size_t row_end(std::size_t d) const { return row_ptr[d + 1]; }
  std::size_t doc_length(std::size_t d) const;

  double idf(std::size_t term) const;
  double weight(std::size_t d, std::size_t term) const;
  std::uint32_t count(std::size_t d, std::size_t term) const;
};

struct MatrixOptions {
  std::size_t min_df = 2;
  double max_df_ratio = 0.95;
};

/// Smoothed idf: ln((1 + n_docs) / (1 + df)) + 1.
double smooth_idf(std::size_t n_docs, std::size_t df);

/// Builds the vocabulary (min_df / max_df_ratio cutoffs), the count matrix
/// and the L2-normalized TF-IDF weights.
/// Throws UsageError on bad options or no documents, ValidationError when
/// the cutoffs remove every term.
DocTermMatrix build_matrix(const std::vector<Tokens>& docs, const MatrixOptions& opts = {});

struct MatrixSummary {
  std::size_t n_docs;
  std::size_t n_terms;
  double density;
};

MatrixSummary matrix_summary(const DocTermMatrix& m);

nlohmann::json to_json(const DocTermMatrix& m);
DocTermMatrix doc_term_matrix_from_json(const nlohmann::json& j);

}  // namespace foresight::text
