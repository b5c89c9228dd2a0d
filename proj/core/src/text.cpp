#include "foresight/text.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "foresight/error.hpp"
#include "strings.hpp"

namespace foresight::text {

namespace {

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

}  // namespace

const std::set<std::string, std::less<>>& default_stopwords() {
  static const std::set<std::string, std::less<>> words{
      "a",       "about",    "above",   "after",   "again",      "against",  "all",     "also",
      "am",      "among",    "an",      "and",     "any",        "are",      "as",      "at",
      "be",      "because",  "been",    "before",  "being",      "below",    "between", "both",
      "but",     "by",       "can",     "could",   "did",        "do",       "does",    "doing",
      "down",    "during",   "each",    "et",      "etc",        "few",      "for",     "from",
      "further", "had",      "has",     "have",    "having",     "he",       "her",     "here",
      "hers",    "herself",  "him",     "himself", "his",        "how",      "however", "if",
      "in",      "into",     "is",      "it",      "its",        "itself",   "just",    "may",
      "me",      "might",    "more",    "most",    "must",       "my",       "myself",  "no",
      "nor",     "not",      "now",     "of",      "off",        "on",       "once",    "only",
      "or",      "other",    "our",     "ours",    "ourselves",  "out",      "over",    "own",
      "same",    "she",      "should",  "so",      "some",       "such",     "than",    "that",
      "the",     "their",    "theirs",  "them",    "themselves", "then",     "there",   "these",
      "they",    "this",     "those",   "through", "thus",       "to",       "too",     "under",
      "until",   "up",       "upon",    "us",      "very",       "via",      "was",     "we",
      "were",    "what",     "when",    "where",   "whether",    "which",    "while",   "who",
      "whom",    "why",      "will",    "with",    "within",     "without",  "would",   "yet",
      "you",     "your",     "yours",   "yourself"};
  return words;
}

std::set<std::string, std::less<>> load_stopwords(std::string_view file_text) {
  std::set<std::string, std::less<>> out;
  std::size_t pos = 0;
  while (pos <= file_text.size()) {
    const std::size_t eol = std::min(file_text.find('\n', pos), file_text.size());
    const auto word = detail::trim(file_text.substr(pos, eol - pos));
    if (!word.empty()) out.insert(detail::lower(word));
    pos = eol + 1;
  }
  return out;
}

Tokens tokenize(std::string_view text, const TokenizerConfig& cfg) {
  if (cfg.min_token_len < 1) throw UsageError("min_token_len must be at least 1");
  Tokens out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_alpha(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_alpha(text[j])) ++j;
    std::string tok(text.substr(i, j - i));
    i = j;
    if (cfg.lowercase) tok = detail::lower(tok);
    if (tok.size() < cfg.min_token_len) continue;
    if (cfg.stopwords.contains(tok)) continue;
    out.push_back(std::move(tok));
  }
  return out;
}

std::int64_t Vocabulary::find(std::string_view term) const {
  auto it = index.find(std::string(term));
  return it == index.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::size_t DocTermMatrix::doc_length(std::size_t d) const {
  std::size_t n = 0;
  for (std::size_t i = row_begin(d); i < row_end(d); ++i) n += counts[i];
  return n;
}

double DocTermMatrix::idf(std::size_t term) const { return smooth_idf(n_docs, vocab.df.at(term)); }

double DocTermMatrix::weight(std::size_t d, std::size_t term) const {
  const auto b = cols.begin() + static_cast<std::ptrdiff_t>(row_begin(d));
  const auto e = cols.begin() + static_cast<std::ptrdiff_t>(row_end(d));
  const auto it = std::lower_bound(b, e, term);
  return (it != e && *it == term) ? weights[static_cast<std::size_t>(it - cols.begin())] : 0.0;
}

std::uint32_t DocTermMatrix::count(std::size_t d, std::size_t term) const {
  const auto b = cols.begin() + static_cast<std::ptrdiff_t>(row_begin(d));
  const auto e = cols.begin() + static_cast<std::ptrdiff_t>(row_end(d));
  const auto it = std::lower_bound(b, e, term);
  return (it != e && *it == term) ? counts[static_cast<std::size_t>(it - cols.begin())] : 0u;
}

double smooth_idf(std::size_t n_docs, std::size_t df) {
  return std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + static_cast<double>(df))) + 1.0;
}

DocTermMatrix build_matrix(const std::vector<Tokens>& docs, const MatrixOptions& opts) {
  if (docs.empty()) throw UsageError("build_matrix needs at least one document");
  if (opts.min_df < 1) throw UsageError("min_df must be at least 1");
  if (!(opts.max_df_ratio > 0.0 && opts.max_df_ratio <= 1.0)) throw UsageError("max_df_ratio must lie in (0, 1]");

  const std::size_t n = docs.size();
  std::vector<std::map<std::string_view, std::uint32_t>> per_doc(n);
  std::map<std::string_view, std::size_t> df;
  for (std::size_t d = 0; d < n; ++d) {
    for (const auto& tok : docs[d]) ++per_doc[d][tok];
    for (const auto& [term, _] : per_doc[d]) ++df[term];
  }

  DocTermMatrix m;
  m.n_docs = n;
  for (const auto& [term, f] : df) {
    if (f < opts.min_df) continue;
    if (static_cast<double>(f) / static_cast<double>(n) > opts.max_df_ratio) continue;
    m.vocab.index.emplace(std::string(term), static_cast<std::uint32_t>(m.vocab.terms.size()));
    m.vocab.terms.emplace_back(term);
    m.vocab.df.push_back(f);
  }
  if (m.vocab.terms.empty()) throw ValidationError("empty vocabulary: every term was removed by the df cutoffs");

  std::vector<double> idf(m.vocab.size());
  for (std::size_t t = 0; t < idf.size(); ++t) idf[t] = smooth_idf(n, m.vocab.df[t]);

  m.row_ptr.reserve(n + 1);
  m.row_ptr.push_back(0);
  for (std::size_t d = 0; d < n; ++d) {
    const std::size_t begin = m.cols.size();
    // per_doc is ordered by term and terms are sorted, so columns come out ascending
    for (const auto& [term, c] : per_doc[d]) {
      const auto it = m.vocab.index.find(std::string(term));
      if (it == m.vocab.index.end()) continue;
      m.cols.push_back(it->second);
      m.counts.push_back(c);
      m.weights.push_back(static_cast<double>(c) * idf[it->second]);
    }
    double norm = 0.0;
    for (std::size_t i = begin; i < m.cols.size(); ++i) norm += m.weights[i] * m.weights[i];
    norm = std::sqrt(norm);
    if (norm > 0.0) {
      for (std::size_t i = begin; i < m.cols.size(); ++i) m.weights[i] /= norm;
    }
    m.row_ptr.push_back(m.cols.size());
  }
  return m;
}

MatrixSummary matrix_summary(const DocTermMatrix& m) {
  const std::size_t cells = m.n_docs * m.vocab.size();
  return {m.n_docs, m.vocab.size(), cells ? static_cast<double>(m.nnz()) / static_cast<double>(cells) : 0.0};
}

nlohmann::json to_json(const DocTermMatrix& m) {
  nlohmann::json counts = nlohmann::json::array();
  nlohmann::json weights = nlohmann::json::array();
  for (std::size_t d = 0; d < m.n_docs; ++d) {
    for (std::size_t i = m.row_begin(d); i < m.row_end(d); ++i) {
      counts.push_back({d, m.cols[i], m.counts[i]});
      weights.push_back({d, m.cols[i], m.weights[i]});
    }
  }
  return {{"n_docs", m.n_docs},
          {"vocabulary", {{"terms", m.vocab.terms}, {"df", m.vocab.df}}},
          {"counts", std::move(counts)},
          {"weights", std::move(weights)}};
}

DocTermMatrix doc_term_matrix_from_json(const nlohmann::json& j) {
  try {
    DocTermMatrix m;
    m.n_docs = j.at("n_docs").get<std::size_t>();
    m.vocab.terms = j.at("vocabulary").at("terms").get<std::vector<std::string>>();
    m.vocab.df = j.at("vocabulary").at("df").get<std::vector<std::size_t>>();
    if (m.vocab.df.size() != m.vocab.terms.size()) throw ValidationError("dtm schema: df and terms differ in length");
    if (!std::is_sorted(m.vocab.terms.begin(), m.vocab.terms.end()) ||
        std::adjacent_find(m.vocab.terms.begin(), m.vocab.terms.end()) != m.vocab.terms.end()) {
      throw ValidationError("dtm schema: vocabulary must be sorted and unique");
    }
    for (std::size_t t = 0; t < m.vocab.terms.size(); ++t) {
      if (m.vocab.df[t] < 1) throw ValidationError("dtm schema: df must be at least 1");
      m.vocab.index.emplace(m.vocab.terms[t], static_cast<std::uint32_t>(t));
    }
    const auto& counts = j.at("counts");
    const auto& weights = j.at("weights");
    if (counts.size() != weights.size()) throw ValidationError("dtm schema: counts and weights differ in structure");
    m.row_ptr.assign(1, 0);
    std::size_t current = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      const auto d = counts[i].at(0).get<std::size_t>();
      const auto t = counts[i].at(1).get<std::uint32_t>();
      const auto c = counts[i].at(2).get<std::uint32_t>();
      const auto w = weights[i].at(2).get<double>();
      if (weights[i].at(0).get<std::size_t>() != d || weights[i].at(1).get<std::uint32_t>() != t) {
        throw ValidationError("dtm schema: counts and weights differ in structure");
      }
      if (d >= m.n_docs || t >= m.vocab.size()) throw ValidationError("dtm schema: triplet index out of range");
      if (i > 0 && (d < current || (d == current && m.cols.size() > m.row_ptr.back() && t <= m.cols.back()))) {
        throw ValidationError("dtm schema: triplets must be ordered by document then term");
      }
      while (current < d) {
        m.row_ptr.push_back(m.cols.size());
        ++current;
      }
      if (c == 0 || w == 0.0) throw ValidationError("dtm schema: explicit zero entry");
      m.cols.push_back(t);
      m.counts.push_back(c);
      m.weights.push_back(w);
    }
    while (m.row_ptr.size() < m.n_docs + 1) m.row_ptr.push_back(m.cols.size());
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("dtm schema: ") + e.what());
  }
}

}  // namespace foresight::text
