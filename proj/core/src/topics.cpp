#include "foresight/topics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "foresight/error.hpp"
#include "foresight/rng.hpp"
#include "strings.hpp"

namespace foresight::topics {

LdaConfig LdaConfig::with_topics(std::size_t k) {
  LdaConfig cfg;
  cfg.n_topics = k;
  cfg.alpha = k ? 50.0 / static_cast<double>(k) : 0.0;
  return cfg;
}

void LdaConfig::validate() const {
  if (n_topics < 2) throw UsageError("n_topics must be at least 2");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw UsageError("alpha must be positive");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw UsageError("beta must be positive");
  if (iterations <= burn_in) throw UsageError("iterations must exceed burn_in");
}

std::size_t Corpus::n_tokens() const noexcept {
  std::size_t n = 0;
  for (const auto& d : docs) n += d.size();
  return n;
}

Corpus corpus_from_counts(const text::DocTermMatrix& m) {
  Corpus c;
  c.terms = m.vocab.terms;
  c.docs.resize(m.n_docs);
  for (std::size_t d = 0; d < m.n_docs; ++d) {
    for (std::size_t i = m.row_begin(d); i < m.row_end(d); ++i) {
      c.docs[d].insert(c.docs[d].end(), m.counts[i], m.cols[i]);
    }
  }
  return c;
}

namespace {

void normalize_rows(ProbMatrix& p) {
  for (std::size_t r = 0; r < p.rows; ++r) {
    auto row = p.row(r);
    const double s = std::accumulate(row.begin(), row.end(), 0.0);
    for (double& v : row) v /= s;
  }
}

class GibbsSampler {
 public:
  GibbsSampler(const Corpus& corpus, const LdaConfig& cfg)
      : corpus_(corpus),
        cfg_(cfg),
        K_(cfg.n_topics),
        V_(corpus.n_terms()),
        rng_(cfg.seed),
        topic_word_(K_ * V_, 0),
        topic_total_(K_, 0),
        doc_topic_(corpus.docs.size() * K_, 0),
        prob_(K_) {
    z_.resize(corpus.docs.size());
    for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
      z_[d].resize(corpus.docs[d].size());
      for (std::size_t i = 0; i < corpus.docs[d].size(); ++i) {
        const auto k = std::min<std::size_t>(static_cast<std::size_t>(rng_.uniform() * K_), K_ - 1);
        z_[d][i] = static_cast<std::uint32_t>(k);
        add(d, corpus.docs[d][i], k, +1);
      }
    }
  }

  void sweep() {
    const double v_beta = static_cast<double>(V_) * cfg_.beta;
    for (std::size_t d = 0; d < corpus_.docs.size(); ++d) {
      const auto& doc = corpus_.docs[d];
      for (std::size_t i = 0; i < doc.size(); ++i) {
        const std::uint32_t w = doc[i];
        add(d, w, z_[d][i], -1);
        double total = 0.0;
        for (std::size_t k = 0; k < K_; ++k) {
          total += (static_cast<double>(doc_topic_[d * K_ + k]) + cfg_.alpha) *
                   (static_cast<double>(topic_word_[k * V_ + w]) + cfg_.beta) /
                   (static_cast<double>(topic_total_[k]) + v_beta);
          prob_[k] = total;
        }
        const double u = rng_.uniform() * total;
        std::size_t k = 0;
        while (k + 1 < K_ && prob_[k] <= u) ++k;
        z_[d][i] = static_cast<std::uint32_t>(k);
        add(d, w, k, +1);
      }
    }
  }

  // log p(w | z) with phi integrated out.
  double log_likelihood() const {
    const double v_beta = static_cast<double>(V_) * cfg_.beta;
    double ll = static_cast<double>(K_) * (std::lgamma(v_beta) - static_cast<double>(V_) * std::lgamma(cfg_.beta));
    for (std::size_t k = 0; k < K_; ++k) {
      for (std::size_t w = 0; w < V_; ++w) {
        ll += std::lgamma(static_cast<double>(topic_word_[k * V_ + w]) + cfg_.beta);
      }
      ll -= std::lgamma(static_cast<double>(topic_total_[k]) + v_beta);
    }
    return ll;
  }

  GibbsState state(std::size_t sweep) const {
    return {sweep, K_, V_, topic_word_, topic_total_, doc_topic_};
  }

  ProbMatrix phi() const {
    ProbMatrix p{K_, V_, std::vector<double>(K_ * V_)};
    const double v_beta = static_cast<double>(V_) * cfg_.beta;
    for (std::size_t k = 0; k < K_; ++k) {
      for (std::size_t w = 0; w < V_; ++w) {
        p.data[k * V_ + w] = (static_cast<double>(topic_word_[k * V_ + w]) + cfg_.beta) /
                             (static_cast<double>(topic_total_[k]) + v_beta);
      }
    }
    normalize_rows(p);
    return p;
  }

  ProbMatrix theta() const {
    const std::size_t D = corpus_.docs.size();
    ProbMatrix p{D, K_, std::vector<double>(D * K_)};
    const double k_alpha = static_cast<double>(K_) * cfg_.alpha;
    for (std::size_t d = 0; d < D; ++d) {
      const double len = static_cast<double>(corpus_.docs[d].size());
      for (std::size_t k = 0; k < K_; ++k) {
        p.data[d * K_ + k] = (static_cast<double>(doc_topic_[d * K_ + k]) + cfg_.alpha) / (len + k_alpha);
      }
    }
    normalize_rows(p);
    return p;
  }

 private:
  void add(std::size_t d, std::uint32_t w, std::size_t k, int delta) {
    topic_word_[k * V_ + w] += delta;
    topic_total_[k] += delta;
    doc_topic_[d * K_ + k] += delta;
  }

  const Corpus& corpus_;
  const LdaConfig& cfg_;
  std::size_t K_;
  std::size_t V_;
  Rng rng_;
  std::vector<std::vector<std::uint32_t>> z_;
  std::vector<std::int64_t> topic_word_;
  std::vector<std::int64_t> topic_total_;
  std::vector<std::int64_t> doc_topic_;
  std::vector<double> prob_;
};

void check_corpus(const Corpus& corpus) {
  for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
    if (corpus.docs[d].empty()) {
      throw ValidationError("document " + std::to_string(d) + " has no tokens in the vocabulary");
    }
    for (auto w : corpus.docs[d]) {
      if (w >= corpus.n_terms()) throw ValidationError("document " + std::to_string(d) + " has a term id out of range");
    }
  }
}

}  // namespace

TopicModel fit_lda(const Corpus& corpus, const LdaConfig& cfg, const SweepObserver& observer) {
  cfg.validate();
  if (corpus.docs.empty()) throw ValidationError("corpus has no documents");
  if (cfg.n_topics > corpus.n_terms()) {
    throw UsageError("n_topics (" + std::to_string(cfg.n_topics) + ") exceeds vocabulary size (" +
                     std::to_string(corpus.n_terms()) + ")");
  }
  check_corpus(corpus);

  GibbsSampler sampler(corpus, cfg);
  TopicModel m;
  m.config = cfg;
  m.terms = corpus.terms;
  m.log_likelihood_trace.reserve(cfg.iterations);
  for (std::size_t it = 1; it <= cfg.iterations; ++it) {
    sampler.sweep();
    m.log_likelihood_trace.push_back(sampler.log_likelihood());
    if (observer) observer(sampler.state(it));
  }
  m.phi = sampler.phi();
  m.theta = sampler.theta();
  return m;
}

std::vector<std::string> top_words(const TopicModel& m, std::size_t k, std::size_t n) {
  if (k >= m.n_topics()) {
    throw UsageError("topic " + std::to_string(k) + " out of range [0, " + std::to_string(m.n_topics()) + ")");
  }
  const auto row = m.phi.row(k);
  std::vector<std::size_t> order(row.size());
  std::iota(order.begin(), order.end(), 0);
  n = std::min(n, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (row[a] != row[b]) return row[a] > row[b];
                      return m.terms[a] < m.terms[b];
                    });
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(m.terms[order[i]]);
  return out;
}

std::map<int, std::vector<double>> topic_trends(const TopicModel& m, const biblio::RecordSet& rs) {
  if (m.theta.rows != rs.records.size()) {
    throw ValidationError("topic model has " + std::to_string(m.theta.rows) + " documents but the corpus has " +
                          std::to_string(rs.records.size()) + " records");
  }
  const std::size_t K = m.n_topics();
  std::map<int, std::vector<double>> sums;
  std::map<int, std::size_t> counts;
  for (std::size_t d = 0; d < rs.records.size(); ++d) {
    const auto& year = rs.records[d].year;
    if (!year) continue;
    auto& acc = sums[*year];
    acc.resize(K, 0.0);
    const auto row = m.theta.row(d);
    for (std::size_t k = 0; k < K; ++k) acc[k] += row[k];
    ++counts[*year];
  }
  for (auto& [year, acc] : sums) {
    for (double& v : acc) v /= static_cast<double>(counts[year]);
  }
  return sums;
}

ProbMatrix infer_theta(const TopicModel& m, const Corpus& docs, std::size_t iterations) {
  const std::size_t K = m.n_topics();
  const std::size_t V = m.phi.cols;
  ProbMatrix theta{docs.docs.size(), K, std::vector<double>(docs.docs.size() * K, 1.0 / static_cast<double>(K))};
  std::vector<double> next(K);
  for (std::size_t d = 0; d < docs.docs.size(); ++d) {
    auto row = theta.row(d);
    for (auto w : docs.docs[d]) {
      if (w >= V) throw ValidationError("document " + std::to_string(d) + " has a term id out of range");
    }
    for (std::size_t it = 0; it < iterations; ++it) {
      std::fill(next.begin(), next.end(), m.config.alpha);
      for (auto w : docs.docs[d]) {
        double z = 0.0;
        for (std::size_t k = 0; k < K; ++k) z += row[k] * m.phi.at(k, w);
        for (std::size_t k = 0; k < K; ++k) next[k] += row[k] * m.phi.at(k, w) / z;
      }
      const double s = std::accumulate(next.begin(), next.end(), 0.0);
      for (std::size_t k = 0; k < K; ++k) row[k] = next[k] / s;
    }
  }
  return theta;
}

double perplexity(const TopicModel& m, const Corpus& docs, std::size_t fold_in_iterations) {
  const auto theta = infer_theta(m, docs, fold_in_iterations);
  double log_sum = 0.0;
  std::size_t n = 0;
  for (std::size_t d = 0; d < docs.docs.size(); ++d) {
    for (auto w : docs.docs[d]) {
      double p = 0.0;
      for (std::size_t k = 0; k < m.n_topics(); ++k) p += theta.at(d, k) * m.phi.at(k, w);
      log_sum += std::log(p);
      ++n;
    }
  }
  if (n == 0) throw ValidationError("perplexity needs at least one token");
  return std::exp(-log_sum / static_cast<double>(n));
}

std::string_view to_string(Steep c) {
  switch (c) {
    case Steep::Social: return "Social";
    case Steep::Technological: return "Technological";
    case Steep::Economic: return "Economic";
    case Steep::Environmental: return "Environmental";
    case Steep::Political: return "Political";
  }
  return "?";
}

Steep steep_from_string(std::string_view name) {
  const std::string n = detail::lower(detail::trim(name));
  for (Steep c : {Steep::Social, Steep::Technological, Steep::Economic, Steep::Environmental, Steep::Political}) {
    if (detail::lower(to_string(c)) == n) return c;
  }
  throw ValidationError("unknown STEEP category '" + std::string(name) + "'");
}

const SteepLexicon& SteepLexicon::builtin() {
  static const SteepLexicon lex{{
      {Steep::Social,
       {"care", "community", "education", "employment", "health", "healthcare", "inequality", "public", "social",
        "society", "wellbeing", "workforce"}},
      {Steep::Technological,
       {"algorithm", "algorithms", "automation", "computing", "data", "deep", "digital", "learning", "machine",
        "model", "network", "neural", "software", "technologies", "technology"}},
      {Steep::Economic,
       {"banking", "credit", "economic", "economy", "finance", "financial", "fintech", "insurance", "investment",
        "market", "markets", "price", "stock", "trade"}},
      {Steep::Environmental,
       {"carbon", "climate", "emissions", "energy", "environmental", "pollution", "renewable", "solar",
        "sustainability", "sustainable", "wind"}},
      {Steep::Political,
       {"democracy", "election", "governance", "government", "law", "legal", "policy", "political", "regulation",
        "regulatory"}},
  }};
  return lex;
}

SteepLexicon SteepLexicon::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("lexicon must be a JSON object of category -> word list");
  SteepLexicon lex;
  for (const auto& [name, words] : j.items()) {
    const Steep c = steep_from_string(name);
    if (!words.is_array() || words.empty()) throw ValidationError("lexicon category '" + name + "' has no words");
    auto& set = lex.triggers[c];
    for (const auto& w : words) {
      if (!w.is_string()) throw ValidationError("lexicon category '" + name + "' has a non-string entry");
      set.insert(detail::lower(w.get<std::string>()));
    }
  }
  return lex;
}

nlohmann::json SteepLexicon::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [c, words] : triggers) j[std::string(topics::to_string(c))] = words;
  return j;
}

std::set<Steep> categorize_topic(std::span<const std::string> words, const SteepLexicon& lex, std::size_t min_hits) {
  std::set<Steep> out;
  for (const auto& [c, triggers] : lex.triggers) {
    std::size_t hits = 0;
    for (const auto& w : words) hits += triggers.contains(detail::lower(w)) ? 1 : 0;
    if (hits >= std::max<std::size_t>(min_hits, 1)) out.insert(c);
  }
  return out;
}

std::string category_label(const std::set<Steep>& cats) {
  if (cats.empty()) return "Unclassified";
  std::string out;
  for (Steep c : cats) {
    if (!out.empty()) out += ", ";
    out += to_string(c);
  }
  return out;
}

namespace {

nlohmann::json matrix_json(const ProbMatrix& p) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < p.rows; ++r) {
    const auto row = p.row(r);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return rows;
}

ProbMatrix matrix_from(const nlohmann::json& j, std::size_t cols, const char* what) {
  ProbMatrix p;
  p.rows = j.size();
  p.cols = cols;
  p.data.reserve(p.rows * cols);
  for (const auto& row : j) {
    if (row.size() != cols) throw ValidationError(std::string("lda schema: ") + what + " row has wrong length");
    double s = 0.0;
    for (const auto& v : row) {
      const double x = v.get<double>();
      if (!(x > 0.0 && x < 1.0 + 1e-12)) throw ValidationError(std::string("lda schema: ") + what + " entry outside (0, 1]");
      s += x;
      p.data.push_back(x);
    }
    if (std::abs(s - 1.0) > 1e-9) throw ValidationError(std::string("lda schema: ") + what + " row does not sum to 1");
  }
  return p;
}

}  // namespace

nlohmann::json to_json(const TopicModel& m) {
  return {{"config",
           {{"n_topics", m.config.n_topics},
            {"alpha", m.config.alpha},
            {"beta", m.config.beta},
            {"iterations", m.config.iterations},
            {"burn_in", m.config.burn_in},
            {"seed", m.config.seed}}},
          {"terms", m.terms},
          {"phi", matrix_json(m.phi)},
          {"theta", matrix_json(m.theta)},
          {"log_likelihood_trace", m.log_likelihood_trace}};
}

TopicModel topic_model_from_json(const nlohmann::json& j) {
  try {
    TopicModel m;
    const auto& c = j.at("config");
    m.config.n_topics = c.at("n_topics").get<std::size_t>();
    m.config.alpha = c.at("alpha").get<double>();
    m.config.beta = c.at("beta").get<double>();
    m.config.iterations = c.at("iterations").get<std::size_t>();
    m.config.burn_in = c.at("burn_in").get<std::size_t>();
    m.config.seed = c.at("seed").get<std::uint64_t>();
    try {
      m.config.validate();
    } catch (const UsageError& e) {
      throw ValidationError(std::string("lda schema: ") + e.what());
    }
    m.terms = j.at("terms").get<std::vector<std::string>>();
    m.phi = matrix_from(j.at("phi"), m.terms.size(), "phi");
    if (m.phi.rows != m.config.n_topics) throw ValidationError("lda schema: phi must have n_topics rows");
    m.theta = matrix_from(j.at("theta"), m.config.n_topics, "theta");
    m.log_likelihood_trace = j.at("log_likelihood_trace").get<std::vector<double>>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("lda schema: ") + e.what());
  }
}

}  // namespace foresight::topics
