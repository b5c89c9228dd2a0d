#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "foresight/topics.hpp"

namespace foresight::testkit {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::uint64_t counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("foresight-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::filesystem::path data_dir() { return FORESIGHT_TEST_DATA_DIR; }

// Two topics over disjoint five-word vocabularies. Each document draws a
// mixture weight for topic 0 from Beta(0.5, 0.5), then 40 tokens. The
// generator is independent of the library RNG.
struct SyntheticCorpus {
  topics::Corpus corpus;
  std::array<std::set<std::string>, 2> topic_words;
};

inline SyntheticCorpus synthetic_two_topic(std::uint64_t seed, std::size_t n_docs = 200, std::size_t doc_len = 40) {
  SyntheticCorpus s;
  s.topic_words[0] = {"apple", "banana", "cherry", "grape", "lemon"};
  s.topic_words[1] = {"engine", "piston", "rotor", "turbine", "valve"};
  for (const auto& set : s.topic_words) s.corpus.terms.insert(s.corpus.terms.end(), set.begin(), set.end());
  std::sort(s.corpus.terms.begin(), s.corpus.terms.end());
  auto id_of = [&](const std::string& w) {
    return static_cast<std::uint32_t>(std::lower_bound(s.corpus.terms.begin(), s.corpus.terms.end(), w) -
                                      s.corpus.terms.begin());
  };
  std::array<std::vector<std::uint32_t>, 2> ids;
  for (int k = 0; k < 2; ++k)
    for (const auto& w : s.topic_words[k]) ids[k].push_back(id_of(w));

  std::mt19937 gen(static_cast<std::uint32_t>(seed * 7919 + 17));
  std::gamma_distribution<double> g(0.5, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, 4);
  for (std::size_t d = 0; d < n_docs; ++d) {
    const double x = g(gen), y = g(gen);
    const double w0 = x / (x + y);
    std::vector<std::uint32_t> doc;
    for (std::size_t i = 0; i < doc_len; ++i) doc.push_back(ids[u(gen) < w0 ? 0 : 1][pick(gen)]);
    s.corpus.docs.push_back(std::move(doc));
  }
  return s;
}

// True when the top-5 lists of the two fitted topics equal the generative
// sets in either order.
inline bool recovers_topics(const topics::TopicModel& m, const SyntheticCorpus& s) {
  std::array<std::set<std::string>, 2> got;
  for (std::size_t k = 0; k < 2; ++k) {
    const auto words = topics::top_words(m, k, 5);
    got[k] = {words.begin(), words.end()};
  }
  return (got[0] == s.topic_words[0] && got[1] == s.topic_words[1]) ||
         (got[0] == s.topic_words[1] && got[1] == s.topic_words[0]);
}

}  // namespace foresight::testkit
