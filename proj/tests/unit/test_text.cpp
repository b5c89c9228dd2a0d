#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "foresight/biblio.hpp"
#include "foresight/error.hpp"
#include "foresight/store.hpp"
#include "foresight/text.hpp"
#include "support/support.hpp"

using namespace foresight;
using namespace foresight::text;

namespace {

// Frozen from an independent 40-digit evaluation (mpmath).
constexpr double kIdfPolicy = 1.405465108108164;
constexpr double kD1Ai = 0.5797386715376657;
constexpr double kD1Policy = 0.8148024746671690;

DocTermMatrix hand_example() { return build_matrix({{"ai", "policy"}, {"ai", "ethics"}}, {.min_df = 1, .max_df_ratio = 1.0}); }

std::vector<Tokens> fixture_docs() {
  const auto rs = biblio::parse_export(read_file(testkit::data_dir() / "corpus" / "ai_foresight_50.csv"),
                                       biblio::Format::Csv);
  std::vector<Tokens> docs;
  for (const auto& r : rs.records) docs.push_back(tokenize(r.title + "\n" + r.abstract));
  return docs;
}

}  // namespace

TEST(Tokenize, Empty) { EXPECT_TRUE(tokenize("").empty()); }

TEST(Tokenize, ApostropheAndPunctuation) {
  EXPECT_EQ(tokenize("AI's impact, AI policy!"), (Tokens{"ai", "impact", "ai", "policy"}));
}

TEST(Tokenize, AllStopwords) { EXPECT_TRUE(tokenize("the and of").empty()); }

TEST(Tokenize, DigitsAndHyphensSplit) {
  EXPECT_EQ(tokenize("covid-19 long-term 3d"), (Tokens{"covid", "long", "term"}));
}

TEST(Tokenize, ConfigKnobs) {
  TokenizerConfig cfg;
  cfg.lowercase = false;
  cfg.min_token_len = 1;
  cfg.stopwords = {};
  EXPECT_EQ(tokenize("AI's x", cfg), (Tokens{"AI", "s", "x"}));
  cfg.lowercase = true;
  EXPECT_EQ(tokenize("A b", cfg), (Tokens{"a", "b"}));
  cfg.min_token_len = 0;
  EXPECT_THROW(tokenize("A b", cfg), UsageError);
}

TEST(Tokenize, NonAsciiBytesSeparateTokens) {
  EXPECT_EQ(tokenize("caf\xC3\xA9 na\xC3\xAFve"), (Tokens{"caf", "na", "ve"}));
}

TEST(Stopwords, LoadFile) {
  const auto sw = load_stopwords("  foo \n\nbar\r\n");
  EXPECT_EQ(sw.size(), 2u);
  EXPECT_TRUE(sw.contains("foo"));
  EXPECT_TRUE(default_stopwords().contains("the"));
  EXPECT_FALSE(default_stopwords().contains("ai"));
  EXPECT_FALSE(default_stopwords().contains("policy"));
}

TEST(BuildMatrix, IdfOfTermInAllDocsIsExactlyOne) {
  const auto m = hand_example();
  EXPECT_EQ(m.idf(static_cast<std::size_t>(m.vocab.find("ai"))), 1.0);
}

TEST(BuildMatrix, IdfOfPolicy) {
  const auto m = hand_example();
  EXPECT_NEAR(m.idf(static_cast<std::size_t>(m.vocab.find("policy"))), kIdfPolicy, 1e-12);
}

TEST(BuildMatrix, HandExampleNormalizedRow) {
  const auto m = hand_example();
  ASSERT_EQ(m.vocab.terms, (std::vector<std::string>{"ai", "ethics", "policy"}));
  EXPECT_NEAR(m.weight(0, 0), kD1Ai, 1e-12);
  EXPECT_EQ(m.weight(0, 1), 0.0);
  EXPECT_NEAR(m.weight(0, 2), kD1Policy, 1e-12);
  EXPECT_EQ(m.count(0, 0), 1u);
  EXPECT_EQ(m.count(1, 2), 0u);
}

TEST(BuildMatrix, DfCutoffs) {
  const std::vector<Tokens> docs{{"a", "b", "c"}, {"a", "b"}, {"a", "d"}};
  const auto m = build_matrix(docs, {.min_df = 2, .max_df_ratio = 0.95});
  EXPECT_EQ(m.vocab.terms, (std::vector<std::string>{"b"}));
  const auto all = build_matrix(docs, {.min_df = 1, .max_df_ratio = 1.0});
  EXPECT_EQ(all.vocab.terms.size(), 4u);
  EXPECT_THROW(build_matrix(docs, {.min_df = 0}), UsageError);
  EXPECT_THROW(build_matrix(docs, {.min_df = 1, .max_df_ratio = 0.0}), UsageError);
  EXPECT_THROW(build_matrix({}, {}), UsageError);
  EXPECT_THROW(build_matrix({{"x"}, {"y"}}, {}), ValidationError);
}

TEST(BuildMatrix, RowsAreUnitNormAndShareStructure) {
  const auto m = build_matrix(fixture_docs());
  for (std::size_t d = 0; d < m.n_docs; ++d) {
    double ss = 0.0;
    for (std::size_t i = m.row_begin(d); i < m.row_end(d); ++i) {
      EXPECT_GT(m.counts[i], 0u);
      EXPECT_GT(m.weights[i], 0.0);
      ss += m.weights[i] * m.weights[i];
    }
    if (m.row_end(d) > m.row_begin(d)) EXPECT_NEAR(std::sqrt(ss), 1.0, 1e-9);
  }
}

TEST(BuildMatrix, VocabularyInvariantsByBruteForce) {
  const auto docs = fixture_docs();
  const auto m = build_matrix(docs);
  EXPECT_TRUE(std::is_sorted(m.vocab.terms.begin(), m.vocab.terms.end()));
  std::map<std::string, std::size_t> df;
  for (const auto& d : docs) {
    for (const auto& t : std::set<std::string>(d.begin(), d.end())) ++df[t];
  }
  for (std::size_t t = 0; t < m.vocab.size(); ++t) {
    EXPECT_EQ(m.vocab.index.at(m.vocab.terms[t]), t);
    EXPECT_EQ(m.vocab.df[t], df.at(m.vocab.terms[t]));
    EXPECT_GE(m.vocab.df[t], 2u);
  }
  std::size_t expected_terms = 0;
  for (const auto& [term, f] : df) {
    if (f >= 2 && static_cast<double>(f) / static_cast<double>(docs.size()) <= 0.95) ++expected_terms;
  }
  EXPECT_EQ(m.vocab.size(), expected_terms);
}

TEST(BuildMatrix, ScalingADocumentLeavesItsRowUnchanged) {
  auto docs = fixture_docs();
  const auto base = build_matrix(docs);
  for (std::size_t d : {0u, 7u, 31u}) {
    auto scaled = docs;
    const Tokens original = scaled[d];
    for (int rep = 1; rep < 3; ++rep) scaled[d].insert(scaled[d].end(), original.begin(), original.end());
    const auto m = build_matrix(scaled);
    ASSERT_EQ(m.vocab.terms, base.vocab.terms);
    for (std::size_t t = 0; t < m.vocab.size(); ++t) EXPECT_NEAR(m.weight(d, t), base.weight(d, t), 1e-9);
  }
}

TEST(MatrixSummary, Density) {
  const auto m = hand_example();
  const auto s = matrix_summary(m);
  EXPECT_EQ(s.n_docs, 2u);
  EXPECT_EQ(s.n_terms, 3u);
  EXPECT_DOUBLE_EQ(s.density, 4.0 / 6.0);
}

TEST(MatrixSummary, EmptyRowContributesNothing) {
  const auto m = build_matrix({{"a", "b"}, {"zzz"}, {"a", "b"}}, {.min_df = 2, .max_df_ratio = 1.0});
  EXPECT_EQ(m.row_end(1) - m.row_begin(1), 0u);
  EXPECT_DOUBLE_EQ(matrix_summary(m).density, 4.0 / 6.0);
}

TEST(MatrixSummary, FixtureMatchesRecount) {
  const auto docs = fixture_docs();
  const auto m = build_matrix(docs);
  std::size_t nnz = 0;
  for (const auto& d : docs) {
    for (const auto& t : std::set<std::string>(d.begin(), d.end())) nnz += m.vocab.find(t) >= 0 ? 1 : 0;
  }
  const auto s = matrix_summary(m);
  EXPECT_EQ(s.n_docs, 50u);
  EXPECT_DOUBLE_EQ(s.density, static_cast<double>(nnz) / static_cast<double>(50 * m.vocab.size()));
}

TEST(DtmJson, RoundTripAndDeterminism) {
  const auto docs = fixture_docs();
  const auto a = to_json(build_matrix(docs)).dump();
  const auto b = to_json(build_matrix(docs)).dump();
  EXPECT_EQ(a, b);
  const auto back = doc_term_matrix_from_json(nlohmann::json::parse(a));
  EXPECT_EQ(to_json(back).dump(), a);
}

TEST(DtmJson, RejectsInconsistentStructure) {
  auto j = to_json(hand_example());
  j["weights"].erase(0);
  EXPECT_THROW(doc_term_matrix_from_json(j), ValidationError);
  j = to_json(hand_example());
  j["counts"][0][2] = 0;
  EXPECT_THROW(doc_term_matrix_from_json(j), ValidationError);
  j = to_json(hand_example());
  std::swap(j["counts"][0], j["counts"][1]);
  std::swap(j["weights"][0], j["weights"][1]);
  EXPECT_THROW(doc_term_matrix_from_json(j), ValidationError);
}
