#include <gtest/gtest.h>

#include "foresight/error.hpp"
#include "foresight/matrix.hpp"
#include "foresight/store.hpp"
#include "support/support.hpp"

using namespace foresight;
using namespace foresight::matrix;

namespace {

constexpr std::array kLevels{Level::Low, Level::Medium, Level::High};

ImpactMatrix fixture() {
  return matrix_from_json(nlohmann::json::parse(read_file(testkit::data_dir() / "matrix.json")));
}

}  // namespace

TEST(DeriveRelevance, DecisionTable) {
  EXPECT_EQ(derive_relevance(Level::High, Level::High), Relevance::Critical);
  EXPECT_EQ(derive_relevance(Level::High, Level::Medium), Relevance::Important);
  EXPECT_EQ(derive_relevance(Level::High, Level::Low), Relevance::Important);
  EXPECT_EQ(derive_relevance(Level::Low, Level::Low), Relevance::Monitor);
  EXPECT_EQ(derive_relevance(Level::Medium, Level::High), Relevance::Monitor);
  static_assert(derive_relevance(Level::High, Level::High) == Relevance::Critical);
}

TEST(DeriveRelevance, Monotone) {
  for (auto i : kLevels)
    for (auto u : kLevels)
      for (auto i2 : kLevels)
        for (auto u2 : kLevels) {
          if (i2 >= i && u2 >= u) EXPECT_GE(derive_relevance(i2, u2), derive_relevance(i, u));
        }
}

TEST(BuildMatrix, EmptyAndSingle) {
  EXPECT_TRUE(build_matrix({}).entries.empty());
  const auto m = build_matrix({{"x", Level::Medium, Level::High, "", "", std::nullopt}});
  EXPECT_EQ(m.entries[0].relevance, Relevance::Monitor);
}

TEST(BuildMatrix, NamesMustBeUniqueAndNonEmpty) {
  EXPECT_THROW(build_matrix({{"x", Level::High, Level::High, "", "", {}}, {"x", Level::Low, Level::Low, "", "", {}}}),
               ValidationError);
  EXPECT_THROW(build_matrix({{"  ", Level::High, Level::High, "", "", {}}}), ValidationError);
}

TEST(BundledAssessment, FixtureEqualsBuiltin) {
  const auto m = fixture();
  ASSERT_EQ(m.entries.size(), builtin_factors().size());
  for (std::size_t i = 0; i < m.entries.size(); ++i) EXPECT_EQ(m.entries[i].factor, builtin_factors()[i]);
}

TEST(BundledAssessment, RelevanceColumnRowForRow) {
  // expected relevance per bundled factor, top to bottom
  const std::vector<std::pair<std::string, Relevance>> expected{
      {"AI & Digital Education", Relevance::Critical},
      {"Molecular Medicine & Oncology", Relevance::Important},
      {"Machine Learning & Predictive Analytics", Relevance::Important},
      {"Renewable Energy & Sustainability", Relevance::Critical},
      {"Financial Markets & Fintech", Relevance::Critical},
      {"Healthcare Systems & Public Health", Relevance::Important},
  };
  const auto m = fixture();
  ASSERT_EQ(m.entries.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(m.entries[i].factor.name, expected[i].first);
    EXPECT_EQ(m.entries[i].relevance, expected[i].second);
  }
}

TEST(SelectCritical, BundledAssessmentTrio) {
  EXPECT_EQ(select_critical(fixture()),
            (std::vector<std::string>{"AI & Digital Education", "Renewable Energy & Sustainability",
                                      "Financial Markets & Fintech"}));
}

TEST(SelectCritical, NoneAndAll) {
  EXPECT_TRUE(select_critical(build_matrix({{"a", Level::High, Level::Medium, "", "", {}}})).empty());
  const auto all = build_matrix(
      {{"c", Level::High, Level::High, "", "", {}}, {"a", Level::High, Level::High, "", "", {}}});
  EXPECT_EQ(select_critical(all), (std::vector<std::string>{"c", "a"}));
}

TEST(SelectCritical, StableUnderPermutationOfNonCriticalRows) {
  auto factors = builtin_factors();
  const auto base = select_critical(build_matrix(factors));
  std::swap(factors[1], factors[5]);
  std::swap(factors[2], factors[1]);
  const auto m = build_matrix(factors);
  EXPECT_EQ(select_critical(m), base);
  for (const auto& name : base) {
    EXPECT_TRUE(std::any_of(m.entries.begin(), m.entries.end(), [&](const Entry& e) { return e.factor.name == name; }));
  }
}

TEST(MatrixJson, RoundTripIsLossless) {
  const auto m = build_matrix(builtin_factors());
  EXPECT_EQ(matrix_from_json(nlohmann::json::parse(to_json(m).dump())), m);
  EXPECT_EQ(matrix_from_json(factors_to_json(builtin_factors())), m);
}

TEST(MatrixJson, SchemaErrors) {
  auto j = to_json(build_matrix(builtin_factors()));
  j["factors"][0]["relevance"] = "Monitor";
  EXPECT_THROW(matrix_from_json(j), ValidationError);
  EXPECT_THROW(matrix_from_json(nlohmann::json::parse(R"([{"name":"x","impact":"Huge","uncertainty":"Low"}])")),
               ValidationError);
  EXPECT_THROW(matrix_from_json(nlohmann::json::parse(R"([{"impact":"Low","uncertainty":"Low"}])")), ValidationError);
  EXPECT_THROW(matrix_from_json(nlohmann::json::parse(R"({"rows":[]})")), ValidationError);
}
