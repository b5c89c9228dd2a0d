#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"
#include "foresight/csv.hpp"
#include "foresight/store.hpp"
#include "support/support.hpp"

using namespace foresight;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const testkit::TempDir& home, std::vector<std::string> args) {
  args.insert(args.begin(), {"foresight", "--home", home.path().string()});
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus_path() { return (testkit::data_dir() / "corpus" / "ai_foresight_50.csv").string(); }

}  // namespace

TEST(Cli, TopicsBeforeIngestFailsNamingCorpus) {
  testkit::TempDir home;
  const auto r = run(home, {"topics"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("corpus.json"), std::string::npos);
  EXPECT_NE(r.err.find("foresight ingest"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  testkit::TempDir home;
  EXPECT_EQ(run(home, {"simulate", "--bogus"}).code, 2);
  EXPECT_EQ(run(home, {}).code, 2);
  EXPECT_EQ(run(home, {"simulate"}).code, 2);
  EXPECT_EQ(run(home, {"simulate", "--scenario", "Optimistic Future", "--A", "0.5", "--R", "0.5"}).code, 2);
  EXPECT_EQ(run(home, {"simulate", "--A", "0.5"}).code, 2);
  EXPECT_EQ(run(home, {"simulate", "--A", "0.5", "--R", "0.5", "--runs", "0"}).code, 2);
  EXPECT_EQ(run(home, {"ingest", "file.bib"}).code, 2);
  EXPECT_EQ(run(home, {"--help"}).code, 0);
}

TEST(Cli, ValidationErrorsExitOne) {
  testkit::TempDir home;
  EXPECT_EQ(run(home, {"simulate", "--A", "1.3", "--R", "0.5"}).code, 1);
  EXPECT_EQ(run(home, {"ingest", (home.path() / "missing.csv").string()}).code, 1);
  write_file(home.path() / "empty.csv", "Title,Abstract\n");
  const auto r = run(home, {"ingest", (home.path() / "empty.csv").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("no records"), std::string::npos);
  EXPECT_EQ(run(home, {"trends"}).code, 1);
  EXPECT_EQ(run(home, {"simulate", "--scenario", "Optimistic Future"}).code, 1);
}

TEST(Cli, ScenarioSimulationIsByteIdentical) {
  testkit::TempDir a, b;
  for (const auto* home : {&a, &b}) {
    ASSERT_EQ(run(*home, {"scenarios"}).code, 0);
    ASSERT_EQ(run(*home, {"simulate", "--scenario", "Optimistic Future", "--seed", "42", "--runs", "1"}).code, 0);
  }
  const auto name = "optimistic-future_seed42_runs1.csv";
  const auto x = read_file(a.path() / "results" / name);
  EXPECT_EQ(x, read_file(b.path() / "results" / name));
  const auto rows = csv::parse(x);
  EXPECT_EQ(rows[0].fields, (std::vector<std::string>{"t", "E", "S", "T"}));
  EXPECT_EQ(rows.size(), 102u);
}

TEST(Cli, StdoutOutputs) {
  testkit::TempDir home;
  auto r = run(home, {"simulate", "--A", "0.5", "--R", "0.5", "--runs", "1", "--horizon", "1", "--stdout"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.starts_with("t,E,S,T\n"));
  r = run(home, {"simulate", "--A", "0.5", "--R", "0.5", "--runs", "5", "--horizon", "1", "--json", "--stdout"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("n_runs"), 5);
  r = run(home, {"simulate", "--A", "0.5", "--R", "0.5", "--runs", "5", "--svg", "--stdout"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("</svg>"), std::string::npos);
  EXPECT_EQ(run(home, {"simulate", "--A", "0.5", "--R", "0.5", "--svg", "--json", "--stdout"}).code, 2);
  EXPECT_FALSE(std::filesystem::exists(home.path() / "results"));
}

TEST(Cli, FullPipeline) {
  testkit::TempDir home;
  ASSERT_EQ(run(home, {"ingest", corpus_path()}).code, 0);
  const auto topics = run(home, {"topics", "--seed", "3", "--iters", "200", "--burn-in", "50"});
  ASSERT_EQ(topics.code, 0) << topics.err;
  EXPECT_NE(topics.out.find("== Identified Topics =="), std::string::npos);
  EXPECT_NE(topics.out.find("Topic 6: "), std::string::npos);
  EXPECT_NE(topics.out.find(" --> "), std::string::npos);
  ASSERT_EQ(run(home, {"trends"}).code, 0);
  const auto matrix = run(home, {"matrix", "--config", (testkit::data_dir() / "matrix.json").string()});
  ASSERT_EQ(matrix.code, 0);
  EXPECT_NE(matrix.out.find("1. AI & Digital Education"), std::string::npos);
  ASSERT_EQ(run(home, {"scenarios", "--list"}).code, 0);
  const auto table = run(home, {"scenarios", "--table", "--format", "csv"});
  ASSERT_EQ(table.code, 0);
  EXPECT_EQ(csv::parse(table.out).size(), 5u);
  ASSERT_EQ(run(home, {"simulate", "--scenario", "Sustainability Focus", "--runs", "30", "--csv", "--svg", "--json"})
                .code,
            0);
  ASSERT_EQ(run(home, {"simulate", "--all-scenarios", "--runs", "10"}).code, 0);

  ProjectStore store(home.path());
  EXPECT_EQ(store.load_corpus().records.size(), 50u);
  EXPECT_EQ(store.load_dtm().n_docs, 50u);
  EXPECT_EQ(store.load_lda().n_topics(), 6u);
  EXPECT_EQ(store.load_matrix().entries.size(), 6u);
  EXPECT_EQ(store.load_scenarios().scenarios.size(), 4u);
  EXPECT_NO_THROW(store.load_params());
  const auto results = home.path() / "results";
  for (const char* f : {"trends.csv", "trends.json", "sustainability-focus_seed0_runs30.csv",
                        "sustainability-focus_seed0_runs30.svg", "sustainability-focus_seed0_runs30.json",
                        "compare_seed0.csv"}) {
    EXPECT_TRUE(std::filesystem::exists(results / f)) << f;
  }
  EXPECT_EQ(csv::parse(read_file(results / "compare_seed0.csv")).size(), 5u);
}

TEST(Cli, HomeFromEnvironment) {
  testkit::TempDir home;
  ::setenv("FORESIGHT_HOME", home.path().c_str(), 1);
  std::ostringstream out, err;
  const int code = cli::run({"foresight", "scenarios"}, out, err);
  ::unsetenv("FORESIGHT_HOME");
  EXPECT_EQ(code, 0);
  EXPECT_TRUE(std::filesystem::exists(home.path() / "scenarios.json"));
}
