#include <gtest/gtest.h>

#include "foresight/csv.hpp"
#include "foresight/error.hpp"
#include "foresight/scenarios.hpp"
#include "foresight/store.hpp"
#include "support/support.hpp"

using namespace foresight;
using namespace foresight::scenarios;

namespace {

const std::vector<std::string> kNames{"Optimistic Future", "Technological Stagnation", "Sustainability Focus",
                                      "Economic Downturn"};
const std::vector<std::string> kDims{"AI & Digital Education", "Renewable Energy & Sustainability",
                                     "Financial Markets & Fintech"};

}  // namespace

TEST(Builtin, ShapeAndNames) {
  const auto t = builtin_scenarios();
  EXPECT_EQ(t.dimensions, kDims);
  ASSERT_EQ(t.scenarios.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(t.scenarios[i].name, kNames[i]);
  EXPECT_NO_THROW(t.validate());
}

TEST(Builtin, NarrativeCell) {
  const auto table = builtin_scenarios();
  const auto& s = table.find("Optimistic Future");
  EXPECT_TRUE(s.narratives.at("AI & Digital Education").starts_with("Rapid, inclusive AI integration"));
}

TEST(Builtin, NarrativesVerbatim) {
  const auto t = builtin_scenarios();
  const auto& down = t.find("Economic Downturn");
  EXPECT_EQ(down.narratives.at("AI & Digital Education"),
            "Budget constraints lead to reduced funding for edtech innovation and digital initiatives.");
  EXPECT_EQ(down.narratives.at("Renewable Energy & Sustainability"),
            "Minimal investments in renewables result in compromised infrastructure development.");
  EXPECT_EQ(down.narratives.at("Financial Markets & Fintech"),
            "Declining markets and reduced fintech activity elevate exposure to financial risks.");
}

TEST(Builtin, DriverDefaultsAndOrdinalChecks) {
  const auto t = builtin_scenarios();
  EXPECT_EQ(t.find("Optimistic Future").drivers, (DriverLevels{0.9, 0.9}));
  EXPECT_EQ(t.find("Technological Stagnation").drivers, (DriverLevels{0.3, 0.3}));
  EXPECT_EQ(t.find("Sustainability Focus").drivers, (DriverLevels{0.6, 0.9}));
  EXPECT_EQ(t.find("Economic Downturn").drivers, (DriverLevels{0.2, 0.2}));
  const auto& opt = t.find("Optimistic Future").drivers;
  const auto& down = t.find("Economic Downturn").drivers;
  EXPECT_GT(opt.ai_education, down.ai_education);
  EXPECT_GT(opt.renewables, down.renewables);
  const auto& sus = t.find("Sustainability Focus").drivers;
  EXPECT_GE(sus.renewables, sus.ai_education);
}

TEST(Builtin, ReferentiallyTransparent) {
  EXPECT_EQ(to_json(builtin_scenarios()).dump(), to_json(builtin_scenarios()).dump());
  EXPECT_EQ(render_table(builtin_scenarios(), TableFormat::Csv), render_table(builtin_scenarios(), TableFormat::Csv));
}

TEST(Builtin, FixtureFileMatches) {
  const auto t = scenario_table_from_json(nlohmann::json::parse(read_file(testkit::data_dir() / "scenarios.json")));
  EXPECT_EQ(t, builtin_scenarios());
}

TEST(Find, UnknownNameThrowsNotFound) { EXPECT_THROW(builtin_scenarios().find("Utopia"), NotFoundError); }

TEST(CustomScenario, Bounds) {
  EXPECT_NO_THROW(custom_scenario("zero", 0.0, 0.0));
  EXPECT_NO_THROW(custom_scenario("one", 1.0, 1.0));
  try {
    custom_scenario("bad", 1.2, 0.5);
    FAIL();
  } catch (const FieldError& e) {
    EXPECT_EQ(e.field(), "A");
    EXPECT_NE(std::string(e.what()).find("[0, 1]"), std::string::npos);
  }
  try {
    custom_scenario("bad", 0.5, -0.1);
    FAIL();
  } catch (const FieldError& e) {
    EXPECT_EQ(e.field(), "R");
  }
  EXPECT_THROW(custom_scenario("nan", std::nan(""), 0.5), ValidationError);
  const auto s = custom_scenario("Baseline", 0.5, 0.5, {{"x", "y"}});
  EXPECT_EQ(s.name, "Baseline");
  EXPECT_EQ(s.drivers, (DriverLevels{0.5, 0.5}));
  EXPECT_EQ(s.narratives.at("x"), "y");
}

TEST(RenderTable, EmptyTableIsHeaderOnly) {
  ScenarioTable t{kDims, {}};
  const auto csv_text = render_table(t, TableFormat::Csv);
  EXPECT_EQ(csv::parse(csv_text).size(), 1u);
  const auto md = render_table(t, TableFormat::Markdown);
  EXPECT_EQ(std::count(md.begin(), md.end(), '\n'), 2);
}

TEST(RenderTable, MarkdownHasFourDataRows) {
  const auto md = render_table(builtin_scenarios(), TableFormat::Markdown);
  EXPECT_EQ(std::count(md.begin(), md.end(), '\n'), 6);
  EXPECT_NE(md.find("| Optimistic Future |"), std::string::npos);
}

TEST(RenderTable, CsvRoundTripPreservesCommas) {
  auto t = builtin_scenarios();
  t.scenarios[0].narratives[kDims[0]] = "Commas, \"quotes\" and | pipes";
  const auto rows = csv::parse(render_table(t, TableFormat::Csv));
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0].fields.front(), "Scenario");
  EXPECT_EQ(rows[0].fields.size(), 6u);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& s = t.scenarios[i];
    EXPECT_EQ(rows[i + 1].fields[0], s.name);
    for (std::size_t d = 0; d < 3; ++d) EXPECT_EQ(rows[i + 1].fields[d + 1], s.narratives.at(kDims[d]));
    EXPECT_EQ(std::stod(rows[i + 1].fields[4]), s.drivers.ai_education);
    EXPECT_EQ(std::stod(rows[i + 1].fields[5]), s.drivers.renewables);
  }
}

TEST(ScenarioJson, RoundTripAndValidation) {
  const auto t = builtin_scenarios();
  EXPECT_EQ(scenario_table_from_json(nlohmann::json::parse(to_json(t).dump())), t);
  auto j = to_json(t);
  j["scenarios"][0]["drivers"]["A"] = 1.5;
  EXPECT_THROW(scenario_table_from_json(j), ValidationError);
  j = to_json(t);
  j["scenarios"][1]["name"] = j["scenarios"][0]["name"];
  EXPECT_THROW(scenario_table_from_json(j), ValidationError);
  j = to_json(t);
  j["scenarios"][2]["narratives"].erase("Financial Markets & Fintech");
  EXPECT_THROW(scenario_table_from_json(j), ValidationError);
}
