#include <gtest/gtest.h>

#include "foresight/csv.hpp"
#include "foresight/error.hpp"

using namespace foresight;

TEST(Csv, PlainRows) {
  const auto rows = csv::parse("a,b,c\n1,2,3\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].fields, (std::vector<std::string>{"1", "2", "3"}));
  EXPECT_EQ(rows[1].line, 2u);
}

TEST(Csv, QuotedCommaQuoteAndNewline) {
  const auto rows = csv::parse("x,y\r\n\"AI, ethics and policy\",\"say \"\"hi\"\"\nthere\"\r\nlast,row\r\n");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1].fields[0], "AI, ethics and policy");
  EXPECT_EQ(rows[1].fields[1], "say \"hi\"\nthere");
  EXPECT_EQ(rows[2].line, 4u);
}

TEST(Csv, EmptyFieldsAndBlankLines) {
  const auto rows = csv::parse("a,,c\n\n,\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].fields, (std::vector<std::string>{"a", "", "c"}));
  EXPECT_EQ(rows[1].fields, (std::vector<std::string>{"", ""}));
}

TEST(Csv, MissingFinalNewline) {
  const auto rows = csv::parse("a,b\n1,2");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].fields[1], "2");
}

TEST(Csv, MalformedQuotingReportsLine) {
  try {
    csv::parse("a,b\n1,2\nab\"c,d\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(csv::parse("a,\"b\"x\n"), ParseError);
  try {
    csv::parse("a,b\nx,\"never closed\n\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Csv, EscapeRoundTrip) {
  const std::vector<std::string> fields{"plain", "with, comma", "with \"quote\"", "multi\nline", ""};
  const auto rows = csv::parse(csv::join(fields) + "\n");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].fields, fields);
  EXPECT_EQ(csv::escape("plain"), "plain");
  EXPECT_EQ(csv::escape("a\"b"), "\"a\"\"b\"");
}

TEST(Utf8, Validation) {
  EXPECT_TRUE(utf8::is_valid("plain ascii"));
  EXPECT_TRUE(utf8::is_valid("caf\xC3\xA9 \xE2\x82\xAC \xF0\x9F\x98\x80"));
  EXPECT_EQ(utf8::first_invalid("ab\xC3"), 2u);
  EXPECT_EQ(utf8::first_invalid("\xC0\xAF"), 0u);          // overlong
  EXPECT_EQ(utf8::first_invalid("x\xED\xA0\x80"), 1u);     // surrogate
  EXPECT_EQ(utf8::first_invalid("\xF4\x90\x80\x80"), 0u);  // above U+10FFFF
  EXPECT_EQ(utf8::first_invalid("\x80"), 0u);
}

TEST(Utf8, BomAndLength) {
  EXPECT_EQ(utf8::strip_bom("\xEF\xBB\xBFTitle"), "Title");
  EXPECT_EQ(utf8::strip_bom("Title"), "Title");
  EXPECT_EQ(utf8::length("caf\xC3\xA9"), 4u);
  EXPECT_EQ(utf8::length(""), 0u);
}
