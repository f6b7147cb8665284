#include <cmath>

#include <gtest/gtest.h>

#include "endogrowth/io.hpp"
#include "endogrowth/panel.hpp"
#include "support/fixtures.hpp"

using namespace endogrowth;

TEST(Csv, QuotedFieldsCommentsAndBlankLines) {
  const auto t = io::parse_csv("# note\nname,v\n\n\"Korea, Rep.\",1.5\n\"say \"\"hi\"\"\",2\n", "x.csv");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][0], "Korea, Rep.");
  EXPECT_EQ(t.rows[1][0], "say \"hi\"");
  EXPECT_EQ(t.line_numbers[0], 4u);
  EXPECT_EQ(io::split_csv_line(io::quote_csv("a,\"b\"")), (std::vector<std::string>{"a,\"b\""}));
}

TEST(Csv, FieldCountMismatchNamesLine) {
  try {
    io::parse_csv("a,b\n1,2\n3\n", "bad.csv");
    FAIL();
  } catch (const RowError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("bad.csv"), std::string::npos);
  }
}

TEST(Numbers, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 2366.3018284712352, 1e-300, 6.02e23, -0.0223}) {
    EXPECT_EQ(*io::parse_double(io::format_double(v)), v);
  }
  EXPECT_EQ(io::format_double(65.0), "65");
  EXPECT_FALSE(io::parse_double("1.5x").has_value());
  EXPECT_FALSE(io::parse_long("19.5").has_value());
  EXPECT_EQ(*io::parse_long(" 2005 "), 2005);
}

TEST(Panel, CsvRoundTrip) {
  const auto p = fixtures::cross_section_2005();
  EXPECT_EQ(p.roster().size(), 60u);
  EXPECT_EQ(p.years(), std::vector<int>{2005});
  const auto again = panel_from_csv(io::parse_csv(panel_to_csv(p)));
  EXPECT_EQ(panel_to_csv(again), panel_to_csv(p));
}

TEST(Panel, MissingCellsAndErrors) {
  const auto p = panel_from_csv(io::parse_csv("country,year,a,b\nX,2000,1,\nX,1995,,2\n"));
  EXPECT_EQ(p.observations[0].year, 1995);
  EXPECT_FALSE(p.observations[0].has("a"));
  EXPECT_EQ(*p.observations[1].get("a"), 1.0);
  EXPECT_THROW(panel_from_csv(io::parse_csv("year,country\n")), SchemaError);
  EXPECT_THROW(panel_from_csv(io::parse_csv("country,year,a\nX,2000,1\nX,2000,2\n")), RowError);
  EXPECT_THROW(panel_from_csv(io::parse_csv("country,year,a\nX,20o0,1\n")), RowError);
}

TEST(Panel, CrossSection) {
  const auto p = panel_from_csv(io::parse_csv("country,year,a\nX,2000,1\nX,2005,2\nY,2005,3\n"));
  const auto cs = p.cross_section(2005);
  EXPECT_EQ(cs.observations.size(), 2u);
  EXPECT_EQ(cs.roster(), (std::vector<std::string>{"X", "Y"}));
}

TEST(Provenance, JsonShape) {
  Provenance pr;
  pr.exclusions = {"Zaire (pwt)"};
  pr.dropped = {{"Kenya", "missing Pa in 1990"}};
  const auto j = provenance_to_json(pr);
  EXPECT_EQ(j["dropped_countries"][0]["country"], "Kenya");
  EXPECT_TRUE(j["interpolations"].is_array());
}

TEST(Files, WriteCreatesDirectories) {
  fixtures::TempDir dir;
  const auto target = dir / "a/b/c.txt";
  io::write_file(target, "hello");
  EXPECT_EQ(io::read_file(target), "hello");
  EXPECT_THROW(io::read_file(dir / "missing.csv"), IoError);
}
