#include "plateau/config.hpp"

#include <gtest/gtest.h>

using namespace plateau;

namespace {

int parse_error_line(const std::string& text) {
  try {
    problem_from_config(parse_config(text));
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(Config, ParsesScalarsAndArrays) {
  const auto doc = parse_config(R"(# comment
[domain]
lo = [0.0, -1]   # trailing comment
hi = [
  2.5,
  3e0,
]
periodic = false

[oracle]
kind = "separation"
)");
  EXPECT_EQ(doc.at("domain").at("lo").numbers(), (std::vector<double>{0.0, -1.0}));
  EXPECT_EQ(doc.at("domain").at("hi").numbers(), (std::vector<double>{2.5, 3.0}));
  EXPECT_FALSE(doc.at("domain").at("periodic").boolean());
  EXPECT_EQ(doc.at("oracle").at("kind").string(), "separation");
  EXPECT_EQ(doc.at("oracle").at("kind").line, 11);
}

TEST(Config, UnknownKeyReportsLine) {
  EXPECT_EQ(parse_error_line("[domain]\nlo = [0, 0]\nhi = [1, 1]\nwidth = 3\n"), 4);
}

TEST(Config, UnknownSectionReportsLine) { EXPECT_EQ(parse_error_line("\n\n[mesh]\n"), 3); }

TEST(Config, MalformedValueReportsLine) {
  EXPECT_EQ(parse_error_line("[domain]\nlo = [0, 0\nhi = [1, 1]\n"), 2);
  EXPECT_EQ(parse_error_line("[schedule]\nlevels = four\n"), 2);
}

TEST(Config, WrongTypeReportsLine) {
  const std::string text =
      "[domain]\nlo = [0, 0]\nhi = [1, 1]\n[input]\nd = 1\n[oracle]\nkind = \"connectivity\"\n"
      "[schedule]\nlevels = \"4\"\n";
  EXPECT_EQ(parse_error_line(text), 9);
}

TEST(Config, MissingKeyNamed) {
  try {
    problem_from_config(parse_config("[domain]\nlo = [0, 0]\nhi = [1, 1]\n[input]\nd = 1\n"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("kind"), std::string::npos);
  }
}

TEST(Config, DuplicateKey) { EXPECT_EQ(parse_error_line("[domain]\nlo = [0, 0]\nlo = [1, 1]\n"), 3); }

TEST(Config, BuildsProblem) {
  const auto spec = load_problem(std::string(PLATEAU_TEST_DATA) + "/l_domain.toml");
  EXPECT_EQ(spec.n(), 2);
  EXPECT_EQ(spec.d, 1);
  ASSERT_EQ(spec.obstacles.size(), 1u);
  EXPECT_EQ(spec.terminals.size(), 2u);
  EXPECT_EQ(spec.levels, 4);
  EXPECT_EQ(spec.seed, 7u);
  EXPECT_DOUBLE_EQ(spec.tol_d, 0.05);
}

TEST(Config, SeparationAndCellwiseDensity) {
  const auto spec = load_problem(std::string(PLATEAU_TEST_DATA) + "/separation.toml");
  EXPECT_EQ(spec.oracle, OracleKind::Separation);
  ASSERT_EQ(spec.separate.size(), 1u);
  const auto h = spec.density.build();
  EXPECT_EQ(h(make_point({2.5, 2.5})), 3.0);
  EXPECT_EQ(h(make_point({0.5, 0.5})), 1.0);
}

TEST(Config, BadDimensionRejected) {
  EXPECT_THROW(load_problem(std::string(PLATEAU_TEST_DATA) + "/bad_dimension.toml").validate(), DimensionMismatch);
}

TEST(Config, MissingFile) { EXPECT_THROW(load_problem("/nonexistent/problem.toml"), IoError); }
