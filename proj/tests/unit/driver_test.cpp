#include "oracles.hpp"
#include "plateau/config.hpp"
#include "plateau/driver.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

using namespace plateau;

namespace {

// Shortest lattice path between (1,-2) and (1,2) on the stride-s grid over
// (-2,2)^2, using only edges whose midpoint is inside the open square and
// off the closed obstacle [-1,1]^2.
double l_domain_oracle(double s) {
  const int m = static_cast<int>(std::lround(4.0 / s));
  auto id = [m](int i, int j) { return i * (m + 1) + j; };
  auto ok = [](double x, double y) {
    const bool inside = x > -2 && x < 2 && y > -2 && y < 2;
    const bool blocked = x >= -1 && x <= 1 && y >= -1 && y <= 1;
    return inside && !blocked;
  };
  std::vector<oracle::WeightedEdge> edges;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j) {
      const double x = -2 + i * s, y = -2 + j * s;
      if (i < m && ok(x + s / 2, y)) edges.push_back({id(i, j), id(i + 1, j), s});
      if (j < m && ok(x, y + s / 2)) edges.push_back({id(i, j), id(i, j + 1), s});
    }
  const int i1 = static_cast<int>(std::lround(3.0 / s));
  return oracle::shortest_path((m + 1) * (m + 1), edges, id(i1, 0), id(i1, m));
}

ProblemSpec l_domain(int levels) {
  auto spec = load_problem(std::string(PLATEAU_TEST_DATA) + "/l_domain.toml");
  spec.levels = levels;
  spec.probe_trials = 20;
  return spec;
}

}  // namespace

TEST(Driver, LDomainMatchesLatticeOracle) {
  const auto report = run(l_domain(3));
  ASSERT_EQ(report.strides.size(), 3u);
  for (std::size_t k = 0; k < report.strides.size(); ++k) {
    const auto& r = report.strides[k];
    EXPECT_NEAR(r.j_value, l_domain_oracle(r.stride), 1e-9) << "stride " << r.stride;
    if (k > 0) {
      EXPECT_LE(r.j_value, report.strides[k - 1].j_value + 1e-12);
    }
  }
  EXPECT_TRUE(report.limit_admissible);
}

TEST(Driver, TrivialProblemConvergesAtOnce) {
  ProblemSpec spec;
  spec.domain = Box{make_point({0, 0}), make_point({4, 4})};
  spec.terminals = {make_point({1, 2}), make_point({3, 2})};
  spec.r0 = 1.0;
  spec.levels = 3;
  spec.probe_trials = 20;
  const auto report = run(spec);
  for (const auto& r : report.strides) EXPECT_NEAR(r.j_value, 2.0, 1e-12);
  EXPECT_TRUE(report.converged);
  EXPECT_FALSE(gauge_report(report).empty());
}

TEST(Driver, PatchBeatsAxisLattice) {
  auto spec = load_problem(std::string(PLATEAU_TEST_DATA) + "/diagonal_patch.toml");
  spec.levels = 2;
  spec.probe_trials = 20;
  const auto with_patch = run(spec);
  spec.patches = false;
  const auto axis = run(spec);
  EXPECT_NEAR(axis.strides.back().j_value, 2.0, 1e-9);
  EXPECT_LT(with_patch.strides.back().j_value, axis.strides.back().j_value);
  EXPECT_LE(with_patch.strides.back().j_value, 1.1 * std::sqrt(2.0));
}

TEST(Driver, GaugeEmptyWhenNotConverged) {
  RunReport report;
  report.converged = false;
  EXPECT_TRUE(gauge_report(report).empty());
}

TEST(Driver, SeparationConfig) {
  const auto report = run(load_problem(std::string(PLATEAU_TEST_DATA) + "/separation.toml"));
  ASSERT_EQ(report.strides.size(), 1u);
  // Cells (1,2) and (4,3) of a 6x6 block with a heavy 2x2 middle.
  std::map<std::vector<int>, double> table{{{2, 2}, 3.0}, {{2, 3}, 3.0}, {{3, 2}, 2.5}, {{3, 3}, 2.5}};
  auto h = [&](int x, int y) {
    auto it = table.find({x, y});
    return it == table.end() ? 1.0 : it->second;
  };
  std::vector<oracle::WeightedEdge> edges;
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) {
      if (x < 5) edges.push_back({x * 6 + y, (x + 1) * 6 + y, std::min(h(x, y), h(x + 1, y))});
      if (y < 5) edges.push_back({x * 6 + y, x * 6 + y + 1, std::min(h(x, y), h(x, y + 1))});
    }
  EXPECT_NEAR(report.strides[0].j_value, oracle::max_flow(36, edges, 1 * 6 + 2, 4 * 6 + 3), 1e-12);
}

TEST(Driver, ValidateRejectsBadDimension) {
  ProblemSpec spec;
  spec.domain = Box{make_point({0, 0}), make_point({1, 1})};
  spec.d = 2;
  EXPECT_THROW(spec.validate(), DimensionMismatch);
}

TEST(Driver, ConvergenceWindowsAreNested) {
  const auto w = convergence_windows(Box{make_point({0, 0}), make_point({4, 4})});
  ASSERT_EQ(w.size(), 3u);
  for (std::size_t i = 1; i < w.size(); ++i) {
    EXPECT_TRUE(w[i - 1].contains(w[i].lo));
    EXPECT_TRUE(w[i - 1].contains(w[i].hi));
  }
  EXPECT_NEAR(w[0].hi[0] - w[0].lo[0], 3.6, 1e-12);
}
