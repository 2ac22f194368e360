#include "fixtures.hpp"
#include "oracles.hpp"
#include "plateau/optimizer.hpp"
#include "plateau/probe.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace plateau;

namespace {

constexpr int kSide = 6;

// Random cellwise density on the kSide x kSide unit grid with values in
// {1, 1.25, ..., 3}; outside cells read 1.
struct Instance {
  std::map<std::vector<int>, double> table;
  DensityField h;
};

Instance random_density(std::mt19937_64& rng) {
  Instance in;
  std::uniform_int_distribution<int> q(4, 12);
  for (int x = 0; x < kSide; ++x)
    for (int y = 0; y < kSide; ++y) in.table[{x, y}] = q(rng) / 4.0;
  in.h = DensityField::cellwise(make_point({0, 0}), 1.0, in.table, 1.0);
  return in;
}

double cell_h(const Instance& in, int x, int y) {
  auto it = in.table.find({x, y});
  return it == in.table.end() ? 1.0 : it->second;
}

// Weight of the unit edge between lattice cells (x0,y0) and (x1,y1): the
// density on the shared side is the smaller of the two values.
double side_weight(const Instance& in, int x0, int y0, int x1, int y1) {
  return std::min(cell_h(in, x0, y0), cell_h(in, x1, y1));
}

// Min cut between two cells in the dual graph of the grid's own cells.
double dual_min_cut(const Instance& in, int a, int b) {
  auto id = [](int x, int y) { return x * kSide + y; };
  std::vector<oracle::WeightedEdge> edges;
  for (int x = 0; x < kSide; ++x)
    for (int y = 0; y < kSide; ++y) {
      if (x + 1 < kSide) edges.push_back({id(x, y), id(x + 1, y), side_weight(in, x, y, x + 1, y)});
      if (y + 1 < kSide) edges.push_back({id(x, y), id(x, y + 1), side_weight(in, x, y, x, y + 1)});
    }
  return oracle::max_flow(kSide * kSide, edges, a, b);
}

// Shortest path between lattice vertices in the primal edge graph.
double primal_shortest(const Instance& in, int a, int b) {
  auto id = [](int x, int y) { return x * (kSide + 1) + y; };
  std::vector<oracle::WeightedEdge> edges;
  for (int x = 0; x <= kSide; ++x)
    for (int y = 0; y <= kSide; ++y) {
      if (x < kSide) edges.push_back({id(x, y), id(x + 1, y), side_weight(in, x, y - 1, x, y)});
      if (y < kSide) edges.push_back({id(x, y), id(x, y + 1), side_weight(in, x - 1, y, x, y)});
    }
  return oracle::shortest_path((kSide + 1) * (kSide + 1), edges, a, b);
}

std::set<int> all_of_dim(const Complex& s, int d) {
  const auto& v = s.faces_of_dim(d);
  return {v.begin(), v.end()};
}

}  // namespace

TEST(Optimize, SeparationMatchesMaxFlow) {
  const Complex s = fixture::grid2d(kSide, kSide);
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> pick(0, kSide - 1);
  for (int trial = 0; trial < 5; ++trial) {
    const auto in = random_density(rng);
    int ax, ay, bx, by;
    do {
      ax = pick(rng), ay = pick(rng), bx = pick(rng), by = pick(rng);
    } while (ax == bx && ay == by);
    const int ca = s.locate_cell(make_point({ax + 0.5, ay + 0.5}));
    const int cb = s.locate_cell(make_point({bx + 0.5, by + 0.5}));
    const auto o = ConstraintOracle::separation({{ca, cb}});
    OptimizerConfig cfg;
    cfg.seed = trial;
    const auto out = optimize(s, {all_of_dim(s, 1), {}}, o, in.h, 1, cfg);
    EXPECT_NEAR(out.value, dual_min_cut(in, ax * kSide + ay, bx * kSide + by), 1e-9) << "trial " << trial;
    EXPECT_TRUE(admissible(s, out.skeleton, o, 1));
    EXPECT_NEAR(out.value, weighted_measure(s, out.skeleton, 1, in.h), 1e-9);
  }
}

TEST(Optimize, ConnectivityMatchesShortestPath) {
  const Complex s = fixture::grid2d(kSide, kSide);
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> pick(0, kSide);
  for (int trial = 0; trial < 5; ++trial) {
    const auto in = random_density(rng);
    int ax, ay, bx, by;
    do {
      ax = pick(rng), ay = pick(rng), bx = pick(rng), by = pick(rng);
    } while (ax == bx && ay == by);
    const auto o = ConstraintOracle::connectivity(
        {fixture::vertex_at(s, make_point({double(ax), double(ay)})), fixture::vertex_at(s, make_point({double(bx), double(by)}))});
    OptimizerConfig cfg;
    cfg.seed = trial;
    const auto out = optimize(s, {all_of_dim(s, 1), {}}, o, in.h, 1, cfg);
    EXPECT_NEAR(out.value, primal_shortest(in, ax * (kSide + 1) + ay, bx * (kSide + 1) + by), 1e-9) << "trial " << trial;
  }
}

TEST(Optimize, OptimalInitUnchangedExhaustive) {
  const Complex s = fixture::grid2d(2, 2);
  const auto o = ConstraintOracle::connectivity(
      {fixture::vertex_at(s, make_point({0, 1})), fixture::vertex_at(s, make_point({2, 1}))});
  Skeleton init{{fixture::edge(s, 0, 1, 1, 1), fixture::edge(s, 1, 1, 2, 1)}, {}};
  const auto out = optimize(s, init, o, DensityField::constant(), 1);
  EXPECT_EQ(out.certificate, Certificate::Exhaustive);
  EXPECT_EQ(maximal_faces(s, out.skeleton.faces), init.faces);
  EXPECT_DOUBLE_EQ(out.value, 2.0);
}

TEST(Optimize, RejectsInadmissibleInit) {
  const Complex s = fixture::grid2d(2, 2);
  const auto o = ConstraintOracle::connectivity(
      {fixture::vertex_at(s, make_point({0, 0})), fixture::vertex_at(s, make_point({2, 2}))});
  EXPECT_THROW(optimize(s, {}, o, DensityField::constant(), 1), InitInadmissible);
}

TEST(Optimize, ExhaustiveAndLocalAgree) {
  const Complex s = fixture::grid2d(2, 2);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(0, 2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> terms;
    for (int t = 0; t < 3; ++t) {
      const int v = fixture::vertex_at(s, make_point({double(pick(rng)), double(pick(rng))}));
      if (std::find(terms.begin(), terms.end(), v) == terms.end()) terms.push_back(v);
    }
    const auto o = ConstraintOracle::connectivity(terms);
    std::map<std::vector<int>, double> table{{{0, 0}, 1.5}, {{1, 0}, 2.0}, {{0, 1}, 1.0}, {{1, 1}, 2.75}};
    const auto h = DensityField::cellwise(make_point({0, 0}), 1.0, table, 3.0);
    OptimizerConfig ex, loc;
    loc.allow_exhaustive = false;
    loc.seed = trial;
    const auto a = optimize(s, {all_of_dim(s, 1), {}}, o, h, 1, ex);
    const auto b = optimize(s, {all_of_dim(s, 1), {}}, o, h, 1, loc);
    EXPECT_EQ(a.certificate, Certificate::Exhaustive);
    EXPECT_EQ(b.certificate, Certificate::Local);
    EXPECT_NEAR(a.value, b.value, 1e-12) << "trial " << trial;
  }
}

TEST(Optimize, RelaxingSeparationNeverIncreases) {
  const Complex s = fixture::grid2d(4, 4);
  const int c0 = s.locate_cell(make_point({0.5, 0.5})), c1 = s.locate_cell(make_point({3.5, 3.5}));
  const int c2 = s.locate_cell(make_point({1.5, 2.5}));
  const auto h = DensityField::constant();
  const auto both = optimize(s, {all_of_dim(s, 1), {}}, ConstraintOracle::separation({{c0, c1}, {c0, c2}}), h, 1);
  const auto one = optimize(s, {all_of_dim(s, 1), {}}, ConstraintOracle::separation({{c0, c1}}), h, 1);
  EXPECT_LE(one.value, both.value + 1e-12);
}

TEST(Optimize, FrozenFacesKept) {
  const Complex s = fixture::grid2d(2, 2);
  const auto o = ConstraintOracle::connectivity(
      {fixture::vertex_at(s, make_point({0, 0})), fixture::vertex_at(s, make_point({1, 0}))});
  const int extra = fixture::edge(s, 2, 1, 2, 2);
  Skeleton init{all_of_dim(s, 1), {extra}};
  const auto out = optimize(s, init, o, DensityField::constant(), 1);
  EXPECT_TRUE(out.skeleton.faces.count(extra));
  EXPECT_DOUBLE_EQ(out.value, 2.0);
}

TEST(Cores, EdgesAbsorbTheirVertices) {
  const Complex s = fixture::grid2d(2, 1);
  Skeleton k{{fixture::edge(s, 0, 0, 1, 0), fixture::edge(s, 1, 0, 2, 0), fixture::vertex_at(s, make_point({0, 0})),
              fixture::vertex_at(s, make_point({1, 0})), fixture::vertex_at(s, make_point({2, 0}))},
             {}};
  const auto cores = core_decompose(s, k, 1);
  EXPECT_EQ(cores[1].size(), 2u);
  EXPECT_TRUE(cores[0].empty());
}

TEST(Cores, IsolatedVertex) {
  const Complex s = fixture::grid2d(2, 1);
  const int e = fixture::edge(s, 0, 0, 1, 0);
  const int v = fixture::vertex_at(s, make_point({2, 1}));
  const auto cores = core_decompose(s, {{e, v}, {}}, 1);
  EXPECT_EQ(cores[1], std::vector<int>{e});
  EXPECT_EQ(cores[0], std::vector<int>{v});
}

TEST(Cores, Empty) {
  const Complex s = fixture::grid2d(2, 1);
  for (const auto& c : core_decompose(s, {}, 1)) EXPECT_TRUE(c.empty());
}

TEST(Probe, ShortestPathNeverImproves) {
  const Complex s = fixture::grid2d(4, 3);
  const auto o = ConstraintOracle::connectivity(
      {fixture::vertex_at(s, make_point({0, 1})), fixture::vertex_at(s, make_point({4, 1}))});
  Skeleton k;
  for (int x = 0; x < 4; ++x) k.faces.insert(fixture::edge(s, x, 1, x + 1, 1));
  ProbeOptions opt;
  opt.seed = 9;
  const auto r = quasiminimality_probe(s, k, o, DensityField::constant(), 1, opt);
  EXPECT_EQ(r.trials, 200);
  EXPECT_LE(r.max_ratio, 1.0 + 1e-12);
}

TEST(Probe, HangingEdgeDetected) {
  const Complex s = fixture::grid2d(4, 3);
  const auto o = ConstraintOracle::connectivity(
      {fixture::vertex_at(s, make_point({0, 1})), fixture::vertex_at(s, make_point({4, 1}))});
  Skeleton k;
  for (int x = 0; x < 4; ++x) k.faces.insert(fixture::edge(s, x, 1, x + 1, 1));
  k.faces.insert(fixture::edge(s, 2, 1, 2, 2));
  ProbeOptions opt;
  opt.seed = 9;
  const auto r = quasiminimality_probe(s, k, o, DensityField::constant(), 1, opt);
  EXPECT_GT(r.max_ratio, 1.0);
}

TEST(Probe, ZeroTrials) {
  const Complex s = fixture::grid2d(2, 2);
  ProbeOptions opt;
  opt.trials = 0;
  const auto r = quasiminimality_probe(s, {}, ConstraintOracle::connectivity({}), DensityField::constant(), 1, opt);
  EXPECT_EQ(r.trials, 0);
  EXPECT_TRUE(r.ratios.empty());
}

TEST(Helpers, MinSeparatingCycleOnUniformGrid) {
  const Complex s = fixture::grid2d(4, 4);
  const auto w = face_weights(s, 1, DensityField::constant());
  // The boundary contracts to one vertex, so a corner cell is cut off by two edges.
  const auto cut = min_separating_cycle(s, w, s.locate_cell(make_point({0.5, 0.5})), s.locate_cell(make_point({2.5, 2.5})));
  EXPECT_DOUBLE_EQ(skeleton_value(s, cut, 1, w), 2.0);
}
