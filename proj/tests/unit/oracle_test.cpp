#include "fixtures.hpp"
#include "plateau/oracle.hpp"

#include <gtest/gtest.h>

using namespace plateau;

namespace {

std::set<int> all_of_dim(const Complex& s, int d) {
  const auto& v = s.faces_of_dim(d);
  return {v.begin(), v.end()};
}

int cell_at(const Complex& s, double x, double y) { return s.locate_cell(make_point({x, y})); }

}  // namespace

TEST(Connectivity, FullSkeletonConnects) {
  const Complex s = fixture::grid2d(3, 3);
  const auto o = ConstraintOracle::connectivity(
      {fixture::vertex_at(s, make_point({0, 0})), fixture::vertex_at(s, make_point({3, 3}))});
  EXPECT_TRUE(admissible(s, {all_of_dim(s, 1)}, o, 1));
}

TEST(Connectivity, StraightPath) {
  const Complex s = fixture::grid2d(3, 3);
  const auto o = ConstraintOracle::connectivity(
      {fixture::vertex_at(s, make_point({0, 1})), fixture::vertex_at(s, make_point({3, 1}))});
  Skeleton k;
  for (int x = 0; x < 3; ++x) k.faces.insert(fixture::edge(s, x, 1, x + 1, 1));
  EXPECT_TRUE(admissible(s, k, o, 1));
  k.faces.erase(fixture::edge(s, 1, 1, 2, 1));
  EXPECT_FALSE(admissible(s, k, o, 1));
}

TEST(Connectivity, DomainBlocksBoundaryEdges) {
  const Complex s = fixture::grid2d(2, 2);
  auto o = ConstraintOracle::connectivity(
      {fixture::vertex_at(s, make_point({0, 0})), fixture::vertex_at(s, make_point({2, 0}))});
  o.domain = Box{make_point({0, 0}), make_point({2, 2})};
  Skeleton bottom{{fixture::edge(s, 0, 0, 1, 0), fixture::edge(s, 1, 0, 2, 0)}, {}};
  EXPECT_FALSE(admissible(s, bottom, o, 1));
  EXPECT_FALSE(o.allowed(s, fixture::edge(s, 0, 0, 1, 0)));
  EXPECT_TRUE(o.allowed(s, fixture::edge(s, 1, 0, 1, 1)));
}

TEST(Separation, EmptySkeletonFails) {
  const Complex s = fixture::grid2d(2, 1);
  const auto o = ConstraintOracle::separation({{cell_at(s, 0.5, 0.5), cell_at(s, 1.5, 0.5)}});
  EXPECT_FALSE(admissible(s, {}, o, 1));
  EXPECT_TRUE(admissible(s, {{fixture::edge(s, 1, 0, 1, 1)}, {}}, o, 1));
}

TEST(Separation, NeedsCodimensionOne) {
  const Complex s = fixture::grid3d(2, 1, 1);
  const auto o = ConstraintOracle::separation({{0, 1}});
  EXPECT_THROW(admissible(s, {}, o, 1), DimensionMismatch);
  EXPECT_THROW(admissible(s, {}, o, 3), DimensionMismatch);
}

TEST(Periodic, HorizontalLoopWraps) {
  DyadicGridSpec spec{1.0, Frame::axis_aligned(2), {}};
  const auto s = build_periodic(spec, {make_point({4, 4})});
  Skeleton loop;
  for (int x = 0; x < 4; ++x) loop.faces.insert(fixture::edge(s, x, 0, (x + 1) % 4, 0));
  EXPECT_TRUE(admissible(s, loop, ConstraintOracle::periodic_cycle(0), 1));
  EXPECT_FALSE(admissible(s, loop, ConstraintOracle::periodic_cycle(1), 1));
  loop.faces.erase(fixture::edge(s, 3, 0, 0, 0));
  EXPECT_FALSE(admissible(s, loop, ConstraintOracle::periodic_cycle(0), 1));
}

TEST(Periodic, NeedsTorus) {
  const Complex s = fixture::grid2d(2, 2);
  EXPECT_THROW(admissible(s, {}, ConstraintOracle::periodic_cycle(0), 1), DimensionMismatch);
}

TEST(Spanning, SquareFrame) {
  const Complex s = fixture::grid3d(1, 1, 1);
  const std::vector<Point> c{make_point({0, 0, 0}), make_point({1, 0, 0}), make_point({1, 1, 0}),
                             make_point({0, 1, 0})};
  std::set<int> frame;
  for (int i = 0; i < 4; ++i) frame.insert(fixture::face_with(s, {c[i], c[(i + 1) % 4]}));
  const auto o = ConstraintOracle::spanning(frame);
  const int bottom = fixture::face_with(s, c);
  EXPECT_TRUE(admissible(s, {{bottom}, {}}, o, 2));
  EXPECT_FALSE(admissible(s, {}, o, 2));
  // Replacing the bottom by the other five sides keeps the boundary.
  std::set<int> others = all_of_dim(s, 2);
  others.erase(bottom);
  EXPECT_TRUE(admissible(s, {others, {}}, o, 2));
  EXPECT_FALSE(o.monotone());
}

TEST(Oracle, DimensionOutOfRange) {
  const Complex s = fixture::grid2d(2, 2);
  EXPECT_THROW(admissible(s, {}, ConstraintOracle::connectivity({}), 2), DimensionMismatch);
  EXPECT_THROW(admissible(s, {}, ConstraintOracle::connectivity({}), -1), DimensionMismatch);
}

TEST(Oracle, CustomPredicate) {
  const Complex s = fixture::grid2d(1, 1);
  const auto o = ConstraintOracle::custom([](const Complex&, const Skeleton& k) { return k.faces.size() >= 2; }, true);
  EXPECT_TRUE(o.monotone());
  EXPECT_FALSE(admissible(s, {{0}, {}}, o, 1));
  EXPECT_TRUE(admissible(s, {{0, 1}, {}}, o, 1));
}

TEST(Oracle, ModTwoBoundaryOfPath) {
  const Complex s = fixture::grid2d(3, 1);
  std::set<int> path{fixture::edge(s, 0, 0, 1, 0), fixture::edge(s, 1, 0, 2, 0)};
  EXPECT_EQ(mod2_boundary(s, path, 1),
            (std::set<int>{fixture::vertex_at(s, make_point({0, 0})), fixture::vertex_at(s, make_point({2, 0}))}));
}
