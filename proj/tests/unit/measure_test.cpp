#include "fixtures.hpp"
#include "oracles.hpp"
#include "plateau/measure.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace plateau;

namespace {

SimplicialSet staircase(int steps) {
  SimplicialSet e(1, 2);
  const double h = 1.0 / steps;
  for (int i = 0; i < steps; ++i) {
    e.add({make_point({i * h, i * h}), make_point({(i + 1) * h, i * h})});
    e.add({make_point({(i + 1) * h, i * h}), make_point({(i + 1) * h, (i + 1) * h})});
  }
  return e;
}

SimplicialSet diagonal() {
  SimplicialSet e(1, 2);
  e.add({make_point({0, 0}), make_point({1, 1})});
  return e;
}

Box window(double lo, double hi) { return Box{make_point({lo, lo}), make_point({hi, hi})}; }

}  // namespace

TEST(Hausdorff, ThreeUnitEdges) {
  SimplicialSet e(1, 2);
  e.add({make_point({0, 0}), make_point({1, 0})});
  e.add({make_point({1, 0}), make_point({1, 1})});
  e.add({make_point({1, 1}), make_point({2, 1})});
  EXPECT_DOUBLE_EQ(hausdorff_measure(e), 3.0);
}

TEST(Hausdorff, EmptyAndTriangle) {
  EXPECT_EQ(hausdorff_measure(SimplicialSet(1, 2)), 0.0);
  SimplicialSet t(2, 3);
  t.add({make_point({0, 0, 0}), make_point({1, 0, 0}), make_point({0, 1, 0})});
  EXPECT_DOUBLE_EQ(hausdorff_measure(t), 0.5);
}

TEST(Hausdorff, SkeletonCountsTopFacesOnly) {
  const Complex s = fixture::grid2d(2, 2);
  Skeleton k;
  k.faces = {fixture::edge(s, 0, 0, 1, 0), fixture::vertex_at(s, make_point({2, 2}))};
  EXPECT_DOUBLE_EQ(hausdorff_measure(s, k, 1), 1.0);
}

TEST(Hausdorff, RigidMotionInvariant) {
  SimplicialSet a(2, 3), b(2, 3);
  const std::vector<Point> tri{make_point({0, 0, 0}), make_point({1, 0.2, 0}), make_point({0.1, 1, 0.4})};
  const Eigen::Matrix3d rot = Eigen::AngleAxisd(0.7, Eigen::Vector3d(1, 2, 3).normalized()).toRotationMatrix();
  std::vector<Point> moved;
  for (const auto& p : tri) moved.push_back(rot * p + Eigen::Vector3d(3, -1, 2));
  a.add(tri);
  b.add(moved);
  EXPECT_NEAR(hausdorff_measure(a), hausdorff_measure(b), 1e-9);
}

TEST(Weighted, UnitDensityMatchesHausdorff) {
  SimplicialSet t(2, 3);
  t.add({make_point({0, 0, 0}), make_point({1, 0, 0}), make_point({0, 1, 0})});
  t.add({make_point({0, 0, 1}), make_point({2, 0, 1}), make_point({0, 3, 2})});
  EXPECT_NEAR(weighted_measure(t, DensityField::constant()), hausdorff_measure(t), 1e-12);
}

TEST(Weighted, ConstantDensityScales) {
  SimplicialSet e(1, 2);
  e.add({make_point({0, 0}), make_point({1, 0})});
  EXPECT_NEAR(weighted_measure(e, DensityField::constant(2.5)), 2.5, 1e-12);
}

TEST(Weighted, LinearDensityClosedForm) {
  SimplicialSet e(1, 2);
  e.add({make_point({0, 0}), make_point({1, 0})});
  const auto h = DensityField::function([](const Point& x) { return 1.0 + x[0]; }, 2.0);
  EXPECT_NEAR(weighted_measure(e, h), 1.5, 1e-9);
}

TEST(Weighted, RadialMatchesSimpson) {
  const auto h = DensityField::radial(make_point({0.3, 0.1}), {{0.0, 3.0}, {0.5, 1.5}, {1.0, 1.0}});
  SimplicialSet e(1, 2);
  e.add({make_point({-0.4, 0.7}), make_point({1.2, -0.3})});
  const double want = oracle::segment_integral({-0.4, 0.7}, {1.2, -0.3}, [](const std::vector<double>& x) {
    const double r = std::hypot(x[0] - 0.3, x[1] - 0.1);
    if (r <= 0.5) return 3.0 - 3.0 * r;
    if (r <= 1.0) return 1.5 - (r - 0.5);
    return 1.0;
  });
  EXPECT_NEAR(weighted_measure(e, h), want, 1e-5 * want);
}

TEST(Weighted, ReportBounds) {
  const auto h = DensityField::radial(make_point({0, 0}), {{0.0, 3.0}, {1.0, 1.0}});
  SimplicialSet e(1, 2);
  e.add({make_point({0, 0}), make_point({2, 0})});
  const auto r = measure_report(e, h);
  EXPECT_LE(r.hausdorff, r.weighted);
  EXPECT_LE(r.weighted, h.upper() * r.hausdorff);
  EXPECT_NEAR(r.weighted, 3.0, 1e-6);
}

TEST(Weighted, CellwiseUsesSmallerValueOnBoundaries) {
  const auto h = DensityField::cellwise(make_point({0, 0}), 1.0, {{{0, 0}, 3.0}, {{1, 0}, 2.0}}, 1.0);
  EXPECT_EQ(h(make_point({0.5, 0.5})), 3.0);
  EXPECT_EQ(h(make_point({1.0, 0.5})), 2.0);
  EXPECT_EQ(h(make_point({1.0, 1.0})), 1.0);
}

TEST(Distance, Conventions) {
  const std::vector<Point> a{make_point({0.0})}, b{make_point({1.0})};
  EXPECT_EQ(hausdorff_distance(a, a), 0.0);
  EXPECT_DOUBLE_EQ(hausdorff_distance(a, b), 1.0);
  EXPECT_TRUE(std::isinf(hausdorff_distance({}, b)));
  EXPECT_EQ(hausdorff_distance({}, {}), 0.0);
}

TEST(Distance, MatchesBruteForce) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Point> a, b;
  std::vector<std::vector<double>> ra, rb;
  for (int i = 0; i < 300; ++i) {
    a.push_back(make_point({u(rng), u(rng)}));
    ra.push_back({a.back()[0], a.back()[1]});
  }
  for (int i = 0; i < 200; ++i) {
    b.push_back(make_point({u(rng) + 0.3, u(rng)}));
    rb.push_back({b.back()[0], b.back()[1]});
  }
  EXPECT_NEAR(hausdorff_distance(a, b), oracle::brute_hausdorff(ra, rb), 1e-12);
  const Box k = window(0.2, 0.8);
  EXPECT_LE(local_hausdorff(k, a, b), hausdorff_distance(a, b));
}

TEST(Lsc, ConstantSequenceHasZeroMargin) {
  const auto e = diagonal();
  const auto r = lsc_probe({e, e, e}, e, {window(-0.1, 1.1)}, DensityField::constant());
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.min_margin, 0.0, 1e-12);
}

TEST(Lsc, StaircaseToDiagonal) {
  std::vector<SimplicialSet> seq;
  for (int k = 1; k <= 64; k *= 2) seq.push_back(staircase(k));
  const auto r = lsc_probe(seq, diagonal(), {window(-0.1, 1.1), window(0.25, 0.75)}, DensityField::constant());
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.windows[0].liminf, 2.0, 1e-9);
  EXPECT_NEAR(r.windows[0].limit_value, std::sqrt(2.0), 1e-9);
  EXPECT_GE(r.windows[0].margin, 0.58);
  EXPECT_NEAR(r.windows[1].margin, 1.0 - std::sqrt(0.5), 1e-9);
}

TEST(Lsc, VanishingDust) {
  std::vector<SimplicialSet> seq;
  for (int k = 1; k <= 5; ++k) {
    SimplicialSet e(1, 2);
    e.add({make_point({0.5, 0.5}), make_point({0.5 + std::pow(0.5, k), 0.5})});
    seq.push_back(e);
  }
  const auto r = lsc_probe(seq, SimplicialSet(1, 2), {window(0, 1)}, DensityField::constant());
  EXPECT_TRUE(r.pass);
  EXPECT_GE(r.min_margin, 0.0);
}

TEST(Clip, BoxClipMeasure) {
  const auto part = clip_to_box(diagonal(), window(0.25, 0.75));
  EXPECT_NEAR(hausdorff_measure(part), 0.5 * std::sqrt(2.0), 1e-12);
}
