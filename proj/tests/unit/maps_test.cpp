#include "oracles.hpp"
#include "plateau/maps.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace plateau;

namespace {

ConeRegion horizontal_cone() {
  Matrix basis(2, 1);
  basis << 1, 0;
  return ConeRegion{make_point({0, 0}), 1.0, 0.3, make_point({0, 0}), basis};
}

Polyhedron unit_square() {
  return Polyhedron::from_points({make_point({0, 0}), make_point({1, 0}), make_point({1, 1}), make_point({0, 1})});
}

}  // namespace

TEST(Magnetic, FixesPlaneInsideCone) {
  const auto k = horizontal_cone();
  const Point p = make_point({0.5, 0.0});
  EXPECT_LT((magnetic_project(k, 0.2, p) - p).norm(), 1e-12);
}

TEST(Magnetic, IdentityFarFromCone) {
  const auto k = horizontal_cone();
  const Point p = make_point({0.0, 2.0});
  EXPECT_GT(k.distance(p), 0.2);
  EXPECT_LT((magnetic_project(k, 0.2, p) - p).norm(), 1e-12);
}

TEST(Magnetic, ProjectsConePointsOntoPlane) {
  const auto k = horizontal_cone();
  const Point p = make_point({0.8, 0.1});
  ASSERT_TRUE(k.contains(p));
  EXPECT_NEAR(magnetic_project(k, 0.2, p)[1], 0.0, 1e-12);
}

TEST(Magnetic, SampledLipschitzWithinBound) {
  const auto k = horizontal_cone();
  const double rho = 0.25;
  const double bound = magnetic_lipschitz_bound(k, rho);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const Point a = make_point({u(rng), u(rng)});
    const Point b = a + 0.05 * make_point({u(rng), u(rng)});
    const double den = (a - b).norm();
    if (den < 1e-9) continue;
    worst = std::max(worst, (magnetic_project(k, rho, a) - magnetic_project(k, rho, b)).norm() / den);
  }
  EXPECT_LE(worst, bound + 1e-6);
}

TEST(Magnetic, ConeDistanceMatchesSampling) {
  // Distance to the cone region against a dense sample of the region.
  const auto k = horizontal_cone();
  std::vector<Point> inside;
  for (int i = -200; i <= 200; ++i)
    for (int j = -200; j <= 200; ++j) {
      const Point y = make_point({i / 200.0, j / 200.0});
      if (k.contains(y)) inside.push_back(y);
    }
  for (const Point& q : {make_point({0.0, 0.8}), make_point({1.4, 0.3}), make_point({-0.2, -0.9})}) {
    double best = 1e9;
    for (const auto& y : inside) best = std::min(best, (y - q).norm());
    EXPECT_NEAR(k.distance(q), best, 6e-3);
  }
}

TEST(RingExtension, BoundaryConditions) {
  const PointMap f = [](const Point& x) { return Point(2.0 * x); };
  const PointMap retract = [](const Point& x) { return x.norm() <= 1 ? x : Point(x / x.norm()); };
  const auto dist = [](const Point& x) { return std::max(0.0, x.norm() - 1.0); };
  const Point in = make_point({0.5, 0.0});
  EXPECT_LT((ring_extension(f, retract, dist, 0.5, in) - f(in)).norm(), 1e-12);
  const Point out = make_point({1.5, 0.0});
  EXPECT_LT((ring_extension(f, retract, dist, 0.5, out) - out).norm(), 1e-12);
  // Halfway through the ring the value is the average of f on the retraction and x.
  const Point mid = make_point({1.25, 0.0});
  EXPECT_LT((ring_extension(f, retract, dist, 0.5, mid) - make_point({1.625, 0.0})).norm(), 1e-12);
}

TEST(HoleExtension, BoundaryConditions) {
  const PointMap f = [](const Point& x) { return Point(x + make_point({0.1, 0.0})); };
  const Point x0 = make_point({0, 0});
  const Point inner = make_point({0.2, 0.1});
  EXPECT_LT((hole_extension(f, x0, 1.0, 0.5, inner) - inner).norm(), 1e-12);
  const Point on = make_point({0.6, 0.8});
  EXPECT_LT((hole_extension(f, x0, 1.0, 0.5, on) - f(on)).norm(), 1e-12);
  // |y| = 0.75 gives weight 1/2 between y and f at the radial image (1, 0).
  const Point mid = make_point({0.75, 0.0});
  EXPECT_LT((hole_extension(f, x0, 1.0, 0.5, mid) - make_point({0.925, 0.0})).norm(), 1e-12);
}

TEST(Radial, RayGeometry) {
  const auto sq = unit_square();
  const Point c = make_point({0.5, 0.5});
  EXPECT_LT((radial_project(sq, c, make_point({0.75, 0.5})) - make_point({1.0, 0.5})).norm(), 1e-12);
  const Point b = make_point({0.3, 0.0});
  EXPECT_LT((radial_project(sq, c, b) - b).norm(), 1e-12);
  EXPECT_THROW(radial_project(sq, c, c), CenterHit);
}

TEST(ApplyMap, IdentityAndAffine) {
  SimplicialSet e(1, 2);
  e.add({make_point({0, 0}), make_point({1, 0})});
  e.add({make_point({1, 0}), make_point({1, 2})});
  const auto same = apply_map(MapStage::identity(), e);
  EXPECT_NEAR(same.image.measure(), 3.0, 1e-12);
  EXPECT_EQ(same.max_depth, 0);
  Matrix a(2, 2);
  a << 2, 0, 0, 3;
  const auto scaled = apply_map(MapStage::affine(a, make_point({1, 1})), e);
  EXPECT_NEAR(scaled.image.measure(), 2.0 + 6.0, 1e-12);
  EXPECT_EQ(scaled.max_depth, 0);
}

TEST(ApplyMap, RadialSegmentMatchesPolylineOracle) {
  const auto sq = unit_square();
  const Point c = make_point({0.45, 0.55});
  const Point a = make_point({0.1, 0.2}), b = make_point({0.9, 0.35});
  SimplicialSet e(1, 2);
  e.add({a, b});
  const auto img = apply_map(MapStage::radial(0, sq, c), e);
  std::vector<std::vector<double>> poly;
  for (int i = 0; i <= 1000; ++i) {
    const Point x = a + (b - a) * (i / 1000.0);
    const Point y = radial_project(sq, c, x);
    poly.push_back({y[0], y[1]});
  }
  EXPECT_NEAR(img.image.measure(), oracle::polyline_length(poly), 1e-3);
  for (const auto& s : img.image.simplices())
    for (const auto& p : s.pts) EXPECT_FALSE(sq.in_relative_interior(p, 1e-9));
}

TEST(Blend, EqualMapsPass) {
  const PointMap phi = [](const Point& x) {
    const double r = (x - make_point({0.5, 0.5})).norm();
    return r < 0.2 ? Point(x + make_point({0.01, 0})) : x;
  };
  const auto rep = blend_check(phi, phi, 0.1, Box{make_point({0, 0}), make_point({1, 1})});
  EXPECT_TRUE(rep.pass);
}

TEST(Blend, BoundaryMotionFails) {
  const PointMap id = [](const Point& x) { return x; };
  const PointMap f = [](const Point& x) { return x[0] < 0.05 ? Point(x + make_point({0, 0.01})) : x; };
  EXPECT_FALSE(blend_check(id, f, 0.1, Box{make_point({0, 0}), make_point({1, 1})}).pass);
}

TEST(Blend, SupEqualToRhoFails) {
  const PointMap id = [](const Point& x) { return x; };
  const PointMap f = [](const Point& x) {
    return (x - make_point({0.5, 0.5})).norm() < 0.1 ? Point(x + make_point({0.1, 0})) : x;
  };
  const auto rep = blend_check(id, f, 0.1, Box{make_point({0, 0}), make_point({1, 1})});
  EXPECT_NEAR(rep.sup_distance, 0.1, 1e-12);
  EXPECT_FALSE(rep.pass);
}
