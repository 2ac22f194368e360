#include "plateau/delaunay2d.hpp"

#include "plateau/types.hpp"

#include <cmath>
#include <map>
#include <set>
#include <utility>

namespace plateau {

double orient2d(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

double incircle(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c, const Eigen::Vector2d& d) {
  const Eigen::Vector2d ad = a - d, bd = b - d, cd = c - d;
  const double a2 = ad.squaredNorm(), b2 = bd.squaredNorm(), c2 = cd.squaredNorm();
  return ad.x() * (bd.y() * c2 - b2 * cd.y()) - ad.y() * (bd.x() * c2 - b2 * cd.x()) +
         a2 * (bd.x() * cd.y() - bd.y() * cd.x());
}

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Unwrapped polar angles of a ring, rotated to start at the smallest angle.
struct PolarRing {
  std::vector<int> ids;
  std::vector<double> angle;
};

PolarRing polar(const std::vector<Eigen::Vector2d>& pts, const std::vector<int>& ring, const Eigen::Vector2d& c) {
  const std::size_t m = ring.size();
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Vector2d a = pts[ring[i]] - c, b = pts[ring[(i + 1) % m]] - c;
    const double cr = a.x() * b.y() - a.y() * b.x();
    if (cr <= 1e-12 * a.norm() * b.norm()) throw MergeDegenerate("ring is not star-shaped about the patch center");
    total += std::atan2(cr, a.dot(b));
  }
  if (std::abs(total - kTwoPi) > 1e-6) throw MergeDegenerate("ring does not wind once around the patch center");
  std::size_t start = 0;
  double best = 1e300;
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Vector2d a = pts[ring[i]] - c;
    double t = std::atan2(a.y(), a.x());
    if (t < 0) t += kTwoPi;
    if (t < best) {
      best = t;
      start = i;
    }
  }
  PolarRing r;
  double acc = best;
  for (std::size_t k = 0; k <= m; ++k) {
    const std::size_t i = (start + k) % m;
    if (k > 0) {
      const Eigen::Vector2d a = pts[ring[(start + k - 1) % m]] - c, b = pts[ring[i]] - c;
      acc += std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
    }
    r.ids.push_back(ring[i]);
    r.angle.push_back(acc);
  }
  return r;
}

using Edge = std::pair<int, int>;

Edge key(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

}  // namespace

std::vector<Tri> triangulate_annulus(const std::vector<Eigen::Vector2d>& points, const std::vector<int>& outer,
                                     const std::vector<int>& inner, const Eigen::Vector2d& center) {
  const PolarRing h = polar(points, outer, center);
  const PolarRing p = polar(points, inner, center);
  const std::size_t m = outer.size(), k = inner.size();

  std::vector<Tri> tris;
  std::size_t i = 0, j = 0;
  while (i < m || j < k) {
    const bool advance_outer = j == k || (i < m && h.angle[i + 1] <= p.angle[j + 1]);
    if (advance_outer) {
      tris.push_back({h.ids[i], h.ids[i + 1], p.ids[j]});
      ++i;
    } else {
      tris.push_back({h.ids[i], p.ids[j + 1], p.ids[j]});
      ++j;
    }
  }
  for (const auto& t : tris)
    if (orient2d(points[t[0]], points[t[1]], points[t[2]]) <= 0.0)
      throw MergeDegenerate("ring stitching produced an inverted triangle");

  std::set<Edge> constrained;
  for (std::size_t a = 0; a < m; ++a) constrained.insert(key(outer[a], outer[(a + 1) % m]));
  for (std::size_t a = 0; a < k; ++a) constrained.insert(key(inner[a], inner[(a + 1) % k]));

  // Lawson flips toward the constrained Delaunay triangulation.
  for (int sweep = 0; sweep < 1000; ++sweep) {
    std::map<Edge, std::vector<std::pair<int, int>>> adj;  // edge -> (triangle, opposite slot)
    for (std::size_t t = 0; t < tris.size(); ++t)
      for (int s = 0; s < 3; ++s)
        adj[key(tris[t][(s + 1) % 3], tris[t][(s + 2) % 3])].emplace_back(static_cast<int>(t), s);
    bool flipped = false;
    for (const auto& [e, inc] : adj) {
      if (inc.size() != 2 || constrained.count(e)) continue;
      const auto [t1, s1] = inc[0];
      const auto [t2, s2] = inc[1];
      const int a = tris[t1][s1];
      const int b = tris[t1][(s1 + 1) % 3];
      const int c = tris[t1][(s1 + 2) % 3];
      const int d = tris[t2][s2];
      if (incircle(points[a], points[b], points[c], points[d]) <= 1e-12) continue;
      // Flip bc -> ad when the quad a,b,d,c is strictly convex.
      if (orient2d(points[a], points[b], points[d]) <= 1e-14 || orient2d(points[a], points[d], points[c]) <= 1e-14)
        continue;
      tris[t1] = {a, b, d};
      tris[t2] = {a, d, c};
      flipped = true;
      break;
    }
    if (!flipped) break;
  }
  return tris;
}

}  // namespace plateau
