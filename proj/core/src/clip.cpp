#include "plateau/clip.hpp"

#include <cmath>

namespace plateau {

std::vector<Point> dedupe_cycle(const std::vector<Point>& poly, double eps) {
  std::vector<Point> out;
  for (const auto& p : poly)
    if (out.empty() || (out.back() - p).norm() > eps) out.push_back(p);
  while (out.size() > 1 && (out.front() - out.back()).norm() <= eps) out.pop_back();
  return out;
}

std::vector<Point> clip_convex(const std::vector<Point>& piece, const Point& normal, double offset, double eps) {
  if (piece.empty()) return {};
  auto side = [&](const Point& p) { return normal.dot(p) - offset; };
  if (piece.size() == 1) return side(piece[0]) <= eps ? piece : std::vector<Point>{};
  if (piece.size() == 2) {
    const double sa = side(piece[0]), sb = side(piece[1]);
    if (sa <= eps && sb <= eps) return piece;
    if (sa > eps && sb > eps) return {};
    const Point x = piece[0] + (sa / (sa - sb)) * (piece[1] - piece[0]);
    return sa <= eps ? std::vector<Point>{piece[0], x} : std::vector<Point>{x, piece[1]};
  }
  std::vector<Point> out;
  const std::size_t m = piece.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point& a = piece[i];
    const Point& b = piece[(i + 1) % m];
    const double sa = side(a), sb = side(b);
    if (sa <= eps) out.push_back(a);
    if ((sa <= eps) != (sb <= eps) && std::abs(sa - sb) > 0.0) {
      const double t = sa / (sa - sb);
      if (t > 0.0 && t < 1.0) out.push_back(a + t * (b - a));
    }
  }
  return dedupe_cycle(out, eps);
}

namespace {

double cycle_area(const std::vector<Point>& poly) {
  if (poly.size() < 3) return 0.0;
  const Point& o = poly[0];
  if (o.size() == 2) {
    double a = 0.0;
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
      const Point u = poly[i] - o, v = poly[i + 1] - o;
      a += u[0] * v[1] - u[1] * v[0];
    }
    return 0.5 * std::abs(a);
  }
  Eigen::Vector3d acc = Eigen::Vector3d::Zero();
  for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
    const Eigen::Vector3d u = (poly[i] - o).head<3>(), v = (poly[i + 1] - o).head<3>();
    acc += u.cross(v);
  }
  return 0.5 * acc.norm();
}

double spread(const std::vector<Point>& piece) {
  double d = 0.0;
  for (std::size_t i = 1; i < piece.size(); ++i) d = std::max(d, (piece[i] - piece[0]).norm());
  return d;
}

}  // namespace

int piece_dim(const std::vector<Point>& piece, double eps) {
  if (piece.size() >= 3 && cycle_area(piece) > eps * std::max(1.0, spread(piece))) return 2;
  if (piece.size() >= 2 && spread(piece) > eps) return 1;
  return 0;
}

double piece_measure(const std::vector<Point>& piece, int dim, double eps) {
  if (piece.empty() || piece_dim(piece, eps) < dim) return 0.0;
  switch (dim) {
    case 2:
      return cycle_area(piece);
    case 1: {
      // Segment length: the piece may be a degenerate polygon along a line.
      double best = 0.0;
      for (std::size_t i = 0; i < piece.size(); ++i)
        for (std::size_t j = i + 1; j < piece.size(); ++j) best = std::max(best, (piece[i] - piece[j]).norm());
      return best;
    }
    default:
      return 1.0;
  }
}

bool on_segment_interior(const Point& x, const Point& a, const Point& b, double eps) {
  const Point ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 <= 0.0) return false;
  const double t = (x - a).dot(ab) / len2;
  const double len = std::sqrt(len2);
  if (t * len <= eps || (1.0 - t) * len <= eps) return false;
  return (a + t * ab - x).norm() <= eps;
}

}  // namespace plateau
