#include "plateau/simplicial.hpp"

#include <cmath>

namespace plateau {

double simplex_volume(const std::vector<Point>& pts) {
  const int d = static_cast<int>(pts.size()) - 1;
  if (d <= 0) return d == 0 ? 1.0 : 0.0;
  Matrix e(pts[0].size(), d);
  for (int i = 0; i < d; ++i) e.col(i) = pts[i + 1] - pts[0];
  const double g = (e.transpose() * e).determinant();
  double fact = 1.0;
  for (int i = 2; i <= d; ++i) fact *= i;
  return g > 0.0 ? std::sqrt(g) / fact : 0.0;
}

bool SimplicialSet::add(Simplex s, double eps_geo) {
  if (static_cast<int>(s.pts.size()) != dim_ + 1) throw DimensionMismatch("simplex point count differs from d + 1");
  for (const auto& p : s.pts)
    if (p.size() != ambient_) throw DimensionMismatch("simplex point has the wrong ambient dimension");
  if (dim_ > 0 && simplex_volume(s.pts) <= eps_geo) return false;
  simplices_.push_back(std::move(s));
  return true;
}

void SimplicialSet::append(const SimplicialSet& other) {
  if (other.dim_ != dim_ || other.ambient_ != ambient_) throw DimensionMismatch("appending a set of another dimension");
  simplices_.insert(simplices_.end(), other.simplices_.begin(), other.simplices_.end());
}

double SimplicialSet::measure() const {
  double m = 0.0;
  for (const auto& s : simplices_) m += simplex_volume(s.pts);
  return m;
}

Box SimplicialSet::bounds() const {
  std::vector<Point> all;
  for (const auto& s : simplices_) all.insert(all.end(), s.pts.begin(), s.pts.end());
  if (all.empty()) return Box{Point::Zero(ambient_), Point::Zero(ambient_)};
  return Box::of_points(all);
}

std::pair<Simplex, Simplex> bisect_longest_edge(const Simplex& s) {
  const std::size_t m = s.pts.size();
  std::size_t bi = 0, bj = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const double l = (s.pts[i] - s.pts[j]).squaredNorm();
      if (l > best) {
        best = l;
        bi = i;
        bj = j;
      }
    }
  const Point mid = 0.5 * (s.pts[bi] + s.pts[bj]);
  Simplex a = s, b = s;
  a.pts[bj] = mid;
  b.pts[bi] = mid;
  ++a.generation;
  ++b.generation;
  return {a, b};
}

std::vector<std::vector<Point>> triangulate_piece(const std::vector<Point>& piece, int dim) {
  std::vector<std::vector<Point>> out;
  if (piece.empty()) return out;
  if (dim == 0) {
    out.push_back({piece.front()});
  } else if (dim == 1) {
    std::size_t bi = 0, bj = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < piece.size(); ++i)
      for (std::size_t j = i + 1; j < piece.size(); ++j)
        if ((piece[i] - piece[j]).squaredNorm() > best) {
          best = (piece[i] - piece[j]).squaredNorm();
          bi = i;
          bj = j;
        }
    if (best > 0.0) out.push_back({piece[bi], piece[bj]});
  } else {
    for (std::size_t i = 1; i + 1 < piece.size(); ++i) out.push_back({piece[0], piece[i], piece[i + 1]});
  }
  return out;
}

std::vector<Point> sample_simplex(const std::vector<Point>& pts, double spacing) {
  std::vector<Point> out;
  const int d = static_cast<int>(pts.size()) - 1;
  if (d == 0) return {pts[0]};
  double longest = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) longest = std::max(longest, (pts[i] - pts[j]).norm());
  const int k = std::max(1, static_cast<int>(std::ceil(longest / spacing)));
  if (d == 1) {
    for (int i = 0; i <= k; ++i) out.push_back(pts[0] + (static_cast<double>(i) / k) * (pts[1] - pts[0]));
  } else if (d == 2) {
    for (int i = 0; i <= k; ++i)
      for (int j = 0; i + j <= k; ++j)
        out.push_back(pts[0] + (static_cast<double>(i) / k) * (pts[1] - pts[0]) +
                      (static_cast<double>(j) / k) * (pts[2] - pts[0]));
  } else {
    throw DimensionMismatch("sampling supports d <= 2");
  }
  return out;
}

std::vector<Point> sample_points(const SimplicialSet& e, double spacing) {
  std::vector<Point> out;
  for (const auto& s : e.simplices()) {
    auto pts = sample_simplex(s.pts, spacing);
    out.insert(out.end(), pts.begin(), pts.end());
  }
  return out;
}

}  // namespace plateau
