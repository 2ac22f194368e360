#include "plateau/clip.hpp"
#include "plateau/projection.hpp"

#include <map>
#include <set>

namespace plateau {

namespace {

// Parts of `region` (convex pieces of one face) outside the convex piece p.
std::vector<std::vector<Point>> subtract(const std::vector<std::vector<Point>>& region, const std::vector<Point>& p,
                                         int dim) {
  const auto hs = Polyhedron::from_points(p).half_spaces();
  std::vector<std::vector<Point>> out;
  for (const auto& u : region) {
    std::vector<Point> rest = u;
    for (const auto& h : hs) {
      if (rest.empty()) break;
      auto outside = clip_convex(rest, -h.normal, -h.offset, 1e-12);
      if (!outside.empty() && piece_measure(outside, dim) > 0.0) out.push_back(std::move(outside));
      rest = clip_convex(rest, h.normal, h.offset, 1e-12);
    }
  }
  return out;
}

Point chebyshev_center(const std::vector<Point>& piece) {
  if (piece.size() == 1) return piece[0];
  return shape_stats(Polyhedron::from_points(piece)).inscribed_center;
}

double min_distance(const std::vector<HostedPiece>& pieces, const std::vector<std::size_t>& idx, const Point& c) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i : idx) {
    const auto& pts = pieces[i].pts;
    if (pts.size() == 1) {
      best = std::min(best, (pts[0] - c).norm());
    } else if (piece_dim(pts) <= 1) {
      const Point ab = pts.back() - pts.front();
      const double t = std::clamp((c - pts.front()).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
      best = std::min(best, (pts.front() + t * ab - c).norm());
    } else {
      best = std::min(best, distance(Polyhedron::from_points(pts), c));
    }
  }
  return best;
}

}  // namespace

ErosionResult erode(const Complex& s, const std::vector<HostedPiece>& input, int d, double cover_eps) {
  ErosionResult out;
  out.measure_before = pieces_measure(input, d);
  std::vector<HostedPiece> pieces;
  for (const auto& p : input) {
    if (s.face(p.host).dim > d) throw DimensionMismatch("set is not contained in the d-skeleton");
    pieces.push_back(p);
  }
  std::set<int> selected;
  for (int l = d; l >= 0; --l) {
    std::map<int, std::vector<std::size_t>> by_face;
    std::vector<HostedPiece> next;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (s.face(pieces[i].host).dim == l) by_face[pieces[i].host].push_back(i);
      else next.push_back(pieces[i]);
    }
    for (const auto& [f, idx] : by_face) {
      const Polyhedron& geom = s.face(f).geometry;
      if (l == 0) {
        selected.insert(f);
        continue;
      }
      std::vector<std::vector<Point>> uncovered{geom.vertices()};
      for (std::size_t i : idx)
        if (piece_dim(pieces[i].pts) == l) uncovered = subtract(uncovered, pieces[i].pts, l);
      double free_measure = 0.0;
      std::size_t largest = 0;
      double largest_measure = -1.0;
      for (std::size_t j = 0; j < uncovered.size(); ++j) {
        const double m = piece_measure(uncovered[j], l);
        free_measure += m;
        if (m > largest_measure) {
          largest_measure = m;
          largest = j;
        }
      }
      if (free_measure < cover_eps * geom.volume()) {
        selected.insert(f);
        continue;
      }
      // Center inside the largest uncovered part and off every piece.
      const auto& hole = uncovered[largest];
      Point c = chebyshev_center(hole);
      if (min_distance(pieces, idx, c) <= 1e-9) {
        bool found = false;
        for (std::size_t v = 0; v < hole.size() && !found; ++v)
          for (double t : {0.5, 0.25, 0.75}) {
            const Point cand = (1.0 - t) * c + t * hole[v];
            if (geom.in_relative_interior(cand) && min_distance(pieces, idx, cand) > 1e-9) {
              c = cand;
              found = true;
              break;
            }
          }
        if (!found) throw CenterHit("no free center in a partially covered face");
      }
      ++out.projections;
      for (std::size_t i : idx)
        for (auto& part : radial_image(geom, c, pieces[i].pts)) {
          if (part.image.empty()) continue;
          next.push_back(HostedPiece{part.image, s.locate_host(f, part.image)});
        }
    }
    pieces = std::move(next);
  }
  out.skeleton.faces = maximal_faces(s, selected);
  double m = 0.0;
  for (int f : out.skeleton.faces)
    if (s.face(f).dim == d) m += s.face(f).measure();
  out.measure_after = m;
  return out;
}

ErosionResult erode(const Complex& s, const SimplicialSet& e, double cover_eps) {
  return erode(s, host_pieces(s, e), e.dim(), cover_eps);
}

ErosionResult erode(const Complex& s, const Skeleton& k, int d, double cover_eps) {
  return erode(s, host_pieces(s, k), d, cover_eps);
}

}  // namespace plateau
