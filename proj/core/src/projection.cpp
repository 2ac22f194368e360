#include "plateau/projection.hpp"

#include "plateau/clip.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <random>

namespace plateau {

namespace {

double piece_distance(const std::vector<Point>& piece, const Point& x) {
  if (piece.size() == 1) return (piece[0] - x).norm();
  if (piece_dim(piece) <= 1) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < piece.size(); ++i)
      for (std::size_t j = i + 1; j < piece.size(); ++j) {
        const Point ab = piece[j] - piece[i];
        const double t = std::clamp((x - piece[i]).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
        best = std::min(best, (piece[i] + t * ab - x).norm());
      }
    return best;
  }
  return distance(Polyhedron::from_points(piece), x);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double projected_measure(const Polyhedron& face, const Point& center, const std::vector<std::vector<Point>>& pieces,
                         int d) {
  double m = 0.0;
  for (const auto& p : pieces)
    for (const auto& part : radial_image(face, center, p)) m += piece_measure(part.image, d);
  return m;
}

CenterChoice optimal_center(const Polyhedron& face, const std::vector<std::vector<Point>>& pieces, int d,
                            const CenterOptions& options) {
  if (d >= face.dim()) throw DimensionMismatch("set dimension must be below the face dimension");
  const ShapeStats st = shape_stats(face);
  const int k = face.dim();
  const Matrix& basis = face.affine_hull().basis;
  const double radius = 0.5 * st.inner_radius;
  const double clearance = options.clearance_fraction * st.inner_radius;

  CenterChoice out;
  out.rotondity = st.rotondity;
  for (const auto& p : pieces) out.original += piece_measure(p, d);

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double best = std::numeric_limits<double>::infinity(), sum = 0.0;
  for (int i = 0; i < options.candidates; ++i) {
    Eigen::VectorXd z(k);
    for (int j = 0; j < k; ++j) z[j] = gauss(rng);
    z *= radius * std::pow(unit(rng), 1.0 / k) / std::max(z.norm(), 1e-300);
    const Point c = st.inscribed_center + basis * z;
    bool clear = true;
    for (const auto& p : pieces)
      if (piece_distance(p, c) < clearance) {
        clear = false;
        break;
      }
    if (!clear) {
      ++out.rejected;
      continue;
    }
    double m = 0.0;
    try {
      m = projected_measure(face, c, pieces, d);
    } catch (const CenterHit&) {
      ++out.rejected;
      continue;
    }
    ++out.accepted;
    sum += m;
    if (m < best) {
      best = m;
      out.center = c;
    }
  }
  if (out.accepted == 0) throw NoCenterFound("every candidate center lies too close to the set");
  out.measure = best;
  out.candidate_mean = sum / out.accepted;
  out.ratio = out.original > 0.0 ? out.measure / out.original : 1.0;
  // The constant bounds the projection averaged over B', so it is read off
  // the candidate mean; the chosen center then satisfies ratio <= K R^(-2d).
  const double mean_ratio = out.original > 0.0 ? out.candidate_mean / out.original : 1.0;
  out.k_emp = mean_ratio * std::pow(out.rotondity, 2.0 * d);
  return out;
}

CenterChoice optimal_center(const Polyhedron& face, const SimplicialSet& e, const CenterOptions& options) {
  std::vector<std::vector<Point>> pieces;
  for (const auto& s : e.simplices()) pieces.push_back(s.pts);
  return optimal_center(face, pieces, e.dim(), options);
}

std::vector<HostedPiece> host_pieces(const Complex& s, const SimplicialSet& e, double* outside_measure) {
  std::vector<HostedPiece> out;
  const int d = e.dim();
  double kept = 0.0;
  std::vector<Box> cell_boxes;
  for (const auto& c : s.cells()) cell_boxes.push_back(c.bounds());
  for (const auto& simplex : e.simplices()) {
    const Box sb = Box::of_points(simplex.pts);
    for (std::size_t ci = 0; ci < s.cells().size(); ++ci) {
      if (!cell_boxes[ci].overlaps(sb, 1e-9)) continue;
      std::vector<Point> piece = simplex.pts;
      for (const auto& hs : s.cells()[ci].half_spaces()) {
        piece = clip_convex(piece, hs.normal, hs.offset, 1e-12);
        if (piece.empty()) break;
      }
      if (piece.empty() || piece_dim(piece) < d) continue;
      const int host = s.locate_host(s.cell_face(static_cast<int>(ci)), piece);
      const auto& owners = s.face(host).cells;
      if (!owners.empty() && *std::min_element(owners.begin(), owners.end()) != static_cast<int>(ci)) continue;
      kept += piece_measure(piece, d);
      out.push_back(HostedPiece{std::move(piece), host});
    }
  }
  if (outside_measure) *outside_measure = std::max(0.0, e.measure() - kept);
  return out;
}

std::vector<HostedPiece> host_pieces(const Complex& s, const Skeleton& k) {
  std::vector<HostedPiece> out;
  for (int f : k.faces) out.push_back(HostedPiece{s.face(f).geometry.vertices(), f});
  return out;
}

SimplicialSet pieces_to_set(const std::vector<HostedPiece>& pieces, int d, int ambient_dim) {
  SimplicialSet out(d, ambient_dim);
  for (const auto& p : pieces) {
    if (piece_dim(p.pts) < d) continue;
    for (auto& t : triangulate_piece(p.pts, d)) out.add(std::move(t));
  }
  return out;
}

double pieces_measure(const std::vector<HostedPiece>& pieces, int d) {
  double m = 0.0;
  for (const auto& p : pieces) m += piece_measure(p.pts, d);
  return m;
}

CascadeResult ff_cascade(const Complex& s, const SimplicialSet& e, int d, const CenterOptions& options) {
  if (d != e.dim()) throw DimensionMismatch("set dimension differs from the requested skeleton dimension");
  if (d >= s.dim()) throw DimensionMismatch("skeleton dimension must be below the complex dimension");
  CascadeResult out;
  out.pieces = host_pieces(s, e, &out.outside_measure);
  for (int k = s.dim(); k > d; --k) {
    CascadeLevel row;
    row.level = k;
    row.measure_before = pieces_measure(out.pieces, d);
    std::map<int, std::vector<std::size_t>> by_face;
    std::vector<HostedPiece> next;
    for (std::size_t i = 0; i < out.pieces.size(); ++i) {
      if (s.face(out.pieces[i].host).dim == k) by_face[out.pieces[i].host].push_back(i);
      else next.push_back(out.pieces[i]);
    }
    for (const auto& [f, idx] : by_face) {
      const Polyhedron& geom = s.face(f).geometry;
      std::vector<std::vector<Point>> pts;
      for (std::size_t i : idx) pts.push_back(out.pieces[i].pts);
      CenterOptions opt = options;
      opt.seed = mix(options.seed, mix(static_cast<std::uint64_t>(f), static_cast<std::uint64_t>(k)));
      CenterChoice choice = optimal_center(geom, pts, d, opt);
      out.map.push(MapStage::radial(f, geom, choice.center));
      for (const auto& p : pts)
        for (auto& part : radial_image(geom, choice.center, p)) {
          if (piece_dim(part.image) < d) continue;
          const int host = s.locate_host(f, part.image);
          next.push_back(HostedPiece{std::move(part.image), host});
        }
      out.centers.push_back(std::move(choice));
    }
    out.pieces = std::move(next);
    row.faces_touched = static_cast<int>(by_face.size());
    row.measure_after = pieces_measure(out.pieces, d);
    row.ratio = row.measure_before > 0.0 ? row.measure_after / row.measure_before : 1.0;
    out.ledger.push_back(row);
  }
  out.image = pieces_to_set(out.pieces, d, s.ambient_dim());
  return out;
}

}  // namespace plateau
