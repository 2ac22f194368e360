#include "plateau/maps.hpp"

#include "plateau/clip.hpp"

#include <cmath>
#include <limits>

namespace plateau {

namespace {

double point_segment(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double l2 = ab.squaredNorm();
  const double t = l2 > 0 ? std::clamp((p - a).dot(ab) / l2, 0.0, 1.0) : 0.0;
  return (a + t * ab - p).norm();
}

}  // namespace

Point ConeRegion::project_to_plane(const Point& y) const {
  return plane_point + plane_basis * (plane_basis.transpose() * (y - plane_point));
}

bool ConeRegion::contains(const Point& y, double eps) const {
  const double s = (y - apex).norm();
  if (s > radius + eps) return false;
  return (y - project_to_plane(y)).norm() <= aperture * s + eps;
}

double ConeRegion::plane_gap() const { return radius * std::min(aperture, 1.0); }

double ConeRegion::distance(const Point& y) const {
  if (contains(y, 0.0)) return 0.0;
  // Reduce to the quarter plane spanned by the in-plane and normal components.
  const Point v = y - apex;
  const Point inplane = plane_basis * (plane_basis.transpose() * v);
  const Eigen::Vector2d p(inplane.norm(), (v - inplane).norm());
  const double theta = aperture >= 1.0 ? std::acos(0.0) : std::asin(aperture);
  const Eigen::Vector2d o(0.0, 0.0);
  const Eigen::Vector2d edge(radius * std::cos(theta), radius * std::sin(theta));
  double best = std::min(point_segment(p, o, edge), point_segment(p, o, Eigen::Vector2d(radius, 0.0)));
  if (std::atan2(p.y(), p.x()) <= theta) best = std::min(best, std::max(0.0, p.norm() - radius));
  return best;
}

Point magnetic_project(const ConeRegion& region, double rho, const Point& pt) {
  if (region.contains(pt, 0.0)) return region.project_to_plane(pt);
  const double d = region.distance(pt);
  if (d >= rho) return pt;
  // Projection onto the disk H ∩ B(apex, r), which equals the plane projection on K.
  Point q = region.project_to_plane(pt);
  const Point off = q - region.apex;
  if (off.norm() > region.radius) q = region.apex + off * (region.radius / off.norm());
  const double t = d / rho;
  return (1.0 - t) * q + t * pt;
}

double magnetic_lipschitz_bound(const ConeRegion& region, double rho) { return 2.0 + region.plane_gap() / rho; }

Point ring_extension(const PointMap& f, const PointMap& retraction, const std::function<double(const Point&)>& dist_to_k,
                     double rho, const Point& x) {
  const double t = std::clamp(dist_to_k(x) / rho, 0.0, 1.0);
  if (t >= 1.0) return x;
  return (1.0 - t) * f(retraction(x)) + t * x;
}

Point hole_extension(const PointMap& f, const Point& x0, double r, double rho, const Point& y) {
  const double d = (y - x0).norm();
  if (d <= rho * r) return y;
  if (d >= r) return f(y);
  const Point proj = x0 + (y - x0) * (r / d);
  const double u = (r - d) / (r * (1.0 - rho));
  return u * y + (1.0 - u) * f(proj);
}

Point radial_project(const Polyhedron& face, const Point& center, const Point& pt, double eps) {
  const Point dir = pt - center;
  if (dir.norm() <= eps) throw CenterHit("point coincides with the projection center");
  double t = std::numeric_limits<double>::infinity();
  for (const auto& hs : face.half_spaces()) {
    const double rate = hs.normal.dot(dir);
    if (rate > 0.0) t = std::min(t, hs.slack(center) / rate);
  }
  if (!std::isfinite(t)) throw CenterHit("ray does not leave the face");
  return center + t * dir;
}

std::vector<RadialPart> radial_image(const Polyhedron& face, const Point& center, const std::vector<Point>& piece,
                                     double eps) {
  const auto& hs = face.half_spaces();
  const std::size_t m = hs.size();
  std::vector<double> s(m);
  for (std::size_t j = 0; j < m; ++j) {
    s[j] = hs[j].slack(center);
    if (s[j] <= eps) throw CenterHit("projection center is not in the relative interior of the face");
  }
  for (const auto& p : piece)
    if ((p - center).norm() <= eps) throw CenterHit("piece touches the projection center");
  const double scale = std::max(1.0, face.diameter());
  std::vector<RadialPart> out;
  for (std::size_t j = 0; j < m; ++j) {
    const Point& a = hs[j].normal;
    std::vector<Point> q = clip_convex(piece, -a, -a.dot(center), 1e-12 * scale);
    bool duplicate = false;
    for (std::size_t g = 0; g < m && !q.empty(); ++g) {
      if (g == j) continue;
      const Point w = hs[g].normal / s[g] - a / s[j];
      q = clip_convex(q, w, w.dot(center), 1e-12);
      if (g < j && !q.empty()) {
        // Parts on the wall between two pyramids belong to the lower index.
        bool on_wall = true;
        for (const auto& p : q) on_wall = on_wall && std::abs(w.dot(p - center)) <= 1e-12 * scale;
        duplicate = duplicate || on_wall;
      }
    }
    if (q.empty() || duplicate) continue;
    RadialPart part;
    part.facet = static_cast<int>(j);
    part.source = q;
    for (const auto& p : q) {
      const double rate = a.dot(p - center);
      if (rate <= 0.0) throw CenterHit("piece touches the projection center");
      part.image.push_back(center + (s[j] / rate) * (p - center));
    }
    part.image = dedupe_cycle(part.image, 1e-12 * scale);
    out.push_back(std::move(part));
  }
  return out;
}

MapStage MapStage::identity() {
  MapStage s;
  s.label = "identity";
  return s;
}

MapStage MapStage::affine(Matrix linear, Point shift) {
  MapStage s;
  s.kind = Kind::Affine;
  s.label = "affine";
  s.linear = std::move(linear);
  s.shift = std::move(shift);
  return s;
}

MapStage MapStage::magnetic(ConeRegion cone, double rho) {
  MapStage s;
  s.kind = Kind::Magnetic;
  s.label = "magnetic";
  s.cone = std::move(cone);
  s.rho = rho;
  return s;
}

MapStage MapStage::radial(int face_id, Polyhedron face, Point center) {
  MapStage s;
  s.kind = Kind::Radial;
  s.label = "radial";
  s.face_id = face_id;
  s.face = std::move(face);
  s.center = std::move(center);
  return s;
}

MapStage MapStage::custom(Kind kind, PointMap fn, std::string label) {
  MapStage s;
  s.kind = kind;
  s.fn = std::move(fn);
  s.label = std::move(label);
  return s;
}

Point MapStage::operator()(const Point& x) const {
  switch (kind) {
    case Kind::Identity:
      return x;
    case Kind::Affine:
      return linear * x + shift;
    case Kind::Magnetic:
      return magnetic_project(cone, rho, x);
    case Kind::Radial:
      if (!face.in_relative_interior(x)) return x;
      return radial_project(face, center, x);
    case Kind::Ring:
    case Kind::Hole:
    case Kind::Custom:
      return fn(x);
  }
  return x;
}

Point PiecewiseMap::operator()(const Point& x) const {
  Point y = x;
  for (const auto& s : stages_) y = s(y);
  return y;
}

namespace {

void add_piece(MapImage& out, const std::vector<Point>& image, double source_measure, int d, const Simplex& like,
               double eps_geo) {
  if (piece_dim(image) < d) {
    out.collapsed_measure += source_measure;
    return;
  }
  for (auto& t : triangulate_piece(image, d)) {
    Simplex s{std::move(t), like.patch, like.generation};
    const double v = simplex_volume(s.pts);
    if (!out.image.add(std::move(s), eps_geo)) out.collapsed_measure += v;
  }
}

void refine(const MapStage& stage, const Simplex& s, double threshold, int depth, MapImage& out, double eps_geo) {
  out.max_depth = std::max(out.max_depth, depth);
  std::vector<Point> img;
  for (const auto& p : s.pts) img.push_back(stage(p));
  const double m0 = simplex_volume(img);
  const auto [a, b] = bisect_longest_edge(s);
  std::vector<Point> ia, ib;
  for (const auto& p : a.pts) ia.push_back(stage(p));
  for (const auto& p : b.pts) ib.push_back(stage(p));
  const double m1 = simplex_volume(ia) + simplex_volume(ib);
  if (std::abs(m1 - m0) <= threshold) {
    for (auto* part : {&ia, &ib}) {
      Simplex t{*part, s.patch, s.generation + 1};
      const double src = 0.5 * simplex_volume(s.pts);
      if (!out.image.add(std::move(t), eps_geo)) out.collapsed_measure += src;
    }
    return;
  }
  if (depth + 1 > 12) throw SubdivisionLimit("map too distorting at the requested tolerance");
  refine(stage, a, threshold, depth + 1, out, eps_geo);
  refine(stage, b, threshold, depth + 1, out, eps_geo);
}

bool inside_face(const Polyhedron& face, const std::vector<Point>& pts) {
  for (const auto& p : pts)
    if (!face.contains(p, 1e-9)) return false;
  return true;
}

}  // namespace

MapImage apply_map(const MapStage& stage, const SimplicialSet& e, double tol, double eps_geo) {
  MapImage out;
  out.image = SimplicialSet(e.dim(), e.ambient_dim());
  const int d = e.dim();
  const double total = e.measure();
  for (const auto& s : e.simplices()) {
    switch (stage.kind) {
      case MapStage::Kind::Identity:
        out.image.add(s, eps_geo);
        continue;
      case MapStage::Kind::Affine: {
        std::vector<Point> img;
        for (const auto& p : s.pts) img.push_back(stage(p));
        add_piece(out, img, simplex_volume(s.pts), d, s, eps_geo);
        continue;
      }
      case MapStage::Kind::Radial:
        if (stage.face.dim() > d && inside_face(stage.face, s.pts)) {
          for (const auto& part : radial_image(stage.face, stage.center, s.pts))
            add_piece(out, part.image, piece_measure(part.source, d), d, s, eps_geo);
          continue;
        }
        break;
      default:
        break;
    }
    if (d == 0) {
      out.image.add(Simplex{{stage(s.pts[0])}, s.patch, s.generation}, eps_geo);
      continue;
    }
    refine(stage, s, tol * std::max(total, 1e-300), 0, out, eps_geo);
  }
  return out;
}

MapImage apply_map(const PiecewiseMap& map, const SimplicialSet& e, double tol, double eps_geo) {
  MapImage out;
  out.image = e;
  for (const auto& stage : map.stages()) {
    MapImage next = apply_map(stage, out.image, tol, eps_geo);
    next.collapsed_measure += out.collapsed_measure;
    next.max_depth = std::max(next.max_depth, out.max_depth);
    out = std::move(next);
  }
  return out;
}

BlendReport blend_check(const PointMap& phi, const PointMap& f, double rho, const Box& domain, int per_axis) {
  BlendReport rep;
  rep.min_clearance = std::numeric_limits<double>::infinity();
  const int n = domain.dim();
  std::vector<int> idx(n, 0);
  while (true) {
    Point x(n);
    for (int i = 0; i < n; ++i)
      x[i] = domain.lo[i] + (domain.hi[i] - domain.lo[i]) * idx[i] / std::max(1, per_axis - 1);
    const Point a = phi(x), b = f(x);
    rep.sup_distance = std::max(rep.sup_distance, (a - b).norm());
    if ((a - x).norm() > 1e-12 || (b - x).norm() > 1e-12) {
      ++rep.moved_samples;
      rep.min_clearance = std::min(rep.min_clearance, domain.interior_clearance(x));
    }
    int i = 0;
    while (i < n && idx[i] == per_axis - 1) idx[i++] = 0;
    if (i == n) break;
    ++idx[i];
  }
  rep.pass = rep.sup_distance < rho && rep.min_clearance > rho;
  return rep;
}

}  // namespace plateau
