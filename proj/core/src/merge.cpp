#include "plateau/clip.hpp"
#include "plateau/delaunay2d.hpp"
#include "plateau/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <queue>
#include <set>

namespace plateau {
namespace {

struct Lattice {
  double stride = 1.0;
  Point origin;
};

// Detects a complex made of axis-aligned congruent cubes.
std::optional<Lattice> axis_lattice(const Complex& s) {
  const int n = s.ambient_dim();
  if (s.empty() || s.dim() != n) return std::nullopt;
  Lattice l;
  const Box b0 = s.cells().front().bounds();
  l.stride = b0.hi[0] - b0.lo[0];
  l.origin = b0.lo;
  for (const auto& c : s.cells()) {
    const Box b = c.bounds();
    if (static_cast<int>(c.vertices().size()) != (1 << n)) return std::nullopt;
    for (int i = 0; i < n; ++i)
      if (std::abs(b.hi[i] - b.lo[i] - l.stride) > 1e-9) return std::nullopt;
    if (std::abs(c.volume() - std::pow(l.stride, n)) > 1e-9 * std::pow(l.stride, n)) return std::nullopt;
  }
  return l;
}

std::optional<std::vector<int>> lattice_index(const Point& lo, const Lattice& l) {
  std::vector<int> z(lo.size());
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    const double q = (lo[i] - l.origin[i]) / l.stride;
    const double r = std::round(q);
    if (std::abs(q - r) > 1e-7) return std::nullopt;
    z[i] = static_cast<int>(r);
  }
  return z;
}

Polyhedron lattice_cube(const std::vector<int>& z, const Lattice& l) {
  const int n = static_cast<int>(z.size());
  DyadicGridSpec spec;
  spec.stride = l.stride;
  spec.frame = Frame{l.origin, Matrix::Identity(n, n)};
  Index zi(n);
  for (int i = 0; i < n; ++i) zi[i] = z[i];
  return dyadic_cell(spec, zi);
}

void finish_report(const Complex& merged, const std::vector<Polyhedron>& new_cells, double input_outer,
                   MergeReport& rep) {
  double min_r = 1.0;
  for (const auto& c : new_cells) min_r = std::min(min_r, shape_stats(c).rotondity);
  rep.measured_min_rotondity = new_cells.empty() ? 1.0 : min_r;
  rep.measured_max_outer_radius = merged.stats().max_outer_radius;
  rep.outer_radius_ratio = input_outer > 0.0 ? rep.measured_max_outer_radius / input_outer : 1.0;
  rep.valid = validate_complex(merged).ok;
}

double max_outer(const Complex& s) { return s.empty() ? 0.0 : s.stats().max_outer_radius; }

// Gap between a patch aligned with the outer lattice and its hole: fill with lattice cubes.
std::pair<Complex, MergeReport> aligned_fill(const Complex& outer, const std::vector<Complex>& patches, const Lattice& l) {
  const int n = outer.ambient_dim();
  std::set<std::vector<int>> occupied, patch_cells;
  for (const auto& c : outer.cells()) occupied.insert(*lattice_index(c.bounds().lo, l));
  for (const auto& p : patches)
    for (const auto& c : p.cells()) {
      const auto z = *lattice_index(c.bounds().lo, l);
      if (occupied.count(z)) throw MergeDegenerate("patch overlaps the outer complex");
      patch_cells.insert(z);
    }
  std::vector<int> lo(n, 1 << 30), hi(n, -(1 << 30));
  for (const auto& z : occupied)
    for (int i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], z[i] - 1);
      hi[i] = std::max(hi[i], z[i] + 1);
    }
  // Missing lattice cells reachable from the margin are exterior; the rest are holes.
  auto inside = [&](const std::vector<int>& z) {
    for (int i = 0; i < n; ++i)
      if (z[i] < lo[i] || z[i] > hi[i]) return false;
    return true;
  };
  std::set<std::vector<int>> exterior;
  std::queue<std::vector<int>> q;
  q.push(lo);
  exterior.insert(lo);
  while (!q.empty()) {
    const auto z = q.front();
    q.pop();
    for (int i = 0; i < n; ++i)
      for (int s : {-1, 1}) {
        auto w = z;
        w[i] += s;
        if (!inside(w) || occupied.count(w) || exterior.count(w)) continue;
        exterior.insert(w);
        q.push(w);
      }
  }
  std::vector<Polyhedron> fill;
  std::set<std::vector<int>> seen;
  for (const auto& pz : patch_cells) {
    if (exterior.count(pz)) throw MergeDegenerate("patch lies outside every hole");
    if (seen.count(pz)) continue;
    std::queue<std::vector<int>> comp;
    comp.push(pz);
    seen.insert(pz);
    while (!comp.empty()) {
      const auto z = comp.front();
      comp.pop();
      if (!patch_cells.count(z)) fill.push_back(lattice_cube(z, l));
      for (int i = 0; i < n; ++i)
        for (int s : {-1, 1}) {
          auto w = z;
          w[i] += s;
          if (!inside(w) || occupied.count(w) || exterior.count(w) || seen.count(w)) continue;
          seen.insert(w);
          comp.push(w);
        }
    }
  }
  std::vector<Polyhedron> cells = outer.cells();
  double input_outer = max_outer(outer);
  for (const auto& p : patches) {
    cells.insert(cells.end(), p.cells().begin(), p.cells().end());
    input_outer = std::max(input_outer, max_outer(p));
  }
  cells.insert(cells.end(), fill.begin(), fill.end());
  Complex merged = Complex::from_cells(std::move(cells));
  MergeReport rep;
  rep.aligned_fill = true;
  rep.gap_cell_count = static_cast<int>(fill.size());
  finish_report(merged, fill, input_outer, rep);
  return {std::move(merged), rep};
}

// ---------------------------------------------------------------- n = 2

double signed_area(const std::vector<Point>& loop) {
  double a = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Point& p = loop[i];
    const Point& q = loop[(i + 1) % loop.size()];
    a += p[0] * q[1] - p[1] * q[0];
  }
  return 0.5 * a;
}

// Boundary loops with the complex on the left: outer envelopes are ccw, holes cw.
std::vector<std::vector<Point>> boundary_loops(const Complex& s) {
  std::map<int, std::vector<int>> next;
  for (int f : boundary_faces(s)) {
    const auto& face = s.face(f);
    int a = face.vertices[0], b = face.vertices[1];
    const Point g = s.cells()[face.cells[0]].centroid();
    const Point& pa = s.vertex_points()[a];
    const Point& pb = s.vertex_points()[b];
    const double o = (pb[0] - pa[0]) * (g[1] - pa[1]) - (pb[1] - pa[1]) * (g[0] - pa[0]);
    if (o < 0) std::swap(a, b);
    next[a].push_back(b);
  }
  std::vector<std::vector<Point>> loops;
  while (!next.empty()) {
    const int start = next.begin()->first;
    std::vector<Point> loop;
    int v = start;
    do {
      auto it = next.find(v);
      if (it == next.end()) throw MergeDegenerate("open boundary chain");
      loop.push_back(s.vertex_points()[v]);
      const int w = it->second.back();
      it->second.pop_back();
      if (it->second.empty()) next.erase(it);
      v = w;
    } while (v != start);
    loops.push_back(std::move(loop));
  }
  return loops;
}

int winding(const std::vector<Point>& loop, const Point& x) {
  int w = 0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Point& a = loop[i];
    const Point& b = loop[(i + 1) % loop.size()];
    const double o = (b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]);
    if (a[1] <= x[1]) {
      if (b[1] > x[1] && o > 0) ++w;
    } else if (b[1] <= x[1] && o < 0) {
      --w;
    }
  }
  return w;
}

Point patch_center(const Complex& p) {
  Point c = Point::Zero(p.ambient_dim());
  for (const auto& cell : p.cells()) c += cell.centroid();
  return c / static_cast<double>(p.cells().size());
}

// Splits a 2-polytope's boundary at the given points and fans it from its centroid.
std::vector<Polyhedron> fan_polygon(const std::vector<Point>& cycle, const std::vector<Point>& extra, const Point& apex,
                                    bool cone_to_apex) {
  std::vector<Point> ring;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const Point& a = cycle[i];
    const Point& b = cycle[(i + 1) % cycle.size()];
    ring.push_back(a);
    std::vector<std::pair<double, Point>> on;
    for (const auto& x : extra)
      if (on_segment_interior(x, a, b)) on.emplace_back((x - a).norm(), x);
    std::sort(on.begin(), on.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
    for (const auto& [t, x] : on) ring.push_back(x);
  }
  Point g = Point::Zero(cycle.front().size());
  for (const auto& p : cycle) g += p;
  g /= static_cast<double>(cycle.size());
  std::vector<Polyhedron> out;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    std::vector<Point> pts{g, ring[i], ring[(i + 1) % ring.size()]};
    if (cone_to_apex) pts.push_back(apex);
    out.push_back(Polyhedron::from_points(pts));
  }
  return out;
}

std::vector<Point> cycle_of(const Polyhedron& p) { return p.vertices(); }

bool has_extra_on_boundary(const std::vector<Point>& cycle, const std::vector<Point>& extra) {
  for (std::size_t i = 0; i < cycle.size(); ++i)
    for (const auto& x : extra)
      if (on_segment_interior(x, cycle[i], cycle[(i + 1) % cycle.size()])) return true;
  return false;
}

std::pair<Complex, MergeReport> merge2d(const Complex& outer, const std::vector<Complex>& patches,
                                        const MergeOptions& opt) {
  MergeReport rep;
  const auto loops = boundary_loops(outer);
  std::vector<std::vector<Point>> holes;
  for (const auto& l : loops)
    if (signed_area(l) < 0) holes.push_back(l);
  std::vector<char> used(holes.size(), 0);

  std::vector<Polyhedron> gap;
  std::vector<Point> outer_splits;
  std::vector<std::vector<Point>> patch_splits(patches.size());

  for (std::size_t pi = 0; pi < patches.size(); ++pi) {
    const auto ploops = boundary_loops(patches[pi]);
    if (ploops.size() != 1 || signed_area(ploops[0]) <= 0) throw MergeDegenerate("patch boundary is not a single loop");
    const Point c = patch_center(patches[pi]);
    int hole = -1;
    for (std::size_t h = 0; h < holes.size(); ++h)
      if (winding(holes[h], c) != 0) hole = static_cast<int>(h);
    if (hole < 0) throw MergeDegenerate("patch center is not inside a hole");
    if (used[hole]) throw MergeDegenerate("several patches share one hole");
    used[hole] = 1;

    std::vector<Point> ring_out(holes[hole].rbegin(), holes[hole].rend());
    std::vector<Point> ring_in = ploops[0];
    for (const auto& p : ring_in)
      if (winding(holes[hole], p) == 0) throw MergeDegenerate("patch does not fit inside its hole");

    std::vector<Tri> tris;
    std::vector<Eigen::Vector2d> pts;
    for (int attempt = 0;; ++attempt) {
      pts.clear();
      std::vector<int> io, ii;
      for (const auto& p : ring_out) {
        io.push_back(static_cast<int>(pts.size()));
        pts.emplace_back(p[0], p[1]);
      }
      for (const auto& p : ring_in) {
        ii.push_back(static_cast<int>(pts.size()));
        pts.emplace_back(p[0], p[1]);
      }
      tris = triangulate_annulus(pts, io, ii, Eigen::Vector2d(c[0], c[1]));
      double worst = 2.0;
      int worst_t = -1;
      for (std::size_t t = 0; t < tris.size(); ++t) {
        std::vector<Point> tp;
        for (int v : tris[t]) tp.push_back(Point(pts[v]));
        const double r = shape_stats(Polyhedron::from_points(tp)).rotondity;
        if (r < worst) {
          worst = r;
          worst_t = static_cast<int>(t);
        }
      }
      if (worst >= opt.rotondity_floor) break;
      if (attempt >= opt.max_steiner)
        throw MergeDegenerate("gap rotondity " + std::to_string(worst) + " below floor " +
                              std::to_string(opt.rotondity_floor));
      // Split the longest ring edge touching the worst triangle.
      const int no = static_cast<int>(ring_out.size());
      const int nv = static_cast<int>(pts.size());
      double best_len = -1.0;
      int best_a = -1;
      for (int a = 0; a < nv; ++a) {
        const bool is_out = a < no;
        const int b = is_out ? (a + 1) % no : no + (a - no + 1) % (nv - no);
        const auto& T = tris[worst_t];
        const bool touches = std::count(T.begin(), T.end(), a) || std::count(T.begin(), T.end(), b);
        if (!touches) continue;
        const double len = (pts[a] - pts[b]).norm();
        if (len > best_len) {
          best_len = len;
          best_a = a;
        }
      }
      const bool is_out = best_a < no;
      auto& ring = is_out ? ring_out : ring_in;
      const int ia = is_out ? best_a : best_a - no;
      const Point mid = 0.5 * (ring[ia] + ring[(ia + 1) % ring.size()]);
      ring.insert(ring.begin() + ia + 1, mid);
      (is_out ? outer_splits : patch_splits[pi]).push_back(mid);
      ++rep.steiner_points;
    }
    for (const auto& t : tris) {
      std::vector<Point> tp;
      for (int v : t) tp.push_back(Point(pts[v]));
      gap.push_back(Polyhedron::from_points(tp));
    }
  }

  std::vector<Polyhedron> cells, fresh = gap;
  double input_outer = max_outer(outer);
  auto add_refined = [&](const Complex& s, const std::vector<Point>& splits) {
    for (const auto& cell : s.cells()) {
      if (splits.empty() || !has_extra_on_boundary(cycle_of(cell), splits)) {
        cells.push_back(cell);
        continue;
      }
      ++rep.refined_cell_count;
      for (auto& piece : fan_polygon(cycle_of(cell), splits, Point(), false)) {
        fresh.push_back(piece);
        cells.push_back(std::move(piece));
      }
    }
  };
  add_refined(outer, outer_splits);
  for (std::size_t pi = 0; pi < patches.size(); ++pi) {
    add_refined(patches[pi], patch_splits[pi]);
    input_outer = std::max(input_outer, max_outer(patches[pi]));
  }
  cells.insert(cells.end(), gap.begin(), gap.end());
  Complex merged = Complex::from_cells(std::move(cells));
  rep.gap_cell_count = static_cast<int>(gap.size());
  finish_report(merged, fresh, input_outer, rep);
  return {std::move(merged), rep};
}

// ---------------------------------------------------------------- n = 3

// Tolerance pool for points produced by the overlay.
class PointSet {
 public:
  const Point& add(const Point& p) {
    for (const auto& q : pts_)
      if ((q - p).lpNorm<Eigen::Infinity>() <= 1e-9) return q;
    pts_.push_back(p);
    return pts_.back();
  }
  const std::vector<Point>& points() const { return pts_; }

 private:
  std::vector<Point> pts_;
};

Point central_projection(const Point& x, const Point& c, const HalfSpace& plane) {
  const double t = (plane.offset - plane.normal.dot(c)) / plane.normal.dot(x - c);
  return c + t * (x - c);
}

// Boundary 2-faces of the outer complex forming the hole around c: the
// connected boundary component first hit by a ray from c.
std::vector<int> hole_faces_around(const Complex& outer, const Point& c) {
  const std::vector<int> bnd = boundary_faces(outer);
  const Point dir = make_point({0.3141, 0.5772, 0.7536}).normalized();
  int first = -1;
  double best = 1e300;
  for (int f : bnd) {
    const auto& g = outer.face(f).geometry;
    const auto& hull = g.affine_hull();
    Eigen::Vector3d nrm = hull.basis.col(0).head<3>().cross(hull.basis.col(1).head<3>());
    const double denom = nrm.dot(dir.head<3>());
    if (std::abs(denom) < 1e-12) continue;
    const double t = nrm.dot((hull.base - c).head<3>()) / denom;
    if (t <= 0 || t >= best) continue;
    if (g.contains(c + t * dir, 1e-9)) {
      best = t;
      first = f;
    }
  }
  if (first < 0) throw MergeDegenerate("patch center is not inside a hole");
  std::set<int> bset(bnd.begin(), bnd.end());
  std::map<int, std::vector<int>> by_edge;
  for (int f : bnd)
    for (int e : outer.face(f).children) by_edge[e].push_back(f);
  std::set<int> comp{first};
  std::queue<int> q;
  q.push(first);
  while (!q.empty()) {
    const int f = q.front();
    q.pop();
    for (int e : outer.face(f).children)
      for (int g : by_edge[e])
        if (!comp.count(g)) {
          comp.insert(g);
          q.push(g);
        }
  }
  return {comp.begin(), comp.end()};
}

HalfSpace face_plane(const Polyhedron& face, const Point& inside) {
  const auto& hull = face.affine_hull();
  Eigen::Vector3d nrm = hull.basis.col(0).head<3>().cross(hull.basis.col(1).head<3>()).normalized();
  Point n = nrm;
  if (n.dot(inside - hull.base) > 0) n = -n;
  return HalfSpace{n, n.dot(hull.base)};
}

std::pair<Complex, MergeReport> merge3d(const Complex& outer, const std::vector<Complex>& patches,
                                        const MergeOptions& opt) {
  MergeReport rep;
  std::vector<Polyhedron> gap;
  // Prescribed subdivisions of ring faces, keyed by (complex, face id).
  std::map<std::pair<int, int>, std::vector<std::vector<Point>>> prescribed;
  std::vector<PointSet> splits(patches.size() + 1);  // [0] outer, [1+pi] patch pi
  std::set<int> claimed;

  for (std::size_t pi = 0; pi < patches.size(); ++pi) {
    const Complex& patch = patches[pi];
    const Point c = patch_center(patch);
    const std::vector<int> hole = hole_faces_around(outer, c);
    for (int f : hole)
      if (!claimed.insert(f).second) throw MergeDegenerate("several patches share one hole");
    const std::vector<int> pfaces = boundary_faces(patch);

    // Star-shapedness about c.
    std::vector<HalfSpace> hole_planes, patch_planes;
    for (int f : hole) {
      const auto& face = outer.face(f);
      const HalfSpace pl = face_plane(face.geometry, outer.cells()[face.cells[0]].centroid());
      // pl contains the outer cell; c must lie strictly outside it.
      if (pl.slack(c) >= -1e-9) throw MergeDegenerate("hole is not star-shaped about the patch center");
      hole_planes.push_back(pl);
    }
    // Every patch vertex must be seen from c before the hole surface.
    for (const auto& v : patch.vertex_points())
      for (std::size_t hi = 0; hi < hole.size(); ++hi) {
        const HalfSpace& pl = hole_planes[hi];
        const double rate = pl.normal.dot(v - c);
        if (rate >= 0.0) continue;
        const double t = (pl.offset - pl.normal.dot(c)) / rate;
        if (t <= 1.0 + 1e-9 && outer.face(hole[hi]).geometry.contains(c + t * (v - c), 1e-9))
          throw MergeDegenerate("patch does not fit inside its hole");
      }
    for (int f : pfaces) {
      const auto& face = patch.face(f);
      const Point inside = patch.cells()[face.cells[0]].centroid();
      const HalfSpace pl = face_plane(face.geometry, inside);
      if (pl.slack(c) <= 1e-9) throw MergeDegenerate("patch is not star-shaped about its center");
      patch_planes.push_back(pl);
    }

    // Overlay of the hole faces with the cones over patch faces.
    struct Overlay {
      int hole_face;
      int patch_face;
      std::vector<Point> poly;
    };
    std::vector<Overlay> overlays;
    PointSet pool;
    for (std::size_t hi = 0; hi < hole.size(); ++hi) {
      const auto hcycle = outer.face(hole[hi]).geometry.vertices();
      for (std::size_t pj = 0; pj < pfaces.size(); ++pj) {
        const auto pcycle = patch.face(pfaces[pj]).geometry.vertices();
        const Point pc = patch.face(pfaces[pj]).geometry.centroid();
        std::vector<Point> q = hcycle;
        for (std::size_t e = 0; e < pcycle.size() && !q.empty(); ++e) {
          const Eigen::Vector3d a = (pcycle[e] - c).head<3>(), b = (pcycle[(e + 1) % pcycle.size()] - c).head<3>();
          Point nrm = Point(a.cross(b));
          if (nrm.dot(pc - c) > 0) nrm = -nrm;
          q = clip_convex(q, nrm, nrm.dot(c), 1e-12);
        }
        if (q.size() < 3 || piece_measure(q, 2) < 1e-12) continue;
        for (auto& v : q) v = pool.add(v);
        overlays.push_back(Overlay{static_cast<int>(hi), static_cast<int>(pj), q});
      }
    }
    // Fan each overlay polygon (with T-junction points inserted) and build frusta.
    for (const auto& ov : overlays) {
      const HalfSpace& target = patch_planes[ov.patch_face];
      Point g = Point::Zero(3);
      for (const auto& v : ov.poly) g += v;
      g /= static_cast<double>(ov.poly.size());
      std::vector<Point> ring;
      for (std::size_t i = 0; i < ov.poly.size(); ++i) {
        const Point& a = ov.poly[i];
        const Point& b = ov.poly[(i + 1) % ov.poly.size()];
        ring.push_back(a);
        std::vector<std::pair<double, Point>> on;
        for (const auto& x : pool.points())
          if (on_segment_interior(x, a, b)) on.emplace_back((x - a).norm(), x);
        std::sort(on.begin(), on.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
        for (const auto& [t, x] : on) ring.push_back(x);
      }
      const Point pg = central_projection(g, c, target);
      for (std::size_t i = 0; i < ring.size(); ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % ring.size()];
        const Point pa = central_projection(a, c, target), pb = central_projection(b, c, target);
        gap.push_back(Polyhedron::from_points({g, a, b, pg, pa, pb}));
        prescribed[{0, hole[ov.hole_face]}].push_back({g, a, b});
        prescribed[{1 + static_cast<int>(pi), pfaces[ov.patch_face]}].push_back({pg, pa, pb});
        for (const auto& x : {a, b}) splits[0].add(x);
        for (const auto& x : {pa, pb}) splits[1 + pi].add(x);
      }
    }
  }

  // Cone-refine every cell that has a subdivided face or a split edge.
  std::vector<Polyhedron> cells, fresh = gap;
  double input_outer = max_outer(outer);
  auto refine = [&](const Complex& s, int which) {
    const auto& extra = splits[which].points();
    for (std::size_t ci = 0; ci < s.cells().size(); ++ci) {
      const auto& cell = s.cells()[ci];
      const Box cb = cell.bounds();
      std::vector<Point> near;
      for (const auto& x : extra)
        if (cb.contains(x, 1e-9)) near.push_back(x);
      const Point apex = cell.centroid();
      std::vector<std::vector<Point>> pieces;
      bool refined = false;
      for (int f : s.face(s.cell_face(static_cast<int>(ci))).children) {
        auto it = prescribed.find({which, f});
        if (it != prescribed.end()) {
          refined = true;
          for (const auto& tri : it->second) pieces.push_back(tri);
          continue;
        }
        const auto cyc = s.face(f).geometry.vertices();
        if (!near.empty() && has_extra_on_boundary(cyc, near)) {
          refined = true;
          for (const auto& tri : fan_polygon(cyc, near, Point(), false)) pieces.push_back(tri.vertices());
        } else {
          pieces.push_back(cyc);
        }
      }
      if (!refined) {
        cells.push_back(cell);
        continue;
      }
      ++rep.refined_cell_count;
      for (auto& pc : pieces) {
        pc.push_back(apex);
        fresh.push_back(Polyhedron::from_points(pc));
        cells.push_back(fresh.back());
      }
    }
  };
  refine(outer, 0);
  for (std::size_t pi = 0; pi < patches.size(); ++pi) {
    refine(patches[pi], 1 + static_cast<int>(pi));
    input_outer = std::max(input_outer, max_outer(patches[pi]));
  }
  cells.insert(cells.end(), gap.begin(), gap.end());
  double worst = 1.0;
  for (const auto& g : fresh) worst = std::min(worst, shape_stats(g).rotondity);
  if (worst < opt.rotondity_floor)
    throw MergeDegenerate("gap rotondity " + std::to_string(worst) + " below floor " +
                          std::to_string(opt.rotondity_floor));
  Complex merged = Complex::from_cells(std::move(cells));
  rep.gap_cell_count = static_cast<int>(gap.size());
  finish_report(merged, fresh, input_outer, rep);
  return {std::move(merged), rep};
}

}  // namespace

std::pair<Complex, MergeReport> merge(const Complex& outer, const std::vector<Complex>& patches,
                                      const MergeOptions& options) {
  if (patches.empty()) {
    MergeReport rep;
    rep.valid = validate_complex(outer).ok;
    rep.measured_max_outer_radius = max_outer(outer);
    return {outer, rep};
  }
  const int n = outer.ambient_dim();
  for (const auto& p : patches)
    if (p.ambient_dim() != n || p.dim() != outer.dim())
      throw DimensionMismatch("patch dimension differs from the outer complex");
  if (outer.dim() != n) throw DimensionMismatch("merge needs full-dimensional complexes");

  if (const auto l = axis_lattice(outer)) {
    bool aligned = true;
    for (const auto& p : patches) {
      const auto pl = axis_lattice(p);
      if (!pl || std::abs(pl->stride - l->stride) > 1e-9) {
        aligned = false;
        break;
      }
      for (const auto& c : p.cells())
        if (!lattice_index(c.bounds().lo, *l)) aligned = false;
    }
    if (aligned) return aligned_fill(outer, patches, *l);
  }
  if (n == 2) return merge2d(outer, patches, options);
  if (n == 3) return merge3d(outer, patches, options);
  throw DimensionMismatch("merge supports n = 2 and n = 3");
}

}  // namespace plateau
