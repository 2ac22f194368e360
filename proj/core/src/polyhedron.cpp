#include "plateau/polyhedron.hpp"

#include "plateau/lp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace plateau {
namespace {

AffineHull compute_hull(const std::vector<Point>& points, double eps) {
  const int n = static_cast<int>(points.front().size());
  Point base = Point::Zero(n);
  for (const auto& p : points) base += p;
  base /= static_cast<double>(points.size());
  Matrix diffs(n, static_cast<Eigen::Index>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) diffs.col(static_cast<Eigen::Index>(j)) = points[j] - base;
  Eigen::JacobiSVD<Matrix> svd(diffs, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > eps * 10.0) ++rank;
  AffineHull hull;
  hull.base = base;
  hull.basis = svd.matrixU().leftCols(rank);
  return hull;
}

// Orthonormal basis of the orthogonal complement of a hull's direction space.
Matrix complement_basis(const AffineHull& hull) {
  const int n = static_cast<int>(hull.base.size());
  const int k = hull.dim();
  if (k == n) return Matrix(n, 0);
  if (k == 0) return Matrix::Identity(n, n);
  Eigen::FullPivHouseholderQR<Matrix> qr(hull.basis);
  Matrix q = qr.matrixQ();
  return q.rightCols(n - k);
}

std::vector<Point> dedupe(const std::vector<Point>& pts, double eps) {
  std::vector<Point> out;
  for (const auto& p : pts) {
    bool seen = false;
    for (const auto& q : out)
      if ((p - q).lpNorm<Eigen::Infinity>() <= eps) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(p);
  }
  return out;
}

double cross2(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain; returns indices of hull vertices in CCW order.
std::vector<int> hull2d(const std::vector<Point>& local, double eps) {
  std::vector<int> idx(local.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (local[a][0] != local[b][0]) return local[a][0] < local[b][0];
    return local[a][1] < local[b][1];
  });
  std::vector<int> h(2 * idx.size());
  int k = 0;
  for (int i : idx) {
    while (k >= 2 && cross2(local[h[k - 2]], local[h[k - 1]], local[i]) <= eps) --k;
    h[k++] = i;
  }
  for (int t = static_cast<int>(idx.size()) - 2, lo = k + 1; t >= 0; --t) {
    const int i = idx[t];
    while (k >= lo && cross2(local[h[k - 2]], local[h[k - 1]], local[i]) <= eps) --k;
    h[k++] = i;
  }
  h.resize(std::max(k - 1, 1));
  return h;
}

LpResult max_clearance(const std::vector<const Polyhedron*>& polys, double tol) {
  const int n = polys.front()->ambient_dim();
  std::vector<std::pair<Point, double>> rows;  // coefficient on x, rhs; t coefficient stored separately
  std::vector<double> tcoef;
  for (const Polyhedron* p : polys) {
    for (const auto& h : p->half_spaces()) {
      rows.emplace_back(h.normal, h.offset);
      tcoef.push_back(1.0);
    }
    const Matrix comp = complement_basis(p->affine_hull());
    for (Eigen::Index j = 0; j < comp.cols(); ++j) {
      const Point w = comp.col(j);
      const double c = w.dot(p->affine_hull().base);
      rows.emplace_back(w, c + tol);
      tcoef.push_back(0.0);
      rows.emplace_back(-w, -c + tol);
      tcoef.push_back(0.0);
    }
  }
  const int m = static_cast<int>(rows.size()) + 1;
  Matrix A = Matrix::Zero(m, n + 1);
  Point b(m);
  for (int i = 0; i + 1 < m; ++i) {
    A.block(i, 0, 1, n) = rows[i].first.transpose();
    A(i, n) = tcoef[i];
    b[i] = rows[i].second;
  }
  A(m - 1, n) = 1.0;
  b[m - 1] = 1.0;
  Point c = Point::Zero(n + 1);
  c[n] = 1.0;
  return solve_lp(A, b, c);
}

double segment_segment_distance(const Point& p1, const Point& q1, const Point& p2, const Point& q2) {
  const Point d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
  const double a = d1.squaredNorm(), e = d2.squaredNorm(), f = d2.dot(r);
  double s = 0.0, t = 0.0;
  if (a <= 1e-30 && e <= 1e-30) return r.norm();
  if (a <= 1e-30) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= 1e-30) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double bb = d1.dot(d2), denom = a * e - bb * bb;
      s = denom > 1e-30 ? std::clamp((bb * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (bb * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((bb - c) / a, 0.0, 1.0);
      }
    }
  }
  return ((p1 + s * d1) - (p2 + t * d2)).norm();
}

}  // namespace

int affine_rank(const std::vector<Point>& points, double eps) {
  if (points.size() <= 1) return 0;
  return compute_hull(points, eps).dim();
}

std::vector<Point> vertex_enumeration(const std::vector<HalfSpace>& half_spaces, int n, const Tolerance& tol) {
  const int m = static_cast<int>(half_spaces.size());
  Matrix A(m, n);
  Point b(m);
  for (int i = 0; i < m; ++i) {
    A.row(i) = half_spaces[i].normal.transpose();
    b[i] = half_spaces[i].offset;
  }
  {
    const LpResult feas = solve_lp(A, b, Point::Zero(n));
    if (feas.status == LpStatus::Infeasible) throw EmptyRegion("half-space intersection is empty");
    for (int axis = 0; axis < n; ++axis) {
      for (double sign : {1.0, -1.0}) {
        Point c = Point::Zero(n);
        c[axis] = sign;
        if (solve_lp(A, b, c).status == LpStatus::Unbounded)
          throw UnboundedRegion("half-space intersection is unbounded along axis " + std::to_string(axis));
      }
    }
  }
  std::vector<Point> out;
  std::vector<int> pick(n);
  // Enumerate n-subsets of the constraints; each nonsingular one defines a
  // candidate vertex.
  std::vector<char> mask(m, 0);
  std::fill(mask.begin(), mask.begin() + std::min(n, m), 1);
  if (m < n) throw UnboundedRegion("fewer half-spaces than dimensions");
  do {
    Matrix M(n, n);
    Point r(n);
    int row = 0;
    for (int i = 0; i < m; ++i)
      if (mask[i]) {
        M.row(row) = half_spaces[i].normal.transpose();
        r[row] = half_spaces[i].offset;
        ++row;
      }
    Eigen::FullPivLU<Matrix> lu(M);
    if (lu.rank() < n) continue;
    const Point x = lu.solve(r);
    bool feasible = true;
    for (const auto& h : half_spaces)
      if (!h.contains(x, tol.eps * 10.0)) {
        feasible = false;
        break;
      }
    if (feasible) out.push_back(x);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  out = dedupe(out, tol.eps * 100.0);
  std::sort(out.begin(), out.end(), [](const Point& a, const Point& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  });
  return out;
}

Polyhedron Polyhedron::from_half_spaces(std::vector<HalfSpace> hs, int n, const Tolerance& tol) {
  for (auto& h : hs) {
    const double norm = h.normal.norm();
    if (norm <= 0.0) throw EmptyRegion("half-space with zero normal");
    h.normal /= norm;
    h.offset /= norm;
  }
  Polyhedron p;
  p.vertices_ = vertex_enumeration(hs, n, tol);
  // Drop constraints implied by the others (LP redundancy test).
  for (std::size_t i = 0; i < hs.size();) {
    std::vector<HalfSpace> others;
    for (std::size_t j = 0; j < hs.size(); ++j)
      if (j != i) others.push_back(hs[j]);
    bool redundant = false;
    if (!others.empty()) {
      Matrix A(static_cast<Eigen::Index>(others.size()), n);
      Point b(static_cast<Eigen::Index>(others.size()));
      for (std::size_t j = 0; j < others.size(); ++j) {
        A.row(static_cast<Eigen::Index>(j)) = others[j].normal.transpose();
        b[static_cast<Eigen::Index>(j)] = others[j].offset;
      }
      const LpResult r = solve_lp(A, b, hs[i].normal);
      redundant = r.status == LpStatus::Optimal && r.value <= hs[i].offset + tol.eps;
    }
    if (redundant) {
      hs.erase(hs.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  p.half_spaces_ = std::move(hs);
  p.hull_ = compute_hull(p.vertices_, tol.eps);
  if (p.hull_.dim() < n) throw EmptyRegion("half-space intersection has empty interior");
  p.hull_.basis = Matrix::Identity(n, n);
  p.finish(tol);
  return p;
}

Polyhedron Polyhedron::from_points(const std::vector<Point>& input, const Tolerance& tol) {
  if (input.empty()) throw EmptyRegion("convex hull of no points");
  const std::vector<Point> points = dedupe(input, tol.eps);
  Polyhedron p;
  p.hull_ = compute_hull(points, tol.eps);
  const int k = p.hull_.dim();
  const int n = p.ambient_dim();
  if (k == 0) {
    p.vertices_ = {points.front()};
  } else if (k == 1) {
    const Point dir = p.hull_.basis.col(0);
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (dir.dot(points[i]) < dir.dot(points[lo])) lo = i;
      if (dir.dot(points[i]) > dir.dot(points[hi])) hi = i;
    }
    p.vertices_ = {points[lo], points[hi]};
    p.half_spaces_ = {HalfSpace{dir, dir.dot(points[hi])}, HalfSpace{-dir, -dir.dot(points[lo])}};
  } else if (k == 2) {
    std::vector<Point> local;
    for (const auto& q : points) local.push_back(p.hull_.to_local(q));
    const std::vector<int> h = hull2d(local, tol.eps * 1e-3);
    for (int i : h) p.vertices_.push_back(points[i]);
    for (std::size_t i = 0; i < h.size(); ++i) {
      const Point& a = local[h[i]];
      const Point& b = local[h[(i + 1) % h.size()]];
      Point nl(2);
      nl << b[1] - a[1], -(b[0] - a[0]);
      nl.normalize();
      const Point nw = p.hull_.basis * nl;
      p.half_spaces_.push_back(HalfSpace{nw, nw.dot(points[h[i]])});
    }
  } else {
    // Full-dimensional in R^3: facet planes are those leaving all points on one side.
    std::vector<HalfSpace> planes;
    const std::size_t m = points.size();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t l = j + 1; l < m; ++l) {
          Eigen::Vector3d a = points[i].head<3>(), b = points[j].head<3>(), c = points[l].head<3>();
          Eigen::Vector3d nrm = (b - a).cross(c - a);
          if (nrm.norm() <= tol.eps) continue;
          nrm.normalize();
          const double off = nrm.dot(a);
          double mx = -1e300, mn = 1e300;
          for (const auto& q : points) {
            const double s = nrm.dot(q.head<3>()) - off;
            mx = std::max(mx, s);
            mn = std::min(mn, s);
          }
          Point nn = nrm;
          double oo = off;
          if (mx <= tol.eps * 10.0) {
          } else if (mn >= -tol.eps * 10.0) {
            nn = -nn;
            oo = -oo;
          } else {
            continue;
          }
          bool dup = false;
          for (const auto& h : planes)
            if ((h.normal - nn).norm() < 1e-9 && std::abs(h.offset - oo) < 1e-9) dup = true;
          if (!dup) planes.push_back(HalfSpace{nn, oo});
        }
    Polyhedron full = from_half_spaces(planes, n, tol);
    return full;
  }
  p.finish(tol);
  return p;
}

void Polyhedron::finish(const Tolerance& tol) {
  const int k = dim();
  if (k == 2) {
    // Counter-clockwise order in the local frame.
    const Point c = hull_.to_local(centroid());
    std::vector<std::pair<double, Point>> keyed;
    for (const auto& v : vertices_) {
      const Point l = hull_.to_local(v) - c;
      keyed.emplace_back(std::atan2(l[1], l[0]), v);
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < keyed.size(); ++i) vertices_[i] = keyed[i].second;
  }
  lattice_ = enumerate_subfaces(*this);
  if (k == 0) {
    volume_ = 1.0;
  } else if (k == 1) {
    volume_ = (vertices_[1] - vertices_[0]).norm();
  } else if (k == 2) {
    double area = 0.0;
    const std::size_t m = vertices_.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Point a = hull_.to_local(vertices_[i]);
      const Point b = hull_.to_local(vertices_[(i + 1) % m]);
      area += a[0] * b[1] - a[1] * b[0];
    }
    volume_ = 0.5 * std::abs(area);
  } else {
    const Point c = centroid();
    double vol = 0.0;
    for (int f : lattice_.by_dim[k - 1]) {
      std::vector<Point> fv;
      for (int v : lattice_.faces[f].vertices) fv.push_back(vertices_[v]);
      const HalfSpace& h = half_spaces_[facet_half_space(f)];
      vol += h.slack(c) * Polyhedron::from_points(fv, tol).volume() / k;
    }
    volume_ = vol;
  }
}

int Polyhedron::facet_half_space(int f) const {
  const auto& face = lattice_.faces[f];
  for (std::size_t i = 0; i < half_spaces_.size(); ++i) {
    bool tight = true;
    for (int v : face.vertices)
      if (std::abs(half_spaces_[i].slack(vertices_[v])) > 1e-7) {
        tight = false;
        break;
      }
    if (tight) return static_cast<int>(i);
  }
  return -1;
}

bool Polyhedron::contains(const Point& x, double eps) const {
  if (hull_.distance(x) > eps) return false;
  for (const auto& h : half_spaces_)
    if (!h.contains(x, eps)) return false;
  return true;
}

bool Polyhedron::in_relative_interior(const Point& x, double eps) const {
  if (hull_.distance(x) > eps) return false;
  for (const auto& h : half_spaces_)
    if (h.slack(x) <= eps) return false;
  return true;
}

Point Polyhedron::centroid() const {
  Point c = Point::Zero(ambient_dim());
  for (const auto& v : vertices_) c += v;
  return c / static_cast<double>(vertices_.size());
}

Box Polyhedron::bounds() const { return Box::of_points(vertices_); }

double Polyhedron::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) d = std::max(d, (vertices_[i] - vertices_[j]).norm());
  return d;
}

FaceLattice enumerate_subfaces(const Polyhedron& p) {
  const auto& verts = p.vertices();
  const int nv = static_cast<int>(verts.size());
  std::vector<std::vector<int>> facet_sets;
  for (const auto& h : p.half_spaces()) {
    std::vector<int> s;
    for (int v = 0; v < nv; ++v)
      if (std::abs(h.slack(verts[v])) <= 1e-7) s.push_back(v);
    if (!s.empty()) facet_sets.push_back(std::move(s));
  }
  std::vector<int> all(nv);
  std::iota(all.begin(), all.end(), 0);
  std::map<std::vector<int>, int> seen;
  std::vector<std::vector<int>> sets{all};
  seen.emplace(all, 0);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (const auto& f : facet_sets) {
      std::vector<int> inter;
      std::set_intersection(sets[i].begin(), sets[i].end(), f.begin(), f.end(), std::back_inserter(inter));
      if (inter.empty() || seen.count(inter)) continue;
      seen.emplace(inter, static_cast<int>(sets.size()));
      sets.push_back(std::move(inter));
    }
  }
  std::vector<std::pair<int, std::vector<int>>> faces;
  for (auto& s : sets) {
    std::vector<Point> pts;
    for (int v : s) pts.push_back(verts[v]);
    faces.emplace_back(affine_rank(pts), std::move(s));
  }
  std::sort(faces.begin(), faces.end());
  FaceLattice lat;
  lat.by_dim.resize(p.dim() + 1);
  for (auto& [d, s] : faces) {
    lat.by_dim[d].push_back(static_cast<int>(lat.faces.size()));
    lat.faces.push_back(LatticeFace{d, std::move(s), {}, {}});
  }
  for (std::size_t i = 0; i < lat.faces.size(); ++i)
    for (std::size_t j = 0; j < lat.faces.size(); ++j) {
      auto& a = lat.faces[i];
      auto& b = lat.faces[j];
      if (b.dim + 1 != a.dim) continue;
      if (std::includes(a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end())) {
        a.children.push_back(static_cast<int>(j));
        b.parents.push_back(static_cast<int>(i));
      }
    }
  return lat;
}

namespace {

Ball ball_from_support(const std::vector<Point>& r) {
  if (r.empty()) return Ball{Point(), -1.0};
  if (r.size() == 1) return Ball{r[0], 0.0};
  const Point& p0 = r[0];
  const int k = static_cast<int>(r.size()) - 1;
  Matrix G(k, k);
  Point rhs(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) G(i, j) = (r[i + 1] - p0).dot(r[j + 1] - p0);
    rhs[i] = 0.5 * G(i, i);
  }
  const Point lambda = G.completeOrthogonalDecomposition().solve(rhs);
  Point c = p0;
  for (int i = 0; i < k; ++i) c += lambda[i] * (r[i + 1] - p0);
  double rad = 0.0;
  for (const auto& q : r) rad = std::max(rad, (q - c).norm());
  return Ball{c, rad};
}

Ball welzl(const std::vector<Point>& pts, std::size_t count, std::vector<Point>& support, int dim) {
  if (count == 0 || static_cast<int>(support.size()) == dim + 1) return ball_from_support(support);
  const Point& p = pts[count - 1];
  Ball b = welzl(pts, count - 1, support, dim);
  if (b.radius >= 0.0 && (p - b.center).norm() <= b.radius * (1.0 + 1e-12) + 1e-12) return b;
  support.push_back(p);
  b = welzl(pts, count - 1, support, dim);
  support.pop_back();
  return b;
}

}  // namespace

Ball minimal_enclosing_ball(const std::vector<Point>& points) {
  if (points.empty()) return Ball{Point(), 0.0};
  std::vector<Point> support;
  Ball b = welzl(points, points.size(), support, static_cast<int>(points.front().size()));
  return b;
}

ShapeStats shape_stats(const Polyhedron& p) {
  ShapeStats s;
  const Ball mb = minimal_enclosing_ball(p.vertices());
  s.outer_radius = mb.radius;
  s.enclosing_center = mb.center;
  const int k = p.dim();
  if (k == 0) {
    s.inner_radius = 0.0;
    s.inscribed_center = p.vertices().front();
  } else {
    const auto& hull = p.affine_hull();
    const auto& hs = p.half_spaces();
    const int m = static_cast<int>(hs.size());
    Matrix A(m, k + 1);
    Point b(m);
    for (int i = 0; i < m; ++i) {
      const Point a = hull.basis.transpose() * hs[i].normal;
      A.block(i, 0, 1, k) = a.transpose();
      A(i, k) = a.norm();
      b[i] = hs[i].offset - hs[i].normal.dot(hull.base);
    }
    Point c = Point::Zero(k + 1);
    c[k] = 1.0;
    const LpResult r = solve_lp(A, b, c);
    s.inner_radius = r.status == LpStatus::Optimal ? std::max(0.0, r.value) : 0.0;
    s.inscribed_center = r.status == LpStatus::Optimal ? hull.to_world(r.x.head(k)) : p.centroid();
  }
  s.rotondity = s.outer_radius > 0.0 ? std::clamp(s.inner_radius / s.outer_radius, 0.0, 1.0) : 1.0;
  return s;
}

Point closest_point(const Polyhedron& p, const Point& x) {
  if (p.contains(x, 0.0)) return x;
  const auto& lat = p.lattice();
  Point best = p.vertices().front();
  double best_d = (x - best).norm();
  for (const auto& f : lat.faces) {
    std::vector<Point> fv;
    for (int v : f.vertices) fv.push_back(p.vertices()[v]);
    Point q;
    if (f.dim == 0) {
      q = fv.front();
    } else {
      Matrix D(x.size(), static_cast<Eigen::Index>(fv.size() - 1));
      for (std::size_t j = 1; j < fv.size(); ++j) D.col(static_cast<Eigen::Index>(j - 1)) = fv[j] - fv[0];
      const Point coef = D.completeOrthogonalDecomposition().solve(x - fv[0]);
      q = fv[0] + D * coef;
      if (!p.contains(q, 1e-9)) continue;
    }
    const double d = (x - q).norm();
    if (d < best_d) {
      best_d = d;
      best = q;
    }
  }
  return best;
}

double distance(const Polyhedron& p, const Point& x) { return (closest_point(p, x) - x).norm(); }

double distance(const Polyhedron& a, const Polyhedron& b) {
  const LpResult r = max_clearance({&a, &b}, 1e-12);
  if (r.status == LpStatus::Optimal && r.value >= -1e-12) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& v : a.vertices()) best = std::min(best, distance(b, v));
  for (const auto& v : b.vertices()) best = std::min(best, distance(a, v));
  if (a.ambient_dim() == 3) {
    auto edges = [](const Polyhedron& p) {
      std::vector<std::pair<Point, Point>> out;
      if (p.dim() < 1) return out;
      for (int e : p.lattice().by_dim[1]) {
        const auto& f = p.lattice().faces[e];
        out.emplace_back(p.vertices()[f.vertices[0]], p.vertices()[f.vertices[1]]);
      }
      return out;
    };
    for (const auto& [p1, q1] : edges(a))
      for (const auto& [p2, q2] : edges(b)) best = std::min(best, segment_segment_distance(p1, q1, p2, q2));
  }
  return best;
}

bool relative_interiors_intersect(const Polyhedron& a, const Polyhedron& b, const Tolerance& tol) {
  if (!a.bounds().overlaps(b.bounds(), tol.eps)) return false;
  const LpResult r = max_clearance({&a, &b}, tol.eps * 1e-3);
  return r.status == LpStatus::Optimal && r.value > tol.eps;
}

}  // namespace plateau
