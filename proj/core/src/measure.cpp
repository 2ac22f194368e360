#include "plateau/measure.hpp"

#include "plateau/clip.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>

namespace plateau {

DensityField DensityField::constant(double value) {
  DensityField h;
  h.kind_ = Kind::Constant;
  h.value_ = value;
  h.upper_ = value;
  return h;
}

DensityField DensityField::radial(Point center, std::vector<std::pair<double, double>> profile) {
  if (profile.empty()) throw ConfigError("radial density needs at least one knot");
  DensityField h;
  h.kind_ = Kind::Radial;
  h.center_ = std::move(center);
  std::sort(profile.begin(), profile.end());
  h.upper_ = 0.0;
  for (const auto& [r, v] : profile) h.upper_ = std::max(h.upper_, v);
  h.profile_ = std::move(profile);
  return h;
}

DensityField DensityField::cellwise(Point origin, double stride, std::map<std::vector<int>, double> table,
                                    double fallback) {
  DensityField h;
  h.kind_ = Kind::Cellwise;
  h.origin_ = std::move(origin);
  h.stride_ = stride;
  h.value_ = fallback;
  h.upper_ = fallback;
  for (const auto& [k, v] : table) h.upper_ = std::max(h.upper_, v);
  h.table_ = std::move(table);
  return h;
}

DensityField DensityField::function(std::function<double(const Point&)> f, double upper) {
  DensityField h;
  h.kind_ = Kind::Function;
  h.fn_ = std::move(f);
  h.upper_ = upper;
  return h;
}

DensityField DensityField::scaled(double c) const {
  DensityField h = *this;
  h.scale_ *= c;
  h.upper_ *= c;
  if (h.kind_ == Kind::Constant) {
    h.value_ *= c;
    h.scale_ = 1.0;
  }
  return h;
}

namespace {

double cell_value(const std::map<std::vector<int>, double>& table, const std::vector<int>& z, double fallback) {
  auto it = table.find(z);
  return it == table.end() ? fallback : it->second;
}

}  // namespace

double DensityField::operator()(const Point& x) const {
  switch (kind_) {
    case Kind::Constant:
      return value_;
    case Kind::Radial: {
      const double r = (x - center_).norm();
      if (r <= profile_.front().first) return scale_ * profile_.front().second;
      for (std::size_t i = 1; i < profile_.size(); ++i)
        if (r <= profile_[i].first) {
          const auto& [r0, v0] = profile_[i - 1];
          const auto& [r1, v1] = profile_[i];
          return scale_ * (v0 + (v1 - v0) * (r - r0) / (r1 - r0));
        }
      return scale_ * profile_.back().second;
    }
    case Kind::Cellwise: {
      // Minimum over every cell whose closure holds x.
      const int n = static_cast<int>(x.size());
      std::vector<std::vector<int>> options(n);
      for (int i = 0; i < n; ++i) {
        const double q = (x[i] - origin_[i]) / stride_;
        const double r = std::round(q);
        if (std::abs(q - r) <= 1e-9) {
          options[i] = {static_cast<int>(r) - 1, static_cast<int>(r)};
        } else {
          options[i] = {static_cast<int>(std::floor(q))};
        }
      }
      double best = std::numeric_limits<double>::infinity();
      std::vector<int> z(n);
      std::function<void(int)> rec = [&](int i) {
        if (i == n) {
          best = std::min(best, cell_value(table_, z, value_));
          return;
        }
        for (int v : options[i]) {
          z[i] = v;
          rec(i + 1);
        }
      };
      rec(0);
      return scale_ * best;
    }
    case Kind::Function:
      return scale_ * fn_(x);
  }
  return 1.0;
}

double DensityField::modulus_violation(const std::function<double(double)>& modulus,
                                       const std::vector<Point>& samples) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double hx = (*this)(samples[i]);
    for (std::size_t j = 0; j < samples.size(); ++j) {
      if (i == j) continue;
      const double hy = (*this)(samples[j]);
      worst = std::max(worst, hy - (1.0 + modulus((samples[i] - samples[j]).norm())) * hx);
    }
  }
  return worst;
}

double hausdorff_measure(const SimplicialSet& e) { return e.measure(); }

double hausdorff_measure(const Complex& s, const Skeleton& k, int d) {
  double m = 0.0;
  for (int f : k.faces)
    if (s.face(f).dim == d) m += s.face(f).measure();
  return m;
}

namespace {

// Order-3 rules: two-point Gauss on segments, six-point degree-4 rule on triangles.
double rule(const std::vector<Point>& pts, const DensityField& h, bool& uniform) {
  const double vol = simplex_volume(pts);
  uniform = true;
  double first = 0.0, acc = 0.0;
  auto take = [&](const Point& x, double w, bool is_first) {
    const double v = h(x);
    if (is_first) first = v;
    else if (v != first) uniform = false;
    acc += w * v;
  };
  if (pts.size() == 1) {
    take(pts[0], 1.0, true);
    return acc;
  }
  if (pts.size() == 2) {
    const double g = 0.5 / std::sqrt(3.0);
    take(pts[0] + (0.5 - g) * (pts[1] - pts[0]), 0.5, true);
    take(pts[0] + (0.5 + g) * (pts[1] - pts[0]), 0.5, false);
    return vol * acc;
  }
  static const double a1 = 0.445948490915965, b1 = 1.0 - 2.0 * a1, w1 = 0.223381589678011;
  static const double a2 = 0.091576213509771, b2 = 1.0 - 2.0 * a2, w2 = 0.109951743655322;
  const double bary[6][3] = {{a1, a1, b1}, {a1, b1, a1}, {b1, a1, a1}, {a2, a2, b2}, {a2, b2, a2}, {b2, a2, a2}};
  for (int i = 0; i < 6; ++i)
    take(bary[i][0] * pts[0] + bary[i][1] * pts[1] + bary[i][2] * pts[2], i < 3 ? w1 : w2, i == 0);
  return vol * acc;
}

double adapt(const Simplex& s, const DensityField& h, double q, double rel_tol, int depth, double& err) {
  const auto [a, b] = bisect_longest_edge(s);
  bool ua = false, ub = false;
  const double qa = rule(a.pts, h, ua), qb = rule(b.pts, h, ub);
  const double sum = qa + qb;
  const double diff = std::abs(sum - q);
  if (diff <= rel_tol * std::abs(sum) || depth >= 24) {
    err += diff;
    return sum;
  }
  return adapt(a, h, qa, rel_tol, depth + 1, err) + adapt(b, h, qb, rel_tol, depth + 1, err);
}

// Exact integral of a cellwise field: clip the simplex to every lattice cell it meets.
double cellwise_simplex(const std::vector<Point>& pts, const DensityField& h, const Point& origin, double stride) {
  const int n = static_cast<int>(pts[0].size());
  const int d = static_cast<int>(pts.size()) - 1;
  if (d == 0) return h(pts[0]);
  Box b = Box::of_points(pts);
  std::vector<int> lo(n), hi(n);
  std::vector<char> flat(n, 0);
  for (int i = 0; i < n; ++i) {
    const double qlo = (b.lo[i] - origin[i]) / stride, qhi = (b.hi[i] - origin[i]) / stride;
    if (qhi - qlo <= 1e-9 && std::abs(qlo - std::round(qlo)) <= 1e-9) flat[i] = 1;
    lo[i] = static_cast<int>(std::floor(qlo + 1e-9));
    hi[i] = std::max(lo[i], static_cast<int>(std::ceil(qhi - 1e-9)) - 1);
  }
  std::vector<Point> cycle = pts;
  double total = 0.0;
  std::vector<int> z(n);
  std::function<void(int, std::vector<Point>)> rec = [&](int i, std::vector<Point> piece) {
    if (piece.empty()) return;
    if (i == n) {
      const double m = piece_measure(piece, d);
      if (m <= 0.0) return;
      Point probe = Point::Zero(n);
      for (const auto& p : piece) probe += p;
      probe /= static_cast<double>(piece.size());
      // The centroid sees the minimum over flat axes through the envelope rule.
      total += m * h(probe);
      return;
    }
    if (flat[i]) {
      rec(i + 1, piece);
      return;
    }
    for (int k = lo[i]; k <= hi[i]; ++k) {
      Point nrm = Point::Zero(n);
      nrm[i] = 1.0;
      auto q = clip_convex(piece, nrm, origin[i] + (k + 1) * stride);
      q = clip_convex(q, -nrm, -(origin[i] + k * stride));
      z[i] = k;
      rec(i + 1, q);
    }
  };
  rec(0, cycle);
  return total;
}

double integrate(const std::vector<Point>& pts, const DensityField& h, double rel_tol, double* error,
                 const Point* origin, double stride) {
  if (h.kind() == DensityField::Kind::Constant) return h(pts[0]) * simplex_volume(pts);
  if (origin) return cellwise_simplex(pts, h, *origin, stride);
  bool uniform = false;
  const double q = rule(pts, h, uniform);
  if (pts.size() == 1) return q;
  double err = 0.0;
  const double v = adapt(Simplex{pts}, h, q, rel_tol, 0, err);
  if (error) *error += err;
  return v;
}

}  // namespace

double weighted_simplex(const std::vector<Point>& pts, const DensityField& h, double rel_tol, double* error) {
  return integrate(pts, h, rel_tol, error, nullptr, 0.0);
}

MeasureReport measure_report(const SimplicialSet& e, const DensityField& h, double rel_tol) {
  MeasureReport r;
  const Point* origin = nullptr;
  double stride = 0.0;
  Point o;
  if (h.kind() == DensityField::Kind::Cellwise) {
    o = h.lattice_origin();
    stride = h.lattice_stride();
    origin = &o;
  }
  for (const auto& s : e.simplices()) {
    const double v = integrate(s.pts, h, rel_tol, &r.error_bound, origin, stride);
    r.per_item.push_back(v);
    r.weighted += v;
    r.hausdorff += simplex_volume(s.pts);
  }
  return r;
}

double weighted_measure(const SimplicialSet& e, const DensityField& h, double rel_tol) {
  return measure_report(e, h, rel_tol).weighted;
}

double weighted_measure(const Complex& s, const Skeleton& k, int d, const DensityField& h, double rel_tol) {
  return weighted_measure(skeleton_to_set(s, k, d), h, rel_tol);
}

namespace {

// Uniform bucket grid for nearest-neighbour queries.
class Buckets {
 public:
  explicit Buckets(const std::vector<Point>& pts) : pts_(pts) {
    if (pts.empty()) return;
    n_ = static_cast<int>(pts[0].size());
    const Box b = Box::of_points(pts);
    lo_ = b.lo;
    const double extent = std::max((b.hi - b.lo).maxCoeff(), 1e-12);
    h_ = extent / std::max(1.0, std::pow(static_cast<double>(pts.size()), 1.0 / n_));
    for (std::size_t i = 0; i < pts.size(); ++i) cells_[key(cell_of(pts[i]))].push_back(static_cast<int>(i));
  }

  double nearest(const Point& q) const {
    const auto c = cell_of(q);
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0;; ++r) {
      // Rings larger than the cloud itself: a linear scan is cheaper.
      if (std::pow(2.0 * r + 1.0, n_) > 4.0 * static_cast<double>(pts_.size()) + 9.0) {
        for (const auto& p : pts_) best = std::min(best, (p - q).norm());
        return best;
      }
      visit_ring(c, r, [&](const std::vector<int>& cell) {
        auto it = cells_.find(key(cell));
        if (it == cells_.end()) return;
        for (int i : it->second) best = std::min(best, (pts_[i] - q).norm());
      });
      if (best <= r * h_) return best;
    }
  }

 private:
  std::vector<int> cell_of(const Point& p) const {
    std::vector<int> c(n_);
    for (int i = 0; i < n_; ++i) c[i] = static_cast<int>(std::floor((p[i] - lo_[i]) / h_));
    return c;
  }
  static long long key(const std::vector<int>& c) {
    long long k = 0;
    for (int v : c) k = k * 2000003LL + (v + 1000000);
    return k;
  }
  template <class F>
  void visit_ring(const std::vector<int>& c, int r, F&& f) const {
    std::vector<int> off(n_, -r);
    while (true) {
      int m = 0;
      for (int v : off) m = std::max(m, std::abs(v));
      if (m == r) {
        std::vector<int> cell(n_);
        for (int i = 0; i < n_; ++i) cell[i] = c[i] + off[i];
        f(cell);
      }
      int i = 0;
      while (i < n_ && off[i] == r) off[i++] = -r;
      if (i == n_) break;
      ++off[i];
    }
  }

  const std::vector<Point>& pts_;
  int n_ = 0;
  Point lo_;
  double h_ = 1.0;
  std::unordered_map<long long, std::vector<int>> cells_;
};

double directed(const std::vector<Point>& a, const std::vector<Point>& b) {
  Buckets grid(b);
  double worst = 0.0;
  for (const auto& p : a) worst = std::max(worst, grid.nearest(p));
  return worst;
}

}  // namespace

double hausdorff_distance(const std::vector<Point>& a, const std::vector<Point>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  return std::max(directed(a, b), directed(b, a));
}

double local_hausdorff(const Box& window, const std::vector<Point>& a, const std::vector<Point>& b) {
  std::vector<Point> ka, kb;
  for (const auto& p : a)
    if (window.contains(p)) ka.push_back(p);
  for (const auto& p : b)
    if (window.contains(p)) kb.push_back(p);
  return hausdorff_distance(ka, kb);
}

SimplicialSet clip_to_box(const SimplicialSet& e, const Box& box) {
  SimplicialSet out(e.dim(), e.ambient_dim());
  const int n = e.ambient_dim();
  for (const auto& s : e.simplices()) {
    if (e.dim() == 0) {
      if (box.contains(s.pts[0])) out.add(s);
      continue;
    }
    std::vector<Point> piece = s.pts;
    for (int i = 0; i < n && !piece.empty(); ++i) {
      Point nrm = Point::Zero(n);
      nrm[i] = 1.0;
      piece = clip_convex(piece, nrm, box.hi[i]);
      piece = clip_convex(piece, -nrm, -box.lo[i]);
    }
    if (piece_dim(piece) < e.dim()) continue;
    for (auto& t : triangulate_piece(piece, e.dim())) out.add(Simplex{std::move(t), s.patch, s.generation});
  }
  return out;
}

LscReport lsc_probe(const std::vector<SimplicialSet>& sequence, const SimplicialSet& limit,
                    const std::vector<Box>& windows, const DensityField& h, double tol) {
  LscReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  if (sequence.empty()) return rep;
  const std::size_t tail = sequence.size() / 2;
  for (const auto& v : windows) {
    LscWindow w;
    w.window = v;
    w.limit_value = weighted_measure(clip_to_box(limit, v), h);
    w.liminf = std::numeric_limits<double>::infinity();
    for (std::size_t k = tail; k < sequence.size(); ++k)
      w.liminf = std::min(w.liminf, weighted_measure(clip_to_box(sequence[k], v), h));
    w.margin = w.liminf - w.limit_value;
    w.pass = w.margin >= -tol;
    rep.pass = rep.pass && w.pass;
    rep.min_margin = std::min(rep.min_margin, w.margin);
    rep.windows.push_back(w);
  }
  return rep;
}

}  // namespace plateau
