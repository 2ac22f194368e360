#include "plateau/complex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <unordered_map>

namespace plateau {
namespace {

// Tolerance-based vertex pool: points closer than `eps` (max-norm) share one entry.
class VertexPool {
 public:
  explicit VertexPool(double eps) : eps_(eps), cell_(std::max(eps * 100.0, 1e-7)) {}

  int insert(const Point& p) {
    const auto key = bucket(p);
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dz = -1; dz <= 1; ++dz) {
          std::array<long long, 3> k = key;
          k[0] += dx;
          k[1] += dy;
          if (p.size() > 2) {
            k[2] += dz;
          } else if (dz != 0) {
            continue;
          }
          auto it = map_.find(k);
          if (it == map_.end()) continue;
          for (int id : it->second)
            if ((points_[id] - p).lpNorm<Eigen::Infinity>() <= eps_) return id;
        }
    const int id = static_cast<int>(points_.size());
    points_.push_back(p);
    map_[key].push_back(id);
    return id;
  }

  const std::vector<Point>& points() const { return points_; }

 private:
  struct Hash {
    std::size_t operator()(const std::array<long long, 3>& k) const {
      return static_cast<std::size_t>(k[0] * 73856093LL ^ k[1] * 19349663LL ^ k[2] * 83492791LL);
    }
  };

  std::array<long long, 3> bucket(const Point& p) const {
    std::array<long long, 3> k{0, 0, 0};
    for (Eigen::Index i = 0; i < p.size() && i < 3; ++i) k[i] = static_cast<long long>(std::floor(p[i] / cell_));
    return k;
  }

  double eps_;
  double cell_;
  std::vector<Point> points_;
  std::unordered_map<std::array<long long, 3>, std::vector<int>, Hash> map_;
};

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool lex_less(const Point& a, const Point& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

struct TmpFace {
  int dim = 0;
  std::vector<int> vertices;
  std::vector<long long> key;
  std::vector<Point> points;
  int member_cell = -1;
  Eigen::VectorXi base_offset;
  std::vector<int> cells;
  std::vector<Eigen::VectorXi> offsets;
  std::vector<int> children;
};

}  // namespace

Complex Complex::from_cells(std::vector<Polyhedron> cells, std::optional<Periodicity> periodicity, const Tolerance& tol) {
  Complex s;
  s.periodicity_ = std::move(periodicity);
  if (cells.empty()) {
    s.by_dim_.resize(1);
    return s;
  }
  s.dim_ = cells.front().dim();
  s.ambient_ = cells.front().ambient_dim();
  for (const auto& c : cells)
    if (c.dim() != s.dim_ || c.ambient_dim() != s.ambient_)
      throw DimensionMismatch("complex members must share dimension " + std::to_string(s.dim_));
  s.cells_ = std::move(cells);
  const int n = s.ambient_;

  Eigen::VectorXi periods;
  auto lattice = [&](const Point& x) {
    Eigen::VectorXi q(n);
    for (int i = 0; i < n; ++i)
      q[i] = static_cast<int>(std::llround((x[i] - s.periodicity_->origin[i]) / s.periodicity_->stride));
    return q;
  };
  if (s.periodicity_) {
    periods.resize(n);
    for (int i = 0; i < n; ++i)
      periods[i] = static_cast<int>(std::llround(s.periodicity_->period[i] / s.periodicity_->stride));
  }

  // Global vertices.
  std::vector<std::vector<int>> local_to_pool(s.cells_.size());
  std::vector<Point> reps;
  if (s.periodicity_) {
    std::map<std::vector<int>, int> canon;
    for (std::size_t c = 0; c < s.cells_.size(); ++c)
      for (const auto& v : s.cells_[c].vertices()) {
        Eigen::VectorXi q = lattice(v);
        std::vector<int> k(n);
        for (int i = 0; i < n; ++i) k[i] = static_cast<int>(q[i] - floor_div(q[i], periods[i]) * periods[i]);
        auto [it, inserted] = canon.emplace(k, static_cast<int>(reps.size()));
        if (inserted) {
          Point p(n);
          for (int i = 0; i < n; ++i) p[i] = s.periodicity_->origin[i] + k[i] * s.periodicity_->stride;
          reps.push_back(p);
        }
        local_to_pool[c].push_back(it->second);
      }
  } else {
    VertexPool pool(tol.eps * 10.0);
    for (std::size_t c = 0; c < s.cells_.size(); ++c)
      for (const auto& v : s.cells_[c].vertices()) local_to_pool[c].push_back(pool.insert(v));
    reps = pool.points();
  }
  std::vector<int> order(reps.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return lex_less(reps[a], reps[b]); });
  std::vector<int> pool_to_id(reps.size());
  for (std::size_t i = 0; i < order.size(); ++i) pool_to_id[order[i]] = static_cast<int>(i);
  for (int idx : order) s.vertex_points_.push_back(reps[idx]);

  // Faces keyed by vertex ids, or by translated lattice coordinates on a torus.
  std::vector<TmpFace> tmp;
  std::map<std::vector<long long>, int> by_key;
  for (std::size_t c = 0; c < s.cells_.size(); ++c) {
    const auto& cell = s.cells_[c];
    const auto& lat = cell.lattice();
    std::vector<int> lat_to_tmp(lat.faces.size());
    for (std::size_t lf = 0; lf < lat.faces.size(); ++lf) {
      const auto& face = lat.faces[lf];
      std::vector<int> ids;
      for (int v : face.vertices) ids.push_back(pool_to_id[local_to_pool[c][v]]);
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      std::vector<long long> key{face.dim};
      Eigen::VectorXi shift = Eigen::VectorXi::Zero(n);
      if (s.periodicity_) {
        std::vector<Eigen::VectorXi> qs;
        for (int v : face.vertices) qs.push_back(lattice(cell.vertices()[v]));
        Eigen::VectorXi lo = qs.front();
        for (const auto& q : qs) lo = lo.cwiseMin(q);
        for (int i = 0; i < n; ++i) shift[i] = static_cast<int>(floor_div(lo[i], periods[i]));
        std::vector<std::vector<int>> translated;
        for (const auto& q : qs) {
          std::vector<int> t(n);
          for (int i = 0; i < n; ++i) t[i] = q[i] - shift[i] * periods[i];
          translated.push_back(t);
        }
        std::sort(translated.begin(), translated.end());
        for (const auto& t : translated) key.insert(key.end(), t.begin(), t.end());
      } else {
        key.insert(key.end(), ids.begin(), ids.end());
      }
      auto [it, inserted] = by_key.emplace(key, static_cast<int>(tmp.size()));
      if (inserted) {
        TmpFace tf;
        tf.dim = face.dim;
        tf.vertices = ids;
        tf.key = key;
        for (int v : face.vertices) tf.points.push_back(cell.vertices()[v]);
        tf.base_offset = shift;
        tmp.push_back(std::move(tf));
      }
      TmpFace& tf = tmp[it->second];
      tf.cells.push_back(static_cast<int>(c));
      tf.offsets.push_back(shift - tf.base_offset);
      if (face.dim == s.dim_) tf.member_cell = static_cast<int>(c);
      lat_to_tmp[lf] = it->second;
    }
    for (std::size_t lf = 0; lf < lat.faces.size(); ++lf)
      for (int ch : lat.faces[lf].children) tmp[lat_to_tmp[lf]].children.push_back(lat_to_tmp[ch]);
  }

  std::vector<int> forder(tmp.size());
  for (std::size_t i = 0; i < forder.size(); ++i) forder[i] = static_cast<int>(i);
  std::sort(forder.begin(), forder.end(), [&](int a, int b) {
    if (tmp[a].dim != tmp[b].dim) return tmp[a].dim < tmp[b].dim;
    if (tmp[a].vertices != tmp[b].vertices) return tmp[a].vertices < tmp[b].vertices;
    return tmp[a].key < tmp[b].key;
  });
  std::vector<int> tmp_to_id(tmp.size());
  for (std::size_t i = 0; i < forder.size(); ++i) tmp_to_id[forder[i]] = static_cast<int>(i);

  s.faces_.resize(tmp.size());
  s.by_dim_.assign(s.dim_ + 1, {});
  s.cell_face_.assign(s.cells_.size(), -1);
  s.face_cell_.assign(tmp.size(), -1);
  s.vertex_face_.assign(s.vertex_points_.size(), -1);
  for (std::size_t t = 0; t < tmp.size(); ++t) {
    const int id = tmp_to_id[t];
    TmpFace& tf = tmp[t];
    ComplexFace& f = s.faces_[id];
    f.dim = tf.dim;
    f.vertices = tf.vertices;
    f.geometry = tf.member_cell >= 0 ? s.cells_[tf.member_cell] : Polyhedron::from_points(tf.points, tol);
    f.cells = tf.cells;
    if (s.periodicity_) f.cell_offsets = tf.offsets;
    for (int ch : tf.children) f.children.push_back(tmp_to_id[ch]);
    std::sort(f.children.begin(), f.children.end());
    f.children.erase(std::unique(f.children.begin(), f.children.end()), f.children.end());
    if (tf.member_cell >= 0) {
      s.cell_face_[tf.member_cell] = id;
      s.face_cell_[id] = tf.member_cell;
    }
    if (f.dim == 0 && !f.vertices.empty()) s.vertex_face_[f.vertices.front()] = id;
  }
  for (std::size_t id = 0; id < s.faces_.size(); ++id) {
    s.by_dim_[s.faces_[id].dim].push_back(static_cast<int>(id));
    for (int ch : s.faces_[id].children) s.faces_[ch].parents.push_back(static_cast<int>(id));
  }
  s.stats_ = compute_stats(s);
  return s;
}

const std::vector<int>& Complex::faces_of_dim(int k) const {
  static const std::vector<int> none;
  if (k < 0 || k >= static_cast<int>(by_dim_.size())) return none;
  return by_dim_[k];
}

int Complex::face_cell(int face) const { return face_cell_.empty() ? -1 : face_cell_[face]; }

Eigen::VectorXi Complex::canonical_offset(const Point& x) const {
  Eigen::VectorXi k = Eigen::VectorXi::Zero(ambient_);
  if (!periodicity_) return k;
  for (int i = 0; i < ambient_; ++i) {
    const long long q = std::llround((x[i] - periodicity_->origin[i]) / periodicity_->stride);
    const long long per = std::llround(periodicity_->period[i] / periodicity_->stride);
    k[i] = static_cast<int>(floor_div(q, per));
  }
  return k;
}

std::vector<int> Complex::closure(int face) const {
  std::vector<int> out{face};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int ch : faces_[out[i]].children) out.push_back(ch);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int Complex::locate_host(int start, const std::vector<Point>& pts, double eps) const {
  int f = start;
  bool descended = true;
  while (descended) {
    descended = false;
    for (int ch : faces_[f].children) {
      const auto& g = faces_[ch].geometry;
      if (std::all_of(pts.begin(), pts.end(), [&](const Point& p) { return g.contains(p, eps); })) {
        f = ch;
        descended = true;
        break;
      }
    }
  }
  return f;
}

int Complex::locate_cell(const Point& x, double eps) const {
  for (std::size_t c = 0; c < cells_.size(); ++c)
    if (cells_[c].bounds().contains(x, eps) && cells_[c].contains(x, eps)) return static_cast<int>(c);
  return -1;
}

Box Complex::bounds() const {
  if (vertex_points_.empty()) return Box{Point::Zero(ambient_), Point::Zero(ambient_)};
  Box b = cells_.front().bounds();
  for (const auto& c : cells_) {
    const Box cb = c.bounds();
    b.lo = b.lo.cwiseMin(cb.lo);
    b.hi = b.hi.cwiseMax(cb.hi);
  }
  return b;
}

ComplexStats compute_stats(const Complex& s) {
  ComplexStats st;
  bool first = true;
  for (const auto& f : s.faces()) {
    ShapeStats sh;
    if (f.dim == 0) {
      sh.outer_radius = 0.0;
      sh.inner_radius = 0.0;
      sh.rotondity = 1.0;
    } else if (f.dim == 1) {
      sh.outer_radius = sh.inner_radius = 0.5 * f.geometry.volume();
      sh.rotondity = 1.0;
    } else {
      sh = shape_stats(f.geometry);
    }
    if (first) {
      st.min_rotondity = st.max_rotondity = sh.rotondity;
      st.min_outer_radius = st.max_outer_radius = sh.outer_radius;
      st.min_inner_radius = st.max_inner_radius = sh.inner_radius;
      first = false;
      continue;
    }
    st.min_rotondity = std::min(st.min_rotondity, sh.rotondity);
    st.max_rotondity = std::max(st.max_rotondity, sh.rotondity);
    st.min_outer_radius = std::min(st.min_outer_radius, sh.outer_radius);
    st.max_outer_radius = std::max(st.max_outer_radius, sh.outer_radius);
    st.min_inner_radius = std::min(st.min_inner_radius, sh.inner_radius);
    st.max_inner_radius = std::max(st.max_inner_radius, sh.inner_radius);
  }
  return st;
}

ValidationReport validate_complex(const Complex& s, const Tolerance& tol) {
  ValidationReport rep;
  const auto& cells = s.cells();
  std::vector<Box> cell_boxes;
  for (const auto& c : cells) cell_boxes.push_back(c.bounds());
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j)
      if (cell_boxes[i].overlaps(cell_boxes[j], tol.eps) && relative_interiors_intersect(cells[i], cells[j], tol))
        rep.cell_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));

  // Sweep along the first axis over face bounding boxes.
  const auto& faces = s.faces();
  std::vector<Box> boxes;
  for (const auto& f : faces) boxes.push_back(f.geometry.bounds());
  std::vector<int> order(faces.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return boxes[a].lo[0] < boxes[b].lo[0]; });
  for (std::size_t a = 0; a < order.size(); ++a) {
    const int i = order[a];
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const int j = order[b];
      if (boxes[j].lo[0] > boxes[i].hi[0] + tol.eps) break;
      if (!boxes[i].overlaps(boxes[j], tol.eps)) continue;
      if (s.face_cell(i) >= 0 && s.face_cell(j) >= 0) continue;
      if (relative_interiors_intersect(faces[i].geometry, faces[j].geometry, tol))
        rep.face_pairs.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  std::sort(rep.face_pairs.begin(), rep.face_pairs.end());
  rep.ok = rep.cell_pairs.empty() && rep.face_pairs.empty();
  return rep;
}

std::vector<int> boundary_faces(const Complex& s) {
  std::vector<int> out;
  for (int f : s.faces_of_dim(s.dim() - 1))
    if (s.face(f).cells.size() == 1) out.push_back(f);
  return out;
}

}  // namespace plateau
