#include "plateau/oracle.hpp"

#include <map>
#include <numeric>

namespace plateau {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

bool open_inside(const Box& b, const Point& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x[i] <= b.lo[i] + 1e-12 || x[i] >= b.hi[i] - 1e-12) return false;
  return true;
}

bool connectivity_ok(const Complex& s, const Skeleton& k, const ConstraintOracle& o) {
  if (o.terminals.empty()) return true;
  const std::set<int> present = closure_of(s, k.faces);
  for (int t : o.terminals)
    if (!present.count(t)) return false;
  // Faces are nodes; a face joins every allowed vertex in its closure.
  UnionFind uf(s.faces().size());
  std::set<int> terminal_set(o.terminals.begin(), o.terminals.end());
  for (int f : k.faces) {
    if (!o.allowed(s, f) && !terminal_set.count(f)) continue;
    for (int g : s.closure(f))
      if (s.face(g).dim == 0 && (terminal_set.count(g) || o.allowed(s, g))) uf.unite(f, g);
  }
  const int root = uf.find(o.terminals.front());
  for (int t : o.terminals)
    if (uf.find(t) != root) return false;
  return true;
}

bool separation_ok(const Complex& s, const Skeleton& k, const ConstraintOracle& o) {
  UnionFind uf(s.cells().size());
  for (int f : s.faces_of_dim(s.dim() - 1)) {
    if (k.faces.count(f)) continue;
    const auto& cells = s.face(f).cells;
    for (std::size_t i = 1; i < cells.size(); ++i) uf.unite(cells[0], cells[i]);
  }
  for (const auto& [a, b] : o.cell_pairs)
    if (uf.find(a) == uf.find(b)) return false;
  return true;
}

// Potentials in the universal cover; an inconsistency along `axis` means a
// wrapping cycle.
class LiftedGraph {
 public:
  explicit LiftedGraph(std::size_t n) : adj_(n) {}
  void add(int a, int b, const Eigen::VectorXi& shift) {
    adj_[a].push_back({b, shift});
    adj_[b].push_back({a, -shift});
  }
  bool wraps(int axis) const {
    std::vector<std::optional<Eigen::VectorXi>> pos(adj_.size());
    for (std::size_t r = 0; r < adj_.size(); ++r) {
      if (pos[r] || adj_[r].empty()) continue;
      pos[r] = Eigen::VectorXi::Zero(dim());
      std::vector<int> stack{static_cast<int>(r)};
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const auto& [w, shift] : adj_[v]) {
          const Eigen::VectorXi p = *pos[v] + shift;
          if (!pos[w]) {
            pos[w] = p;
            stack.push_back(w);
          } else if ((*pos[w])[axis] != p[axis]) {
            return true;
          }
        }
      }
    }
    return false;
  }

 private:
  int dim() const {
    for (const auto& a : adj_)
      if (!a.empty()) return static_cast<int>(a.front().second.size());
    return 0;
  }
  std::vector<std::vector<std::pair<int, Eigen::VectorXi>>> adj_;
};

bool periodic_ok(const Complex& s, const Skeleton& k, const ConstraintOracle& o, int d) {
  if (!s.periodicity()) throw DimensionMismatch("periodic oracle needs a torus complex");
  const int n = s.dim();
  if (o.direction < 0 || o.direction >= n) throw DimensionMismatch("torus direction out of range");
  if (d == 1) {
    LiftedGraph g(s.vertex_points().size());
    for (int f : k.faces) {
      const auto& face = s.face(f);
      if (face.dim != 1) continue;
      const auto& ends = face.geometry.vertices();
      const Eigen::VectorXi oa = s.canonical_offset(ends[0]), ob = s.canonical_offset(ends[1]);
      // Identify which canonical vertex each endpoint is.
      int va = -1, vb = -1;
      for (int v : face.vertices) {
        const Point shifted_a = ends[0] - (oa.cast<double>().array() * s.periodicity()->period.array()).matrix();
        const Point shifted_b = ends[1] - (ob.cast<double>().array() * s.periodicity()->period.array()).matrix();
        if ((s.vertex_points()[v] - shifted_a).norm() < 1e-7) va = v;
        if ((s.vertex_points()[v] - shifted_b).norm() < 1e-7) vb = v;
      }
      if (va < 0 || vb < 0) continue;
      g.add(va, vb, ob - oa);
    }
    return g.wraps(o.direction);
  }
  if (d == n - 1) {
    // The skeleton must cut every dual loop along the direction.
    LiftedGraph g(s.cells().size());
    for (int f : s.faces_of_dim(n - 1)) {
      if (k.faces.count(f)) continue;
      const auto& face = s.face(f);
      for (std::size_t i = 1; i < face.cells.size(); ++i)
        g.add(face.cells[0], face.cells[i], face.cell_offsets[0] - face.cell_offsets[i]);
    }
    return !g.wraps(o.direction);
  }
  throw DimensionMismatch("periodic oracle supports d = 1 or d = n - 1");
}

}  // namespace

ConstraintOracle ConstraintOracle::connectivity(std::vector<int> terminals) {
  ConstraintOracle o;
  o.kind = Kind::Connectivity;
  o.terminals = std::move(terminals);
  return o;
}

ConstraintOracle ConstraintOracle::separation(std::vector<std::pair<int, int>> cell_pairs) {
  ConstraintOracle o;
  o.kind = Kind::Separation;
  o.cell_pairs = std::move(cell_pairs);
  return o;
}

ConstraintOracle ConstraintOracle::periodic_cycle(int direction) {
  ConstraintOracle o;
  o.kind = Kind::PeriodicCycle;
  o.direction = direction;
  return o;
}

ConstraintOracle ConstraintOracle::spanning(std::set<int> frame) {
  ConstraintOracle o;
  o.kind = Kind::Spanning;
  o.frame = std::move(frame);
  return o;
}

ConstraintOracle ConstraintOracle::custom(std::function<bool(const Complex&, const Skeleton&)> predicate,
                                          bool monotone) {
  ConstraintOracle o;
  o.kind = Kind::Custom;
  o.predicate = std::move(predicate);
  o.custom_monotone = monotone;
  return o;
}

bool ConstraintOracle::monotone() const {
  switch (kind) {
    case Kind::Connectivity:
    case Kind::Separation:
    case Kind::PeriodicCycle:
      return true;
    case Kind::Spanning:
      return false;
    case Kind::Custom:
      return custom_monotone;
  }
  return false;
}

bool ConstraintOracle::allowed(const Complex& s, int face) const {
  if (kind != Kind::Connectivity) return true;
  const Point c = s.face(face).geometry.centroid();
  if (domain && !open_inside(*domain, c)) return false;
  for (const auto& ob : obstacles)
    if (ob.contains(c, 1e-12)) return false;
  return true;
}

std::set<int> mod2_boundary(const Complex& s, const std::set<int>& faces, int d) {
  std::map<int, int> count;
  for (int f : faces)
    if (s.face(f).dim == d)
      for (int c : s.face(f).children) ++count[c];
  std::set<int> out;
  for (const auto& [f, c] : count)
    if (c % 2) out.insert(f);
  return out;
}

bool admissible(const Complex& s, const Skeleton& k, const ConstraintOracle& oracle, int d) {
  if (d < 0 || d >= s.dim()) throw DimensionMismatch("skeleton dimension must be below the complex dimension");
  switch (oracle.kind) {
    case ConstraintOracle::Kind::Connectivity:
      return connectivity_ok(s, k, oracle);
    case ConstraintOracle::Kind::Separation:
      if (d != s.dim() - 1) throw DimensionMismatch("separation needs d = n - 1");
      return separation_ok(s, k, oracle);
    case ConstraintOracle::Kind::PeriodicCycle:
      return periodic_ok(s, k, oracle, d);
    case ConstraintOracle::Kind::Spanning:
      return mod2_boundary(s, k.faces, d) == oracle.frame;
    case ConstraintOracle::Kind::Custom:
      return oracle.predicate(s, k);
  }
  return false;
}

}  // namespace plateau
