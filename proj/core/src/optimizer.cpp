#include "plateau/optimizer.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <random>

namespace plateau {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGain = 1e-12;

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

// Edge graph over vertex faces (d = 1).
struct EdgeGraph {
  std::map<int, std::vector<std::pair<int, int>>> adj;  // vertex face -> (edge face, other vertex face)
  std::map<int, std::pair<int, int>> ends;

  EdgeGraph(const Complex& s, const std::function<bool(int)>& usable) {
    for (int e : s.faces_of_dim(1)) {
      if (!usable(e)) continue;
      std::vector<int> vs;
      for (int c : s.face(e).children)
        if (s.face(c).dim == 0) vs.push_back(c);
      if (vs.size() != 2) continue;
      ends[e] = {vs[0], vs[1]};
      adj[vs[0]].push_back({e, vs[1]});
      adj[vs[1]].push_back({e, vs[0]});
    }
  }
};

// Multi-source Dijkstra; edges in `free_edges` cost nothing. Returns the edges
// of a cheapest path from `sources` to any target, or nothing.
std::vector<int> cheapest_path(const EdgeGraph& g, const std::set<int>& sources, const std::set<int>& targets,
                               const std::vector<double>& w, const std::set<int>& free_edges,
                               const std::function<bool(int)>& vertex_ok) {
  std::map<int, double> dist;
  std::map<int, std::pair<int, int>> via;  // vertex -> (edge, previous vertex)
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (int v : sources) {
    dist[v] = 0.0;
    pq.push({0.0, v});
  }
  while (!pq.empty()) {
    const auto [dv, v] = pq.top();
    pq.pop();
    if (dv > dist[v]) continue;
    if (targets.count(v)) {
      std::vector<int> path;
      for (int x = v; via.count(x); x = via[x].second) path.push_back(via[x].first);
      return path;
    }
    auto it = g.adj.find(v);
    if (it == g.adj.end()) continue;
    for (const auto& [e, u] : it->second) {
      if (!vertex_ok(u) && !targets.count(u)) continue;
      const double nd = dv + (free_edges.count(e) ? 0.0 : w[e]);
      auto du = dist.find(u);
      if (du == dist.end() || nd < du->second - 1e-15) {
        dist[u] = nd;
        via[u] = {e, v};
        pq.push({nd, u});
      }
    }
  }
  return {};
}

std::set<int> dfaces(const Complex& s, const std::set<int>& faces, int d) {
  std::set<int> out;
  for (int f : faces)
    if (s.face(f).dim == d) out.insert(f);
  return out;
}

class Search {
 public:
  Search(const Complex& s, const ConstraintOracle& o, int d, const std::vector<double>& w, std::set<int> frozen,
         const OptimizerConfig& cfg, std::vector<MoveRecord>& log)
      : s_(s), o_(o), d_(d), w_(w), frozen_(std::move(frozen)), cfg_(cfg), log_(log) {
    for (int f : s.faces_of_dim(d))
      if (!frozen_.count(f) && o.allowed(s, f)) universe_.push_back(f);
  }

  const std::vector<int>& universe() const { return universe_; }

  double value(const std::set<int>& faces) const { return skeleton_value(s_, faces, d_, w_); }

  bool adm(const std::set<int>& faces) const { return admissible(s_, Skeleton{faces, frozen_}, o_, d_); }

  void record(const std::string& move, int face, double delta, bool accepted) {
    if (log_.size() >= cfg_.log_cap) return;
    log_.push_back({iter_, move, face, delta, accepted});
  }

  // Branch and bound over subsets of the free faces; replaces `best` only on
  // a strictly smaller value.
  std::set<int> exhaustive(const std::set<int>& init) {
    std::set<int> best = init;
    double best_value = value(init);
    std::vector<int> order = universe_;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return w_[a] != w_[b] ? w_[a] < w_[b] : a < b; });
    std::set<int> base;
    for (int f : frozen_) base.insert(f);
    std::set<int> current = base;
    const bool monotone = o_.monotone();
    std::function<void(std::size_t, double)> branch = [&](std::size_t i, double v) {
      ++iter_;
      if (v >= best_value - kGain) return;
      if (monotone) {
        std::set<int> widest = current;
        widest.insert(order.begin() + static_cast<std::ptrdiff_t>(i), order.end());
        if (!adm(widest)) return;
        if (adm(current)) {
          best = current;
          best_value = v;
          record("exhaustive", -1, v, true);
          return;
        }
      }
      if (i == order.size()) {
        if (!monotone && adm(current)) {
          best = current;
          best_value = v;
          record("exhaustive", -1, v, true);
        }
        return;
      }
      const int f = order[i];
      current.insert(f);
      branch(i + 1, v + w_[f]);
      current.erase(f);
      branch(i + 1, v);
    };
    branch(0, 0.0);
    return best;
  }

  std::set<int> local(std::set<int> k) {
    for (int pass = 0; pass < cfg_.max_passes; ++pass) {
      ++iter_;
      bool improved = removals(k);
      improved = collapses(k) || improved;
      improved = swaps(k) || improved;
      if (!improved && d_ == 1 && o_.kind == ConstraintOracle::Kind::Connectivity) improved = key_paths(k);
      if (!improved && d_ == 1 && s_.dim() == 2 && o_.kind == ConstraintOracle::Kind::Separation &&
          !s_.periodicity())
        improved = reroute_cut(k);
      if (!improved) break;
    }
    return k;
  }

  std::set<int> perturb(const std::set<int>& k, std::mt19937_64& rng) {
    std::set<int> out = k;
    if (o_.monotone()) {
      std::bernoulli_distribution coin(cfg_.superset_fraction);
      for (int f : universe_)
        if (coin(rng)) out.insert(f);
      return out;
    }
    const auto& up = s_.faces_of_dim(d_ + 1);
    if (up.empty()) return out;
    std::uniform_int_distribution<std::size_t> pick(0, up.size() - 1);
    const int n = std::max<int>(1, static_cast<int>(k.size() / 4));
    for (int i = 0; i < n; ++i) {
      const int tau = up[pick(rng)];
      std::set<int> next = out;
      if (apply_boundary(next, tau)) out = std::move(next);
    }
    return out;
  }

  std::set<int> lower_core(std::set<int> k) {
    std::vector<int> lower;
    for (int f : k)
      if (s_.face(f).dim < d_ && !frozen_.count(f)) lower.push_back(f);
    std::sort(lower.rbegin(), lower.rend());
    for (int f : lower) {
      std::set<int> next = k;
      next.erase(f);
      if (adm(next)) {
        k = std::move(next);
        record("lower_core", f, 0.0, true);
      }
    }
    return k;
  }

 private:
  bool removals(std::set<int>& k) {
    std::vector<int> cand;
    for (int f : dfaces(s_, k, d_))
      if (!frozen_.count(f) && w_[f] > 0) cand.push_back(f);
    std::sort(cand.begin(), cand.end(), [&](int a, int b) { return w_[a] != w_[b] ? w_[a] > w_[b] : a < b; });
    bool any = false;
    for (int f : cand) {
      std::set<int> next = k;
      next.erase(f);
      const bool ok = adm(next);
      record("remove", f, -w_[f], ok);
      if (ok) {
        k = std::move(next);
        any = true;
      }
    }
    return any;
  }

  bool collapses(std::set<int>& k) {
    if (d_ == 0) return false;
    bool any = false;
    for (int f : dfaces(s_, k, d_)) {
      if (frozen_.count(f) || w_[f] <= 0 || !k.count(f)) continue;
      std::set<int> next = k;
      next.erase(f);
      for (int c : s_.face(f).children) next.insert(c);
      const bool ok = adm(next);
      if (ok) {
        record("collapse", f, -w_[f], true);
        k = std::move(next);
        any = true;
      }
    }
    return any;
  }

  // k <- k xor boundary(tau) on d-faces; false when a frozen or forbidden face blocks it.
  bool apply_boundary(std::set<int>& k, int tau) const {
    for (int c : s_.face(tau).children) {
      if (s_.face(c).dim != d_) continue;
      if (k.count(c)) {
        if (frozen_.count(c)) return false;
        k.erase(c);
      } else {
        if (!o_.allowed(s_, c)) return false;
        k.insert(c);
      }
    }
    return true;
  }

  bool swaps(std::set<int>& k) {
    std::set<int> taus;
    for (int f : dfaces(s_, k, d_))
      for (int p : s_.face(f).parents)
        if (s_.face(p).dim == d_ + 1) taus.insert(p);
    bool any = false;
    for (int tau : taus) {
      double delta = 0.0;
      bool touches = false;
      for (int c : s_.face(tau).children) {
        if (s_.face(c).dim != d_) continue;
        if (k.count(c)) {
          delta -= w_[c];
          touches = true;
        } else {
          delta += w_[c];
        }
      }
      if (!touches || delta > kGain) continue;
      std::set<int> next = k;
      if (!apply_boundary(next, tau)) continue;
      const bool better = delta < -kGain;
      if (!better && !(dfaces(s_, next, d_) < dfaces(s_, k, d_))) continue;
      const bool ok = adm(next);
      record("swap", tau, delta, ok);
      if (ok) {
        k = std::move(next);
        any = true;
      }
    }
    return any;
  }

  bool vertex_ok(int v) const { return o_.allowed(s_, v); }

  // Replaces a path between key vertices by a cheaper reconnection.
  bool key_paths(std::set<int>& k) {
    const std::set<int> terminals(o_.terminals.begin(), o_.terminals.end());
    const EdgeGraph all(s_, [&](int e) { return o_.allowed(s_, e); });
    const std::set<int> edges = dfaces(s_, k, 1);
    std::map<int, std::vector<std::pair<int, int>>> adj;
    for (int e : edges) {
      auto it = all.ends.find(e);
      if (it == all.ends.end()) continue;
      adj[it->second.first].push_back({e, it->second.second});
      adj[it->second.second].push_back({e, it->second.first});
    }
    auto is_key = [&](int v) { return terminals.count(v) || adj[v].size() != 2; };
    struct KeyPath {
      double len;
      std::vector<int> edges;
      int a, b;
    };
    std::set<int> seen;
    std::vector<KeyPath> paths;
    for (const auto& [v, inc] : adj) {
      if (!is_key(v)) continue;
      for (const auto& [e0, u0] : inc) {
        if (seen.count(e0)) continue;
        KeyPath p{w_[e0], {e0}, v, u0};
        seen.insert(e0);
        int prev_e = e0;
        while (!is_key(p.b)) {
          const auto& nx = adj[p.b];
          const auto& step = nx[0].first == prev_e ? nx[1] : nx[0];
          if (seen.count(step.first)) break;
          p.edges.push_back(step.first);
          p.len += w_[step.first];
          seen.insert(step.first);
          prev_e = step.first;
          p.b = step.second;
        }
        paths.push_back(std::move(p));
      }
    }
    std::sort(paths.begin(), paths.end(), [](const KeyPath& x, const KeyPath& y) { return x.len > y.len; });
    const double before = value(k);
    for (const auto& p : paths) {
      if (std::any_of(p.edges.begin(), p.edges.end(), [&](int e) { return frozen_.count(e) > 0; })) continue;
      std::set<int> rest = k;
      for (int e : p.edges) rest.erase(e);
      UnionFind uf(s_.faces().size());
      for (int e : dfaces(s_, rest, 1)) {
        auto it = all.ends.find(e);
        if (it != all.ends.end()) uf.unite(it->second.first, it->second.second);
      }
      if (uf.find(p.a) == uf.find(p.b)) {
        const double after = value(rest);
        if (after < before - kGain && adm(rest)) {
          record("key_path", p.edges.front(), after - before, true);
          k = std::move(rest);
          return true;
        }
        continue;
      }
      std::set<int> sources{p.a}, targets{p.b};
      for (const auto& [v, inc] : adj) {
        if (uf.find(v) == uf.find(p.a)) sources.insert(v);
        else if (uf.find(v) == uf.find(p.b)) targets.insert(v);
      }
      const auto q = cheapest_path(all, sources, targets, w_, {}, [&](int v) { return vertex_ok(v); });
      if (q.empty()) continue;
      std::set<int> next = rest;
      next.insert(q.begin(), q.end());
      const double after = value(next);
      if (after < before - kGain && adm(next)) {
        record("key_path", p.edges.front(), after - before, true);
        k = std::move(next);
        return true;
      }
    }
    return false;
  }

  // Replaces the whole skeleton by the union of exact minimum cuts.
  bool reroute_cut(std::set<int>& k) {
    std::set<int> next = frozen_;
    for (int f : k)
      if (s_.face(f).dim != d_) next.insert(f);
    for (const auto& [a, b] : o_.cell_pairs) {
      const auto cut = min_separating_cycle(s_, w_, a, b);
      next.insert(cut.begin(), cut.end());
    }
    const double delta = value(next) - value(k);
    if (delta < -kGain && adm(next)) {
      record("reroute", -1, delta, true);
      k = std::move(next);
      return true;
    }
    return false;
  }

  const Complex& s_;
  const ConstraintOracle& o_;
  int d_;
  const std::vector<double>& w_;
  std::set<int> frozen_;
  const OptimizerConfig& cfg_;
  std::vector<MoveRecord>& log_;
  std::vector<int> universe_;
  int iter_ = 0;
};

}  // namespace

std::vector<double> face_weights(const Complex& s, int d, const DensityField& h) {
  std::vector<double> w(s.faces().size(), 0.0);
  for (int f : s.faces_of_dim(d)) {
    const auto cyc = face_cycle(s, f);
    if (d == 0) {
      w[f] = 1.0;
    } else if (d == 1) {
      w[f] = weighted_simplex({cyc[0], cyc[1]}, h);
    } else if (d == 2) {
      double acc = 0.0;
      for (std::size_t i = 1; i + 1 < cyc.size(); ++i) acc += weighted_simplex({cyc[0], cyc[i], cyc[i + 1]}, h);
      w[f] = acc;
    } else {
      throw DimensionMismatch("face weights are defined for d <= 2");
    }
  }
  return w;
}

double skeleton_value(const Complex& s, const std::set<int>& faces, int d, const std::vector<double>& weights) {
  double v = 0.0;
  for (int f : faces)
    if (s.face(f).dim == d) v += weights[f];
  return v;
}

std::vector<std::vector<int>> core_decompose(const Complex& s, const Skeleton& k, int d) {
  std::vector<std::vector<int>> cores(static_cast<std::size_t>(d) + 1);
  for (int f : maximal_faces(s, k.faces)) {
    const int l = s.face(f).dim;
    if (l <= d) cores[l].push_back(f);
  }
  return cores;
}

std::set<int> connect_terminals(const Complex& s, const ConstraintOracle& oracle, const std::vector<double>& weights) {
  std::set<int> tree;
  if (oracle.terminals.empty()) return tree;
  const EdgeGraph g(s, [&](int e) { return oracle.allowed(s, e); });
  std::set<int> reached{oracle.terminals.front()};
  std::set<int> pending(oracle.terminals.begin() + 1, oracle.terminals.end());
  pending.erase(oracle.terminals.front());
  while (!pending.empty()) {
    const auto path = cheapest_path(g, reached, pending, weights, tree, [&](int v) { return oracle.allowed(s, v); });
    if (path.empty()) return {};
    for (int e : path) {
      tree.insert(e);
      reached.insert(g.ends.at(e).first);
      reached.insert(g.ends.at(e).second);
    }
    for (auto it = pending.begin(); it != pending.end();) it = reached.count(*it) ? pending.erase(it) : std::next(it);
  }
  return tree;
}

std::set<int> min_separating_cycle(const Complex& s, const std::vector<double>& weights, int cell_a, int cell_b) {
  if (s.dim() != 2 || cell_a == cell_b) return {};
  // Dual BFS path between the cells through interior edges.
  std::vector<int> prev_face(s.cells().size(), -1), prev_cell(s.cells().size(), -1);
  std::vector<bool> seen(s.cells().size(), false);
  std::queue<int> q;
  q.push(cell_a);
  seen[cell_a] = true;
  while (!q.empty()) {
    const int c = q.front();
    q.pop();
    for (int f : s.face(s.cell_face(c)).children) {
      const auto& cells = s.face(f).cells;
      if (s.face(f).dim != 1 || cells.size() != 2) continue;
      const int o = cells[0] == c ? cells[1] : cells[0];
      if (seen[o]) continue;
      seen[o] = true;
      prev_face[o] = f;
      prev_cell[o] = c;
      q.push(o);
    }
  }
  if (!seen[cell_b]) return {};
  std::set<int> crossing;
  for (int c = cell_b; c != cell_a; c = prev_cell[c]) crossing.insert(prev_face[c]);

  // Primal graph with every boundary vertex merged into one node.
  std::set<int> outer;
  for (int f : boundary_faces(s))
    for (int v : s.face(f).children)
      if (s.face(v).dim == 0) outer.insert(v);
  constexpr int kOmega = -1;
  auto node = [&](int v) { return outer.count(v) ? kOmega : v; };
  struct Arc {
    int to, edge, flip;
  };
  std::map<int, std::vector<Arc>> adj;
  for (int e : s.faces_of_dim(1)) {
    if (s.face(e).cells.size() != 2) continue;
    std::vector<int> vs;
    for (int v : s.face(e).children)
      if (s.face(v).dim == 0) vs.push_back(node(v));
    const int flip = crossing.count(e) ? 1 : 0;
    adj[vs[0]].push_back({vs[1], e, flip});
    if (vs[0] != vs[1]) adj[vs[1]].push_back({vs[0], e, flip});
  }

  double best = kInf;
  std::vector<int> best_walk;
  std::set<int> starts;
  for (int e : crossing)
    for (int v : s.face(e).children)
      if (s.face(v).dim == 0) starts.insert(node(v));
  using State = std::pair<int, int>;
  for (int start : starts) {
    std::map<State, double> dist;
    std::map<State, std::pair<State, int>> via;
    using Item = std::pair<double, State>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[{start, 0}] = 0.0;
    pq.push({0.0, {start, 0}});
    const State goal{start, 1};
    while (!pq.empty()) {
      const auto [dv, st] = pq.top();
      pq.pop();
      if (dv > dist[st] || dv >= best) continue;
      if (st == goal) {
        best = dv;
        best_walk.clear();
        for (State x = goal; via.count(x); x = via[x].first) best_walk.push_back(via[x].second);
        break;
      }
      for (const auto& a : adj[st.first]) {
        const State nx{a.to, st.second ^ a.flip};
        const double nd = dv + weights[a.edge];
        auto it = dist.find(nx);
        if (it == dist.end() || nd < it->second - 1e-15) {
          dist[nx] = nd;
          via[nx] = {st, a.edge};
          pq.push({nd, nx});
        }
      }
    }
  }
  std::map<int, int> parity;
  for (int e : best_walk) parity[e] ^= 1;
  std::set<int> cut;
  for (const auto& [e, p] : parity)
    if (p) cut.insert(e);
  return cut;
}

OptimizationOutcome optimize(const Complex& s, const Skeleton& init, const ConstraintOracle& oracle,
                             const DensityField& h, int d, const OptimizerConfig& config) {
  if (d < 0 || d >= s.dim() + 1) throw DimensionMismatch("skeleton dimension out of range");
  for (int f : init.faces)
    if (f < 0 || f >= static_cast<int>(s.faces().size())) throw InitInadmissible("face id out of range");
  if (!admissible(s, init, oracle, d)) throw InitInadmissible("initial skeleton violates the constraint");

  OptimizationOutcome out;
  const auto w = face_weights(s, d, h);
  std::set<int> frozen = init.frozen;
  // Terminals lie in every admissible skeleton; holding them lets a lone
  // terminal be served without any d-face.
  if (oracle.kind == ConstraintOracle::Kind::Connectivity)
    for (int t : oracle.terminals)
      if (s.face(t).dim < d) frozen.insert(t);
  Search search(s, oracle, d, w, frozen, config, out.log);

  std::set<int> best = init.faces;
  if (config.allow_exhaustive && static_cast<int>(search.universe().size()) <= config.exhaustive_cap) {
    best = search.exhaustive(init.faces);
    out.certificate = Certificate::Exhaustive;
  } else {
    best = search.local(best);
    std::mt19937_64 rng(config.seed);
    for (int r = 0; r < config.restarts; ++r) {
      std::set<int> start = search.perturb(best, rng);
      if (!search.adm(start)) continue;
      std::set<int> cand = search.local(start);
      if (search.value(cand) < search.value(best) - kGain) best = std::move(cand);
    }
    out.certificate = Certificate::Local;
  }
  if (config.lower_core_pass) best = search.lower_core(best);
  for (int f : frozen) best.insert(f);

  out.skeleton = Skeleton{best, frozen};
  if (!admissible(s, out.skeleton, oracle, d)) throw std::logic_error("optimizer produced an inadmissible skeleton");
  out.value = skeleton_value(s, best, d, w);
  out.cores = core_decompose(s, out.skeleton, d);
  return out;
}

}  // namespace plateau
