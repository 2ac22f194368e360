#pragma once

// Reference computations that share no code with the library.

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boykov_kolmogorov_max_flow.hpp>
#include <boost/graph/dijkstra_shortest_paths.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

struct WeightedEdge {
  int a, b;
  double w;
};

/// Max-flow value between s and t on an undirected capacitated graph.
inline double max_flow(int nodes, const std::vector<WeightedEdge>& edges, int s, int t) {
  using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
  using Graph = boost::adjacency_list<
      boost::vecS, boost::vecS, boost::directedS, boost::property<boost::vertex_index_t, long,
      boost::property<boost::vertex_color_t, boost::default_color_type,
      boost::property<boost::vertex_distance_t, long,
      boost::property<boost::vertex_predecessor_t, Traits::edge_descriptor>>>>,
      boost::property<boost::edge_capacity_t, double,
      boost::property<boost::edge_residual_capacity_t, double,
      boost::property<boost::edge_reverse_t, Traits::edge_descriptor>>>>;
  Graph g(nodes);
  auto cap = boost::get(boost::edge_capacity, g);
  auto rev = boost::get(boost::edge_reverse, g);
  auto arc = [&](int u, int v, double c) {
    auto e1 = boost::add_edge(u, v, g).first;
    auto e2 = boost::add_edge(v, u, g).first;
    cap[e1] = c;
    cap[e2] = 0.0;
    rev[e1] = e2;
    rev[e2] = e1;
  };
  for (const auto& e : edges) {
    arc(e.a, e.b, e.w);
    arc(e.b, e.a, e.w);
  }
  return boost::boykov_kolmogorov_max_flow(g, s, t);
}

/// Shortest-path distance on an undirected weighted graph.
inline double shortest_path(int nodes, const std::vector<WeightedEdge>& edges, int s, int t) {
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                                      boost::property<boost::edge_weight_t, double>>;
  Graph g(nodes);
  for (const auto& e : edges) boost::add_edge(e.a, e.b, e.w, g);
  std::vector<double> dist(nodes);
  boost::dijkstra_shortest_paths(g, s, boost::distance_map(dist.data()));
  return dist[t];
}

using P2 = std::array<double, 2>;

inline double rectilinear_mst(std::vector<P2> pts) {
  const std::size_t n = pts.size();
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<bool> in(n, false);
  best[0] = 0.0;
  double total = 0.0;
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t u = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!in[i] && (u == n || best[i] < best[u])) u = i;
    in[u] = true;
    total += best[u];
    for (std::size_t i = 0; i < n; ++i)
      if (!in[i]) best[i] = std::min(best[i], std::abs(pts[i][0] - pts[u][0]) + std::abs(pts[i][1] - pts[u][1]));
  }
  return total;
}

/// Rectilinear Steiner minimal tree length by exhaustive search over subsets
/// of Hanan-grid points (at most k - 2 Steiner points).
inline double hanan_steiner(const std::vector<P2>& terminals) {
  std::set<double> xs, ys;
  for (const auto& p : terminals) {
    xs.insert(p[0]);
    ys.insert(p[1]);
  }
  std::vector<P2> hanan;
  for (double x : xs)
    for (double y : ys) {
      const P2 q{x, y};
      if (std::find(terminals.begin(), terminals.end(), q) == terminals.end()) hanan.push_back(q);
    }
  const std::size_t extra = terminals.size() >= 2 ? terminals.size() - 2 : 0;
  double best = rectilinear_mst(terminals);
  std::function<void(std::size_t, std::vector<P2>&, std::size_t)> rec = [&](std::size_t from, std::vector<P2>& cur,
                                                                            std::size_t left) {
    best = std::min(best, rectilinear_mst(cur));
    if (left == 0) return;
    for (std::size_t i = from; i < hanan.size(); ++i) {
      cur.push_back(hanan[i]);
      rec(i + 1, cur, left - 1);
      cur.pop_back();
    }
  };
  std::vector<P2> cur = terminals;
  rec(0, cur, extra);
  return best;
}

/// Composite Simpson rule for the integral of f along the segment a-b.
template <class F>
double segment_integral(const std::vector<double>& a, const std::vector<double>& b, F f, int panels = 2000) {
  double len = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) len += (b[i] - a[i]) * (b[i] - a[i]);
  len = std::sqrt(len);
  auto at = [&](double t) {
    std::vector<double> x(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) x[i] = a[i] + t * (b[i] - a[i]);
    return f(x);
  };
  const int m = panels * 2;
  double s = at(0.0) + at(1.0);
  for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * at(static_cast<double>(i) / m);
  return s * len / (3.0 * m);
}

/// Length of the polyline through the points.
inline double polyline_length(const std::vector<std::vector<double>>& pts) {
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < pts[i].size(); ++j) s += (pts[i][j] - pts[i - 1][j]) * (pts[i][j] - pts[i - 1][j]);
    total += std::sqrt(s);
  }
  return total;
}

/// Brute-force symmetric Hausdorff distance of two point clouds.
inline double brute_hausdorff(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto one_sided = [](const auto& p, const auto& q) {
    double worst = 0.0;
    for (const auto& x : p) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& y : q) {
        double s = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) s += (x[j] - y[j]) * (x[j] - y[j]);
        best = std::min(best, std::sqrt(s));
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

}  // namespace oracle
