#include "plateau/probe.hpp"

#include "plateau/optimizer.hpp"

#include <algorithm>
#include <random>

namespace plateau {

namespace {

Point centroid(const Complex& s, int f) {
  const auto& vs = s.face(f).geometry.vertices();
  Point c = Point::Zero(s.ambient_dim());
  for (const auto& v : vs) c += v;
  return c / static_cast<double>(vs.size());
}

std::vector<int> up_faces_of(const Complex& s, int cell_face, int dim) {
  std::vector<int> out;
  for (int g : s.closure(cell_face))
    if (s.face(g).dim == dim) out.push_back(g);
  return out;
}

}  // namespace

ProbeReport quasiminimality_probe(const Complex& s, const Skeleton& k, const ConstraintOracle& oracle,
                                  const DensityField& h, int d, const ProbeOptions& options) {
  ProbeReport report;
  if (options.trials <= 0) return report;
  const auto w = face_weights(s, d, h);
  std::vector<int> dk;
  for (int f : k.faces)
    if (s.face(f).dim == d) dk.push_back(f);
  if (dk.empty()) return report;

  // Candidate windows: sets of (d+1)-faces near the skeleton.
  std::vector<std::vector<int>> windows;
  if (options.radius > 0.0) {
    for (int f : dk) {
      const Point x = centroid(s, f);
      std::vector<int> win;
      for (int g : s.faces_of_dim(d + 1))
        if ((centroid(s, g) - x).norm() <= options.radius) win.push_back(g);
      windows.push_back(win);
    }
  } else {
    std::set<int> cells;
    for (int f : dk)
      for (int c : s.face(f).cells) cells.insert(c);
    for (int c : cells) windows.push_back(up_faces_of(s, s.cell_face(c), d + 1));
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick_window(0, windows.size() - 1);
  std::bernoulli_distribution coin(0.5);
  for (int t = 0; t < options.trials; ++t) {
    ++report.trials;
    const auto& win = windows[pick_window(rng)];
    std::set<int> image = k.faces;
    std::set<int> touched;
    bool blocked = false;
    std::vector<int> mine;
    for (int g : win)
      for (int c : s.face(g).children)
        if (s.face(c).dim == d && k.faces.count(c) && !k.frozen.count(c)) mine.push_back(c);
    std::sort(mine.begin(), mine.end());
    mine.erase(std::unique(mine.begin(), mine.end()), mine.end());
    if ((coin(rng) || win.empty()) && !mine.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, mine.size() - 1);
      const int f = mine[pick(rng)];
      image.erase(f);
      for (int c : s.face(f).children) image.insert(c);
      touched.insert(f);
    } else if (!win.empty()) {
      std::vector<int> chosen;
      for (int g : win)
        if (coin(rng)) chosen.push_back(g);
      if (chosen.empty()) chosen.push_back(win[std::uniform_int_distribution<std::size_t>(0, win.size() - 1)(rng)]);
      for (int g : chosen)
        for (int c : s.face(g).children) {
          if (s.face(c).dim != d) continue;
          touched.insert(c);
          if (image.count(c)) {
            if (k.frozen.count(c)) blocked = true;
            image.erase(c);
          } else {
            image.insert(c);
          }
        }
    } else {
      blocked = true;
    }
    if (blocked || !admissible(s, Skeleton{image, k.frozen}, oracle, d)) continue;
    ++report.admissible;
    // The moved part: d-faces of the window together with the touched faces.
    std::set<int> region(touched.begin(), touched.end());
    for (int g : win)
      for (int c : s.face(g).children)
        if (s.face(c).dim == d) region.insert(c);
    double before = 0.0, after = 0.0;
    for (int f : region) {
      if (k.faces.count(f)) before += w[f];
      if (image.count(f)) after += w[f];
    }
    if (before <= 0.0 && after <= 0.0) {
      ++report.skipped;
      continue;
    }
    const double ratio = after > 0.0 ? before / after : std::numeric_limits<double>::infinity();
    report.ratios.push_back(ratio);
    report.max_ratio = std::max(report.max_ratio, ratio);
  }
  return report;
}

std::vector<GaugeRow> gauge_table(const Complex& s, const Skeleton& k, const ConstraintOracle& oracle,
                                  const DensityField& h, int d, const std::vector<double>& deltas, int trials,
                                  std::uint64_t seed) {
  std::vector<GaugeRow> rows;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    ProbeOptions opt;
    opt.trials = trials;
    opt.seed = seed + i;
    opt.radius = deltas[i];
    const auto r = quasiminimality_probe(s, k, oracle, h, d, opt);
    rows.push_back({deltas[i], std::max(0.0, r.max_ratio - 1.0), static_cast<int>(r.ratios.size())});
  }
  return rows;
}

}  // namespace plateau
