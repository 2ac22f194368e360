#include "plateau/projection.hpp"

#include <cmath>
#include <optional>

namespace plateau {

namespace {

using Interval = std::pair<double, double>;

// {t in [0, 1] : a t^2 + b t + c <= 0}
std::vector<Interval> quadratic_nonpositive(double a, double b, double c) {
  auto f = [&](double t) { return (a * t + b) * t + c; };
  std::vector<double> cuts{0.0, 1.0};
  if (std::abs(a) > 1e-300) {
    const double disc = b * b - 4 * a * c;
    if (disc >= 0) {
      const double sq = std::sqrt(disc);
      for (double t : {(-b - sq) / (2 * a), (-b + sq) / (2 * a)})
        if (t > 0 && t < 1) cuts.push_back(t);
    }
  } else if (std::abs(b) > 1e-300) {
    const double t = -c / b;
    if (t > 0 && t < 1) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<Interval> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] <= 0) continue;
    if (f(0.5 * (cuts[i] + cuts[i + 1])) <= 0) out.emplace_back(cuts[i], cuts[i + 1]);
  }
  return out;
}


double total(const std::vector<Interval>& a) {
  double m = 0.0;
  for (const auto& x : a) m += x.second - x.first;
  return m;
}

Matrix span_basis(const std::vector<Point>& pts) {
  const int d = static_cast<int>(pts.size()) - 1;
  Matrix e(pts[0].size(), d);
  for (int i = 0; i < d; ++i) e.col(i) = pts[i + 1] - pts[0];
  Eigen::HouseholderQR<Matrix> qr(e);
  return qr.householderQ() * Matrix::Identity(pts[0].size(), d);
}

void accumulate(const Simplex& s, const PatchFit& fit, const ConeRegion& cone, double big, double cell,
                double& local, double& leak) {
  const Box b = Box::of_points(s.pts);
  Point lo = fit.center.array() - big, hi = fit.center.array() + big;
  if (!b.overlaps(Box{lo, hi})) return;
  if (s.pts.size() == 2) {
    const Point w = s.pts[0] - fit.center, e = s.pts[1] - s.pts[0];
    const Matrix& B = fit.plane_basis;
    const Point nw = w - B * (B.transpose() * w), ne = e - B * (B.transpose() * e);
    const double len = e.norm();
    const auto in_big = quadratic_nonpositive(e.squaredNorm(), 2 * w.dot(e), w.squaredNorm() - big * big);
    const double u2 = fit.u * fit.u;
    const auto in_cone = quadratic_nonpositive(ne.squaredNorm() - u2 * e.squaredNorm(), 2 * (nw.dot(ne) - u2 * w.dot(e)),
                                               nw.squaredNorm() - u2 * w.squaredNorm());
    double inside = 0.0;
    for (const auto& x : in_big)
      for (const auto& y : in_cone)
        inside += std::max(0.0, std::min(x.second, y.second) - std::max(x.first, y.first));
    local += len * total(in_big);
    leak += len * (total(in_big) - inside);
    return;
  }
  double longest = 0.0;
  for (std::size_t i = 0; i < s.pts.size(); ++i)
    for (std::size_t j = i + 1; j < s.pts.size(); ++j) longest = std::max(longest, (s.pts[i] - s.pts[j]).norm());
  if (longest > cell) {
    const auto [a, c] = bisect_longest_edge(s);
    accumulate(a, fit, cone, big, cell, local, leak);
    accumulate(c, fit, cone, big, cell, local, leak);
    return;
  }
  Point bary = Point::Zero(s.pts[0].size());
  for (const auto& p : s.pts) bary += p;
  bary /= static_cast<double>(s.pts.size());
  if ((bary - fit.center).norm() > big) return;
  const double m = simplex_volume(s.pts);
  local += m;
  if (!cone.contains(bary)) leak += m;
}

}  // namespace

std::pair<double, double> patch_leakage(const SimplicialSet& e, const PatchFit& fit) {
  const double big = fit.r * (1.0 + fit.rho);
  ConeRegion cone = fit.cone();
  cone.radius = big;
  double local = 0.0, leak = 0.0;
  for (const auto& s : e.simplices()) accumulate(s, fit, cone, big, big / 64.0, local, leak);
  return {local, leak};
}

std::vector<PatchFit> fit_patches(const SimplicialSet& e, const PatchOptions& options) {
  std::vector<PatchFit> fits;
  if (e.empty() || e.dim() == 0) return fits;
  const Box bb = e.bounds();
  const double diam = (bb.hi - bb.lo).norm();
  // Candidate centers: barycenters of simplices refined to at most diam / 8.
  std::vector<Simplex> cands;
  std::vector<Simplex> stack(e.simplices().begin(), e.simplices().end());
  while (!stack.empty()) {
    Simplex s = std::move(stack.back());
    stack.pop_back();
    double longest = 0.0;
    for (std::size_t i = 0; i < s.pts.size(); ++i)
      for (std::size_t j = i + 1; j < s.pts.size(); ++j) longest = std::max(longest, (s.pts[i] - s.pts[j]).norm());
    if (longest > diam / 8.0) {
      auto [a, b] = bisect_longest_edge(s);
      stack.push_back(std::move(b));
      stack.push_back(std::move(a));
    } else {
      cands.push_back(std::move(s));
    }
  }
  // Vitali-style greedy: each round takes the candidate admitting the largest
  // ball disjoint from the chosen ones (lowest index on ties).
  const double measure = e.measure();
  double covered = 0.0;
  std::vector<bool> used(cands.size(), false);
  while (static_cast<int>(fits.size()) < options.max_patches && covered < (1.0 - options.epsilon) * measure) {
    std::optional<PatchFit> best;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (used[i]) continue;
      PatchFit fit;
      fit.center = Point::Zero(e.ambient_dim());
      for (const auto& p : cands[i].pts) fit.center += p;
      fit.center /= static_cast<double>(cands[i].pts.size());
      fit.plane_point = fit.center;
      fit.plane_basis = span_basis(cands[i].pts);
      fit.u = options.aperture;
      fit.rho = options.rho;
      for (double r = diam; r >= diam / 256.0; r *= 0.5) {
        if (best && r <= best->r) break;
        bool disjoint = true;
        for (const auto& g : fits)
          if ((g.center - fit.center).norm() < (r + g.r) * (1.0 + options.rho)) disjoint = false;
        if (!disjoint) continue;
        fit.r = r;
        const auto [local, leak] = patch_leakage(e, fit);
        if (local <= 0.0 || leak > options.epsilon * local) continue;
        fit.local_measure = local;
        fit.leakage = leak / local;
        best = fit;
        best_i = i;
        break;
      }
    }
    if (!best) break;
    used[best_i] = true;
    covered += best->local_measure * (1.0 - best->leakage);
    fits.push_back(*best);
  }
  return fits;
}

}  // namespace plateau
