#include "plateau/driver.hpp"

#include <cmath>

namespace plateau {

namespace {

Point face_centroid(const Complex& s, int f) {
  const auto& vs = s.face(f).geometry.vertices();
  Point c = Point::Zero(s.ambient_dim());
  for (const auto& v : vs) c += v;
  return c / static_cast<double>(vs.size());
}

int nearest_vertex_face(const Complex& s, const Point& x) {
  const auto& pts = s.vertex_points();
  int best = -1;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double dist = (pts[i] - x).norm();
    if (dist < bd - 1e-12) {
      bd = dist;
      best = static_cast<int>(i);
    }
  }
  if (best < 0) throw EmptyRegion("complex has no vertices");
  return s.vertex_face(best);
}

bool on_polyline(const Point& x, const std::vector<Point>& loop, double eps) {
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Point& a = loop[i];
    const Point& b = loop[(i + 1) % loop.size()];
    const Point ab = b - a;
    const double t = std::clamp((x - a).dot(ab) / std::max(ab.squaredNorm(), 1e-300), 0.0, 1.0);
    if ((a + t * ab - x).norm() <= eps) return true;
  }
  return false;
}

std::set<int> frame_faces(const Complex& s, const std::vector<Point>& loop, int d, double eps) {
  std::set<int> out;
  if (d < 1) return out;
  for (int f : s.faces_of_dim(d - 1)) {
    bool all = on_polyline(face_centroid(s, f), loop, eps);
    for (const auto& v : s.face(f).geometry.vertices()) all = all && on_polyline(v, loop, eps);
    if (all) out.insert(f);
  }
  return out;
}

// d-faces lying in the plane of a planar frame loop and inside it.
std::set<int> planar_filling(const Complex& s, const std::vector<Point>& loop, int d, double eps) {
  std::set<int> out;
  if (loop.size() < 3 || s.ambient_dim() != 3 || d != 2) return out;
  Eigen::Vector3d normal = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Eigen::Vector3d a = loop[i].head<3>(), b = loop[(i + 1) % loop.size()].head<3>();
    normal += a.cross(b);
  }
  if (normal.norm() < 1e-12) return out;
  normal.normalize();
  const Eigen::Vector3d o = loop[0].head<3>();
  Eigen::Vector3d u = (loop[1].head<3>() - o).normalized();
  Eigen::Vector3d v = normal.cross(u);
  auto inside = [&](const Point& x) {
    const Eigen::Vector3d p = x.head<3>() - o;
    const double px = p.dot(u), py = p.dot(v);
    bool in = false;
    for (std::size_t i = 0, j = loop.size() - 1; i < loop.size(); j = i++) {
      const Eigen::Vector3d a = loop[i].head<3>() - o, b = loop[j].head<3>() - o;
      const double ax = a.dot(u), ay = a.dot(v), bx = b.dot(u), by = b.dot(v);
      if ((ay > py) != (by > py) && px < (bx - ax) * (py - ay) / (by - ay) + ax) in = !in;
    }
    return in;
  };
  for (int f : s.faces_of_dim(2)) {
    bool flat = true;
    for (const auto& x : s.face(f).geometry.vertices())
      flat = flat && std::abs((x.head<3>() - o).dot(normal)) <= eps;
    if (flat && inside(face_centroid(s, f))) out.insert(f);
  }
  return out;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t k) { return seed ^ (0x9E3779B97F4A7C15ULL * (k + 1)); }

// Oriented lattice patch around one fitted cone, plus its hole in the outer lattice.
std::optional<std::pair<Complex, Box>> make_patch(const ProblemSpec& spec, const PatchFit& fit,
                                                  const SimplicialSet& source, double stride) {
  const int n = spec.n();
  const int d = static_cast<int>(fit.plane_basis.cols());
  Matrix q = Matrix::Zero(n, n);
  q.leftCols(d) = fit.plane_basis;
  // Orthonormal complement by Gram-Schmidt over the axes.
  int col = d;
  for (int axis = 0; axis < n && col < n; ++axis) {
    Point e = Point::Zero(n);
    e[axis] = 1.0;
    for (int j = 0; j < col; ++j) e -= q.col(j).dot(e) * q.col(j);
    if (e.norm() > 1e-6) q.col(col++) = e.normalized();
  }
  // Center the patch on the extent of the nearby set along the plane axes.
  const double reach = fit.r * (1.0 + fit.rho);
  std::vector<double> lo_t(d, std::numeric_limits<double>::infinity()), hi_t(d, -lo_t[0]);
  for (const auto& sx : source.simplices())
    for (const auto& x : sx.pts) {
      if ((x - fit.center).norm() > reach + 1e-12) continue;
      for (int i = 0; i < d; ++i) {
        const double t = (x - fit.plane_point).dot(q.col(i));
        lo_t[i] = std::min(lo_t[i], t);
        hi_t[i] = std::max(hi_t[i], t);
      }
    }
  if (!(hi_t[0] > lo_t[0] + 1e-12)) return std::nullopt;
  Point c = fit.plane_point;
  std::vector<double> half(d);
  for (int i = 0; i < d; ++i) {
    c += 0.5 * (lo_t[i] + hi_t[i]) * q.col(i);
    half[i] = 0.5 * (hi_t[i] - lo_t[i]);
  }
  const int m0 = std::max(1, static_cast<int>(std::lround(half[0] / stride)));
  const double sp = half[0] / m0;
  Index lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    const int m = i < d ? std::max(1, static_cast<int>(std::lround(half[i] / sp))) : spec.patch_width;
    lo[i] = -m;
    hi[i] = m;
  }
  DyadicGridSpec gs{sp, Frame{c, q}, DyadicGridSpec::block(lo, hi)};
  Complex patch = build_dyadic(gs);
  Box hole = patch.bounds();
  for (int i = 0; i < n; ++i) {
    const double l = hole.lo[i] - 2 * stride - spec.domain.lo[i];
    const double h = hole.hi[i] + 2 * stride - spec.domain.lo[i];
    hole.lo[i] = spec.domain.lo[i] + std::floor(l / stride + 1e-9) * stride;
    hole.hi[i] = spec.domain.lo[i] + std::ceil(h / stride - 1e-9) * stride;
    if (hole.lo[i] < spec.domain.lo[i] - 1e-9 || hole.hi[i] > spec.domain.hi[i] + 1e-9) return std::nullopt;
  }
  return std::make_pair(std::move(patch), hole);
}

}  // namespace

DensityField DensitySpec::build() const {
  if (kind == "constant") return DensityField::constant(value);
  if (kind == "radial") return DensityField::radial(center, profile);
  if (kind == "cellwise") return DensityField::cellwise(origin, stride, cells, fallback);
  throw ConfigError("unknown density kind '" + kind + "'");
}

void ProblemSpec::validate() const {
  const int dim = n();
  if (dim < 2 || dim > 3) throw DimensionMismatch("ambient dimension must be 2 or 3");
  if (d < 0 || d >= dim) throw DimensionMismatch("d = " + std::to_string(d) + " needs 0 <= d < n = " + std::to_string(dim));
  for (int i = 0; i < dim; ++i)
    if (!(domain.hi[i] > domain.lo[i])) throw EmptyRegion("domain box is empty");
  if (r0 <= 0 || levels < 1) throw ConfigError("schedule needs r0 > 0 and levels >= 1");
  auto check = [&](const Point& p) {
    if (p.size() != dim) throw DimensionMismatch("point dimension differs from the domain");
  };
  for (const auto& t : terminals) check(t);
  for (const auto& [a, b] : separate) {
    check(a);
    check(b);
  }
  for (const auto& p : frame) check(p);
  if (oracle == OracleKind::Separation && d != dim - 1) throw DimensionMismatch("separation needs d = n - 1");
  if (oracle == OracleKind::Connectivity && terminals.size() < 2) throw ConfigError("connectivity needs two terminals");
  if (oracle == OracleKind::Separation && separate.empty()) throw ConfigError("separation needs a cell pair");
  if (oracle == OracleKind::Spanning && frame.size() < 3) throw ConfigError("spanning needs a closed frame");
  if (oracle == OracleKind::Periodic && !periodic) throw ConfigError("periodic oracle needs a periodic domain");
  if (!input.empty() && input.dim() != d) throw DimensionMismatch("input set dimension differs from d");
}

std::vector<Box> convergence_windows(const Box& domain) {
  return {domain.scaled(0.9), domain.scaled(0.75), domain.scaled(0.5)};
}

std::pair<Complex, std::optional<MergeReport>> build_stride_complex(const ProblemSpec& spec, double stride,
                                                                     const SimplicialSet* patch_source) {
  const int n = spec.n();
  DyadicGridSpec gs;
  gs.stride = stride;
  gs.frame = Frame::axis_aligned(n);
  gs.frame.origin = spec.domain.lo;
  Index hi(n);
  for (int i = 0; i < n; ++i)
    hi[i] = static_cast<int>(std::ceil((spec.domain.hi[i] - spec.domain.lo[i]) / stride - 1e-9));
  if (spec.periodic) return {build_periodic(gs, PeriodicTopology{spec.domain.hi - spec.domain.lo}), std::nullopt};
  gs.index_set = DyadicGridSpec::block(Index::Zero(n), hi);
  Complex s = build_dyadic(gs);
  for (const auto& b : spec.obstacles) s = carve_box(s, b);
  if (!spec.patches || !patch_source || patch_source->empty()) return {std::move(s), std::nullopt};

  std::vector<Complex> patches;
  std::vector<Box> holes;
  for (const auto& fit : fit_patches(*patch_source, spec.patch_options)) {
    auto made = make_patch(spec, fit, *patch_source, stride);
    if (!made) continue;
    bool clash = false;
    for (const auto& h : holes) clash = clash || h.overlaps(made->second, -1e-9);
    if (clash) continue;
    s = carve_box(s, made->second);
    holes.push_back(made->second);
    patches.push_back(std::move(made->first));
  }
  if (patches.empty()) return {std::move(s), std::nullopt};
  auto [merged, report] = merge(s, patches);
  return {std::move(merged), report};
}

ConstraintOracle make_oracle(const ProblemSpec& spec, const Complex& s) {
  switch (spec.oracle) {
    case OracleKind::Connectivity: {
      std::vector<int> ts;
      for (const auto& t : spec.terminals) ts.push_back(nearest_vertex_face(s, t));
      auto o = ConstraintOracle::connectivity(ts);
      if (!spec.periodic) o.domain = spec.domain;
      o.obstacles = spec.obstacles;
      return o;
    }
    case OracleKind::Separation: {
      std::vector<std::pair<int, int>> pairs;
      for (const auto& [a, b] : spec.separate) {
        const int ca = s.locate_cell(a), cb = s.locate_cell(b);
        if (ca < 0 || cb < 0) throw EmptyRegion("separation point outside the complex");
        pairs.push_back({ca, cb});
      }
      return ConstraintOracle::separation(pairs);
    }
    case OracleKind::Periodic:
      return ConstraintOracle::periodic_cycle(spec.axis);
    case OracleKind::Spanning:
      return ConstraintOracle::spanning(frame_faces(s, spec.frame, spec.d, 1e-9));
  }
  throw ConfigError("unknown oracle");
}

namespace {

Skeleton fallback_init(const ProblemSpec& spec, const Complex& s, const ConstraintOracle& o,
                       const std::vector<double>& w) {
  Skeleton k;
  switch (spec.oracle) {
    case OracleKind::Connectivity:
      if (spec.d == 1) k.faces = connect_terminals(s, o, w);
      if (k.faces.empty())
        for (int f : s.faces_of_dim(spec.d))
          if (o.allowed(s, f)) k.faces.insert(f);
      break;
    case OracleKind::Separation:
    case OracleKind::Periodic:
      for (int f : s.faces_of_dim(spec.d)) k.faces.insert(f);
      break;
    case OracleKind::Spanning:
      k.faces = planar_filling(s, spec.frame, spec.d, 1e-9);
      break;
  }
  for (int t : o.terminals) {
    k.faces.insert(t);
    k.frozen.insert(t);
  }
  return k;
}

}  // namespace

RunReport run(const ProblemSpec& spec) {
  spec.validate();
  const DensityField h = spec.density.build();
  const auto windows = convergence_windows(spec.domain);
  RunReport report;
  std::vector<SimplicialSet> sequence;
  std::optional<SimplicialSet> previous;
  int calm = 0;

  for (int k = 0; k < spec.levels; ++k) {
    StrideRecord rec;
    rec.k = k;
    rec.stride = spec.r0 * std::ldexp(1.0, -k);
    const SimplicialSet* source = spec.input.empty() ? nullptr : &spec.input;
    auto [s, merge_report] = build_stride_complex(spec, rec.stride, source);
    rec.cells = s.cells().size();
    if (merge_report) {
      rec.merged = true;
      rec.merge = *merge_report;
    }
    const ConstraintOracle oracle = make_oracle(spec, s);
    const auto w = face_weights(s, spec.d, h);

    // Seed: the previous solution, else the input set, pushed into this grid.
    Skeleton init;
    bool have = false;
    const SimplicialSet* seed_set = previous ? &*previous : source;
    if (seed_set) {
      try {
        CenterOptions co;
        co.seed = mix(spec.seed, static_cast<std::uint64_t>(k));
        auto cascade = ff_cascade(s, *seed_set, spec.d, co);
        rec.cascade = cascade.ledger;
        auto eroded = erode(s, cascade.pieces, spec.d);
        init = eroded.skeleton;
        for (int t : oracle.terminals) {
          init.faces.insert(t);
          init.frozen.insert(t);
        }
        have = admissible(s, init, oracle, spec.d);
        rec.init = previous ? "reprojected" : "input";
      } catch (const Error& e) {
        report.notes.push_back("stride " + std::to_string(k) + ": reprojection failed (" + e.what() + ")");
      }
    }
    if (!have) {
      init = fallback_init(spec, s, oracle, w);
      rec.init = "fallback";
    }

    OptimizerConfig cfg = spec.optimizer;
    cfg.seed = mix(spec.seed, 1000 + static_cast<std::uint64_t>(k));
    auto outcome = optimize(s, init, oracle, h, spec.d, cfg);
    rec.j_value = outcome.value;
    rec.h_value = hausdorff_measure(s, outcome.skeleton, spec.d);
    rec.certificate = outcome.certificate;
    for (const auto& core : outcome.cores) rec.core_sizes.push_back(core.size());

    SimplicialSet current = skeleton_to_set(s, outcome.skeleton, spec.d);
    // Both sets sampled at one spacing, well below the distance tolerance.
    const double spacing = std::min(rec.stride, spec.tol_d) / 4;
    const auto samples = sample_points(current, spacing);
    const auto before = previous ? sample_points(*previous, spacing) : std::vector<Point>{};
    bool window_calm = k > 0;
    for (const auto& win : windows) {
      const double dk = k > 0 ? local_hausdorff(win, samples, before) : 0.0;
      rec.d_k.push_back(dk);
      window_calm = window_calm && dk < spec.tol_d;
    }
    const bool j_calm = k > 0 && std::abs(rec.j_value - report.strides.back().j_value) < spec.tol_j;
    calm = (j_calm && window_calm) ? calm + 1 : 0;

    ProbeOptions po;
    po.trials = std::max(1, spec.probe_trials / 4);
    po.seed = mix(spec.seed, 2000 + static_cast<std::uint64_t>(k));
    rec.probe_max = quasiminimality_probe(s, outcome.skeleton, oracle, h, spec.d, po).max_ratio;

    report.strides.push_back(rec);
    sequence.push_back(current);
    previous = current;
    report.complex = s;
    report.skeleton = outcome.skeleton;
    report.moves = std::move(outcome.log);
    report.limit_admissible = admissible(s, outcome.skeleton, oracle, spec.d);
    if (calm >= 2) {
      report.converged = true;
      break;
    }
  }

  // Probes on the final stride: the finite sequence stands in for the limit.
  report.lsc = lsc_probe(sequence, sequence.back(), windows, h);
  const ConstraintOracle oracle = make_oracle(spec, report.complex);
  ProbeOptions po;
  po.trials = spec.probe_trials;
  po.seed = mix(spec.seed, 3000);
  report.probe = quasiminimality_probe(report.complex, report.skeleton, oracle, h, spec.d, po);
  if (report.converged) {
    std::vector<double> deltas;
    for (int i = 0; i < 4; ++i) deltas.push_back(report.strides.back().stride * std::ldexp(1.0, i));
    report.gauge = gauge_table(report.complex, report.skeleton, oracle, h, spec.d, deltas,
                               std::max(1, spec.probe_trials / 4), mix(spec.seed, 4000));
  }
  report.notes.push_back("core-wise infima use the previous stride's cores as the frozen complement");
  if (!report.converged) report.notes.push_back("not converged after " + std::to_string(spec.levels) + " strides");
  return report;
}

std::vector<GaugeRow> gauge_report(const RunReport& report) { return report.converged ? report.gauge : std::vector<GaugeRow>{}; }

}  // namespace plateau
