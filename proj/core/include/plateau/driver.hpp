#pragma once

#include "plateau/grid.hpp"
#include "plateau/optimizer.hpp"
#include "plateau/probe.hpp"
#include "plateau/projection.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace plateau {

enum class OracleKind { Connectivity, Separation, Periodic, Spanning };

struct DensitySpec {
  std::string kind = "constant";  // constant | radial | cellwise
  double value = 1.0;
  Point center;
  std::vector<std::pair<double, double>> profile;
  Point origin;
  double stride = 1.0;
  std::map<std::vector<int>, double> cells;
  double fallback = 1.0;

  DensityField build() const;
};

struct ProblemSpec {
  Box domain;
  std::vector<Box> obstacles;  // closed boxes removed from the domain
  bool periodic = false;       // flat torus with period = domain extent
  int d = 1;

  OracleKind oracle = OracleKind::Connectivity;
  std::vector<Point> terminals;                    // connectivity
  std::vector<std::pair<Point, Point>> separate;   // separation: points inside the two cells
  int axis = 0;                                    // periodic
  std::vector<Point> frame;                        // spanning: closed polyline
  SimplicialSet input{1, 2};                       // optional initial set

  DensitySpec density;
  double r0 = 0.5;
  int levels = 4;
  bool patches = false;
  PatchOptions patch_options;
  int patch_width = 2;  // cells on each side of the patch midline

  double tol_j = 1e-6;
  double tol_d = 0.05;  // domain units
  std::uint64_t seed = 0;
  OptimizerConfig optimizer;
  int probe_trials = 200;

  int n() const { return domain.dim(); }
  /// Throws DimensionMismatch or ConfigError.
  void validate() const;
};

struct StrideRecord {
  int k = 0;
  double stride = 0.0;
  std::size_t cells = 0;
  double j_value = 0.0;
  double h_value = 0.0;
  std::vector<double> d_k;  // local Hausdorff distance to the previous solution per window
  std::vector<CascadeLevel> cascade;
  double probe_max = 0.0;
  std::string init;  // "reprojected", "input" or "fallback"
  Certificate certificate = Certificate::Local;
  std::vector<std::size_t> core_sizes;
  bool merged = false;
  MergeReport merge;
};

struct RunReport {
  std::vector<StrideRecord> strides;
  Complex complex;
  Skeleton skeleton;
  bool converged = false;
  bool limit_admissible = false;
  LscReport lsc;
  ProbeReport probe;
  std::vector<GaugeRow> gauge;
  std::vector<MoveRecord> moves;  // final stride
  std::vector<std::string> notes;
};

/// Builds the complex for one stride: lattice over the domain, obstacles
/// removed, and an oriented patch merged in when requested.
std::pair<Complex, std::optional<MergeReport>> build_stride_complex(const ProblemSpec& spec, double stride,
                                                                     const SimplicialSet* patch_source);

ConstraintOracle make_oracle(const ProblemSpec& spec, const Complex& s);

/// Nested convergence windows at 90%, 75% and 50% of the domain.
std::vector<Box> convergence_windows(const Box& domain);

RunReport run(const ProblemSpec& spec);

/// Gauge curve of a run; empty for a run that did not converge.
std::vector<GaugeRow> gauge_report(const RunReport& report);

}  // namespace plateau
