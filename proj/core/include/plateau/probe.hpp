#pragma once

#include "plateau/measure.hpp"
#include "plateau/oracle.hpp"

#include <cstdint>
#include <vector>

namespace plateau {

struct ProbeOptions {
  int trials = 200;
  std::uint64_t seed = 0;
  /// Window radius around a random point of the skeleton; 0 uses the closure
  /// of one random cell meeting the skeleton.
  double radius = 0.0;
};

struct ProbeReport {
  int trials = 0;
  int admissible = 0;  // deformations whose image passed the oracle
  int skipped = 0;     // 0/0 cases
  double max_ratio = 0.0;
  std::vector<double> ratios;
};

/// Random local deformations (collapse of one face, or swap along the boundary
/// of a random union of (d+1)-faces) inside a window. Ratios are J_h of the
/// moved part before over after; an image of measure zero gives infinity.
ProbeReport quasiminimality_probe(const Complex& s, const Skeleton& k, const ConstraintOracle& oracle,
                                  const DensityField& h, int d, const ProbeOptions& options = {});

struct GaugeRow {
  double delta = 0.0;
  double excess = 0.0;  // worst ratio minus one, floored at zero
  int samples = 0;
};

/// Empirical gauge curve over the radii `deltas`.
std::vector<GaugeRow> gauge_table(const Complex& s, const Skeleton& k, const ConstraintOracle& oracle,
                                  const DensityField& h, int d, const std::vector<double>& deltas, int trials,
                                  std::uint64_t seed);

}  // namespace plateau
