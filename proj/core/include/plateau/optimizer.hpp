#pragma once

#include "plateau/measure.hpp"
#include "plateau/oracle.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace plateau {

struct OptimizerConfig {
  int exhaustive_cap = 22;
  bool allow_exhaustive = true;
  int restarts = 16;
  std::uint64_t seed = 0;
  double superset_fraction = 0.1;  // share of free faces added at each restart
  int max_passes = 10000;
  bool lower_core_pass = true;
  std::size_t log_cap = 200000;
};

enum class Certificate { Exhaustive, Local };

struct MoveRecord {
  int iter = 0;
  std::string move;
  int face = -1;
  double delta = 0.0;
  bool accepted = false;
};

struct OptimizationOutcome {
  Skeleton skeleton;
  double value = 0.0;
  std::vector<std::vector<int>> cores;  // cores[l] = maximal faces of dimension l
  std::vector<MoveRecord> log;
  Certificate certificate = Certificate::Local;
};

/// J_h weight of every face of dimension d (zero for other faces).
std::vector<double> face_weights(const Complex& s, int d, const DensityField& h);
double skeleton_value(const Complex& s, const std::set<int>& faces, int d, const std::vector<double>& weights);

/// Minimizes J_h over admissible d-skeletons containing the frozen faces.
/// Throws InitInadmissible.
OptimizationOutcome optimize(const Complex& s, const Skeleton& init, const ConstraintOracle& oracle,
                             const DensityField& h, int d, const OptimizerConfig& config = {});

/// Maximal faces grouped by dimension: result[l] lists E^l.
std::vector<std::vector<int>> core_decompose(const Complex& s, const Skeleton& k, int d);

/// Greedy shortest-path tree joining the terminal vertices through allowed
/// edges (d = 1 connectivity). Returns no edges when a terminal is unreachable.
std::set<int> connect_terminals(const Complex& s, const ConstraintOracle& oracle, const std::vector<double>& weights);

/// Minimum-weight set of edges separating two cells of a planar complex,
/// found as a shortest cycle crossing a dual path an odd number of times
/// with the outer boundary contracted to one vertex.
std::set<int> min_separating_cycle(const Complex& s, const std::vector<double>& weights, int cell_a, int cell_b);

}  // namespace plateau
