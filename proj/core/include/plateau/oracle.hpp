#pragma once

#include "plateau/skeleton.hpp"

#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace plateau {

/// Topological constraint on skeletons of a fixed complex.
struct ConstraintOracle {
  enum class Kind { Connectivity, Separation, PeriodicCycle, Spanning, Custom };

  Kind kind = Kind::Connectivity;
  std::vector<int> terminals;                   // connectivity: face ids
  std::vector<std::pair<int, int>> cell_pairs;  // separation: member cell indices
  int direction = 0;                            // periodic: torus axis
  std::set<int> frame;                          // spanning: prescribed mod-2 boundary
  std::function<bool(const Complex&, const Skeleton&)> predicate;
  bool custom_monotone = false;
  /// Connectivity only: faces whose centroid leaves the open box or enters a
  /// closed obstacle cannot carry connections.
  std::optional<Box> domain;
  std::vector<Box> obstacles;

  static ConstraintOracle connectivity(std::vector<int> terminals);
  static ConstraintOracle separation(std::vector<std::pair<int, int>> cell_pairs);
  static ConstraintOracle periodic_cycle(int direction);
  static ConstraintOracle spanning(std::set<int> frame);
  static ConstraintOracle custom(std::function<bool(const Complex&, const Skeleton&)> predicate, bool monotone = false);

  /// Adding faces never breaks admissibility.
  bool monotone() const;
  /// Whether a face may be used by the optimizer.
  bool allowed(const Complex& s, int face) const;
};

/// Evaluates the oracle. Throws DimensionMismatch when the oracle does not
/// apply to d-skeletons of this complex.
bool admissible(const Complex& s, const Skeleton& k, const ConstraintOracle& oracle, int d);

/// Faces of dimension d - 1 met by an odd number of the skeleton's d-faces.
std::set<int> mod2_boundary(const Complex& s, const std::set<int>& faces, int d);

}  // namespace plateau
