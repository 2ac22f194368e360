#pragma once

#include "plateau/types.hpp"

#include <vector>

namespace plateau {

struct Simplex {
  std::vector<Point> pts;  // d + 1 points
  int patch = -1;
  int generation = 0;
};

/// d-volume of the simplex spanned by d + 1 points (Gram determinant).
double simplex_volume(const std::vector<Point>& pts);

/// Finite list of nondegenerate d-simplices in R^n.
class SimplicialSet {
 public:
  SimplicialSet() = default;
  SimplicialSet(int dim, int ambient_dim) : dim_(dim), ambient_(ambient_dim) {}

  int dim() const { return dim_; }
  int ambient_dim() const { return ambient_; }
  bool empty() const { return simplices_.empty(); }
  std::size_t size() const { return simplices_.size(); }
  const std::vector<Simplex>& simplices() const { return simplices_; }

  /// Appends the simplex unless its d-volume is at most `eps_geo`; returns
  /// whether it was kept. Throws DimensionMismatch on a wrong point count.
  bool add(Simplex s, double eps_geo = 1e-12);
  bool add(std::vector<Point> pts, double eps_geo = 1e-12) { return add(Simplex{std::move(pts)}, eps_geo); }
  void append(const SimplicialSet& other);

  double measure() const;
  Box bounds() const;

 private:
  int dim_ = 0;
  int ambient_ = 0;
  std::vector<Simplex> simplices_;
};

/// Splits a simplex at the midpoint of its longest edge.
std::pair<Simplex, Simplex> bisect_longest_edge(const Simplex& s);

/// Convex piece (point, segment or planar polygon cycle) split into d-simplices
/// by a fan from its first vertex.
std::vector<std::vector<Point>> triangulate_piece(const std::vector<Point>& piece, int dim);

/// Points spread over the set with spacing at most `spacing` along every simplex.
std::vector<Point> sample_points(const SimplicialSet& e, double spacing);
std::vector<Point> sample_simplex(const std::vector<Point>& pts, double spacing);

}  // namespace plateau
