#pragma once

#include "plateau/polyhedron.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace plateau {

/// Axis-aligned flat torus: coordinates are identified modulo `period` on every
/// axis. `origin` and `stride` fix the lattice used to canonicalize vertices.
struct Periodicity {
  Point period;
  Point origin;
  double stride = 1.0;
};

struct ComplexFace {
  int dim = 0;
  std::vector<int> vertices;  // global vertex ids, sorted and unique
  Polyhedron geometry;        // first occurrence (a representative on a torus)
  std::vector<int> cells;     // member cells containing the face, with multiplicity on a torus
  std::vector<Eigen::VectorXi> cell_offsets;  // torus only: occurrence = geometry + offset * period
  std::vector<int> children;
  std::vector<int> parents;

  double measure() const { return geometry.volume(); }
};

struct ComplexStats {
  double min_rotondity = 1.0;
  double max_rotondity = 1.0;
  double min_outer_radius = 0.0;
  double max_outer_radius = 0.0;
  double min_inner_radius = 0.0;
  double max_inner_radius = 0.0;
};

/// Finite family of equal-dimensional polyhedra with a deduplicated store of
/// all their subfaces. Face ids are ordered by dimension, then by vertex ids;
/// vertex ids follow lexicographic coordinate order.
class Complex {
 public:
  Complex() = default;

  static Complex from_cells(std::vector<Polyhedron> cells, std::optional<Periodicity> periodicity = std::nullopt,
                            const Tolerance& tol = default_tolerance());

  int dim() const { return dim_; }
  int ambient_dim() const { return ambient_; }
  bool empty() const { return cells_.empty(); }

  const std::vector<Polyhedron>& cells() const { return cells_; }
  int cell_face(int cell) const { return cell_face_[cell]; }
  int face_cell(int face) const;  // cell index when the face is a member cell, else -1

  const std::vector<ComplexFace>& faces() const { return faces_; }
  const ComplexFace& face(int id) const { return faces_[id]; }
  const std::vector<int>& faces_of_dim(int k) const;
  std::size_t face_count(int k) const { return faces_of_dim(k).size(); }

  const std::vector<Point>& vertex_points() const { return vertex_points_; }
  int vertex_face(int vertex) const { return vertex_face_[vertex]; }

  const std::optional<Periodicity>& periodicity() const { return periodicity_; }
  /// Lattice offset (in periods) of a point relative to its canonical copy.
  Eigen::VectorXi canonical_offset(const Point& x) const;

  /// All subfaces of `face`, itself included, sorted by id.
  std::vector<int> closure(int face) const;
  /// Smallest subface of `start` containing every point.
  int locate_host(int start, const std::vector<Point>& pts, double eps = 1e-7) const;
  /// Lowest-id cell containing x, or -1.
  int locate_cell(const Point& x, double eps = 1e-9) const;

  Box bounds() const;
  const ComplexStats& stats() const { return stats_; }

 private:
  int dim_ = 0;
  int ambient_ = 0;
  std::vector<Polyhedron> cells_;
  std::vector<int> cell_face_;
  std::vector<ComplexFace> faces_;
  std::vector<std::vector<int>> by_dim_;
  std::vector<Point> vertex_points_;
  std::vector<int> vertex_face_;
  std::optional<Periodicity> periodicity_;
  std::vector<int> face_cell_;
  ComplexStats stats_;
};

ComplexStats compute_stats(const Complex& s);

struct ValidationReport {
  bool ok = true;
  std::vector<std::pair<int, int>> cell_pairs;  // member cells with overlapping interiors
  std::vector<std::pair<int, int>> face_pairs;  // distinct subfaces with overlapping relative interiors
};

ValidationReport validate_complex(const Complex& s, const Tolerance& tol = default_tolerance());

/// Faces of dimension dim-1 contained in exactly one member cell.
std::vector<int> boundary_faces(const Complex& s);

}  // namespace plateau
