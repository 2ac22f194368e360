#pragma once

#include "plateau/complex.hpp"

#include <utility>
#include <vector>

namespace plateau {

/// Rigid placement of a lattice: x = origin + basis * local.
struct Frame {
  Point origin;
  Matrix basis;  // orthonormal columns

  static Frame axis_aligned(int n);
  static Frame rotated2d(double angle, const Point& origin);
  /// Rotation about a unit axis through `origin`.
  static Frame rotated3d(const Point& axis, double angle, const Point& origin);

  int dim() const { return static_cast<int>(origin.size()); }
  bool is_axis_aligned(double eps = 1e-12) const;
  Point to_world(const Point& local) const { return origin + basis * local; }
  Point to_local(const Point& world) const { return basis.transpose() * (world - origin); }
};

using Index = Eigen::VectorXi;

struct DyadicGridSpec {
  double stride = 1.0;
  Frame frame;
  std::vector<Index> index_set;

  /// Every index z with lo <= z < hi componentwise.
  static std::vector<Index> block(const Index& lo, const Index& hi);
};

Polyhedron dyadic_cell(const DyadicGridSpec& spec, const Index& z);

Complex build_dyadic(const DyadicGridSpec& spec);

/// Obstacle for carving: a closed ball or a polytope.
class Region {
 public:
  static Region ball(const Point& center, double radius);
  static Region polytope(Polyhedron p);

  double distance_to(const Polyhedron& cell) const;

 private:
  bool is_ball_ = true;
  Point center_;
  double radius_ = 0.0;
  Polyhedron poly_;
};

/// Keeps the cells at distance >= clearance from every obstacle.
Complex carve_region(const Complex& background, const std::vector<Region>& obstacles, double clearance);

/// Removes the cells contained in `box` (used to open box-shaped holes).
Complex carve_box(const Complex& background, const Box& box);

struct MergeOptions {
  double rotondity_floor = 0.02;
  int max_steiner = 64;
};

struct MergeReport {
  int gap_cell_count = 0;
  int refined_cell_count = 0;
  int steiner_points = 0;
  double measured_min_rotondity = 1.0;
  double measured_max_outer_radius = 0.0;
  /// max outer radius of the merged complex over that of the inputs
  double outer_radius_ratio = 1.0;
  bool aligned_fill = false;
  bool valid = false;
};

/// Fills the gap between each hole of `outer` and the patch sitting in it.
/// Throws MergeDegenerate when a gap cell falls below the rotondity floor or
/// the geometry does not admit the construction.
std::pair<Complex, MergeReport> merge(const Complex& outer, const std::vector<Complex>& patches,
                                      const MergeOptions& options = {});

struct PeriodicTopology {
  Point period;
};

/// Full axis-aligned torus grid; `spec.index_set` is ignored.
Complex build_periodic(const DyadicGridSpec& spec, const PeriodicTopology& topology);

}  // namespace plateau
