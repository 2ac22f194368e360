#pragma once

#include "plateau/types.hpp"

#include <vector>

namespace plateau {

/// Points x with dot(normal, x) <= offset. `normal` is unit length.
struct HalfSpace {
  Point normal;
  double offset = 0.0;

  double slack(const Point& x) const { return offset - normal.dot(x); }
  bool contains(const Point& x, double eps) const { return slack(x) >= -eps; }
};

/// Smallest affine subspace containing a polyhedron: base point plus an
/// orthonormal basis (ambient x dim) of its direction space.
struct AffineHull {
  Point base;
  Matrix basis;

  int dim() const { return static_cast<int>(basis.cols()); }
  Point to_local(const Point& x) const { return basis.transpose() * (x - base); }
  Point to_world(const Point& y) const { return base + basis * y; }
  double distance(const Point& x) const {
    const Point d = x - base;
    return (d - basis * (basis.transpose() * d)).norm();
  }
};

struct LatticeFace {
  int dim = 0;
  std::vector<int> vertices;  // indices into Polyhedron::vertices(), sorted
  std::vector<int> children;  // lattice indices of faces one dimension lower
  std::vector<int> parents;
};

/// Subfaces of one polyhedron, grouped by dimension. The polyhedron itself is
/// the single face of top dimension.
struct FaceLattice {
  std::vector<LatticeFace> faces;
  std::vector<std::vector<int>> by_dim;

  std::size_t count(int dim) const {
    return dim < static_cast<int>(by_dim.size()) ? by_dim[dim].size() : 0;
  }
};

struct ShapeStats {
  double outer_radius = 0.0;
  double inner_radius = 0.0;
  double rotondity = 1.0;
  Point inscribed_center;
  Point enclosing_center;
};

struct Ball {
  Point center;
  double radius = 0.0;
};

/// Convex compact polytope of any dimension k <= n, kept in both
/// representations. Half-spaces are inclusion-minimal and expressed relative
/// to the affine hull (their normals lie in its direction space).
class Polyhedron {
 public:
  Polyhedron() = default;

  /// Full-dimensional polyhedron from a bounded half-space family. Redundant
  /// constraints are pruned.
  static Polyhedron from_half_spaces(std::vector<HalfSpace> half_spaces, int ambient_dim,
                                     const Tolerance& tol = default_tolerance());
  /// Convex hull of a point set, in its own affine hull.
  static Polyhedron from_points(const std::vector<Point>& points, const Tolerance& tol = default_tolerance());

  int dim() const { return hull_.dim(); }
  int ambient_dim() const { return static_cast<int>(hull_.base.size()); }
  const std::vector<HalfSpace>& half_spaces() const { return half_spaces_; }
  /// For dim 2 the vertices are in counter-clockwise order in the local frame.
  const std::vector<Point>& vertices() const { return vertices_; }
  const AffineHull& affine_hull() const { return hull_; }
  const FaceLattice& lattice() const { return lattice_; }
  /// Half-space index tight on lattice face `f` (only for faces of dim-1).
  int facet_half_space(int lattice_face) const;

  bool contains(const Point& x, double eps = default_tolerance().eps) const;
  bool in_relative_interior(const Point& x, double eps = default_tolerance().eps) const;
  Point centroid() const;
  /// dim-dimensional volume; a vertex has measure 1 (counting measure).
  double volume() const { return volume_; }
  Box bounds() const;
  double diameter() const;

 private:
  void finish(const Tolerance& tol);

  std::vector<HalfSpace> half_spaces_;
  std::vector<Point> vertices_;
  AffineHull hull_;
  FaceLattice lattice_;
  double volume_ = 0.0;
};

/// Extreme points of a bounded, nonempty half-space intersection.
/// Throws UnboundedRegion / EmptyRegion.
std::vector<Point> vertex_enumeration(const std::vector<HalfSpace>& half_spaces, int ambient_dim,
                                      const Tolerance& tol = default_tolerance());

FaceLattice enumerate_subfaces(const Polyhedron& p);

ShapeStats shape_stats(const Polyhedron& p);

/// Welzl-style minimal enclosing ball.
Ball minimal_enclosing_ball(const std::vector<Point>& points);

/// Affine dimension of a point set.
int affine_rank(const std::vector<Point>& points, double eps = default_tolerance().eps);

/// Euclidean distance from a point to a polyhedron (0 inside).
double distance(const Polyhedron& p, const Point& x);
/// Closest point of the polyhedron to x.
Point closest_point(const Polyhedron& p, const Point& x);
/// Euclidean distance between two polyhedra (0 when they intersect).
double distance(const Polyhedron& a, const Polyhedron& b);

/// Whether the relative interiors of two polyhedra intersect, up to tolerance.
bool relative_interiors_intersect(const Polyhedron& a, const Polyhedron& b,
                                  const Tolerance& tol = default_tolerance());

}  // namespace plateau
