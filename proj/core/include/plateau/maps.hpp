#pragma once

#include "plateau/polyhedron.hpp"
#include "plateau/simplicial.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace plateau {

using PointMap = std::function<Point(const Point&)>;

/// Points y of the closed ball B(apex, radius) with d(y, H) <= aperture * |apex - y|,
/// H the affine plane through `plane_point` spanned by `plane_basis`.
struct ConeRegion {
  Point apex;
  double radius = 1.0;
  double aperture = 0.5;
  Point plane_point;
  Matrix plane_basis;  // orthonormal columns

  bool contains(const Point& y, double eps = 1e-12) const;
  /// Exact Euclidean distance to the region.
  double distance(const Point& y) const;
  /// Orthogonal projection onto H.
  Point project_to_plane(const Point& y) const;
  /// Hausdorff distance between H ∩ K and K (H through the apex).
  double plane_gap() const;
};

/// Orthogonal projection onto H inside K, identity outside the rho-neighbourhood
/// of K, and the ring interpolation in between.
Point magnetic_project(const ConeRegion& region, double rho, const Point& pt);
/// Lipschitz bound 2 + d_H(H ∩ K, K) / rho of the magnetic projection.
double magnetic_lipschitz_bound(const ConeRegion& region, double rho);

/// (1 - t) f(Π(x)) + t x with t = d(x, K) / rho clamped to [0, 1].
Point ring_extension(const PointMap& f, const PointMap& retraction, const std::function<double(const Point&)>& dist_to_k,
                     double rho, const Point& x);

/// Identity on rho·B, f outside B = B(x0, r), and u y + (1 - u) f(Π y) with
/// u = |Π y - y| / (r (1 - rho)) in between, Π the radial retraction onto ∂B.
Point hole_extension(const PointMap& f, const Point& x0, double r, double rho, const Point& y);

/// Exit point of the ray from `center` through `pt` on the boundary of `face`.
/// Throws CenterHit when pt coincides with the center.
Point radial_project(const Polyhedron& face, const Point& center, const Point& pt, double eps = 1e-9);

struct RadialPart {
  int facet = -1;  // half-space index of the face
  std::vector<Point> source;
  std::vector<Point> image;
};

/// Exact image of a convex piece of `face` under radial projection from
/// `center`: the piece is cut by the pyramids conv(center, facet) and each part
/// is sent to its facet by the central projection, which maps convex sets to
/// convex sets.
std::vector<RadialPart> radial_image(const Polyhedron& face, const Point& center, const std::vector<Point>& piece,
                                     double eps = 1e-9);

struct MapStage {
  enum class Kind { Identity, Affine, Magnetic, Radial, Ring, Hole, Custom };

  Kind kind = Kind::Identity;
  std::string label;
  // magnetic
  ConeRegion cone;
  double rho = 0.0;
  // radial
  int face_id = -1;
  Polyhedron face;
  Point center;
  // affine
  Matrix linear;
  Point shift;
  // ring, hole, custom
  PointMap fn;

  static MapStage identity();
  static MapStage affine(Matrix linear, Point shift);
  static MapStage magnetic(ConeRegion cone, double rho);
  static MapStage radial(int face_id, Polyhedron face, Point center);
  static MapStage custom(Kind kind, PointMap fn, std::string label);

  /// Radial stages act as the identity outside their face.
  Point operator()(const Point& x) const;
};

class PiecewiseMap {
 public:
  void push(MapStage s) { stages_.push_back(std::move(s)); }
  const std::vector<MapStage>& stages() const { return stages_; }
  bool empty() const { return stages_.empty(); }
  Point operator()(const Point& x) const;

 private:
  std::vector<MapStage> stages_;
};

struct MapImage {
  SimplicialSet image;
  double collapsed_measure = 0.0;  // preimage measure of parts sent to lower dimension
  int max_depth = 0;
};

/// Image of a simplicial set. Affine and identity stages map simplices exactly;
/// radial stages use the exact pyramid decomposition on pieces inside the face;
/// other stages transform vertices and bisect longest edges until the image
/// measure of a simplex changes by less than tol times the total measure.
/// Throws SubdivisionLimit beyond depth 12.
MapImage apply_map(const MapStage& stage, const SimplicialSet& e, double tol = 1e-4, double eps_geo = 1e-12);
MapImage apply_map(const PiecewiseMap& map, const SimplicialSet& e, double tol = 1e-4, double eps_geo = 1e-12);

struct BlendReport {
  bool pass = false;
  double sup_distance = 0.0;   // max |phi - f| over samples
  double min_clearance = 0.0;  // smallest distance from a moved sample to the domain boundary
  int moved_samples = 0;
};

/// Straight-line blend test on a grid of samples of the domain box.
BlendReport blend_check(const PointMap& phi, const PointMap& f, double rho, const Box& domain, int per_axis = 41);

}  // namespace plateau
