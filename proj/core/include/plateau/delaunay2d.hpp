#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace plateau {

using Tri = std::array<int, 3>;

/// Triangulates the annulus between two rings of `points`, both listed
/// counter-clockwise and star-shaped about `center`, with `inner` nested in
/// `outer`. Ring edges are constraints; every other edge is Lawson-flipped
/// until locally Delaunay, giving the constrained Delaunay triangulation of
/// the ring vertices. Triangles are counter-clockwise.
/// Throws MergeDegenerate when a ring is not star-shaped about the center.
std::vector<Tri> triangulate_annulus(const std::vector<Eigen::Vector2d>& points, const std::vector<int>& outer,
                                     const std::vector<int>& inner, const Eigen::Vector2d& center);

double orient2d(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c);
/// Positive when d lies strictly inside the circumcircle of the ccw triangle abc.
double incircle(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c, const Eigen::Vector2d& d);

}  // namespace plateau
