#pragma once

#include "plateau/types.hpp"

#include <vector>

namespace plateau {

/// Clips a convex piece by {x : normal.x <= offset}. The piece is a point, a
/// segment (two points) or a planar polygon given as an ordered cycle, in any
/// ambient dimension. Returns the clipped piece in the same form (possibly
/// empty or of lower dimension).
std::vector<Point> clip_convex(const std::vector<Point>& piece, const Point& normal, double offset, double eps = 1e-12);

/// Removes consecutive (cyclic) near-duplicates from a polygon cycle.
std::vector<Point> dedupe_cycle(const std::vector<Point>& poly, double eps = 1e-12);

/// Affine dimension of a convex piece (point, segment or polygon cycle).
int piece_dim(const std::vector<Point>& piece, double eps = 1e-12);
/// dim-dimensional measure of a convex piece; zero when the piece is lower-dimensional.
double piece_measure(const std::vector<Point>& piece, int dim, double eps = 1e-12);

/// Whether x lies in the relative interior of segment [a, b].
bool on_segment_interior(const Point& x, const Point& a, const Point& b, double eps = 1e-9);

}  // namespace plateau
