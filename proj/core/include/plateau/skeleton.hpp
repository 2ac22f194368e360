#pragma once

#include "plateau/complex.hpp"
#include "plateau/simplicial.hpp"

#include <set>
#include <vector>

namespace plateau {

/// Union of subfaces of a complex, given by face ids. `frozen` lists faces
/// that moves must not remove.
struct Skeleton {
  std::set<int> faces;
  std::set<int> frozen;

  bool operator==(const Skeleton& o) const { return faces == o.faces; }
};

/// Faces of the set not contained in the closure of another face of the set.
std::set<int> maximal_faces(const Complex& s, const std::set<int>& faces);

/// Every face in the closure of the set.
std::set<int> closure_of(const Complex& s, const std::set<int>& faces);

/// Simplicial decomposition of the dimension-d faces of the skeleton.
SimplicialSet skeleton_to_set(const Complex& s, const Skeleton& k, int d);

/// Vertex cycle of a face geometry (segment endpoints, or a ccw polygon).
std::vector<Point> face_cycle(const Complex& s, int face);

}  // namespace plateau
