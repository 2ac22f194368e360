#pragma once

#include "plateau/grid.hpp"

#include <stdexcept>

namespace fixture {

using namespace plateau;

inline Complex grid2d(int nx, int ny, double stride = 1.0, Point origin = make_point({0, 0})) {
  DyadicGridSpec spec;
  spec.stride = stride;
  spec.frame = Frame::axis_aligned(2);
  spec.frame.origin = origin;
  Index hi(2);
  hi << nx, ny;
  spec.index_set = DyadicGridSpec::block(Index::Zero(2), hi);
  return build_dyadic(spec);
}

inline Complex grid3d(int nx, int ny, int nz, double stride = 1.0) {
  DyadicGridSpec spec;
  spec.stride = stride;
  spec.frame = Frame::axis_aligned(3);
  Index hi(3);
  hi << nx, ny, nz;
  spec.index_set = DyadicGridSpec::block(Index::Zero(3), hi);
  return build_dyadic(spec);
}

inline int vertex_at(const Complex& s, const Point& p) {
  for (std::size_t v = 0; v < s.vertex_points().size(); ++v)
    if ((s.vertex_points()[v] - p).norm() < 1e-9) return s.vertex_face(static_cast<int>(v));
  throw std::runtime_error("no vertex there");
}

/// Face whose vertex set is exactly the given points.
inline int face_with(const Complex& s, std::vector<Point> pts) {
  std::vector<int> ids;
  for (const auto& p : pts) {
    const int f = vertex_at(s, p);
    ids.push_back(s.face(f).vertices.front());
  }
  std::sort(ids.begin(), ids.end());
  for (std::size_t f = 0; f < s.faces().size(); ++f)
    if (s.faces()[f].vertices == ids) return static_cast<int>(f);
  throw std::runtime_error("no such face");
}

inline int edge(const Complex& s, double x0, double y0, double x1, double y1) {
  return face_with(s, {make_point({x0, y0}), make_point({x1, y1})});
}

}  // namespace fixture
