#include "plateau/grid.hpp"

#include <cmath>
#include <queue>

namespace plateau {

Frame Frame::axis_aligned(int n) { return Frame{Point::Zero(n), Matrix::Identity(n, n)}; }

Frame Frame::rotated2d(double angle, const Point& origin) {
  Matrix r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return Frame{origin, r};
}

Frame Frame::rotated3d(const Point& axis, double angle, const Point& origin) {
  const Eigen::Vector3d a = axis.head<3>().normalized();
  const Eigen::Matrix3d r = Eigen::AngleAxisd(angle, a).toRotationMatrix();
  return Frame{origin, Matrix(r)};
}

bool Frame::is_axis_aligned(double eps) const {
  return (basis - Matrix::Identity(basis.rows(), basis.cols())).cwiseAbs().maxCoeff() <= eps;
}

std::vector<Index> DyadicGridSpec::block(const Index& lo, const Index& hi) {
  std::vector<Index> out;
  const int n = static_cast<int>(lo.size());
  for (int i = 0; i < n; ++i)
    if (hi[i] <= lo[i]) return out;
  Index z = lo;
  while (true) {
    out.push_back(z);
    int i = n - 1;
    while (i >= 0) {
      if (++z[i] < hi[i]) break;
      z[i] = lo[i];
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

Polyhedron dyadic_cell(const DyadicGridSpec& spec, const Index& z) {
  const int n = spec.frame.dim();
  if (z.size() != n) throw DimensionMismatch("cell index has wrong dimension");
  std::vector<HalfSpace> hs;
  for (int i = 0; i < n; ++i) {
    const Point e = spec.frame.basis.col(i);
    const double lo = e.dot(spec.frame.origin) + spec.stride * z[i];
    hs.push_back(HalfSpace{e, lo + spec.stride});
    hs.push_back(HalfSpace{-e, -lo});
  }
  return Polyhedron::from_half_spaces(hs, n);
}

Complex build_dyadic(const DyadicGridSpec& spec) {
  if (spec.stride <= 0.0) throw EmptyRegion("stride must be positive");
  std::vector<Polyhedron> cells;
  cells.reserve(spec.index_set.size());
  for (const auto& z : spec.index_set) cells.push_back(dyadic_cell(spec, z));
  return Complex::from_cells(std::move(cells));
}

Region Region::ball(const Point& center, double radius) {
  Region r;
  r.is_ball_ = true;
  r.center_ = center;
  r.radius_ = radius;
  return r;
}

Region Region::polytope(Polyhedron p) {
  Region r;
  r.is_ball_ = false;
  r.poly_ = std::move(p);
  return r;
}

double Region::distance_to(const Polyhedron& cell) const {
  if (is_ball_) return std::max(0.0, distance(cell, center_) - radius_);
  return distance(cell, poly_);
}

namespace {

bool cells_connected(const Complex& s) {
  const int m = static_cast<int>(s.cells().size());
  if (m <= 1) return true;
  std::vector<char> seen(m, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    const int c = q.front();
    q.pop();
    for (int f : s.face(s.cell_face(c)).children)
      for (int other : s.face(f).cells)
        if (!seen[other]) {
          seen[other] = 1;
          ++count;
          q.push(other);
        }
  }
  return count == m;
}

}  // namespace

Complex carve_region(const Complex& background, const std::vector<Region>& obstacles, double clearance) {
  if (obstacles.empty()) return background;
  std::vector<Polyhedron> kept;
  for (const auto& cell : background.cells()) {
    bool keep = true;
    for (const auto& o : obstacles)
      if (o.distance_to(cell) < clearance - 1e-12) {
        keep = false;
        break;
      }
    if (keep) kept.push_back(cell);
  }
  if (kept.empty()) throw ClearanceUnsatisfiable("carving removes every cell");
  Complex out = Complex::from_cells(std::move(kept));
  if (cells_connected(background) && !cells_connected(out))
    throw ClearanceUnsatisfiable("carving disconnects the background");
  return out;
}

Complex carve_box(const Complex& background, const Box& box) {
  std::vector<Polyhedron> kept;
  for (const auto& cell : background.cells()) {
    const Box b = cell.bounds();
    if (!(box.contains(b.lo, 1e-9) && box.contains(b.hi, 1e-9))) kept.push_back(cell);
  }
  if (kept.empty()) throw ClearanceUnsatisfiable("carving removes every cell");
  return Complex::from_cells(std::move(kept));
}

Complex build_periodic(const DyadicGridSpec& spec, const PeriodicTopology& topology) {
  const int n = spec.frame.dim();
  if (!spec.frame.is_axis_aligned()) throw PeriodMismatch("periodic grids need an axis-aligned frame");
  if (topology.period.size() != n) throw DimensionMismatch("period vector has wrong dimension");
  Index counts(n);
  for (int i = 0; i < n; ++i) {
    const double ratio = topology.period[i] / spec.stride;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9)
      throw PeriodMismatch("period " + std::to_string(topology.period[i]) + " is not a multiple of stride " +
                           std::to_string(spec.stride));
    counts[i] = static_cast<int>(rounded);
  }
  std::vector<Polyhedron> cells;
  for (const auto& z : DyadicGridSpec::block(Index::Zero(n), counts)) cells.push_back(dyadic_cell(spec, z));
  return Complex::from_cells(std::move(cells), Periodicity{topology.period, spec.frame.origin, spec.stride});
}

}  // namespace plateau
