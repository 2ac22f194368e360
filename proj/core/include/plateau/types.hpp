#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace plateau {

using Point = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using FaceId = int;

/// Single tolerance policy shared by every geometric comparison in the library.
struct Tolerance {
  double eps = 1e-9;

  bool zero(double v) const { return v <= eps && v >= -eps; }
  bool same(const Point& a, const Point& b) const { return (a - b).lpNorm<Eigen::Infinity>() <= eps; }
};

inline const Tolerance& default_tolerance() {
  static const Tolerance tol{};
  return tol;
}

/// Base of every domain error raised by the library. `kind()` is the stable
/// name printed by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define PLATEAU_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name, what) {}   \
  };

PLATEAU_DEFINE_ERROR(UnboundedRegion)
PLATEAU_DEFINE_ERROR(EmptyRegion)
PLATEAU_DEFINE_ERROR(ClearanceUnsatisfiable)
PLATEAU_DEFINE_ERROR(MergeDegenerate)
PLATEAU_DEFINE_ERROR(PeriodMismatch)
PLATEAU_DEFINE_ERROR(CenterHit)
PLATEAU_DEFINE_ERROR(NoCenterFound)
PLATEAU_DEFINE_ERROR(SubdivisionLimit)
PLATEAU_DEFINE_ERROR(InitInadmissible)
PLATEAU_DEFINE_ERROR(DimensionMismatch)
PLATEAU_DEFINE_ERROR(NotConverged)
PLATEAU_DEFINE_ERROR(IoError)
PLATEAU_DEFINE_ERROR(ConfigError)

#undef PLATEAU_DEFINE_ERROR

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error("ParseError", "line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

inline Point make_point(std::initializer_list<double> xs) {
  Point p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) p[i++] = x;
  return p;
}

/// Axis-aligned box, used for windows, domains and quick rejection tests.
struct Box {
  Point lo;
  Point hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Point& p, double eps = 0.0) const {
    for (Eigen::Index i = 0; i < lo.size(); ++i)
      if (p[i] < lo[i] - eps || p[i] > hi[i] + eps) return false;
    return true;
  }
  bool overlaps(const Box& o, double eps = 0.0) const {
    for (Eigen::Index i = 0; i < lo.size(); ++i)
      if (o.lo[i] > hi[i] + eps || o.hi[i] < lo[i] - eps) return false;
    return true;
  }
  Point center() const { return 0.5 * (lo + hi); }
  Box scaled(double factor) const {
    Point c = center();
    return Box{c + factor * (lo - c), c + factor * (hi - c)};
  }
  /// Distance from an interior point to the box boundary (negative outside).
  double interior_clearance(const Point& p) const {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < lo.size(); ++i) best = std::min({best, p[i] - lo[i], hi[i] - p[i]});
    return best;
  }
  static Box of_points(const std::vector<Point>& pts);
};

inline Box Box::of_points(const std::vector<Point>& pts) {
  Box b{pts.front(), pts.front()};
  for (const auto& p : pts) {
    b.lo = b.lo.cwiseMin(p);
    b.hi = b.hi.cwiseMax(p);
  }
  return b;
}

}  // namespace plateau
