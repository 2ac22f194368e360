#pragma once

#include "plateau/types.hpp"

namespace plateau {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Point x;
  double value = 0.0;
};

/// Dense two-phase simplex (Bland's rule) for small problems:
///   maximize c.x  subject to  A x <= b,  x free.
/// Sized for the handful of variables that appear in Chebyshev-center,
/// redundancy and relative-interior tests.
LpResult solve_lp(const Matrix& A, const Point& b, const Point& c);

}  // namespace plateau
