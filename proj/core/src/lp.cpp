#include "plateau/lp.hpp"

#include <cmath>

namespace plateau {
namespace {

constexpr double kPivotEps = 1e-11;

// Tableau over columns [structural | slack | artificial | rhs]; rows are the
// constraints followed by the objective row holding reduced costs.
class Tableau {
 public:
  Tableau(int rows, int cols) : t_(Matrix::Zero(rows + 1, cols + 1)), basis_(rows, -1), m_(rows), n_(cols) {}

  double& at(int r, int c) { return t_(r, c); }
  double rhs(int r) const { return t_(r, n_); }
  double& rhs(int r) { return t_(r, n_); }
  int& basis(int r) { return basis_[r]; }
  int basis(int r) const { return basis_[r]; }
  int rows() const { return m_; }
  int cols() const { return n_; }
  double objective_value() const { return -t_(m_, n_); }

  void set_objective(const Point& cost) {
    t_.row(m_).setZero();
    for (int j = 0; j < n_; ++j) t_(m_, j) = cost[j];
    for (int i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb != 0.0) t_.row(m_) -= cb * t_.row(i);
    }
  }

  void pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (int i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[r] = c;
  }

  // Returns false when unbounded. `allowed` masks columns that may enter.
  bool run(const std::vector<char>& allowed) {
    for (int iter = 0; iter < 50000; ++iter) {
      int enter = -1;
      for (int j = 0; j < n_; ++j) {
        if (allowed[j] && t_(m_, j) > kPivotEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (t_(i, enter) > kPivotEps) {
          const double ratio = t_(i, n_) / t_(i, enter);
          if (leave < 0 || ratio < best - 1e-14 ||
              (std::abs(ratio - best) <= 1e-14 && basis_[i] < basis_[leave])) {
            leave = i;
            best = ratio;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    return true;
  }

 private:
  Matrix t_;
  std::vector<int> basis_;
  int m_;
  int n_;
};

}  // namespace

LpResult solve_lp(const Matrix& A, const Point& b, const Point& c) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  int artificial = 0;
  for (int i = 0; i < m; ++i)
    if (b[i] < 0) ++artificial;

  const int n_struct = 2 * n;
  const int n_slack = m;
  const int cols = n_struct + n_slack + artificial;
  Tableau tab(m, cols);

  int next_art = n_struct + n_slack;
  for (int i = 0; i < m; ++i) {
    const double sign = b[i] < 0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) {
      tab.at(i, j) = sign * A(i, j);
      tab.at(i, n + j) = -sign * A(i, j);
    }
    tab.at(i, n_struct + i) = sign;
    tab.rhs(i) = sign * b[i];
    if (b[i] < 0) {
      tab.at(i, next_art) = 1.0;
      tab.basis(i) = next_art++;
    } else {
      tab.basis(i) = n_struct + i;
    }
  }

  std::vector<char> allowed(cols, 1);
  if (artificial > 0) {
    Point phase1 = Point::Zero(cols);
    for (int j = n_struct + n_slack; j < cols; ++j) phase1[j] = -1.0;
    tab.set_objective(phase1);
    tab.run(allowed);
    if (tab.objective_value() < -1e-9) return {LpStatus::Infeasible, Point(), 0.0};
    // Drive remaining artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (tab.basis(i) >= n_struct + n_slack) {
        for (int j = 0; j < n_struct + n_slack; ++j) {
          if (std::abs(tab.at(i, j)) > 1e-9) {
            tab.pivot(i, j);
            break;
          }
        }
      }
    }
    for (int j = n_struct + n_slack; j < cols; ++j) allowed[j] = 0;
  }

  Point cost = Point::Zero(cols);
  for (int j = 0; j < n; ++j) {
    cost[j] = c[j];
    cost[n + j] = -c[j];
  }
  tab.set_objective(cost);
  if (!tab.run(allowed)) return {LpStatus::Unbounded, Point(), 0.0};

  Point values = Point::Zero(cols);
  for (int i = 0; i < m; ++i) values[tab.basis(i)] = tab.rhs(i);
  Point x = values.head(n) - values.segment(n, n);
  return {LpStatus::Optimal, x, c.dot(x)};
}

}  // namespace plateau
