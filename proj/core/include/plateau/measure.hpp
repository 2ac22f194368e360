#pragma once

#include "plateau/skeleton.hpp"

#include <functional>
#include <map>
#include <vector>

namespace plateau {

/// Bounded density h with values in [1, M].
class DensityField {
 public:
  enum class Kind { Constant, Radial, Cellwise, Function };

  DensityField() = default;
  static DensityField constant(double value = 1.0);
  /// h(x) = profile(|x - center|), piecewise linear through (radius, value)
  /// knots sorted by radius, constant beyond the ends.
  static DensityField radial(Point center, std::vector<std::pair<double, double>> profile);
  /// Value per lattice cell floor((x - origin) / stride); `fallback` elsewhere.
  /// On cell boundaries the smallest adjacent value is used, which keeps h
  /// lower semicontinuous.
  static DensityField cellwise(Point origin, double stride, std::map<std::vector<int>, double> table,
                               double fallback = 1.0);
  static DensityField function(std::function<double(const Point&)> f, double upper);

  Kind kind() const { return kind_; }
  double operator()(const Point& x) const;
  double upper() const { return upper_; }
  const Point& lattice_origin() const { return origin_; }
  double lattice_stride() const { return stride_; }
  /// Scaled copy c * h (c > 0); the [1, M] bound scales with it.
  DensityField scaled(double c) const;

  /// Largest h(y) - (1 + modulus(|x - y|)) h(x) over sample pairs; <= 0 when
  /// the declared modulus holds on the samples.
  double modulus_violation(const std::function<double(double)>& modulus, const std::vector<Point>& samples) const;

 private:
  Kind kind_ = Kind::Constant;
  double value_ = 1.0;
  double upper_ = 1.0;
  double scale_ = 1.0;
  Point center_;
  std::vector<std::pair<double, double>> profile_;
  Point origin_;
  double stride_ = 1.0;
  std::map<std::vector<int>, double> table_;
  std::function<double(const Point&)> fn_;
};

struct MeasureReport {
  double hausdorff = 0.0;
  double weighted = 0.0;
  std::vector<double> per_item;  // weighted measure per simplex
  double error_bound = 0.0;
};

double hausdorff_measure(const SimplicialSet& e);
/// Only faces of dimension exactly d contribute.
double hausdorff_measure(const Complex& s, const Skeleton& k, int d);

/// Integral of h over one simplex: order-3 Gauss rule with adaptive
/// bisection until successive estimates agree to `rel_tol`.
double weighted_simplex(const std::vector<Point>& pts, const DensityField& h, double rel_tol = 1e-6,
                        double* error = nullptr);
double weighted_measure(const SimplicialSet& e, const DensityField& h, double rel_tol = 1e-6);
double weighted_measure(const Complex& s, const Skeleton& k, int d, const DensityField& h, double rel_tol = 1e-6);
MeasureReport measure_report(const SimplicialSet& e, const DensityField& h, double rel_tol = 1e-6);

/// Symmetric Hausdorff distance of point clouds; 0 for two empty clouds and
/// infinity when exactly one is empty.
double hausdorff_distance(const std::vector<Point>& a, const std::vector<Point>& b);
/// Hausdorff distance after clipping both clouds to the window.
double local_hausdorff(const Box& window, const std::vector<Point>& a, const std::vector<Point>& b);

/// The part of the set inside the box, as simplices.
SimplicialSet clip_to_box(const SimplicialSet& e, const Box& box);

struct LscWindow {
  Box window;
  double limit_value = 0.0;
  double liminf = 0.0;
  double margin = 0.0;  // liminf - limit_value
  bool pass = false;
};

struct LscReport {
  std::vector<LscWindow> windows;
  double min_margin = 0.0;
  bool pass = true;
};

/// Checks J_h(E ∩ V) <= liminf J_h(E_k ∩ V) + tol on every window. The
/// liminf of a finite sequence is taken as the minimum over its second half.
LscReport lsc_probe(const std::vector<SimplicialSet>& sequence, const SimplicialSet& limit,
                    const std::vector<Box>& windows, const DensityField& h, double tol = 1e-9);

}  // namespace plateau
