#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <utility>

namespace pinning {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(e^a + e^b) without overflow; either argument may be -inf.
inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;
  return a + std::log1p(std::exp(b - a));
}

/// log(e^a - e^b) for a >= b.
inline double log_sub(double a, double b) {
  if (b == kNegInf) return a;
  if (b >= a) return kNegInf;
  return a + std::log1p(-std::exp(b - a));
}

/// Two-pass log-sum-exp. Returns -inf for an empty range or all -inf.
double log_sum_exp(std::span<const double> xs);

/// Result of a one-dimensional optimization.
struct Extremum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for the maximum of a concave function on [lo, hi].
/// The endpoints are always evaluated, so a maximum attained at the boundary
/// is reported exactly.
Extremum golden_section_max(const std::function<double(double)>& f, double lo,
                            double hi, double x_tol = 1e-12);

/// Minimum of a convex function on [lo, hi] (golden section on -f).
Extremum golden_section_min(const std::function<double(double)>& f, double lo,
                            double hi, double x_tol = 1e-12);

/// Bisection for the crossing of a nondecreasing predicate-like function:
/// finds x in [lo, hi] with f(lo) < target <= f(hi) narrowed to x_tol.
/// Returns the final bracket.
std::pair<double, double> bisect_increasing(const std::function<double(double)>& f,
                                            double target, double lo, double hi,
                                            double x_tol = 1e-12,
                                            int max_iter = 400);

// Convex conjugate machinery shared by the excursion and disorder rate
// functions. `value` is a closed convex function, finite on the interior of
// [lo, hi]; `slope` its derivative. At an infinite endpoint the asymptote is
// value(x) ~ slope_lo * x + offset_lo (resp. hi); at a finite endpoint
// value_lo / value_hi hold the (possibly infinite) endpoint value.
struct ConvexFunction {
  std::function<double(double)> value;
  std::function<double(double)> slope;
  double lo = kNegInf;
  double hi = kInf;
  double slope_lo = kNegInf;
  double slope_hi = kInf;
  double value_lo = kInf;
  double value_hi = kInf;
  double offset_lo = kNegInf;
  double offset_hi = kNegInf;
};

struct ConjugateResult {
  double value = 0.0;   ///< sup_x (t x - phi(x)), possibly +inf
  double argmax = 0.0;  ///< maximizer; +-inf when the sup is asymptotic
};

/// sup_x (t x - phi(x)) by bisection on phi' with explicit endpoint handling.
ConjugateResult convex_conjugate(const ConvexFunction& phi, double t,
                                 double x_tol = 1e-12);

}  // namespace pinning
