#include "pinning/numeric.hpp"

#include <array>

namespace pinning {

double log_sum_exp(std::span<const double> xs) {
  double m = kNegInf;
  for (double x : xs) m = std::max(m, x);
  if (m == kNegInf || m == kInf) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

Extremum golden_section_max(const std::function<double(double)>& f, double lo,
                            double hi, double x_tol) {
  Extremum best{lo, f(lo)};
  auto consider = [&best](double x, double v) {
    if (v > best.value || std::isnan(best.value)) best = {x, v};
  };
  if (hi <= lo) return best;
  consider(hi, f(hi));

  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo;
  double b = hi;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 400 && b - a > x_tol; ++iter) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    }
  }
  consider(c, fc);
  consider(d, fd);
  return best;
}

Extremum golden_section_min(const std::function<double(double)>& f, double lo,
                            double hi, double x_tol) {
  auto neg = [&f](double x) { return -f(x); };
  Extremum e = golden_section_max(neg, lo, hi, x_tol);
  return {e.x, -e.value};
}

std::pair<double, double> bisect_increasing(const std::function<double(double)>& f,
                                            double target, double lo, double hi,
                                            double x_tol, int max_iter) {
  for (int iter = 0; iter < max_iter && hi - lo > x_tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

ConjugateResult convex_conjugate(const ConvexFunction& phi, double t, double x_tol) {
  if (t < phi.slope_lo) {
    if (phi.lo == kNegInf) return {kInf, kNegInf};
    return {t * phi.lo - phi.value_lo, phi.lo};
  }
  if (t > phi.slope_hi) {
    if (phi.hi == kInf) return {kInf, kInf};
    return {t * phi.hi - phi.value_hi, phi.hi};
  }
  if (t == phi.slope_lo) {
    if (phi.lo == kNegInf) return {-phi.offset_lo, kNegInf};
    return {t * phi.lo - phi.value_lo, phi.lo};
  }
  if (t == phi.slope_hi) {
    if (phi.hi == kInf) return {-phi.offset_hi, kInf};
    return {t * phi.hi - phi.value_hi, phi.hi};
  }

  // Interior: slope_lo < t < slope_hi. Bracket the root of slope(x) = t.
  double b = phi.hi;
  if (b == kInf) {
    b = phi.lo == kNegInf ? 1.0 : std::max(1.0, phi.lo + 1.0);
    for (int i = 0; i < 2000 && phi.slope(b) < t; ++i) b = b > 0 ? 2.0 * b : b + 1.0;
  }
  double a = phi.lo;
  if (a == kNegInf) {
    a = std::min(-1.0, b - 1.0);
    for (int i = 0; i < 2000 && phi.slope(a) > t; ++i) a *= 2.0;
  }
  auto [lo, hi] = bisect_increasing(phi.slope, t, a, b, x_tol);

  double x = 0.5 * (lo + hi);
  double best = t * x - phi.value(x);
  if (lo > phi.lo) {
    const double at_lo = t * lo - phi.value(lo);
    if (at_lo > best) {
      best = at_lo;
      x = lo;
    }
  }
  if (hi < phi.hi) {
    const double at_hi = t * hi - phi.value(hi);
    if (at_hi > best) {
      best = at_hi;
      x = hi;
    }
  }
  // A root within x_tol of a finite endpoint: the endpoint value is exact.
  if (std::isfinite(phi.hi) && std::isfinite(phi.value_hi) && t * phi.hi - phi.value_hi > best) {
    best = t * phi.hi - phi.value_hi;
    x = phi.hi;
  }
  if (std::isfinite(phi.lo) && std::isfinite(phi.value_lo) && t * phi.lo - phi.value_lo > best) {
    best = t * phi.lo - phi.value_lo;
    x = phi.lo;
  }
  return {best, x};
}

}  // namespace pinning
