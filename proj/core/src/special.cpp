#include "pinning/special.hpp"

#include <array>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "pinning/numeric.hpp"

namespace pinning::special {

namespace {

constexpr double kTiny = 1e-300;

// Modified Lentz evaluation of the continued fraction for e^z z^{-a} Gamma(a,z).
double upper_gamma_cf(double a, double z) {
  double b = z + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h;
}

// Gamma(a, z) for z < 1 by downward recurrence from a positive (or zero) order.
double upper_gamma_small_z(double a, double z) {
  if (a > 0.0) return boost::math::tgamma(a, z);
  double order;
  double value;
  if (a == std::floor(a)) {
    order = 0.0;
    value = boost::math::expint(1, z);
  } else {
    order = a + std::floor(-a) + 1.0;
    value = boost::math::tgamma(order, z);
  }
  const double ez = std::exp(-z);
  while (order > a + 0.5) {
    const double lower = order - 1.0;
    value = (value - std::pow(z, lower) * ez) / lower;
    order = lower;
  }
  return value;
}

constexpr std::array<double, 6> kBernoulli = {1.0 / 6.0,   -1.0 / 30.0, 1.0 / 42.0,
                                              -1.0 / 30.0, 5.0 / 66.0,  -691.0 / 2730.0};

// Closed forms for sum_{j>=0} (K+j)^m q^j with m = -s in {0,1,2}, written in
// d = 1 - q to avoid cancellation near q = 1.
double scaled_polylog_closed(int m, double c, double K) {
  const double d = -std::expm1(c);
  const double q = 1.0 - d;
  switch (m) {
    case 0:
      return 1.0 / d;
    case 1:
      return (K * d + q) / (d * d);
    default:
      return (2.0 + (2.0 * K - 3.0) * d + (K - 1.0) * (K - 1.0) * d * d) / (d * d * d);
  }
}

}  // namespace

double scaled_upper_gamma(double a, double z) {
  if (z >= 1.0) return upper_gamma_cf(a, z);
  return std::exp(z) * std::pow(z, -a) * upper_gamma_small_z(a, z);
}

double log_power_exp_series(double s, double c, long start, long em_start) {
  if (c > 0.0) return kInf;
  if (c == 0.0 && s <= 1.0) return kInf;
  const double K = static_cast<double>(start);
  const double shift = c * K;  // sum = e^{shift} * scaled

  if (c < 0.0 && (s == 0.0 || s == -1.0 || s == -2.0)) {
    return shift + std::log(scaled_polylog_closed(static_cast<int>(-s), c, K));
  }

  if (c < -0.3) {
    double sum = 0.0;
    const double q = std::exp(c);
    for (long j = 0; j < 100000000; ++j) {
      const double k = K + static_cast<double>(j);
      const double term = std::exp(-s * std::log(k) + c * static_cast<double>(j));
      sum += term;
      const double ratio = q * std::pow((k + 1.0) / k, -s);
      if (ratio < 1.0 && term * ratio / (1.0 - ratio) < 1e-17 * sum) break;
    }
    return shift + std::log(sum);
  }

  // Direct head, then Euler-Maclaurin from y0 = max(start, em_start).
  const long y0_int = std::max(start, em_start);
  const double y0 = static_cast<double>(y0_int);
  double sum = 0.0;
  for (long k = start; k < y0_int; ++k) {
    sum += std::exp(-s * std::log(static_cast<double>(k)) + c * static_cast<double>(k - start));
  }
  const double e0 = std::exp(c * (y0 - K));  // e^{c (y0 - start)}
  double integral;
  if (c == 0.0) {
    integral = std::pow(y0, 1.0 - s) / (s - 1.0);
  } else {
    integral = e0 * std::pow(y0, 1.0 - s) * scaled_upper_gamma(1.0 - s, -c * y0);
  }
  sum += integral + 0.5 * e0 * std::pow(y0, -s);

  // f^{(m)}(y0) = e0 * sum_i C(m,i) c^{m-i} (-s)_i y0^{-s-i}, falling factorial.
  std::array<double, 12> power_derivs{};  // d^i/dy^i y^{-s} at y0
  double falling = 1.0;
  for (int i = 0; i < 12; ++i) {
    power_derivs[i] = falling * std::pow(y0, -s - i);
    falling *= (-s - i);
  }
  double factorial = 1.0;  // (2p)!
  for (int p = 1; p <= 6; ++p) {
    factorial *= (2.0 * p - 1.0) * (2.0 * p);
    const int m = 2 * p - 1;
    double deriv = 0.0;
    double binom = 1.0;
    for (int i = 0; i <= m; ++i) {
      deriv += binom * std::pow(c, m - i) * power_derivs[i];
      binom = binom * (m - i) / (i + 1.0);
    }
    sum -= kBernoulli[p - 1] / factorial * e0 * deriv;
  }
  return shift + std::log(sum);
}

}  // namespace pinning::special
