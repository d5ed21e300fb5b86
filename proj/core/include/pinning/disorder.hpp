#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pinning/numeric.hpp"

namespace pinning {

enum class DisorderFamily {
  zero,
  gaussian,
  two_point,
  centered_exponential,
  shifted_pareto,
  stretched_exp_tail,
};

std::string to_string(DisorderFamily f);

/// Law of the i.i.d. potential V_1. Every family is centered in closed form,
/// so <V_1> = 0 holds by construction.
///
///   gaussian(sigma)            N(0, sigma^2)
///   two_point(v+, v-, p)       P(V = v+ - m) = p, P(V = v- - m) = 1 - p, m the raw mean
///   centered_exponential(l)    Exp(l) - 1/l
///   shifted_pareto(a, s)       Pareto(a, s) - a s/(a-1); P(X > x) = (s/x)^a, a > 1
///   stretched_exp_tail(th, s)  Weibull(th, s) - s Gamma(1+1/th); 0 < th < 1
class DisorderLaw {
 public:
  static DisorderLaw zero();
  static DisorderLaw gaussian(double sigma);
  static DisorderLaw two_point(double v_plus, double v_minus, double p);
  static DisorderLaw centered_exponential(double lambda);
  static DisorderLaw shifted_pareto(double alpha, double scale);
  static DisorderLaw stretched_exp_tail(double theta, double scale);

  DisorderFamily family() const { return family_; }
  /// Constructor arguments in declaration order.
  const std::vector<double>& params() const { return params_; }
  bool is_degenerate() const { return family_ == DisorderFamily::zero; }
  bool is_atomic() const {
    return family_ == DisorderFamily::zero || family_ == DisorderFamily::two_point;
  }
  std::uint64_t fingerprint() const;

  /// sup{t >= 0 : <e^{t|V_1|}> < inf}.
  double a_V() const;
  bool has_exponential_moment() const { return a_V() > 0.0; }
  double variance() const;

  /// <f(V_1)>, by exact sums for atomic laws and adaptive quadrature otherwise.
  double expectation(const std::function<double(double)>& f) const;

  double log_mgf(double t) const;
  double mgf_slope(double t) const;
  /// I_V(M) = sup_t (t M - log M_V(t)).
  double rate_I(double M) const;
  ConvexFunction log_mgf_function() const;

  /// G-bar(x) = P(V_1 >= x), P(V_1 > x) and P(V_1 = x).
  double tail_prob(double x) const;
  double prob_above(double x) const;
  double atom(double x) const;
  /// sup{x >= 0 : G-bar(x) >= t}, and 0 when t > G-bar(0).
  double tail_quantile(double t) const;

  /// Inverse-CDF transform of a uniform draw in (0,1).
  double from_uniform(double u) const;

  /// psi(t) = <log(1 + p_h (e^{t V_1} - 1))> and its derivative.
  double psi(double t, double p_h) const;
  double psi_slope(double t, double p_h) const;
  /// I-tilde(s) = -inf_x (psi(x) - x s).
  double rate_I_tilde(double s, double p_h) const;

 private:
  DisorderLaw() = default;
  double quantile_lower(double u) const;  // F^{-1}(u), u small
  double quantile_upper(double s) const;  // F^{-1}(1 - s), s small
  double support_min() const;

  DisorderFamily family_ = DisorderFamily::zero;
  std::vector<double> params_;
  double a_ = 0.0;      // gaussian sigma, exponential lambda, pareto/weibull shape
  double b_ = 0.0;      // pareto/weibull scale
  double hi_ = 0.0;     // two_point upper atom (centered)
  double lo_ = 0.0;     // two_point lower atom (centered)
  double p_ = 0.0;      // two_point weight on hi_
  double shift_ = 0.0;  // centering constant for pareto/weibull
};

struct DisorderRealization {
  std::vector<double> values;  ///< values[i] is V_{i+1}
  std::uint64_t seed = 0;
  std::uint64_t fingerprint = 0;
};

/// Value i is a pure function of (law, seed, i).
DisorderRealization sample(const DisorderLaw& law, long n, std::uint64_t seed);

}  // namespace pinning
