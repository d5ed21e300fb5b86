#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pinning/numeric.hpp"

namespace pinning {

enum class ExcursionFamily { zeta, geometric, fixed, custom };

std::string to_string(ExcursionFamily f);

/// How a custom law continues beyond its tabulated pmf. The asymptotic
/// abscissa a_E cannot be read off finitely many values, so custom laws must
/// declare it.
enum class TailClass { finite_support, polynomial, exponential };

std::string to_string(TailClass c);

struct CustomTail {
  TailClass cls = TailClass::finite_support;
  double power = 0.0;  ///< K(k) ~ k^{-power} beyond the table
  double rate = 0.0;   ///< K(k) ~ e^{-rate k} beyond the table (exponential class)
};

/// Quantities derived from the excursion-length law. Extended reals use +-inf.
struct ExcursionAnalytics {
  double a_E = 0.0;             ///< abscissa of convergence of M_E
  double log_M_E_at_a_E = 0.0;  ///< log M_E(a_E), +inf when M_E(a_E) diverges
  double m_E = 0.0;             ///< mean of E_1 given E_1 < inf
  double a_E_prime = 0.0;       ///< lim_{t -> a_E-} (log M_E)'(t)
  double delta_E = 0.0;         ///< 1 / <E_1>, zero when the mean is infinite
  double p_g = 0.0;             ///< 2 K(r1) K(r2)
  bool exponentially_recurrent = false;
  long r1 = 0;
  std::optional<long> r2;
  long period = 1;
};

/// Return-time distribution K(k) = P(E_1 = k), k >= 1, possibly defective.
///
/// Internally every law is a finite head table K(1..N) followed by an
/// optional parametric continuation K(k) = C k^{-power} e^{-rate k} for k > N,
/// plus the defect mass p_inf. Built-in families map onto this form exactly:
/// zeta is a pure power tail, geometric a pure exponential tail, fixed a
/// one-point head. Values are immutable after construction.
class ExcursionLaw {
 public:
  static ExcursionLaw zeta(double gamma, double p_inf = 0.0, long horizon = 64);
  static ExcursionLaw geometric(double rho, double p_inf = 0.0, long horizon = 64);
  static ExcursionLaw fixed(long r, double p_inf = 0.0);
  static ExcursionLaw custom(std::vector<double> pmf, double p_inf, CustomTail tail,
                             long horizon = 64);

  ExcursionFamily family() const { return family_; }
  double family_param() const { return family_param_; }  ///< gamma, rho or r
  const std::vector<double>& head() const { return head_; }
  const CustomTail& custom_tail() const { return custom_tail_; }
  double p_inf() const { return p_inf_; }
  long truncation_horizon() const { return horizon_; }
  bool has_infinite_support() const { return has_ext_; }

  double log_pmf(long k) const;
  double pmf(long k) const;
  /// log P(E_1 > k), including the mass at infinity.
  double log_tail(long k) const;
  double tail(long k) const;
  std::pair<double, double> pmf_and_tail(long k) const;

  /// log M_E(t); +inf beyond a_E. At t = 0 returns log P(E_1 < inf).
  double log_mgf(double t) const;
  /// log sum_k k^order K(k) e^{t k}.
  double log_moment(double t, int order) const;
  /// (log M_E)'(t), the mean of the tilted law.
  double mgf_slope(double t) const;

  /// J_E(t) = sup_x (t x - log M_E(x)).
  double rate_J(double t) const;
  /// g(x) = x J_E(1/x) for x in (0,1], g(0) = a_E.
  double g(double x) const;
  /// Interval outside which g is +inf.
  std::pair<double, double> g_domain() const;

  const ExcursionAnalytics& analytics() const { return analytics_; }
  long r1() const { return analytics_.r1; }
  std::optional<long> r2() const { return analytics_.r2; }
  std::optional<long> support_max() const;
  long period() const { return analytics_.period; }
  bool is_periodic() const { return analytics_.period > 1; }
  /// Smallest l with K(k) > 0 for every k >= l, if one exists.
  std::optional<long> full_support_start() const;

  /// log K(0..n) with entry 0 = -inf, and log P(E_1 > k) for k = 0..n.
  std::vector<double> log_pmf_table(long n) const;
  std::vector<double> log_tail_table(long n) const;

  ConvexFunction log_mgf_function() const;

 private:
  ExcursionLaw() = default;
  void finalize();
  double log_ext_sum(double t, int order, long start) const;

  ExcursionFamily family_ = ExcursionFamily::custom;
  double family_param_ = 0.0;
  CustomTail custom_tail_{};
  std::vector<double> head_;         // K(1..N)
  std::vector<double> head_suffix_;  // sum_{j > k, j <= N} K(j), k = 0..N
  bool has_ext_ = false;
  double ext_log_coeff_ = kNegInf;
  double ext_power_ = 0.0;
  double ext_rate_ = 0.0;
  double p_inf_ = 0.0;
  long horizon_ = 64;
  ExcursionAnalytics analytics_{};
};

}  // namespace pinning
