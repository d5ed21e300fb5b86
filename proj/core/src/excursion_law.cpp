#include "pinning/excursion_law.hpp"

#include <cmath>
#include <numeric>

#include "pinning/error.hpp"
#include "pinning/special.hpp"

namespace pinning {

std::string to_string(ExcursionFamily f) {
  switch (f) {
    case ExcursionFamily::zeta: return "zeta";
    case ExcursionFamily::geometric: return "geometric";
    case ExcursionFamily::fixed: return "fixed";
    case ExcursionFamily::custom: return "custom";
  }
  return "custom";
}

std::string to_string(TailClass c) {
  switch (c) {
    case TailClass::finite_support: return "finite_support";
    case TailClass::polynomial: return "polynomial";
    case TailClass::exponential: return "exponential";
  }
  return "finite_support";
}

namespace {

constexpr double kMassTol = 1e-12;

void check_p_inf(double p_inf) {
  require(std::isfinite(p_inf) && p_inf >= 0.0 && p_inf < 1.0, "p_inf must lie in [0, 1)");
}

}  // namespace

ExcursionLaw ExcursionLaw::zeta(double gamma, double p_inf, long horizon) {
  require(std::isfinite(gamma) && gamma > 1.0, "zeta law needs gamma > 1");
  check_p_inf(p_inf);
  require(horizon >= 1, "truncation horizon must be positive");
  ExcursionLaw law;
  law.family_ = ExcursionFamily::zeta;
  law.family_param_ = gamma;
  law.p_inf_ = p_inf;
  law.horizon_ = horizon;
  law.has_ext_ = true;
  law.ext_power_ = gamma;
  law.ext_rate_ = 0.0;
  law.ext_log_coeff_ =
      std::log1p(-p_inf) - special::log_power_exp_series(gamma, 0.0, 1, horizon);
  law.finalize();
  return law;
}

ExcursionLaw ExcursionLaw::geometric(double rho, double p_inf, long horizon) {
  require(std::isfinite(rho) && rho > 0.0 && rho < 1.0, "geometric law needs 0 < rho < 1");
  check_p_inf(p_inf);
  ExcursionLaw law;
  law.family_ = ExcursionFamily::geometric;
  law.family_param_ = rho;
  law.p_inf_ = p_inf;
  law.horizon_ = horizon;
  law.has_ext_ = true;
  law.ext_power_ = 0.0;
  law.ext_rate_ = -std::log(rho);
  // K(k) = (1 - p_inf)(1 - rho) rho^{k-1}
  law.ext_log_coeff_ = std::log1p(-p_inf) + std::log1p(-rho) - std::log(rho);
  law.finalize();
  return law;
}

ExcursionLaw ExcursionLaw::fixed(long r, double p_inf) {
  require(r >= 1, "fixed law needs r >= 1");
  check_p_inf(p_inf);
  ExcursionLaw law;
  law.family_ = ExcursionFamily::fixed;
  law.family_param_ = static_cast<double>(r);
  law.p_inf_ = p_inf;
  law.head_.assign(static_cast<std::size_t>(r), 0.0);
  law.head_.back() = 1.0 - p_inf;
  law.finalize();
  return law;
}

ExcursionLaw ExcursionLaw::custom(std::vector<double> pmf, double p_inf, CustomTail tail,
                                  long horizon) {
  check_p_inf(p_inf);
  double mass = 0.0;
  for (double p : pmf) {
    require(std::isfinite(p) && p >= 0.0, "custom pmf entries must be finite and nonnegative");
    mass += p;
  }
  const double remaining = 1.0 - p_inf - mass;
  require(remaining >= -kMassTol, "custom pmf sums above 1 - p_inf");

  ExcursionLaw law;
  law.family_ = ExcursionFamily::custom;
  law.custom_tail_ = tail;
  law.p_inf_ = p_inf;
  law.horizon_ = horizon;
  law.head_ = std::move(pmf);
  while (!law.head_.empty() && law.head_.back() == 0.0) law.head_.pop_back();

  switch (tail.cls) {
    case TailClass::finite_support:
      require(std::fabs(remaining) <= kMassTol,
              "finite-support custom law must satisfy sum(pmf) + p_inf = 1");
      require(!law.head_.empty(), "custom law has empty support");
      break;
    case TailClass::polynomial:
      require(std::isfinite(tail.power) && tail.power > 1.0,
              "polynomial tail class needs exponent > 1");
      require(remaining > kMassTol, "polynomial tail class needs positive mass beyond the table");
      law.has_ext_ = true;
      law.ext_power_ = tail.power;
      law.ext_rate_ = 0.0;
      break;
    case TailClass::exponential:
      require(std::isfinite(tail.rate) && tail.rate > 0.0, "exponential tail class needs rate > 0");
      require(std::isfinite(tail.power), "exponential tail class needs a finite exponent");
      require(remaining > kMassTol, "exponential tail class needs positive mass beyond the table");
      law.has_ext_ = true;
      law.ext_power_ = tail.power;
      law.ext_rate_ = tail.rate;
      break;
  }
  if (law.has_ext_) {
    const long start = static_cast<long>(law.head_.size()) + 1;
    const double norm =
        special::log_power_exp_series(law.ext_power_, -law.ext_rate_, start, horizon);
    law.ext_log_coeff_ = std::log(remaining) - norm;
  }
  law.finalize();
  return law;
}

void ExcursionLaw::finalize() {
  const std::size_t n = head_.size();
  head_suffix_.assign(n + 1, 0.0);
  for (std::size_t k = n; k-- > 0;) head_suffix_[k] = head_suffix_[k + 1] + head_[k];

  ExcursionAnalytics& a = analytics_;
  long r1 = 0;
  std::optional<long> r2;
  long period = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (head_[i] <= 0.0) continue;
    const long k = static_cast<long>(i) + 1;
    if (r1 == 0) {
      r1 = k;
    } else if (!r2) {
      r2 = k;
    }
    period = std::gcd(period, k);
  }
  if (has_ext_) {
    const long first = static_cast<long>(n) + 1;
    if (r1 == 0) {
      r1 = first;
      r2 = first + 1;
    } else if (!r2) {
      r2 = first;
    }
    period = 1;
  }
  a.r1 = r1;
  a.r2 = r2;
  a.period = period;
  a.p_g = r2 ? 2.0 * pmf(r1) * pmf(*r2) : 0.0;

  if (has_ext_) {
    a.a_E = ext_rate_;
    a.log_M_E_at_a_E = log_mgf(ext_rate_);
    a.a_E_prime = ext_power_ > 2.0 ? mgf_slope(ext_rate_) : kInf;
  } else {
    a.a_E = kInf;
    a.log_M_E_at_a_E = kInf;
    a.a_E_prime = static_cast<double>(*support_max());
  }
  a.exponentially_recurrent = a.a_E > 0.0;
  a.m_E = mgf_slope(0.0);
  a.delta_E = (p_inf_ == 0.0 && std::isfinite(a.m_E)) ? 1.0 / a.m_E : 0.0;
}

double ExcursionLaw::log_ext_sum(double t, int order, long start) const {
  return ext_log_coeff_ +
         special::log_power_exp_series(ext_power_ - order, t - ext_rate_, start, horizon_);
}

double ExcursionLaw::log_pmf(long k) const {
  if (k < 1) return kNegInf;
  const auto n = static_cast<long>(head_.size());
  if (k <= n) return head_[k - 1] > 0.0 ? std::log(head_[k - 1]) : kNegInf;
  if (!has_ext_) return kNegInf;
  const double kd = static_cast<double>(k);
  return ext_log_coeff_ - ext_power_ * std::log(kd) - ext_rate_ * kd;
}

double ExcursionLaw::pmf(long k) const {
  if (k >= 1 && k <= static_cast<long>(head_.size())) return head_[k - 1];
  return std::exp(log_pmf(k));
}

double ExcursionLaw::log_tail(long k) const {
  if (k < 0) k = 0;
  const auto n = static_cast<long>(head_.size());
  double acc = p_inf_ > 0.0 ? std::log(p_inf_) : kNegInf;
  if (k < n && head_suffix_[k] > 0.0) acc = log_add(acc, std::log(head_suffix_[k]));
  if (has_ext_) acc = log_add(acc, log_ext_sum(0.0, 0, std::max(k, n) + 1));
  return acc;
}

double ExcursionLaw::tail(long k) const { return std::exp(log_tail(k)); }

std::pair<double, double> ExcursionLaw::pmf_and_tail(long k) const {
  require(k >= 1, "pmf_and_tail needs k >= 1");
  return {pmf(k), tail(k)};
}

double ExcursionLaw::log_moment(double t, int order) const {
  if (std::isnan(t)) return t;
  if (has_ext_ && t > ext_rate_) return kInf;
  if (t == kInf) return kInf;
  double acc = kNegInf;
  for (std::size_t i = 0; i < head_.size(); ++i) {
    if (head_[i] <= 0.0) continue;
    const double k = static_cast<double>(i + 1);
    acc = log_add(acc, std::log(head_[i]) + order * std::log(k) + t * k);
  }
  if (has_ext_) acc = log_add(acc, log_ext_sum(t, order, static_cast<long>(head_.size()) + 1));
  return acc;
}

double ExcursionLaw::log_mgf(double t) const {
  if (t == 0.0) return std::log1p(-p_inf_);
  return log_moment(t, 0);
}

double ExcursionLaw::mgf_slope(double t) const {
  const double m1 = log_moment(t, 1);
  if (m1 == kInf) return kInf;
  const double m0 = log_moment(t, 0);
  if (m0 == kNegInf) return kNegInf;
  return std::exp(m1 - m0);
}

ConvexFunction ExcursionLaw::log_mgf_function() const {
  ConvexFunction phi;
  phi.value = [this](double x) { return log_mgf(x); };
  phi.slope = [this](double x) { return mgf_slope(x); };
  phi.lo = kNegInf;
  phi.slope_lo = static_cast<double>(analytics_.r1);
  phi.offset_lo = log_pmf(analytics_.r1);
  if (has_ext_) {
    phi.hi = ext_rate_;
    phi.value_hi = analytics_.log_M_E_at_a_E;
    phi.slope_hi = analytics_.a_E_prime;
  } else {
    const long rmax = *support_max();
    phi.hi = kInf;
    phi.slope_hi = static_cast<double>(rmax);
    phi.offset_hi = log_pmf(rmax);
  }
  return phi;
}

double ExcursionLaw::rate_J(double t) const {
  if (std::isnan(t)) return t;
  return convex_conjugate(log_mgf_function(), t).value;
}

std::pair<double, double> ExcursionLaw::g_domain() const {
  const double lo = has_ext_ ? 0.0 : 1.0 / static_cast<double>(*support_max());
  return {lo, 1.0 / static_cast<double>(analytics_.r1)};
}

double ExcursionLaw::g(double x) const {
  require(x >= 0.0 && x <= 1.0, "g is defined on [0, 1]");
  if (x == 0.0) return analytics_.a_E;
  const double j = rate_J(1.0 / x);
  return j == kInf ? kInf : x * j;
}

std::optional<long> ExcursionLaw::support_max() const {
  if (has_ext_) return std::nullopt;
  for (std::size_t i = head_.size(); i-- > 0;) {
    if (head_[i] > 0.0) return static_cast<long>(i) + 1;
  }
  return std::nullopt;
}

std::optional<long> ExcursionLaw::full_support_start() const {
  if (!has_ext_) return std::nullopt;
  long l = static_cast<long>(head_.size()) + 1;
  while (l > 1 && head_[l - 2] > 0.0) --l;
  return l;
}

std::vector<double> ExcursionLaw::log_pmf_table(long n) const {
  std::vector<double> out(static_cast<std::size_t>(n) + 1, kNegInf);
  for (long k = 1; k <= n; ++k) out[k] = log_pmf(k);
  return out;
}

std::vector<double> ExcursionLaw::log_tail_table(long n) const {
  // One series evaluation at the far end, then exact accumulation downward.
  std::vector<double> out(static_cast<std::size_t>(n) + 1, kNegInf);
  out[n] = log_tail(n);
  for (long k = n; k-- > 0;) out[k] = log_add(out[k + 1], log_pmf(k + 1));
  return out;
}

}  // namespace pinning
