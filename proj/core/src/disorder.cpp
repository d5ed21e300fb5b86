#include "pinning/disorder.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "pinning/error.hpp"
#include "pinning/rng.hpp"

namespace pinning {

std::string to_string(DisorderFamily f) {
  switch (f) {
    case DisorderFamily::zero: return "zero";
    case DisorderFamily::gaussian: return "gaussian";
    case DisorderFamily::two_point: return "two_point";
    case DisorderFamily::centered_exponential: return "centered_exponential";
    case DisorderFamily::shifted_pareto: return "shifted_pareto";
    case DisorderFamily::stretched_exp_tail: return "stretched_exp_tail";
  }
  return "zero";
}

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

boost::math::quadrature::tanh_sinh<double>& integrator() {
  static boost::math::quadrature::tanh_sinh<double> q(15);
  return q;
}

// log(1 - p + p e^y) for any real y.
double ell(double y, double p) {
  if (y > 0.0) return y + std::log(p + (1.0 - p) * std::exp(-y));
  return std::log1p(p * std::expm1(y));
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void check_positive(double x, const char* what) {
  require(std::isfinite(x) && x > 0.0, std::string(what) + " must be positive and finite");
}

}  // namespace

DisorderLaw DisorderLaw::zero() {
  DisorderLaw law;
  law.family_ = DisorderFamily::zero;
  return law;
}

DisorderLaw DisorderLaw::gaussian(double sigma) {
  check_positive(sigma, "gaussian sigma");
  DisorderLaw law;
  law.family_ = DisorderFamily::gaussian;
  law.params_ = {sigma};
  law.a_ = sigma;
  return law;
}

DisorderLaw DisorderLaw::two_point(double v_plus, double v_minus, double p) {
  require(std::isfinite(v_plus) && std::isfinite(v_minus) && v_plus > v_minus,
          "two_point needs finite v_plus > v_minus");
  require(p > 0.0 && p < 1.0, "two_point needs 0 < p < 1");
  DisorderLaw law;
  law.family_ = DisorderFamily::two_point;
  law.params_ = {v_plus, v_minus, p};
  const double gap = v_plus - v_minus;
  law.hi_ = (1.0 - p) * gap;
  law.lo_ = -p * gap;
  law.p_ = p;
  return law;
}

DisorderLaw DisorderLaw::centered_exponential(double lambda) {
  check_positive(lambda, "exponential rate");
  DisorderLaw law;
  law.family_ = DisorderFamily::centered_exponential;
  law.params_ = {lambda};
  law.a_ = lambda;
  law.shift_ = 1.0 / lambda;
  return law;
}

DisorderLaw DisorderLaw::shifted_pareto(double alpha, double scale) {
  require(std::isfinite(alpha) && alpha > 1.0, "shifted_pareto needs alpha > 1");
  check_positive(scale, "shifted_pareto scale");
  DisorderLaw law;
  law.family_ = DisorderFamily::shifted_pareto;
  law.params_ = {alpha, scale};
  law.a_ = alpha;
  law.b_ = scale;
  law.shift_ = alpha * scale / (alpha - 1.0);
  return law;
}

DisorderLaw DisorderLaw::stretched_exp_tail(double theta, double scale) {
  require(std::isfinite(theta) && theta > 0.0 && theta < 1.0,
          "stretched_exp_tail needs 0 < theta < 1");
  check_positive(scale, "stretched_exp_tail scale");
  DisorderLaw law;
  law.family_ = DisorderFamily::stretched_exp_tail;
  law.params_ = {theta, scale};
  law.a_ = theta;
  law.b_ = scale;
  law.shift_ = scale * boost::math::tgamma(1.0 + 1.0 / theta);
  return law;
}

std::uint64_t DisorderLaw::fingerprint() const {
  std::string text = to_string(family_);
  char buf[32];
  for (double p : params_) {
    std::snprintf(buf, sizeof buf, ":%.17g", p);
    text += buf;
  }
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

double DisorderLaw::a_V() const {
  switch (family_) {
    case DisorderFamily::centered_exponential: return a_;
    case DisorderFamily::shifted_pareto:
    case DisorderFamily::stretched_exp_tail: return 0.0;
    default: return kInf;
  }
}

double DisorderLaw::variance() const {
  switch (family_) {
    case DisorderFamily::zero: return 0.0;
    case DisorderFamily::gaussian: return a_ * a_;
    case DisorderFamily::two_point: return p_ * (1.0 - p_) * (hi_ - lo_) * (hi_ - lo_);
    case DisorderFamily::centered_exponential: return 1.0 / (a_ * a_);
    case DisorderFamily::shifted_pareto:
      if (a_ <= 2.0) return kInf;
      return b_ * b_ * a_ / ((a_ - 1.0) * (a_ - 1.0) * (a_ - 2.0));
    case DisorderFamily::stretched_exp_tail: {
      const double g1 = boost::math::tgamma(1.0 + 1.0 / a_);
      return b_ * b_ * (boost::math::tgamma(1.0 + 2.0 / a_) - g1 * g1);
    }
  }
  return 0.0;
}

double DisorderLaw::quantile_lower(double u) const {
  switch (family_) {
    case DisorderFamily::gaussian: return -a_ * kSqrt2 * boost::math::erfc_inv(2.0 * u);
    case DisorderFamily::centered_exponential: return -std::log1p(-u) / a_ - shift_;
    case DisorderFamily::shifted_pareto: return b_ * std::exp(-std::log1p(-u) / a_) - shift_;
    case DisorderFamily::stretched_exp_tail:
      return b_ * std::pow(-std::log1p(-u), 1.0 / a_) - shift_;
    default: return 0.0;
  }
}

double DisorderLaw::quantile_upper(double s) const {
  switch (family_) {
    case DisorderFamily::gaussian: return a_ * kSqrt2 * boost::math::erfc_inv(2.0 * s);
    case DisorderFamily::centered_exponential: return -std::log(s) / a_ - shift_;
    case DisorderFamily::shifted_pareto: return b_ * std::pow(s, -1.0 / a_) - shift_;
    case DisorderFamily::stretched_exp_tail: return b_ * std::pow(-std::log(s), 1.0 / a_) - shift_;
    default: return 0.0;
  }
}

double DisorderLaw::support_min() const {
  switch (family_) {
    case DisorderFamily::zero: return 0.0;
    case DisorderFamily::two_point: return lo_;
    case DisorderFamily::centered_exponential: return -shift_;
    case DisorderFamily::shifted_pareto: return b_ - shift_;
    case DisorderFamily::stretched_exp_tail: return -shift_;
    default: return kNegInf;
  }
}

double DisorderLaw::expectation(const std::function<double(double)>& f) const {
  if (family_ == DisorderFamily::zero) return f(0.0);
  if (family_ == DisorderFamily::two_point) return p_ * f(hi_) + (1.0 - p_) * f(lo_);
  // E f(V) = int_0^1 f(F^{-1}(u)) du, split at 1/2 so each half is evaluated
  // in the variable that stays accurate near its singular endpoint.
  constexpr double kMin = std::numeric_limits<double>::min();
  auto lower = [&](double u) { return f(quantile_lower(std::max(u, kMin))); };
  auto upper = [&](double s) { return f(quantile_upper(std::max(s, kMin))); };
  auto& q = integrator();
  return q.integrate(lower, 0.0, 0.5, 1e-12) + q.integrate(upper, 0.0, 0.5, 1e-12);
}

double DisorderLaw::log_mgf(double t) const {
  if (t == 0.0) return 0.0;
  switch (family_) {
    case DisorderFamily::zero: return 0.0;
    case DisorderFamily::gaussian: return 0.5 * t * t * a_ * a_;
    case DisorderFamily::two_point:
      return log_add(std::log(p_) + t * hi_, std::log1p(-p_) + t * lo_);
    case DisorderFamily::centered_exponential:
      if (t >= a_) return kInf;
      return -t / a_ - std::log1p(-t / a_);
    case DisorderFamily::shifted_pareto:
    case DisorderFamily::stretched_exp_tail: {
      if (t > 0.0) return kInf;
      const double vmin = support_min();
      return t * vmin + std::log(expectation([&](double v) { return std::exp(t * (v - vmin)); }));
    }
  }
  return 0.0;
}

double DisorderLaw::mgf_slope(double t) const {
  if (t == 0.0) return 0.0;
  switch (family_) {
    case DisorderFamily::zero: return 0.0;
    case DisorderFamily::gaussian: return t * a_ * a_;
    case DisorderFamily::two_point: {
      const double w = sigmoid(std::log(p_) - std::log1p(-p_) + t * (hi_ - lo_));
      return w * hi_ + (1.0 - w) * lo_;
    }
    case DisorderFamily::centered_exponential:
      if (t >= a_) return kInf;
      return -1.0 / a_ + 1.0 / (a_ - t);
    case DisorderFamily::shifted_pareto:
    case DisorderFamily::stretched_exp_tail: {
      if (t > 0.0) return kInf;
      const double vmin = support_min();
      const double m0 = expectation([&](double v) { return std::exp(t * (v - vmin)); });
      const double m1 = expectation([&](double v) { return v * std::exp(t * (v - vmin)); });
      return m1 / m0;
    }
  }
  return 0.0;
}

ConvexFunction DisorderLaw::log_mgf_function() const {
  ConvexFunction phi;
  phi.value = [this](double x) { return log_mgf(x); };
  phi.slope = [this](double x) { return mgf_slope(x); };
  switch (family_) {
    case DisorderFamily::zero:
      phi.slope_lo = phi.slope_hi = 0.0;
      phi.offset_lo = phi.offset_hi = 0.0;
      break;
    case DisorderFamily::gaussian:
      break;
    case DisorderFamily::two_point:
      phi.slope_lo = lo_;
      phi.slope_hi = hi_;
      phi.offset_lo = std::log1p(-p_);
      phi.offset_hi = std::log(p_);
      break;
    case DisorderFamily::centered_exponential:
      phi.slope_lo = -shift_;
      phi.hi = a_;
      phi.value_hi = kInf;
      break;
    case DisorderFamily::shifted_pareto:
    case DisorderFamily::stretched_exp_tail:
      phi.slope_lo = support_min();
      phi.hi = 0.0;
      phi.value_hi = 0.0;
      phi.slope_hi = 0.0;
      break;
  }
  return phi;
}

double DisorderLaw::rate_I(double M) const {
  if (M == 0.0) return 0.0;
  switch (family_) {
    case DisorderFamily::zero: return kInf;
    case DisorderFamily::gaussian: return 0.5 * M * M / (a_ * a_);
    case DisorderFamily::two_point: {
      const double q = (M - lo_) / (hi_ - lo_);
      if (q < 0.0 || q > 1.0) return kInf;
      double r = 0.0;
      if (q > 0.0) r += q * std::log(q / p_);
      if (q < 1.0) r += (1.0 - q) * std::log((1.0 - q) / (1.0 - p_));
      return r;
    }
    case DisorderFamily::centered_exponential: {
      const double y = a_ * M;
      if (y <= -1.0) return kInf;
      return y - std::log1p(y);
    }
    case DisorderFamily::shifted_pareto:
    case DisorderFamily::stretched_exp_tail:
      if (M > 0.0) return 0.0;
      return convex_conjugate(log_mgf_function(), M).value;
  }
  return kInf;
}

double DisorderLaw::atom(double x) const {
  if (family_ == DisorderFamily::zero) return x == 0.0 ? 1.0 : 0.0;
  if (family_ == DisorderFamily::two_point) {
    if (x == hi_) return p_;
    if (x == lo_) return 1.0 - p_;
  }
  return 0.0;
}

double DisorderLaw::tail_prob(double x) const {
  switch (family_) {
    case DisorderFamily::zero: return x <= 0.0 ? 1.0 : 0.0;
    case DisorderFamily::gaussian: return 0.5 * std::erfc(x / (a_ * kSqrt2));
    case DisorderFamily::two_point:
      if (x <= lo_) return 1.0;
      return x <= hi_ ? p_ : 0.0;
    case DisorderFamily::centered_exponential: {
      const double y = x + shift_;
      return y <= 0.0 ? 1.0 : std::exp(-a_ * y);
    }
    case DisorderFamily::shifted_pareto: {
      const double y = x + shift_;
      return y <= b_ ? 1.0 : std::pow(b_ / y, a_);
    }
    case DisorderFamily::stretched_exp_tail: {
      const double y = x + shift_;
      return y <= 0.0 ? 1.0 : std::exp(-std::pow(y / b_, a_));
    }
  }
  return 0.0;
}

double DisorderLaw::prob_above(double x) const { return tail_prob(x) - atom(x); }

double DisorderLaw::tail_quantile(double t) const {
  require(t > 0.0 && t <= 1.0, "tail_quantile needs t in (0, 1]");
  if (t > tail_prob(0.0)) return 0.0;
  switch (family_) {
    case DisorderFamily::zero: return 0.0;
    case DisorderFamily::two_point: return hi_;
    default: return std::max(0.0, quantile_upper(t));
  }
}

double DisorderLaw::from_uniform(double u) const {
  switch (family_) {
    case DisorderFamily::zero: return 0.0;
    case DisorderFamily::two_point: return u < p_ ? hi_ : lo_;
    default: return u < 0.5 ? quantile_lower(u) : quantile_upper(1.0 - u);
  }
}

double DisorderLaw::psi(double t, double p_h) const {
  require(p_h > 0.0 && p_h < 1.0, "p_h must lie in (0, 1)");
  if (t == 0.0 || is_degenerate()) return 0.0;
  return expectation([&](double v) { return ell(t * v, p_h); });
}

double DisorderLaw::psi_slope(double t, double p_h) const {
  require(p_h > 0.0 && p_h < 1.0, "p_h must lie in (0, 1)");
  if (is_degenerate()) return 0.0;
  const double logit = std::log(p_h) - std::log1p(-p_h);
  return expectation([&](double v) { return v * sigmoid(t * v + logit); });
}

double DisorderLaw::rate_I_tilde(double s, double p_h) const {
  require(p_h > 0.0 && p_h < 1.0, "p_h must lie in (0, 1)");
  if (s == 0.0) return 0.0;
  if (is_degenerate()) return kInf;
  // psi grows like x <V^+> at +inf and -x <V^-> at -inf; <V^+> = <V^-> here.
  const double m1 = expectation([](double v) { return v > 0.0 ? v : 0.0; });
  const double pos = prob_above(0.0);
  const double neg = 1.0 - tail_prob(0.0);
  ConvexFunction phi;
  phi.value = [this, p_h](double x) { return psi(x, p_h); };
  phi.slope = [this, p_h](double x) { return psi_slope(x, p_h); };
  phi.slope_lo = -m1;
  phi.slope_hi = m1;
  phi.offset_hi = pos * std::log(p_h) + neg * std::log1p(-p_h);
  phi.offset_lo = neg * std::log(p_h) + pos * std::log1p(-p_h);
  return convex_conjugate(phi, s).value;
}

DisorderRealization sample(const DisorderLaw& law, long n, std::uint64_t seed) {
  require(n >= 1, "realization length must be positive");
  DisorderRealization r;
  r.seed = seed;
  r.fingerprint = law.fingerprint();
  r.values.resize(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    r.values[i] = law.from_uniform(to_open_unit(counter_bits(seed, 0, static_cast<std::uint64_t>(i))));
  }
  return r;
}

}  // namespace pinning
