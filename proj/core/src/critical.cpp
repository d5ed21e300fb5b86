#include "pinning/critical.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/normal.hpp>

#include "pinning/error.hpp"
#include "pinning/free_energy.hpp"
#include "pinning/parallel.hpp"
#include "pinning/partition.hpp"

namespace pinning {

std::string to_string(TransitionOrder t) {
  switch (t) {
    case TransitionOrder::continuous: return "continuous";
    case TransitionOrder::first_order: return "first_order";
    case TransitionOrder::undefined_uc_infinite: return "undefined_uc_infinite";
  }
  return "continuous";
}

double normal_quantile(double p) {
  require(p > 0.0 && p < 1.0, "quantile level must lie in (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double u_c_det(const ExcursionLaw& law, double beta) {
  require(std::isfinite(beta) && beta > 0.0, "critical point needs beta > 0");
  const double log_m = law.analytics().log_M_E_at_a_E;
  if (log_m == kInf) return kNegInf;
  return -log_m / beta;
}

double u_c_det_by_bisection(const ExcursionLaw& law, double lo, double hi, double tol) {
  const double a_E = law.analytics().a_E;
  require(std::isfinite(a_E), "bisection check needs a finite a_E");
  // The flat phase value -a_E is attained exactly at delta = 0, so any
  // strictly positive excess marks the pinned side.
  auto pinned = [&](double u) { return free_energy_det(1.0, u, law).value + a_E > 1e-13; };
  require(!pinned(lo) && pinned(hi), "bisection bracket does not straddle the critical point");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (pinned(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double u_c_annealed(double beta, const ExcursionLaw& law, const DisorderLaw& disorder) {
  const double lmv = disorder.log_mgf(beta);
  if (!std::isfinite(lmv)) {
    fail(ErrorKind::numeric, "disorder has no finite moment generating function at beta");
  }
  const double ucd = u_c_det(law, beta);
  if (ucd == kNegInf) return kNegInf;
  return ucd - lmv / beta;
}

TransitionOrder transition_order(const ExcursionLaw& law) {
  const auto& a = law.analytics();
  if (a.log_M_E_at_a_E == kInf) return TransitionOrder::undefined_uc_infinite;
  if (a.exponentially_recurrent) return TransitionOrder::continuous;
  return std::isfinite(a.m_E) ? TransitionOrder::first_order : TransitionOrder::continuous;
}

ContactFraction contact_fraction(double beta, double u, const ExcursionLaw& law) {
  const double ucd = u_c_det(law, beta);
  if (u < ucd) return {0.0, false};
  if (u == ucd) return {0.0, true};
  return {free_energy_det(beta, u, law).argmax_delta, false};
}

double ld_rate_contacts(const ExcursionLaw& law, double delta, double eta) {
  require(delta >= 0.0 && delta < eta && eta <= 1.0, "need 0 <= delta < eta <= 1");
  const auto& a = law.analytics();
  if (law.p_inf() == 0.0 && std::isfinite(a.m_E)) {
    const double center = 1.0 / a.m_E;
    if (center > delta && center <= eta) return 0.0;
  }
  if (delta == 0.0 && a.a_E == 0.0) return 0.0;
  const auto [dom_lo, dom_hi] = law.g_domain();
  const double lo = std::max(delta, dom_lo);
  const double hi = std::min(eta, dom_hi);
  if (lo > hi) return kInf;
  return golden_section_min([&](double x) { return law.g(x); }, lo, hi, 1e-12).value;
}

namespace {

// Fixed tables and disorder panel reused for every u of one estimate.
class ProbeRunner {
 public:
  ProbeRunner(double beta, const ExcursionLaw& law, const DisorderLaw& disorder,
              const QuenchedConfig& cfg)
      : beta_(beta), a_E_(law.analytics().a_E), cfg_(cfg) {
    require(!cfg.n_list.empty(), "n_list must not be empty");
    require(cfg.replicas >= 2, "quenched estimate needs at least two replicas");
    n_max_ = *std::max_element(cfg.n_list.begin(), cfg.n_list.end());
    require(n_max_ >= 4, "largest n must be at least 4");
    tables_ = RenewalTables::build(law, n_max_);
    panel_ = DisorderPanel::draw(disorder, cfg.replicas, n_max_, cfg.seed);
    z_ = normal_quantile(cfg.confidence);
  }

  // Per replica, the n versus n/2 Richardson estimate
  // (log Z_n - log Z_{n/2}) / (n - n/2), which cancels the O(1/n) boundary
  // term that (1/n) log Z_n carries in the flat phase. Pinned requires the
  // mean to clear z standard errors plus a resolution floor of 1/n.
  QuenchedProbe operator()(double u) const {
    const std::vector<long> ns = {n_max_ / 2, n_max_};
    const long reps = static_cast<long>(panel_.replicas.size());
    std::vector<double> est(static_cast<std::size_t>(reps));
    parallel_for(reps, cfg_.threads, [&](long r) {
      const auto z = log_partition_at(tables_, beta_, u, panel_.replicas[r].values, ns);
      est[r] = (z[1] - z[0]) / static_cast<double>(ns[1] - ns[0]);
    });
    double mean = 0.0;
    for (double e : est) mean += e;
    mean /= static_cast<double>(reps);
    double ss = 0.0;
    for (double e : est) ss += (e - mean) * (e - mean);
    QuenchedProbe p;
    p.u = u;
    p.mean = mean;
    p.std_error = std::sqrt(ss / static_cast<double>(reps - 1) / static_cast<double>(reps));
    p.statistic = mean + a_E_;
    p.pinned = p.statistic > z_ * p.std_error + 1.0 / static_cast<double>(n_max_);
    return p;
  }

  double z() const { return z_; }

 private:
  double beta_;
  double a_E_;
  QuenchedConfig cfg_;
  long n_max_ = 0;
  RenewalTables tables_;
  DisorderPanel panel_;
  double z_ = 0.0;
};

}  // namespace

QuenchedProbe quenched_probe(double beta, double u, const ExcursionLaw& law,
                             const DisorderLaw& disorder, const QuenchedConfig& cfg) {
  require(std::isfinite(law.analytics().a_E), "quenched test needs a finite a_E");
  return ProbeRunner(beta, law, disorder, cfg)(u);
}

QuenchedInterval u_c_quenched_estimate(double beta, const ExcursionLaw& law,
                                       const DisorderLaw& disorder, const QuenchedConfig& cfg) {
  const double ucd = u_c_det(law, beta);
  if (!std::isfinite(ucd)) fail(ErrorKind::numeric, "quenched estimate needs a finite u_c^d");
  require(cfg.tolerance > 0.0, "tolerance must be positive");
  const ProbeRunner probe(beta, law, disorder, cfg);

  QuenchedInterval out;
  out.confidence = cfg.confidence;
  out.z = probe.z();
  int steps = 0;
  auto test = [&](double u) {
    ++steps;
    out.probes.push_back(probe(u));
    return out.probes.back().pinned;
  };

  double uca = ucd - 1.0;
  if (std::isfinite(disorder.log_mgf(beta))) uca = u_c_annealed(beta, law, disorder);
  double lo = std::min(uca, ucd);
  double hi = ucd;
  const double width = std::max(hi - lo, 4.0 * cfg.tolerance);
  auto give_up = [&] {
    out.lo = lo;
    out.hi = hi;
    return out;
  };

  // Bracket: lo must fail the test and hi must pass it.
  double w = width;
  bool hi_passes = false;
  while (test(lo)) {
    hi = lo;
    hi_passes = true;
    lo -= w;
    w *= 2.0;
    if (steps >= cfg.max_steps) return give_up();
  }
  if (!hi_passes) {
    if (hi <= lo) hi = lo + width;
    w = width;
    while (!test(hi)) {
      lo = hi;
      hi += w;
      w *= 2.0;
      if (steps >= cfg.max_steps) return give_up();
    }
  }
  while (hi - lo > cfg.tolerance && steps < cfg.max_steps) {
    const double mid = 0.5 * (lo + hi);
    if (test(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.lo = lo;
  out.hi = hi;
  out.ok = hi - lo <= cfg.tolerance * (1.0 + 1e-9);
  return out;
}

}  // namespace pinning
