#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pinning/disorder.hpp"
#include "pinning/excursion_law.hpp"

namespace pinning {

enum class TransitionOrder { continuous, first_order, undefined_uc_infinite };

std::string to_string(TransitionOrder t);

/// u_c^d(beta) = u_c^d(1) / beta with u_c^d(1) = -log M_E(a_E).
double u_c_det(const ExcursionLaw& law, double beta = 1.0);

/// Smallest u at which free_energy_det(1, u) rises above -a_E, located by
/// bisection on [lo, hi] to width `tol`. Used as a cross-check of u_c_det.
double u_c_det_by_bisection(const ExcursionLaw& law, double lo, double hi, double tol = 1e-6);

/// u_c^d(beta) - log M_V(beta) / beta.
double u_c_annealed(double beta, const ExcursionLaw& law, const DisorderLaw& disorder);

TransitionOrder transition_order(const ExcursionLaw& law);

struct ContactFraction {
  double value = 0.0;
  bool at_boundary = false;  ///< u equals u_c^d(beta)
};

/// Maximizing delta of the deterministic variational formula; 0 for u <= u_c^d.
ContactFraction contact_fraction(double beta, double u, const ExcursionLaw& law);

/// inf over (delta, eta] of g.
double ld_rate_contacts(const ExcursionLaw& law, double delta, double eta);

struct QuenchedConfig {
  std::vector<long> n_list = {512, 2048, 8192};
  long replicas = 32;
  double confidence = 0.95;
  std::uint64_t seed = 1;
  double tolerance = 0.01;  ///< target interval width
  int max_steps = 40;       ///< budget of test evaluations
  int threads = 1;
};

/// One evaluation of the quenched pinning test at u, largest n only.
struct QuenchedProbe {
  double u = 0.0;
  double mean = 0.0;  ///< panel mean of (log Z_n - log Z_{n/2}) / (n - n/2)
  double std_error = 0.0;
  double statistic = 0.0;  ///< mean + a_E
  bool pinned = false;     ///< statistic > z * std_error + 1/n
};

struct QuenchedInterval {
  double lo = 0.0;  ///< largest u failing the test
  double hi = 0.0;  ///< smallest u passing the test
  double confidence = 0.95;
  double z = 0.0;
  bool ok = false;  ///< false: inconclusive at the given budget
  std::vector<QuenchedProbe> probes;
};

/// Test of beta f^q + a_E > 0 on a fixed disorder panel drawn from cfg.seed.
QuenchedProbe quenched_probe(double beta, double u, const ExcursionLaw& law,
                             const DisorderLaw& disorder, const QuenchedConfig& cfg);

QuenchedInterval u_c_quenched_estimate(double beta, const ExcursionLaw& law,
                                       const DisorderLaw& disorder, const QuenchedConfig& cfg);

/// One-sided standard normal quantile.
double normal_quantile(double p);

}  // namespace pinning
