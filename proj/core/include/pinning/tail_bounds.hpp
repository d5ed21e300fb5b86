#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pinning/disorder.hpp"
#include "pinning/excursion_law.hpp"

namespace pinning {

/// Lower bound on log Z_n from one explicit return strategy: from each chosen
/// site i_{j-1}, return at the first site in [i_{j-1} + l0, i_{j-1} + l1]
/// whose value is >= M, or at i_{j-1} + l1 if there is none.
struct StrategyBound {
  double M = 0.0;
  long l0 = 0;
  long l1 = 0;
  double theta = 0.0;  ///< min K(l) over l0 <= l <= l1
  std::vector<long> J_plus;
  std::vector<long> J_minus;
  double log_Z_lower = 0.0;
  double per_site_rate = 0.0;
  long n = 0;
  bool randomized = false;     ///< atom at M thinned by auxiliary uniforms
  double atom_accept = 1.0;    ///< acceptance probability for sites with v = M

  /// |J-| / |J|, or 0 when J is empty.
  double minus_fraction() const;
};

inline constexpr long kMaxL0 = 1000;

/// Smallest l with K(k) > 0 for all k >= l; config error if none within kMaxL0.
long aperiodicity_floor(const ExcursionLaw& law);

struct StrategyOptions {
  /// Forces l1 and thins an atom at M so the qualifying probability is 1/l1.
  std::optional<long> l1;
  std::uint64_t aux_seed = 0;
};

StrategyBound greedy_bound(double beta, double u, const ExcursionLaw& law,
                           const DisorderLaw& disorder, std::span<const double> v, double M,
                           long n, const StrategyOptions& opt = {});

/// Thresholds searched by optimize_threshold.
std::vector<double> threshold_grid(const DisorderLaw& disorder, long n);

/// Best bound over threshold_grid plus, for each grid point, the choice
/// M = tail_quantile(1 / l1(M)) with atoms randomized.
StrategyBound optimize_threshold(double beta, double u, const ExcursionLaw& law,
                                 const DisorderLaw& disorder, std::span<const double> v, long n,
                                 std::uint64_t aux_seed = 0);

enum class PinningVerdict { pinning_all_u, condition_not_met, unknown };

std::string to_string(PinningVerdict v);

struct VerdictReport {
  PinningVerdict verdict = PinningVerdict::unknown;
  std::string reason;
};

/// Symbolic check of the fat-tail sufficient conditions for built-in families.
VerdictReport fat_tail_verdict(const ExcursionLaw& law, const DisorderLaw& disorder);

}  // namespace pinning
