#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pinning/excursion_law.hpp"
#include "pinning/partition.hpp"
#include "pinning/rng.hpp"

namespace pinning {

struct PathSample {
  std::vector<long> return_times;  ///< T_1 < T_2 < ... <= n
  long L_n = 0;
  bool escaped = false;  ///< the last return precedes n
};

/// Exact draw from the finite-volume Gibbs measure on return sets: the last
/// return m with probability c_m tail(n-m) / Z_n, then each earlier gap j
/// with probability K(j) c_{m-j} e^{beta(u+v_m)} / c_m.
class PathSampler {
 public:
  PathSampler(const RenewalTables& tables, double beta, double u, std::span<const double> v,
              long n);

  PathSample draw(CounterStream& rng) const;
  /// Draw number `index` of a run keyed by `seed`.
  PathSample draw(std::uint64_t seed, std::uint64_t index) const;

  const PartitionTrace& trace() const { return trace_; }

 private:
  RenewalTables tables_;
  double beta_;
  double u_;
  std::vector<double> v_;
  long n_;
  PartitionTrace trace_;
};

struct BlockStats {
  long r1 = 0;
  long r2 = 0;
  long num_blocks = 0;
  long good_blocks = 0;
  long targets_hit = 0;
  double p_g = 0.0;
  double p_h = 0.5;
};

/// Block j spans returns T_{2j-2} to T_{2j} (T_0 = 0). It is good when its
/// length is r1 + r2; its target is hit when T_{2j-1} = T_{2j-2} + r1.
BlockStats block_stats(const PathSample& path, const ExcursionLaw& law);

struct GoodBlockReport {
  long n = 0;
  double delta = 0.0;
  long draws = 0;
  long accepted = 0;                ///< paths with |L_n - delta n| <= sqrt(n)
  std::vector<long> good_counts;    ///< G_n of each accepted path, ascending
  double p_g = 0.0;
  double c_99 = 0.0;  ///< largest c with empirical P(G_n >= c p_g delta n) >= 0.99
  double mean_good_fraction = 0.0;  ///< mean of G_n / n
  bool ok = false;                  ///< false when too few paths fell in the band

  /// Empirical P(G_n >= c p_g delta n) over accepted paths.
  double fraction_at_least(double c) const;
};

inline constexpr long kMinBandPaths = 50;

/// Conditional distribution of good blocks given L_n near delta n.
GoodBlockReport good_block_diagnostic(const RenewalTables& tables, const ExcursionLaw& law,
                                      double beta, double u, std::span<const double> v,
                                      long n, double delta, long draws, std::uint64_t seed);

}  // namespace pinning
