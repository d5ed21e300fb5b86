#pragma once

#include <span>
#include <vector>

#include "pinning/disorder.hpp"
#include "pinning/excursion_law.hpp"

namespace pinning {

struct PinningSystem {
  PinningSystem(ExcursionLaw law_, DisorderLaw disorder_, double beta_, double u_);

  ExcursionLaw law;
  DisorderLaw disorder;
  double beta;
  double u;
};

/// log K(0..n) and log P(E_1 > k), k = 0..n. Built once and shared across
/// realizations and parameter values.
struct RenewalTables {
  static RenewalTables build(const ExcursionLaw& law, long n);
  long n = 0;
  std::vector<double> log_K;
  std::vector<double> log_tail;
};

/// log c_k: weight of paths pinned at k; log Z_k: free partition function on [0,k].
struct PartitionTrace {
  long n = 0;
  std::vector<double> log_c;
  std::vector<double> log_Z;
};

/// Disorder values v[0..n-1] correspond to sites 1..n.
PartitionTrace trace(const RenewalTables& tables, double beta, double u,
                     std::span<const double> v, long n);
PartitionTrace trace(const PinningSystem& sys, const DisorderRealization& real, long n);

/// log c_0..log c_n only; the O(n^2) core of every engine.
std::vector<double> pinned_weights(const RenewalTables& tables, double beta, double u,
                                   std::span<const double> v, long n);

/// log Z_m = LSE_k (log c_k + log tail(m-k)) for one m <= log_c.size() - 1.
double free_from_pinned(const RenewalTables& tables, std::span<const double> log_c, long m);

/// log Z_n for each n in `ns` from a single pass up to max(ns).
std::vector<double> log_partition_at(const RenewalTables& tables, double beta, double u,
                                     std::span<const double> v, std::span<const long> ns);

/// Sum over every return set S in {1..n}; independent oracle, n <= 20.
double brute_force_log_partition(const ExcursionLaw& law, double beta, double u,
                                 std::span<const double> v, long n);

/// Restricted partition functions by contact number L_n = j.
struct ContactResolved {
  long n = 0;
  /// log_c[j][k]: paths pinned at k with exactly j returns in (0, k].
  std::vector<std::vector<double>> log_c;
  /// log_Z[j] at time n.
  std::vector<double> log_Z;
  /// Free partition function with L_k = j, for any k <= n.
  std::vector<double> log_Z_at(const RenewalTables& tables, long k) const;
};

enum class Side { below, above };

inline constexpr long kDefaultContactCap = 1024;

ContactResolved contact_resolved(const RenewalTables& tables, double beta, double u,
                                 std::span<const double> v, long n,
                                 long n_cap = kDefaultContactCap);

/// log of the partition function restricted to L_n <= delta n (below) or L_n > delta n (above).
double restrict_contacts(const ContactResolved& cr, double delta, Side side);

/// log of the restriction to lo < L_n <= hi (count bounds, real-valued).
double restrict_band(const ContactResolved& cr, double lo, double hi);

struct ContactMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Exact E[L_n] and Var[L_n] under the finite-volume Gibbs measure.
ContactMoments contact_moments(const RenewalTables& tables, double beta, double u,
                               std::span<const double> v, long n);

}  // namespace pinning
