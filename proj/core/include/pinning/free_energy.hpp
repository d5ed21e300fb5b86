#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pinning/disorder.hpp"
#include "pinning/excursion_law.hpp"
#include "pinning/partition.hpp"

namespace pinning {

enum class FeMethod { variational, finite_volume, quenched_mc, annealed_shift };

std::string to_string(FeMethod m);

/// All values are beta * f, the limit of (1/n) log Z.
struct FreeEnergyEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long n = 0;
  long samples = 0;
  FeMethod method = FeMethod::variational;
  double argmax_delta = 0.0;  ///< variational maximizer (contact fraction)
  double correction = 0.0;    ///< finite volume: estimate(n) - estimate(n/2), heuristic
  double replica_std = 0.0;   ///< quenched: across-replica standard deviation
};

/// sup over delta of (beta u delta - g(delta)).
FreeEnergyEstimate free_energy_det(double beta, double u, const ExcursionLaw& law);

/// (1/n) log Z_n for one realization; nullptr means V = 0.
FreeEnergyEstimate free_energy_finite(const PinningSystem& sys,
                                      const DisorderRealization* realization, long n);

/// Deterministic free energy at u + log M_V(beta) / beta.
FreeEnergyEstimate free_energy_annealed(double beta, double u, const ExcursionLaw& law,
                                        const DisorderLaw& disorder);

/// Fixed set of disorder realizations, replica r drawn from derive_seed(seed, r).
struct DisorderPanel {
  static DisorderPanel draw(const DisorderLaw& law, long replicas, long n, std::uint64_t seed);
  std::uint64_t seed = 0;
  std::vector<DisorderRealization> replicas;
};

struct ReplicaStats {
  long n = 0;
  double mean = 0.0;
  double std_dev = 0.0;
  double std_error = 0.0;
};

/// Mean, spread and standard error of (1/n) log Z_n over the panel for each n.
/// Replicas may run concurrently; the reduction is in replica order.
std::vector<ReplicaStats> quenched_stats(const RenewalTables& tables, double beta, double u,
                                         const DisorderPanel& panel, std::span<const long> ns,
                                         int threads = 1);

FreeEnergyEstimate free_energy_quenched_mc(const PinningSystem& sys, long n, long replicas,
                                           std::uint64_t seed, int threads = 1);

}  // namespace pinning
