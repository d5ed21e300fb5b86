#include "pinning/free_energy.hpp"

#include <algorithm>
#include <cmath>

#include "pinning/error.hpp"
#include "pinning/parallel.hpp"
#include "pinning/rng.hpp"

namespace pinning {

std::string to_string(FeMethod m) {
  switch (m) {
    case FeMethod::variational: return "variational";
    case FeMethod::finite_volume: return "finite_volume";
    case FeMethod::quenched_mc: return "quenched_mc";
    case FeMethod::annealed_shift: return "annealed_shift";
  }
  return "variational";
}

FreeEnergyEstimate free_energy_det(double beta, double u, const ExcursionLaw& law) {
  require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and nonnegative");
  require(std::isfinite(u), "u must be finite");
  const double h = beta * u;
  const auto [lo, hi] = law.g_domain();
  const Extremum best =
      golden_section_max([&](double d) { return h * d - law.g(d); }, lo, hi, 1e-12);
  FreeEnergyEstimate est;
  est.value = best.value;
  est.argmax_delta = best.x;
  est.method = FeMethod::variational;
  return est;
}

FreeEnergyEstimate free_energy_finite(const PinningSystem& sys,
                                      const DisorderRealization* realization, long n) {
  require(n >= 64, "finite-volume estimate needs n >= 64");
  const RenewalTables tables = RenewalTables::build(sys.law, n);
  std::vector<double> zeros;
  std::span<const double> v;
  if (realization) {
    v = realization->values;
  } else {
    zeros.assign(static_cast<std::size_t>(n), 0.0);
    v = zeros;
  }
  const long half = n / 2;
  const std::vector<long> ns = {half, n};
  const std::vector<double> lz = log_partition_at(tables, sys.beta, sys.u, v, ns);
  FreeEnergyEstimate est;
  est.value = lz[1] / static_cast<double>(n);
  est.correction = est.value - lz[0] / static_cast<double>(half);
  est.n = n;
  est.samples = 1;
  est.method = FeMethod::finite_volume;
  return est;
}

FreeEnergyEstimate free_energy_annealed(double beta, double u, const ExcursionLaw& law,
                                        const DisorderLaw& disorder) {
  require(std::isfinite(beta) && beta > 0.0, "annealed free energy needs beta > 0");
  const double lmv = disorder.log_mgf(beta);
  if (!std::isfinite(lmv)) {
    fail(ErrorKind::numeric, "disorder has no finite moment generating function at beta");
  }
  FreeEnergyEstimate est = free_energy_det(beta, u + lmv / beta, law);
  est.method = FeMethod::annealed_shift;
  return est;
}

DisorderPanel DisorderPanel::draw(const DisorderLaw& law, long replicas, long n,
                                  std::uint64_t seed) {
  require(replicas >= 1, "panel needs at least one replica");
  DisorderPanel panel;
  panel.seed = seed;
  panel.replicas.reserve(static_cast<std::size_t>(replicas));
  for (long r = 0; r < replicas; ++r) {
    panel.replicas.push_back(sample(law, n, derive_seed(seed, static_cast<std::uint64_t>(r))));
  }
  return panel;
}

std::vector<ReplicaStats> quenched_stats(const RenewalTables& tables, double beta, double u,
                                         const DisorderPanel& panel, std::span<const long> ns,
                                         int threads) {
  const long reps = static_cast<long>(panel.replicas.size());
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(reps));
  parallel_for(reps, threads, [&](long r) {
    rows[r] = log_partition_at(tables, beta, u, panel.replicas[r].values, ns);
  });
  std::vector<ReplicaStats> out;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double n = static_cast<double>(ns[i]);
    double mean = 0.0;
    for (long r = 0; r < reps; ++r) mean += rows[r][i] / n;
    mean /= static_cast<double>(reps);
    double ss = 0.0;
    for (long r = 0; r < reps; ++r) {
      const double d = rows[r][i] / n - mean;
      ss += d * d;
    }
    ReplicaStats s;
    s.n = ns[i];
    s.mean = mean;
    s.std_dev = reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1)) : 0.0;
    s.std_error = s.std_dev / std::sqrt(static_cast<double>(reps));
    out.push_back(s);
  }
  return out;
}

FreeEnergyEstimate free_energy_quenched_mc(const PinningSystem& sys, long n, long replicas,
                                           std::uint64_t seed, int threads) {
  require(replicas >= 2, "quenched estimate needs at least two replicas");
  require(n >= 1, "n must be positive");
  const RenewalTables tables = RenewalTables::build(sys.law, n);
  const DisorderPanel panel = DisorderPanel::draw(sys.disorder, replicas, n, seed);
  const std::vector<long> ns = {n};
  const ReplicaStats s = quenched_stats(tables, sys.beta, sys.u, panel, ns, threads).front();
  FreeEnergyEstimate est;
  est.value = s.mean;
  est.std_error = s.std_error;
  est.replica_std = s.std_dev;
  est.n = n;
  est.samples = replicas;
  est.method = FeMethod::quenched_mc;
  return est;
}

}  // namespace pinning
