#include "pinning/path_sampler.hpp"

#include <algorithm>
#include <cmath>

#include "pinning/error.hpp"

namespace pinning {

PathSampler::PathSampler(const RenewalTables& tables, double beta, double u,
                         std::span<const double> v, long n)
    : tables_(tables), beta_(beta), u_(u), v_(v.begin(), v.begin() + n), n_(n) {
  trace_ = pinning::trace(tables_, beta, u, v_, n);
}

PathSample PathSampler::draw(CounterStream& rng) const {
  const auto& log_c = trace_.log_c;
  const auto& logK = tables_.log_K;
  const auto& logT = tables_.log_tail;
  PathSample path;

  // Last return, scanning down from n.
  const double log_z = trace_.log_Z[n_];
  double target = rng.uniform();
  long m = 0;
  long last_positive = 0;
  for (long k = n_; k >= 0; --k) {
    const double p = std::exp(log_c[k] + logT[n_ - k] - log_z);
    if (p <= 0.0) continue;
    last_positive = k;
    target -= p;
    if (target <= 0.0) {
      m = k;
      break;
    }
    m = -1;
  }
  if (m < 0) m = last_positive;  // rounding left a sliver of mass unassigned
  path.escaped = m < n_;

  std::vector<long> rev;
  while (m > 0) {
    rev.push_back(m);
    const double norm = log_c[m] - beta_ * (u_ + v_[m - 1]);
    double t = rng.uniform();
    long pick = 0;
    long fallback = 0;
    for (long j = 1; j <= m; ++j) {
      const double p = std::exp(logK[j] + log_c[m - j] - norm);
      if (p <= 0.0) continue;
      fallback = j;
      t -= p;
      if (t <= 0.0) {
        pick = j;
        break;
      }
    }
    if (pick == 0) pick = fallback;
    m -= pick;
  }
  path.return_times.assign(rev.rbegin(), rev.rend());
  path.L_n = static_cast<long>(path.return_times.size());
  return path;
}

PathSample PathSampler::draw(std::uint64_t seed, std::uint64_t index) const {
  CounterStream rng(seed, index + 1);
  return draw(rng);
}

BlockStats block_stats(const PathSample& path, const ExcursionLaw& law) {
  if (!law.r2()) fail(ErrorKind::config, "block statistics need two support points r1 < r2");
  BlockStats s;
  s.r1 = law.r1();
  s.r2 = *law.r2();
  s.p_g = law.analytics().p_g;
  const auto& t = path.return_times;
  s.num_blocks = static_cast<long>(t.size()) / 2;
  for (long j = 1; j <= s.num_blocks; ++j) {
    const long start = j == 1 ? 0 : t[2 * j - 3];
    const long mid = t[2 * j - 2];
    const long end = t[2 * j - 1];
    if (end - start != s.r1 + s.r2) continue;
    ++s.good_blocks;
    if (mid == start + s.r1) ++s.targets_hit;
  }
  return s;
}

double GoodBlockReport::fraction_at_least(double c) const {
  if (good_counts.empty()) return 0.0;
  const double cut = c * p_g * delta * static_cast<double>(n);
  const auto it = std::lower_bound(good_counts.begin(), good_counts.end(), cut,
                                   [](long g, double x) { return static_cast<double>(g) < x; });
  return static_cast<double>(good_counts.end() - it) / static_cast<double>(good_counts.size());
}

GoodBlockReport good_block_diagnostic(const RenewalTables& tables, const ExcursionLaw& law,
                                      double beta, double u, std::span<const double> v,
                                      long n, double delta, long draws, std::uint64_t seed) {
  const auto& a = law.analytics();
  require(a.exponentially_recurrent && std::isfinite(a.a_E) && std::isfinite(a.log_M_E_at_a_E),
          "good-block diagnostic needs 0 < a_E < inf and M_E(a_E) < inf");
  require(!law.is_periodic(), "good-block diagnostic refuses periodic laws");
  require(delta > 0.0 && delta <= 1.0, "delta must lie in (0, 1]");
  require(draws >= 1, "draws must be positive");

  const PathSampler sampler(tables, beta, u, v, n);
  GoodBlockReport rep;
  rep.n = n;
  rep.delta = delta;
  rep.draws = draws;
  rep.p_g = a.p_g;
  const double center = delta * static_cast<double>(n);
  const double band = std::sqrt(static_cast<double>(n));
  double frac_sum = 0.0;
  for (long d = 0; d < draws; ++d) {
    const PathSample p = sampler.draw(seed, static_cast<std::uint64_t>(d));
    if (std::fabs(static_cast<double>(p.L_n) - center) > band) continue;
    const long g = block_stats(p, law).good_blocks;
    rep.good_counts.push_back(g);
    frac_sum += static_cast<double>(g) / static_cast<double>(n);
  }
  std::sort(rep.good_counts.begin(), rep.good_counts.end());
  rep.accepted = static_cast<long>(rep.good_counts.size());
  rep.ok = rep.accepted >= kMinBandPaths;
  if (rep.accepted > 0) {
    rep.mean_good_fraction = frac_sum / static_cast<double>(rep.accepted);
    // P(G >= G_(i)) >= (N - i) / N, so i = floor(0.01 N) keeps 99% mass.
    const auto i = static_cast<std::size_t>(std::floor(0.01 * static_cast<double>(rep.accepted)));
    rep.c_99 = static_cast<double>(rep.good_counts[i]) / (a.p_g * center);
  }
  return rep;
}

}  // namespace pinning
