#include "pinning/tail_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "pinning/error.hpp"
#include "pinning/rng.hpp"

namespace pinning {

namespace {

constexpr std::uint64_t kAuxStream = 0xA0C5A0C5ull;
constexpr int kGridPoints = 32;

}  // namespace

std::string to_string(PinningVerdict v) {
  switch (v) {
    case PinningVerdict::pinning_all_u: return "pinning_all_u";
    case PinningVerdict::condition_not_met: return "condition_not_met";
    case PinningVerdict::unknown: return "unknown";
  }
  return "unknown";
}

double StrategyBound::minus_fraction() const {
  const std::size_t total = J_plus.size() + J_minus.size();
  return total == 0 ? 0.0 : static_cast<double>(J_minus.size()) / static_cast<double>(total);
}

long aperiodicity_floor(const ExcursionLaw& law) {
  const auto l0 = law.full_support_start();
  if (!l0) fail(ErrorKind::config, "strategy bound needs K(k) > 0 for all large k");
  if (*l0 > kMaxL0) fail(ErrorKind::config, "aperiodicity floor l0 exceeds 1000");
  return *l0;
}

StrategyBound greedy_bound(double beta, double u, const ExcursionLaw& law,
                           const DisorderLaw& disorder, std::span<const double> v, double M,
                           long n, const StrategyOptions& opt) {
  require(n >= 1 && static_cast<long>(v.size()) >= n, "realization shorter than n");
  const double gbar = disorder.tail_prob(M);
  require(gbar > 0.0, "threshold M has zero tail probability");

  StrategyBound b;
  b.M = M;
  b.n = n;
  b.l0 = aperiodicity_floor(law);
  if (opt.l1) {
    b.l1 = std::max(*opt.l1, b.l0);
  } else {
    b.l1 = std::max(static_cast<long>(std::floor(std::min(1.0 / gbar, 1e15))), b.l0);
  }

  const double atom = disorder.atom(M);
  const double target = 1.0 / static_cast<double>(b.l1);
  if (opt.l1 && atom > 0.0 && gbar > target) {
    b.randomized = true;
    b.atom_accept = std::clamp((target - disorder.prob_above(M)) / atom, 0.0, 1.0);
  }

  // theta: the head is scanned, the parametric continuation is unimodal so
  // its minimum over an interval sits at an endpoint.
  const auto head = static_cast<long>(law.head().size());
  double theta = kInf;
  for (long l = b.l0; l <= std::min(b.l1, head); ++l) theta = std::min(theta, law.pmf(l));
  if (b.l1 > head) {
    theta = std::min({theta, law.pmf(std::max(b.l0, head + 1)), law.pmf(b.l1)});
  }
  b.theta = theta;

  auto qualifies = [&](long i) {
    const double x = v[i - 1];
    if (x > M) return true;
    if (x < M) return false;
    if (!b.randomized) return true;
    return to_open_unit(counter_bits(opt.aux_seed, kAuxStream, static_cast<std::uint64_t>(i))) <
           b.atom_accept;
  };

  double log_w = 0.0;
  long prev = 0;
  while (true) {
    const long first = prev + b.l0;
    if (first > n) break;
    const long last = std::min(prev + b.l1, n);
    long next = prev + b.l1;
    for (long i = first; i <= last; ++i) {
      if (qualifies(i)) {
        next = i;
        break;
      }
    }
    if (next > n) break;
    log_w += law.log_pmf(next - prev);
    if (v[next - 1] >= M) {
      b.J_plus.push_back(next);
      log_w += beta * (u + M);
    } else {
      b.J_minus.push_back(next);
      log_w += beta * (u + v[next - 1]);
    }
    prev = next;
  }
  log_w += law.log_tail(n - prev);
  b.log_Z_lower = log_w;
  b.per_site_rate = log_w / static_cast<double>(n);
  return b;
}

std::vector<double> threshold_grid(const DisorderLaw& disorder, long n) {
  require(n >= 2, "threshold grid needs n >= 2");
  std::vector<double> grid = {0.0};
  const double q_hi = disorder.tail_quantile(1.0 / static_cast<double>(n));
  if (q_hi > 0.0) {
    const double q_lo = std::max(disorder.tail_quantile(0.5), 1e-3 * q_hi);
    if (q_lo >= q_hi) {
      grid.push_back(q_hi);
    } else {
      const double step = std::log(q_hi / q_lo) / (kGridPoints - 1);
      for (int i = 0; i < kGridPoints; ++i) grid.push_back(q_lo * std::exp(step * i));
      grid.back() = q_hi;
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

StrategyBound optimize_threshold(double beta, double u, const ExcursionLaw& law,
                                 const DisorderLaw& disorder, std::span<const double> v, long n,
                                 std::uint64_t aux_seed) {
  const long l0 = aperiodicity_floor(law);
  std::optional<StrategyBound> best;
  auto consider = [&](StrategyBound b) {
    if (!best || b.per_site_rate > best->per_site_rate) best = std::move(b);
  };
  for (double M : threshold_grid(disorder, n)) {
    const double gbar = disorder.tail_prob(M);
    if (gbar <= 0.0) continue;
    consider(greedy_bound(beta, u, law, disorder, v, M, n));
    const long l1 = std::max(static_cast<long>(std::floor(std::min(1.0 / gbar, 1e15))), l0);
    const double snapped = disorder.tail_quantile(1.0 / static_cast<double>(l1));
    if (disorder.tail_prob(snapped) <= 0.0) continue;
    StrategyOptions opt;
    opt.l1 = l1;
    opt.aux_seed = aux_seed;
    consider(greedy_bound(beta, u, law, disorder, v, snapped, n, opt));
  }
  if (!best) fail(ErrorKind::numeric, "no threshold with positive tail probability");
  return *best;
}

VerdictReport fat_tail_verdict(const ExcursionLaw& law, const DisorderLaw& disorder) {
  if (law.family() == ExcursionFamily::custom) {
    return {PinningVerdict::unknown, "custom law: asymptotic conditions cannot be verified"};
  }
  if (law.family() == ExcursionFamily::fixed) {
    return {PinningVerdict::condition_not_met, "finite support: no lower bound p(k) > 0"};
  }
  const bool heavy_disorder = !disorder.has_exponential_moment();
  if (law.family() == ExcursionFamily::zeta) {
    if (heavy_disorder) {
      return {PinningVerdict::pinning_all_u,
              "polynomial excursion tail and no finite exponential moment of V"};
    }
    return {PinningVerdict::condition_not_met,
            "polynomial excursion tail but V has a finite exponential moment"};
  }
  // Exponential excursion tail: needs <(V+)^theta> = inf for some theta < 1.
  // Every built-in family is integrable, and (V+)^theta <= 1 + V+.
  return {PinningVerdict::condition_not_met,
          "exponential excursion tail needs <(V+)^theta> = inf for some theta < 1, "
          "impossible for integrable disorder"};
}

}  // namespace pinning
