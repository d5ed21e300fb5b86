#include "pinning/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pinning/error.hpp"

namespace pinning {

PinningSystem::PinningSystem(ExcursionLaw law_, DisorderLaw disorder_, double beta_, double u_)
    : law(std::move(law_)), disorder(std::move(disorder_)), beta(beta_), u(u_) {
  require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and nonnegative");
  require(std::isfinite(u), "u must be finite");
}

RenewalTables RenewalTables::build(const ExcursionLaw& law, long n) {
  require(n >= 0, "table size must be nonnegative");
  RenewalTables t;
  t.n = n;
  t.log_K = law.log_pmf_table(n);
  t.log_tail = law.log_tail_table(n);
  return t;
}

namespace {

void check_inputs(const RenewalTables& tables, std::span<const double> v, long n) {
  require(n >= 0, "n must be nonnegative");
  require(tables.n >= n, "renewal tables shorter than n");
  require(static_cast<long>(v.size()) >= n, "disorder realization shorter than n");
}

// log sum_{i<len} exp(a[i] + b[i]); both arrays contiguous.
inline double lse_pairwise(const double* a, const double* b, long len) {
  double m = kNegInf;
  for (long i = 0; i < len; ++i) m = std::max(m, a[i] + b[i]);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (long i = 0; i < len; ++i) s += std::exp(a[i] + b[i] - m);
  return m + std::log(s);
}

}  // namespace

std::vector<double> pinned_weights(const RenewalTables& tables, double beta, double u,
                                   std::span<const double> v, long n) {
  check_inputs(tables, v, n);
  std::vector<double> log_c(static_cast<std::size_t>(n) + 1, kNegInf);
  // rev[n - m] = log_c[m], so the convolution reads both operands forward.
  std::vector<double> rev(static_cast<std::size_t>(n) + 1, kNegInf);
  log_c[0] = 0.0;
  rev[n] = 0.0;
  const double* logK = tables.log_K.data();
  for (long k = 1; k <= n; ++k) {
    const double conv = lse_pairwise(logK + 1, rev.data() + (n - k) + 1, k);
    const double val = conv == kNegInf ? kNegInf : beta * (u + v[k - 1]) + conv;
    log_c[k] = val;
    rev[n - k] = val;
  }
  return log_c;
}

double free_from_pinned(const RenewalTables& tables, std::span<const double> log_c, long m) {
  require(m >= 0 && m < static_cast<long>(log_c.size()) && m <= tables.n, "index out of range");
  double mx = kNegInf;
  for (long k = 0; k <= m; ++k) mx = std::max(mx, log_c[k] + tables.log_tail[m - k]);
  if (mx == kNegInf) return kNegInf;
  double s = 0.0;
  for (long k = 0; k <= m; ++k) s += std::exp(log_c[k] + tables.log_tail[m - k] - mx);
  return mx + std::log(s);
}

PartitionTrace trace(const RenewalTables& tables, double beta, double u,
                     std::span<const double> v, long n) {
  PartitionTrace t;
  t.n = n;
  t.log_c = pinned_weights(tables, beta, u, v, n);
  t.log_Z.resize(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) t.log_Z[k] = free_from_pinned(tables, t.log_c, k);
  return t;
}

PartitionTrace trace(const PinningSystem& sys, const DisorderRealization& real, long n) {
  const RenewalTables tables = RenewalTables::build(sys.law, n);
  return trace(tables, sys.beta, sys.u, real.values, n);
}

std::vector<double> log_partition_at(const RenewalTables& tables, double beta, double u,
                                     std::span<const double> v, std::span<const long> ns) {
  long n_max = 0;
  for (long n : ns) n_max = std::max(n_max, n);
  const std::vector<double> log_c = pinned_weights(tables, beta, u, v, n_max);
  std::vector<double> out;
  out.reserve(ns.size());
  for (long n : ns) out.push_back(free_from_pinned(tables, log_c, n));
  return out;
}

double brute_force_log_partition(const ExcursionLaw& law, double beta, double u,
                                 std::span<const double> v, long n) {
  require(n >= 0 && n <= 20, "brute force enumeration is limited to n <= 20");
  require(static_cast<long>(v.size()) >= n, "disorder realization shorter than n");
  std::vector<double> logK(static_cast<std::size_t>(n) + 1);
  std::vector<double> logT(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) {
    logK[k] = law.log_pmf(k);
    logT[k] = law.log_tail(k);
  }
  const unsigned long count = 1ul << n;
  std::vector<double> terms(count);
  for (unsigned long mask = 0; mask < count; ++mask) {
    double w = 0.0;
    long last = 0;
    for (long i = 1; i <= n && w != kNegInf; ++i) {
      if (!(mask >> (i - 1) & 1ul)) continue;
      w += logK[i - last] + beta * (u + v[i - 1]);
      last = i;
    }
    if (w != kNegInf) w += logT[n - last];
    terms[mask] = w;
  }
  return log_sum_exp(terms);
}

ContactResolved contact_resolved(const RenewalTables& tables, double beta, double u,
                                 std::span<const double> v, long n, long n_cap) {
  check_inputs(tables, v, n);
  if (n > n_cap) {
    fail(ErrorKind::budget, "contact-resolved recursion limited to n <= " + std::to_string(n_cap));
  }
  ContactResolved cr;
  cr.n = n;
  const auto len = static_cast<std::size_t>(n) + 1;
  cr.log_c.emplace_back(len, kNegInf);
  cr.log_c[0][0] = 0.0;
  const double* logK = tables.log_K.data();
  std::vector<double> rev(len, kNegInf);
  for (long j = 1; j <= n; ++j) {
    const std::vector<double>& prev = cr.log_c[j - 1];
    for (long m = 0; m <= n; ++m) rev[n - m] = prev[m];
    std::vector<double> col(len, kNegInf);
    bool any = false;
    for (long k = j; k <= n; ++k) {
      // gaps i = 1..k-j+1 keep the previous pinned time >= j-1.
      const double conv = lse_pairwise(logK + 1, rev.data() + (n - k) + 1, k - j + 1);
      if (conv == kNegInf) continue;
      col[k] = beta * (u + v[k - 1]) + conv;
      any = true;
    }
    if (!any) break;
    cr.log_c.push_back(std::move(col));
  }
  cr.log_Z = cr.log_Z_at(tables, n);
  return cr;
}

std::vector<double> ContactResolved::log_Z_at(const RenewalTables& tables, long k) const {
  require(k >= 0 && k <= n && k <= tables.n, "index out of range");
  std::vector<double> out(log_c.size(), kNegInf);
  std::vector<double> terms(static_cast<std::size_t>(k) + 1);
  for (std::size_t j = 0; j < log_c.size(); ++j) {
    for (long m = 0; m <= k; ++m) terms[m] = log_c[j][m] + tables.log_tail[k - m];
    out[j] = log_sum_exp(terms);
  }
  return out;
}

double restrict_band(const ContactResolved& cr, double lo, double hi) {
  double acc = kNegInf;
  for (std::size_t j = 0; j < cr.log_Z.size(); ++j) {
    const double jd = static_cast<double>(j);
    if (jd > lo && jd <= hi) acc = log_add(acc, cr.log_Z[j]);
  }
  return acc;
}

double restrict_contacts(const ContactResolved& cr, double delta, Side side) {
  const double cut = delta * static_cast<double>(cr.n);
  if (side == Side::below) return restrict_band(cr, -1.0, cut);
  return restrict_band(cr, cut, kInf);
}

ContactMoments contact_moments(const RenewalTables& tables, double beta, double u,
                               std::span<const double> v, long n) {
  const std::vector<double> log_c = pinned_weights(tables, beta, u, v, n);
  const auto len = static_cast<std::size_t>(n) + 1;
  // mean[k], var[k]: moments of the return count given a return at k. The
  // last gap j has probability K(j) c_{k-j} e^{beta(u+v_k)} / c_k.
  std::vector<double> mean(len, 0.0), var(len, 0.0), p(len, 0.0);
  for (long k = 1; k <= n; ++k) {
    if (log_c[k] == kNegInf) continue;
    const double norm = log_c[k] - beta * (u + v[k - 1]);
    double m = 0.0;
    for (long j = 1; j <= k; ++j) {
      p[j] = std::exp(tables.log_K[j] + log_c[k - j] - norm);
      m += p[j] * (mean[k - j] + 1.0);
    }
    double s = 0.0;
    for (long j = 1; j <= k; ++j) {
      if (p[j] == 0.0) continue;
      const double d = mean[k - j] + 1.0 - m;
      s += p[j] * (var[k - j] + d * d);
    }
    mean[k] = m;
    var[k] = s;
  }
  const double log_z = free_from_pinned(tables, log_c, n);
  std::vector<double> w(len, 0.0);
  double e = 0.0;
  for (long m = 0; m <= n; ++m) {
    w[m] = std::exp(log_c[m] + tables.log_tail[n - m] - log_z);
    e += w[m] * mean[m];
  }
  double var_total = 0.0;
  for (long m = 0; m <= n; ++m) {
    if (w[m] == 0.0) continue;
    const double d = mean[m] - e;
    var_total += w[m] * (var[m] + d * d);
  }
  return {e, var_total};
}

}  // namespace pinning
