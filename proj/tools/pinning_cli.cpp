// pinning: command-line front end for the disordered pinning library.
//
// Every command resolves its inputs into a manifest (config file overridden
// by flags), writes that manifest to <out>/manifest.json and then writes its
// artifacts next to it. Rerunning the written manifest reproduces the
// artifacts byte for byte, whatever --threads is.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pinning/critical.hpp"
#include "pinning/error.hpp"
#include "pinning/free_energy.hpp"
#include "pinning/io.hpp"
#include "pinning/parallel.hpp"
#include "pinning/partition.hpp"
#include "pinning/path_sampler.hpp"
#include "pinning/tail_bounds.hpp"

namespace fs = std::filesystem;
using namespace pinning;
using io::json;

namespace {

constexpr long kMaxN = 65536;
constexpr long kMaxReplicas = 4096;
constexpr long kMaxDraws = 10000000;

enum Exit { ok = 0, config_error = 2, numeric_error = 3, inconclusive = 4, budget = 5 };

struct Context {
  io::Manifest m;
  ExcursionLaw law;
  DisorderLaw disorder;
  fs::path out;
  int threads = 1;
};

const std::vector<std::string> kScanHeader = {"u", "beta", "n", "method", "value", "stderr", "replicas", "seed"};

std::string fmt(double x) { return io::format_double(x); }
std::string fmt(long x) { return std::to_string(x); }
std::string fmt(std::uint64_t x) { return std::to_string(x); }

void write_json(const fs::path& path, const json& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::config, "cannot open '" + path.string() + "' for writing");
  f << j.dump(2) << '\n';
}

double option(const io::Manifest& m, const char* key, double fallback) {
  if (!m.options.contains(key)) return fallback;
  require(m.options.at(key).is_number(), std::string("option '") + key + "' must be a number");
  return m.options.at(key).get<double>();
}

std::vector<double> need_u(const io::Manifest& m) {
  auto us = m.u_values();
  require(!us.empty(), "command needs --u or --u-grid");
  return us;
}

std::vector<long> need_n(const io::Manifest& m, long cap) {
  require(!m.n_list.empty(), "command needs --n or --n-list");
  for (long n : m.n_list) {
    require(n >= 1, "n must be positive");
    if (n > cap) fail(ErrorKind::budget, "n = " + std::to_string(n) + " exceeds the budget " + std::to_string(cap));
  }
  return m.n_list;
}

void check_replicas(const io::Manifest& m) {
  require(m.replicas >= 2, "replicas must be at least 2");
  if (m.replicas > kMaxReplicas) fail(ErrorKind::budget, "replicas exceed the budget " + std::to_string(kMaxReplicas));
}

// ---------------------------------------------------------------- commands

int cmd_fe_det(Context& c) {
  io::CsvWriter csv((c.out / "fe.csv").string(), kScanHeader);
  for (double u : need_u(c.m)) {
    const auto e = free_energy_det(c.m.beta, u, c.law);
    csv.row({fmt(u), fmt(c.m.beta), "inf", to_string(e.method), fmt(e.value), fmt(e.std_error), "0", fmt(c.m.seed)});
  }
  return ok;
}

int cmd_fe_annealed(Context& c) {
  io::CsvWriter csv((c.out / "fe.csv").string(), kScanHeader);
  for (double u : need_u(c.m)) {
    const auto e = free_energy_annealed(c.m.beta, u, c.law, c.disorder);
    csv.row({fmt(u), fmt(c.m.beta), "inf", to_string(e.method), fmt(e.value), fmt(e.std_error), "0", fmt(c.m.seed)});
  }
  return ok;
}

int cmd_fe_quenched(Context& c) {
  const auto ns = need_n(c.m, kMaxN);
  check_replicas(c.m);
  const long n_max = *std::max_element(ns.begin(), ns.end());
  const auto tables = RenewalTables::build(c.law, n_max);
  const auto panel = DisorderPanel::draw(c.disorder, c.m.replicas, n_max, c.m.seed);
  io::CsvWriter csv((c.out / "fe.csv").string(), {"u", "beta", "n", "method", "value", "stderr", "replicas", "seed", "replica_std"});
  for (double u : need_u(c.m)) {
    for (const auto& s : quenched_stats(tables, c.m.beta, u, panel, ns, c.threads)) {
      csv.row({fmt(u), fmt(c.m.beta), fmt(s.n), to_string(FeMethod::quenched_mc), fmt(s.mean), fmt(s.std_error),
               fmt(c.m.replicas), fmt(c.m.seed), fmt(s.std_dev)});
    }
  }
  return ok;
}

QuenchedConfig quenched_config(const Context& c) {
  QuenchedConfig q;
  if (!c.m.n_list.empty()) q.n_list = need_n(c.m, kMaxN);
  check_replicas(c.m);
  q.replicas = c.m.replicas;
  q.seed = c.m.seed;
  q.confidence = option(c.m, "confidence", q.confidence);
  q.tolerance = option(c.m, "tolerance", q.tolerance);
  q.max_steps = static_cast<int>(option(c.m, "max_steps", q.max_steps));
  q.threads = c.threads;
  return q;
}

json probe_json(const QuenchedProbe& p) {
  return {{"u", p.u}, {"mean", p.mean}, {"stderr", p.std_error}, {"statistic", p.statistic}, {"pinned", p.pinned}};
}

int cmd_critical(Context& c) {
  const double beta = c.m.beta;
  json r;
  const double ucd = u_c_det(c.law, beta);
  r["beta"] = beta;
  r["u_c_det"] = io::extended(ucd);
  r["transition_order"] = to_string(transition_order(c.law));
  r["a_E"] = io::extended(c.law.analytics().a_E);
  if (std::isfinite(c.disorder.log_mgf(beta))) {
    r["u_c_ann"] = io::extended(u_c_annealed(beta, c.law, c.disorder));
  } else {
    r["u_c_ann"] = nullptr;
    r["u_c_ann_note"] = "disorder has no finite exponential moment at beta";
  }

  int status = ok;
  if (std::isfinite(ucd)) {
    const auto q = quenched_config(c);
    const auto iv = u_c_quenched_estimate(beta, c.law, c.disorder, q);
    json probes = json::array();
    for (const auto& p : iv.probes) probes.push_back(probe_json(p));
    r["u_c_quenched"] = {{"lo", iv.lo}, {"hi", iv.hi}, {"confidence", iv.confidence}, {"z", iv.z},
                         {"ok", iv.ok}, {"n", *std::max_element(q.n_list.begin(), q.n_list.end())},
                         {"replicas", q.replicas}, {"seed", q.seed}, {"probes", probes}};
    if (!iv.ok) status = inconclusive;
  } else {
    r["u_c_quenched"] = nullptr;
    r["u_c_quenched_note"] = "u_c_det is -inf";
  }

  json curve = json::array();
  for (double u : c.m.u_values()) {
    const auto cf = contact_fraction(beta, u, c.law);
    curve.push_back({{"u", u}, {"contact_fraction", cf.value}, {"at_boundary", cf.at_boundary}});
  }
  r["contact_fraction_curve"] = curve;
  write_json(c.out / "critical.json", r);
  return status;
}

int cmd_phase_scan(Context& c) {
  const double beta = c.m.beta;
  const auto us = need_u(c.m);
  const double ucd = u_c_det(c.law, beta);
  const double uca = std::isfinite(c.disorder.log_mgf(beta)) ? u_c_annealed(beta, c.law, c.disorder) : kNegInf;
  const auto q = quenched_config(c);
  const long n = *std::max_element(q.n_list.begin(), q.n_list.end());
  io::CsvWriter csv((c.out / "phase.csv").string(), {"beta", "u", "phase", "method", "n", "seed"});
  for (double u : us) {
    std::string phase, method;
    if (u <= uca) {
      phase = "depinned", method = "annealed_bound";
    } else if (u > ucd) {
      phase = "pinned", method = "deterministic_bound";
    } else {
      const auto p = quenched_probe(beta, u, c.law, c.disorder, q);
      phase = p.pinned ? "pinned" : "uncertain";
      method = to_string(FeMethod::quenched_mc);
    }
    csv.row({fmt(beta), fmt(u), phase, method, method == "quenched_mc" ? fmt(n) : "inf", fmt(c.m.seed)});
  }
  return ok;
}

int cmd_ld_check(Context& c) {
  const auto ns = need_n(c.m, kDefaultContactCap);
  std::vector<std::pair<double, double>> intervals = {{0.7, 0.9}, {0.55, 0.65}};
  if (c.m.options.contains("intervals")) {
    intervals.clear();
    for (const auto& iv : c.m.options.at("intervals")) {
      require(iv.is_array() && iv.size() == 2, "intervals must be [delta, eta] pairs");
      intervals.emplace_back(iv[0].get<double>(), iv[1].get<double>());
    }
  }
  io::CsvWriter csv((c.out / "ld.csv").string(), {"delta", "eta", "n", "method", "rate", "seed"});
  for (auto [d, e] : intervals) {
    csv.row({fmt(d), fmt(e), "inf", "variational", fmt(ld_rate_contacts(c.law, d, e)), fmt(c.m.seed)});
  }
  for (long n : ns) {
    const auto tables = RenewalTables::build(c.law, n);
    const std::vector<double> v(n, 0.0);
    const auto cr = contact_resolved(tables, 0.0, 0.0, v, n);
    for (auto [d, e] : intervals) {
      const double rate = -restrict_band(cr, d * n, e * n) / static_cast<double>(n);
      csv.row({fmt(d), fmt(e), fmt(n), "finite_volume", fmt(rate), fmt(c.m.seed)});
    }
  }
  return ok;
}

int cmd_sample(Context& c) {
  const auto ns = need_n(c.m, kMaxN);
  const auto us = need_u(c.m);
  const long draws = static_cast<long>(option(c.m, "draws", 1000));
  require(draws >= 1, "draws must be positive");
  if (draws > kMaxDraws) fail(ErrorKind::budget, "draws exceed the budget");
  const long n = ns.back();
  const double u = us.front();
  const auto real = sample(c.disorder, n, c.m.seed);
  const auto tables = RenewalTables::build(c.law, n);
  const PathSampler sampler(tables, c.m.beta, u, real.values, n);

  std::vector<PathSample> paths(static_cast<std::size_t>(draws));
  parallel_for(draws, c.threads, [&](long d) { paths[d] = sampler.draw(c.m.seed, static_cast<std::uint64_t>(d)); });

  io::CsvWriter csv((c.out / "paths.csv").string(), {"draw", "n", "seed", "L_n", "escaped", "return_times"});
  double sum = 0.0, sum2 = 0.0;
  for (long d = 0; d < draws; ++d) {
    const auto& p = paths[d];
    std::string times;
    for (std::size_t i = 0; i < p.return_times.size(); ++i) times += (i ? " " : "") + std::to_string(p.return_times[i]);
    csv.row({fmt(d), fmt(n), fmt(c.m.seed), fmt(p.L_n), p.escaped ? "1" : "0", times});
    sum += static_cast<double>(p.L_n);
    sum2 += static_cast<double>(p.L_n) * static_cast<double>(p.L_n);
  }
  const double mean = sum / draws;
  const auto exact = contact_moments(tables, c.m.beta, u, real.values, n);
  json r = {{"n", n}, {"u", u}, {"beta", c.m.beta}, {"draws", draws}, {"seed", c.m.seed},
            {"mean_L_n", mean},
            {"stderr_L_n", draws > 1 ? std::sqrt(std::max(0.0, sum2 / draws - mean * mean) / (draws - 1)) : 0.0},
            {"exact_mean_L_n", exact.mean}, {"exact_var_L_n", exact.variance}};
  if (c.law.r2()) {
    double good = 0.0, blocks = 0.0, hits = 0.0;
    for (const auto& p : paths) {
      const auto b = block_stats(p, c.law);
      good += b.good_blocks, blocks += b.num_blocks, hits += b.targets_hit;
    }
    r["blocks"] = {{"r1", c.law.r1()}, {"r2", *c.law.r2()}, {"p_g", c.law.analytics().p_g},
                   {"good_per_block", blocks > 0 ? good / blocks : 0.0},
                   {"targets_per_good_block", good > 0 ? hits / good : 0.0}};
  }
  if (c.m.options.contains("delta")) {
    const double delta = option(c.m, "delta", 0.0);
    const auto g = good_block_diagnostic(tables, c.law, c.m.beta, u, real.values, n, delta, draws, c.m.seed);
    r["good_block_diagnostic"] = {{"delta", g.delta}, {"accepted", g.accepted}, {"p_g", g.p_g}, {"c_99", g.c_99},
                                  {"mean_good_fraction", g.mean_good_fraction}, {"ok", g.ok}};
    write_json(c.out / "sample.json", r);
    return g.ok ? ok : inconclusive;
  }
  write_json(c.out / "sample.json", r);
  return ok;
}

json bound_json(const StrategyBound& b) {
  return {{"M", b.M}, {"l0", b.l0}, {"l1", b.l1}, {"theta", b.theta}, {"n", b.n},
          {"J_plus", b.J_plus.size()}, {"J_minus", b.J_minus.size()}, {"minus_fraction", b.minus_fraction()},
          {"log_Z_lower", b.log_Z_lower}, {"per_site_rate", b.per_site_rate},
          {"randomized", b.randomized}, {"atom_accept", b.atom_accept}};
}

int cmd_lowerbound(Context& c) {
  const auto ns = need_n(c.m, kMaxN);
  const auto us = need_u(c.m);
  const long n_max = *std::max_element(ns.begin(), ns.end());
  const auto real = sample(c.disorder, n_max, c.m.seed);
  io::CsvWriter csv((c.out / "lowerbound.csv").string(),
                    {"u", "beta", "n", "method", "per_site_rate", "M", "l1", "minus_fraction", "seed"});
  json reports = json::array();
  std::vector<StrategyBound> bounds(us.size() * ns.size());
  parallel_for(static_cast<long>(bounds.size()), c.threads, [&](long i) {
    const double u = us[i / ns.size()];
    const long n = ns[i % ns.size()];
    bounds[i] = optimize_threshold(c.m.beta, u, c.law, c.disorder, real.values, n, c.m.seed);
  });
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const auto& b = bounds[i];
    const double u = us[i / ns.size()];
    csv.row({fmt(u), fmt(c.m.beta), fmt(b.n), "strategy_bound", fmt(b.per_site_rate), fmt(b.M), fmt(b.l1),
             fmt(b.minus_fraction()), fmt(c.m.seed)});
    json j = bound_json(b);
    j["u"] = u;
    reports.push_back(j);
  }
  const auto v = fat_tail_verdict(c.law, c.disorder);
  write_json(c.out / "lowerbound.json",
             {{"beta", c.m.beta}, {"seed", c.m.seed}, {"bounds", reports},
              {"verdict", to_string(v.verdict)}, {"verdict_reason", v.reason}});
  return ok;
}

const std::map<std::string, int (*)(Context&)> kCommands = {
    {"fe-det", cmd_fe_det},         {"fe-annealed", cmd_fe_annealed}, {"fe-quenched", cmd_fe_quenched},
    {"critical", cmd_critical},     {"ld-check", cmd_ld_check},       {"sample", cmd_sample},
    {"lowerbound", cmd_lowerbound}, {"phase-scan", cmd_phase_scan}};

const std::map<std::string, std::string> kHelp = {
    {"fe-det", "variational free energy of the homogeneous model"},
    {"fe-annealed", "annealed free energy via the shift u + log M_V(beta) / beta"},
    {"fe-quenched", "Monte Carlo quenched free energy over a disorder panel"},
    {"critical", "deterministic, annealed and quenched critical points"},
    {"ld-check", "contact-number large deviations, exact vs rate function"},
    {"sample", "exact Gibbs samples of return sets"},
    {"lowerbound", "threshold-strategy lower bound and fat-tail verdict"},
    {"phase-scan", "pinned / depinned classification over a u grid"}};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::config: return config_error;
    case ErrorKind::numeric: return numeric_error;
    case ErrorKind::inconclusive: return inconclusive;
    case ErrorKind::budget: return budget;
  }
  return config_error;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disordered pinning model: partition functions, free energies, critical points"};
  app.require_subcommand(1);

  std::string config, u_grid, out = ".";
  std::optional<double> beta, u;
  std::optional<long> n, replicas;
  std::vector<long> n_list;
  std::optional<std::uint64_t> seed;
  int threads = 1;

  for (const auto& [name, fn] : kCommands) {
    auto* sub = app.add_subcommand(name, kHelp.at(name));
    sub->add_option("--config", config, "manifest or model JSON file");
    sub->add_option("--beta", beta);
    auto* uo = sub->add_option("--u", u);
    sub->add_option("--u-grid", u_grid, "lo:hi:step")->excludes(uo);
    auto* no = sub->add_option("--n", n);
    sub->add_option("--n-list", n_list)->delimiter(',')->excludes(no);
    sub->add_option("--replicas", replicas);
    sub->add_option("--seed", seed);
    sub->add_option("--out", out, "output directory");
    sub->add_option("--threads", threads)->check(CLI::Range(1, 1024));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : config_error;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    json base = json::object();
    if (!config.empty()) {
      std::ifstream f(config);
      if (!f) fail(ErrorKind::config, "cannot read '" + config + "'");
      try {
        base = json::parse(f);
      } catch (const json::exception& e) {
        fail(ErrorKind::config, std::string("invalid JSON in config: ") + e.what());
      }
    }
    io::Manifest m = io::manifest_from_json(base);
    m.command = command;
    m.tool_version = PINNING_VERSION;
    if (beta) m.beta = *beta;
    if (u) m.u = *u, m.u_grid.reset();
    if (!u_grid.empty()) m.u_grid = io::parse_grid(u_grid), m.u.reset();
    if (n) m.n_list = {*n};
    if (!n_list.empty()) m.n_list = n_list;
    if (replicas) m.replicas = *replicas;
    if (seed) m.seed = *seed;
    require(m.law.is_object(), "manifest needs a 'law' descriptor");
    require(std::isfinite(m.beta) && m.beta >= 0.0, "beta must be finite and nonnegative");
    Context c{m, io::law_from_json(m.law), io::disorder_from_json(m.disorder), out, threads};
    c.m.law = io::law_to_json(c.law);
    c.m.disorder = io::disorder_to_json(c.disorder);
    fs::create_directories(c.out);
    write_json(c.out / "manifest.json", io::manifest_to_json(c.m));
    return kCommands.at(command)(c);
  } catch (const Error& e) {
    std::cerr << "pinning " << command << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const json::exception& e) {
    std::cerr << "pinning " << command << ": " << e.what() << '\n';
    return config_error;
  } catch (const std::exception& e) {
    std::cerr << "pinning " << command << ": " << e.what() << '\n';
    return numeric_error;
  }
}
