#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pinning/disorder.hpp"
#include "pinning/excursion_law.hpp"

namespace pinning::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Law descriptors:
///   {"family": "zeta", "params": {"gamma": 1.5}, "p_inf": 0.3}
///   {"family": "geometric", "params": {"rho": 0.5}}
///   {"family": "fixed", "params": {"r": 2}}
///   {"family": "custom", "params": {"pmf": [0.5, 0.5]}, "tail_class": "finite_support"}
///   tail_class may also be {"class": "polynomial", "power": 2.5} or
///   {"class": "exponential", "rate": 0.5, "power": 3}.
ExcursionLaw law_from_json(const json& j);
json law_to_json(const ExcursionLaw& law);

/// {"family": "gaussian", "params": {"sigma": 1}} and likewise for
/// two_point (v_plus, v_minus, p), centered_exponential (lambda),
/// shifted_pareto (alpha, scale), stretched_exp_tail (theta, scale), zero.
DisorderLaw disorder_from_json(const json& j);
json disorder_to_json(const DisorderLaw& law);

/// Numbers, with infinities as the strings "inf" and "-inf".
json extended(double x);
double extended_from_json(const json& j);

struct UGrid {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;
  std::vector<double> values() const;
};

/// Parses "lo:hi:step".
UGrid parse_grid(const std::string& text);
/// Config error unless step > 0, hi >= lo and the grid is of sane size.
UGrid checked_grid(UGrid g);

struct Manifest {
  int schema_version = kSchemaVersion;
  std::string command;
  std::string tool_version;
  json law;
  json disorder;
  double beta = 1.0;
  std::optional<double> u;
  std::optional<UGrid> u_grid;
  std::vector<long> n_list;
  long replicas = 32;
  std::uint64_t seed = 1;
  json options = json::object();

  std::vector<double> u_values() const;
};

Manifest manifest_from_json(const json& j);
json manifest_to_json(const Manifest& m);

/// %.17g text, which reads back to the same double; "inf", "-inf", "nan".
std::string format_double(double x);

/// RFC 4180 writer: header row first, CRLF record ends, fields quoted when needed.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& fields);

 private:
  std::ofstream out_;
  std::size_t width_;
};

}  // namespace pinning::io
