#include "pinning/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "pinning/error.hpp"

namespace pinning::io {

namespace {

double number(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) fail(ErrorKind::config, std::string("missing parameter '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) fail(ErrorKind::config, std::string("parameter '") + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& obj, const char* key, double fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return number(obj, key);
}

const json& params_of(const json& j) {
  static const json empty = json::object();
  if (!j.contains("params")) return empty;
  const json& p = j.at("params");
  require(p.is_object(), "'params' must be an object");
  return p;
}

std::string family_of(const json& j) {
  require(j.is_object(), "law descriptor must be a JSON object");
  require(j.contains("family") && j.at("family").is_string(), "law descriptor needs a 'family' string");
  return j.at("family").get<std::string>();
}

CustomTail tail_from_json(const json& j) {
  if (!j.contains("tail_class")) {
    fail(ErrorKind::config, "custom law must declare 'tail_class' (finite_support, polynomial or exponential)");
  }
  const json& t = j.at("tail_class");
  std::string cls;
  json body = json::object();
  if (t.is_string()) {
    cls = t.get<std::string>();
  } else if (t.is_object() && t.contains("class") && t.at("class").is_string()) {
    cls = t.at("class").get<std::string>();
    body = t;
  } else {
    fail(ErrorKind::config, "'tail_class' must be a string or an object with a 'class' field");
  }
  CustomTail tail;
  if (cls == "finite_support") {
    tail.cls = TailClass::finite_support;
  } else if (cls == "polynomial") {
    tail.cls = TailClass::polynomial;
    tail.power = number(body, "power");
  } else if (cls == "exponential") {
    tail.cls = TailClass::exponential;
    tail.rate = number(body, "rate");
    tail.power = number_or(body, "power", 0.0);
  } else {
    fail(ErrorKind::config, "unknown tail_class '" + cls + "'");
  }
  return tail;
}

}  // namespace

ExcursionLaw law_from_json(const json& j) {
  const std::string family = family_of(j);
  const json& p = params_of(j);
  const double p_inf = number_or(j, "p_inf", 0.0);
  const long horizon = static_cast<long>(number_or(j, "truncation_horizon", 64));
  if (family == "zeta") return ExcursionLaw::zeta(number(p, "gamma"), p_inf, horizon);
  if (family == "geometric") return ExcursionLaw::geometric(number(p, "rho"), p_inf, horizon);
  if (family == "fixed") {
    const double r = number(p, "r");
    require(r == std::floor(r), "fixed law needs an integer r");
    return ExcursionLaw::fixed(static_cast<long>(r), p_inf);
  }
  if (family == "custom") {
    require(p.contains("pmf") && p.at("pmf").is_array(), "custom law needs a 'pmf' array");
    std::vector<double> pmf;
    for (const json& x : p.at("pmf")) {
      require(x.is_number(), "custom pmf entries must be numbers");
      pmf.push_back(x.get<double>());
    }
    return ExcursionLaw::custom(std::move(pmf), p_inf, tail_from_json(j), horizon);
  }
  fail(ErrorKind::config, "unknown excursion law family '" + family + "'");
}

json law_to_json(const ExcursionLaw& law) {
  json j;
  j["family"] = to_string(law.family());
  j["p_inf"] = law.p_inf();
  switch (law.family()) {
    case ExcursionFamily::zeta:
      j["params"] = {{"gamma", law.family_param()}};
      j["truncation_horizon"] = law.truncation_horizon();
      break;
    case ExcursionFamily::geometric:
      j["params"] = {{"rho", law.family_param()}};
      break;
    case ExcursionFamily::fixed:
      j["params"] = {{"r", static_cast<long>(law.family_param())}};
      break;
    case ExcursionFamily::custom: {
      j["params"] = {{"pmf", law.head()}};
      const CustomTail& t = law.custom_tail();
      json tc = {{"class", to_string(t.cls)}};
      if (t.cls != TailClass::finite_support) tc["power"] = t.power;
      if (t.cls == TailClass::exponential) tc["rate"] = t.rate;
      j["tail_class"] = tc;
      j["truncation_horizon"] = law.truncation_horizon();
      break;
    }
  }
  return j;
}

DisorderLaw disorder_from_json(const json& j) {
  const std::string family = family_of(j);
  const json& p = params_of(j);
  if (family == "zero") return DisorderLaw::zero();
  if (family == "gaussian") return DisorderLaw::gaussian(number(p, "sigma"));
  if (family == "two_point") {
    return DisorderLaw::two_point(number(p, "v_plus"), number(p, "v_minus"), number(p, "p"));
  }
  if (family == "centered_exponential") return DisorderLaw::centered_exponential(number(p, "lambda"));
  if (family == "shifted_pareto") {
    return DisorderLaw::shifted_pareto(number(p, "alpha"), number_or(p, "scale", 1.0));
  }
  if (family == "stretched_exp_tail") {
    return DisorderLaw::stretched_exp_tail(number(p, "theta"), number_or(p, "scale", 1.0));
  }
  fail(ErrorKind::config, "unknown disorder family '" + family + "'");
}

json disorder_to_json(const DisorderLaw& law) {
  static const std::vector<std::vector<const char*>> names = {
      {}, {"sigma"}, {"v_plus", "v_minus", "p"}, {"lambda"}, {"alpha", "scale"}, {"theta", "scale"}};
  json j;
  j["family"] = to_string(law.family());
  json p = json::object();
  const auto& keys = names[static_cast<std::size_t>(law.family())];
  for (std::size_t i = 0; i < keys.size(); ++i) p[keys[i]] = law.params()[i];
  j["params"] = p;
  return j;
}

json extended(double x) {
  if (x == kInf) return "inf";
  if (x == kNegInf) return "-inf";
  if (std::isnan(x)) return "nan";
  return x;
}

double extended_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return kNegInf;
    if (s == "nan") return std::nan("");
  }
  fail(ErrorKind::config, "expected a number or an infinity sentinel");
}

std::vector<double> UGrid::values() const {
  const long count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) out.push_back(lo + step * static_cast<double>(i));
  return out;
}

UGrid parse_grid(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      fail(ErrorKind::config, "grid '" + text + "' is not lo:hi:step");
    }
    require(used == item.size(), "grid '" + text + "' is not lo:hi:step");
    parts.push_back(x);
  }
  require(parts.size() == 3, "grid '" + text + "' is not lo:hi:step");
  return checked_grid({parts[0], parts[1], parts[2]});
}

UGrid checked_grid(UGrid g) {
  require(std::isfinite(g.lo) && std::isfinite(g.hi) && std::isfinite(g.step),
          "grid values must be finite");
  require(g.step > 0.0 && g.hi >= g.lo, "grid needs step > 0 and hi >= lo");
  require((g.hi - g.lo) / g.step <= 1e6, "grid has too many points");
  return g;
}

std::vector<double> Manifest::u_values() const {
  if (u_grid) return u_grid->values();
  if (u) return {*u};
  return {};
}

Manifest manifest_from_json(const json& j) {
  require(j.is_object(), "manifest must be a JSON object");
  Manifest m;
  if (j.contains("schema_version")) {
    require(j.at("schema_version") == kSchemaVersion, "unsupported schema_version");
  }
  if (j.contains("command")) m.command = j.at("command").get<std::string>();
  if (j.contains("law")) m.law = j.at("law");
  m.disorder = j.contains("disorder") ? j.at("disorder") : json{{"family", "zero"}};
  m.beta = number_or(j, "beta", 1.0);
  if (j.contains("u")) m.u = number(j, "u");
  if (j.contains("u_grid")) {
    const json& g = j.at("u_grid");
    if (g.is_string()) {
      m.u_grid = parse_grid(g.get<std::string>());
    } else {
      m.u_grid = checked_grid({number(g, "lo"), number(g, "hi"), number(g, "step")});
    }
  }
  if (j.contains("n")) m.n_list = {static_cast<long>(number(j, "n"))};
  if (j.contains("n_list")) {
    m.n_list.clear();
    for (const json& x : j.at("n_list")) {
      require(x.is_number_integer(), "n_list entries must be integers");
      m.n_list.push_back(x.get<long>());
    }
  }
  if (j.contains("replicas")) m.replicas = static_cast<long>(number(j, "replicas"));
  if (j.contains("seed")) {
    require(j.at("seed").is_number_unsigned() || j.at("seed").is_number_integer(),
            "seed must be a nonnegative integer");
    m.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("options")) {
    require(j.at("options").is_object(), "'options' must be an object");
    m.options = j.at("options");
  }
  return m;
}

json manifest_to_json(const Manifest& m) {
  json j;
  j["schema_version"] = m.schema_version;
  j["command"] = m.command;
  j["tool_version"] = m.tool_version;
  j["law"] = m.law;
  j["disorder"] = m.disorder;
  j["beta"] = m.beta;
  if (m.u) j["u"] = *m.u;
  if (m.u_grid) j["u_grid"] = {{"lo", m.u_grid->lo}, {"hi", m.u_grid->hi}, {"step", m.u_grid->step}};
  j["n_list"] = m.n_list;
  j["replicas"] = m.replicas;
  j["seed"] = m.seed;
  j["options"] = m.options;
  return j;
}

std::string format_double(double x) {
  if (x == kInf) return "inf";
  if (x == kNegInf) return "-inf";
  if (std::isnan(x)) return "nan";
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), width_(header.size()) {
  if (!out_) fail(ErrorKind::config, "cannot open '" + path + "' for writing");
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  require(fields.size() == width_, "CSV row width does not match the header");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
      out_ << f;
      continue;
    }
    out_ << '"';
    for (char c : f) {
      if (c == '"') out_ << '"';
      out_ << c;
    }
    out_ << '"';
  }
  out_ << "\r\n";
}

}  // namespace pinning::io
