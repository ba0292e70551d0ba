#ifndef VLMULT_CONFIG_HPP
#define VLMULT_CONFIG_HPP

// Experiment configuration: JSON with nested sections, every key validated
// against a per-experiment schema; defaults live in `experiment_schemas()`.

#include "vlmult/exponents.hpp"
#include "vlmult/grid.hpp"
#include "vlmult/symbol.hpp"
#include "vlmult/weights.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vlm {

using Json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace config {

inline void allow_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

inline const Json& need(const Json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  return j.at(key);
}

inline double number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(where + ": expected a finite number");
  return v;
}

inline double number(const Json& j, const std::string& key, const std::string& where) {
  return number(need(j, key, where), where + "." + key);
}

inline int integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return j.get<int>();
}

inline std::vector<double> numbers(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline Point point(const Json& j, int dim, const std::string& where) {
  if (j.is_number()) {
    if (dim != 1) throw ConfigError(where + ": expected " + std::to_string(dim) + " coordinates");
    return Point{number(j, where), 0.0};
  }
  const auto v = numbers(j, where);
  if (static_cast<int>(v.size()) != dim) throw ConfigError(where + ": expected " + std::to_string(dim) + " coordinates");
  return dim == 1 ? Point{v[0], 0.0} : Point{v[0], v[1]};
}

inline std::string kind(const Json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw ConfigError(where + ": descriptor needs a string 'type'");
  }
  return j.at("type").get<std::string>();
}

inline ExponentField parse_exponent(const Json& j, int dim, const std::string& where) {
  const std::string t = kind(j, where);
  try {
    if (t == "constant") {
      allow_keys(j, {"type", "value"}, where);
      return ExponentField::constant(number(j, "value", where));
    }
    if (t == "piecewise") {
      allow_keys(j, {"type", "breakpoints", "values"}, where);
      return ExponentField::piecewise(numbers(need(j, "breakpoints", where), where + ".breakpoints"),
                                      numbers(need(j, "values", where), where + ".values"));
    }
    if (t == "radial") {
      allow_keys(j, {"type", "p_inf", "amplitude", "radius", "center"}, where);
      const Point c = j.contains("center") ? point(j.at("center"), dim, where + ".center") : Point{};
      return ExponentField::radial(number(j, "p_inf", where), number(j, "amplitude", where),
                                   number(j, "radius", where), c);
    }
    if (t == "harmonic") {
      allow_keys(j, {"type", "parts"}, where);
      const Json& parts = need(j, "parts", where);
      if (!parts.is_array() || parts.empty()) throw ConfigError(where + ".parts: expected a nonempty array");
      std::vector<ExponentField> ps;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        ps.push_back(parse_exponent(parts[i], dim, where + ".parts[" + std::to_string(i) + "]"));
      }
      return harmonic_sum(ps);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": unknown exponent type '" + t + "'");
}

inline Symbol parse_symbol(const Json& j, int dim, const std::string& where) {
  const std::string t = kind(j, where);
  auto arity = [&] { return j.contains("arity") ? integer(j.at("arity"), where + ".arity") : 1; };
  auto sub = [&](const std::string& key) { return parse_symbol(need(j, key, where), dim, where + "." + key); };
  auto list = [&](const std::string& key) {
    const Json& a = need(j, key, where);
    if (!a.is_array() || a.empty()) throw ConfigError(where + "." + key + ": expected a nonempty array");
    std::vector<Symbol> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
      out.push_back(parse_symbol(a[i], dim, where + "." + key + "[" + std::to_string(i) + "]"));
    }
    return out;
  };
  try {
    if (t == "constant") {
      allow_keys(j, {"type", "value", "imag", "arity"}, where);
      const double im = j.contains("imag") ? number(j.at("imag"), where + ".imag") : 0.0;
      return Symbol::constant(Complex(number(j, "value", where), im), arity(), dim);
    }
    if (t == "gaussian") {
      allow_keys(j, {"type", "scale", "arity"}, where);
      return Symbol::gaussian(number(j, "scale", where), arity(), dim);
    }
    if (t == "coifman_meyer") {
      allow_keys(j, {"type", "theta", "arity"}, where);
      return Symbol::coifman_meyer(number(j, "theta", where), arity(), dim);
    }
    if (t == "indicator") {
      allow_keys(j, {"type", "lo", "hi", "arity"}, where);
      return Symbol::indicator(numbers(need(j, "lo", where), where + ".lo"), numbers(need(j, "hi", where), where + ".hi"),
                               arity(), dim);
    }
    if (t == "hilbert") {
      allow_keys(j, {"type"}, where);
      return Symbol::hilbert();
    }
    if (t == "tensor") {
      allow_keys(j, {"type", "factors"}, where);
      return Symbol::tensor(list("factors"));
    }
    if (t == "product") {
      allow_keys(j, {"type", "factors"}, where);
      return Symbol::product(list("factors"));
    }
    if (t == "difference") {
      allow_keys(j, {"type", "base"}, where);
      return Symbol::difference(sub("base"));
    }
    if (t == "modulated_difference") {
      allow_keys(j, {"type", "base", "envelope"}, where);
      return Symbol::modulated_difference(sub("base"), sub("envelope"));
    }
    if (t == "translate") {
      allow_keys(j, {"type", "base", "shift"}, where);
      return Symbol::translate(sub("base"), numbers(need(j, "shift", where), where + ".shift"));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": unknown symbol type '" + t + "'");
}

inline PowerWeight parse_weight(const Json& j, int dim, const std::string& where) {
  allow_keys(j, {"center", "beta_inf", "singular"}, where);
  const Point center = j.contains("center") ? point(j.at("center"), dim, where + ".center") : Point{};
  const double beta_inf = j.contains("beta_inf") ? number(j.at("beta_inf"), where + ".beta_inf") : 0.0;
  std::vector<SingularPoint> pts;
  if (j.contains("singular")) {
    const Json& s = j.at("singular");
    if (!s.is_array()) throw ConfigError(where + ".singular: expected an array");
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string w = where + ".singular[" + std::to_string(i) + "]";
      allow_keys(s[i], {"point", "beta"}, w);
      pts.push_back({point(need(s[i], "point", w), dim, w + ".point"), number(s[i], "beta", w)});
    }
  }
  try {
    return PowerWeight(center, beta_inf, std::move(pts));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

}  // namespace config

struct LambdaSweep {
  double min = 2.0;
  double max = 64.0;
  int count = 11;

  // geometric sweep, increasing
  std::vector<double> values() const {
    std::vector<double> out;
    for (int i = 0; i < count; ++i) {
      out.push_back(count == 1 ? min : min * std::pow(max / min, static_cast<double>(i) / (count - 1)));
    }
    return out;
  }
};

struct Case {
  std::vector<std::pair<std::string, ExponentField>> exponents;
  std::vector<PowerWeight> weights;
  std::optional<bool> expect_member;

  const ExponentField& exponent(const std::string& name) const {
    for (const auto& [k, v] : exponents) {
      if (k == name) return v;
    }
    throw ConfigError("case lacks exponent '" + name + "'");
  }
};

// Built-in defaults and the allowed keys of one experiment section.
struct ExperimentSchema {
  std::string id;
  std::string title;
  bool uses_lambda = false;
  LambdaSweep lambda;
  int samples = 0;
  Json tolerances = Json::object();
  Json params = Json::object();
  Json exponents = Json::object();
  bool free_exponents = false;  // any names, the section replaces the defaults
  Json symbols = Json::object();
  bool free_symbols = false;
  Json cases = Json::object();
  std::set<std::string> case_keys;
  std::set<std::string> case_exponents;
  bool allow_two_dimensions = false;
  int symbol_arity = 0;  // expected arity of every symbol, 0 = unchecked
};

struct ExperimentConfig {
  std::string id;
  std::uint64_t seed = 0;
  GridSpec grid{1, 8.0, 128};
  LambdaSweep lambda;
  int samples = 0;
  Json tolerances = Json::object();
  Json params = Json::object();
  std::vector<std::pair<std::string, ExponentField>> exponents;
  std::vector<std::pair<std::string, Symbol>> symbols;
  std::vector<std::pair<std::string, Case>> cases;
  Json echo = Json::object();  // effective configuration as descriptors
  std::string unsupported;

  double tol(const std::string& name) const { return tolerances.at(name).get<double>(); }
  double param(const std::string& name) const { return params.at(name).get<double>(); }
  std::vector<double> param_list(const std::string& name) const {
    return params.at(name).get<std::vector<double>>();
  }
  const ExponentField& exponent(const std::string& name) const {
    for (const auto& [k, v] : exponents) {
      if (k == name) return v;
    }
    throw ConfigError(id + ": missing exponent '" + name + "'");
  }
  const Symbol& symbol(const std::string& name) const {
    for (const auto& [k, v] : symbols) {
      if (k == name) return v;
    }
    throw ConfigError(id + ": missing symbol '" + name + "'");
  }
};

namespace config {

inline Json constant_exponent(double v) { return Json{{"type", "constant"}, {"value", v}}; }
inline Json weight(double beta, double beta_inf) {
  return Json{{"center", 0.0}, {"beta_inf", beta_inf}, {"singular", Json::array({Json{{"point", 0.0}, {"beta", beta}}})}};
}

}  // namespace config

inline const std::vector<ExperimentSchema>& experiment_schemas() {
  static const std::vector<ExperimentSchema> schemas = [] {
    using config::constant_exponent;
    std::vector<ExperimentSchema> s;

    ExperimentSchema e1;
    e1.id = "e1";
    e1.title = "gaussian scaling";
    e1.uses_lambda = true;
    e1.tolerances = {{"slope_constant", 0.02}, {"slope_band", 0.05}, {"tail", 1e-12}};
    e1.exponents = {{"const2", constant_exponent(2.0)},
                    {"const4", constant_exponent(4.0)},
                    {"piecewise24", Json{{"type", "piecewise"}, {"breakpoints", {0.0}}, {"values", {2.0, 4.0}}}}};
    e1.free_exponents = true;
    e1.allow_two_dimensions = true;
    s.push_back(e1);

    ExperimentSchema e2;
    e2.id = "e2";
    e2.title = "gaussian-weighted symbol integrals";
    e2.uses_lambda = true;
    e2.tolerances = {{"limit_rel", 0.01}, {"growth", 0.05}, {"closed_form_rel", 1e-10}};
    e2.params = {{"shifts", {0.0, 0.25}}, {"quadrature_half_width", 8.0}, {"quadrature_nodes", 4096}};
    e2.exponents = {{"p1", constant_exponent(4.0)}, {"p2", constant_exponent(4.0)}, {"p3", constant_exponent(2.0)}};
    e2.symbols = {{"gaussian", Json{{"type", "gaussian"}, {"scale", 1.0}}},
                  {"zero", Json{{"type", "constant"}, {"value", 0.0}}}};
    e2.free_symbols = true;
    e2.allow_two_dimensions = true;
    e2.symbol_arity = 1;
    s.push_back(e2);

    ExperimentSchema e3;
    e3.id = "e3";
    e3.title = "necessary condition blow-up";
    e3.uses_lambda = true;
    e3.samples = 100;
    e3.tolerances = {{"slope", 0.05}, {"satisfied_slope", 0.05}, {"identity", 1e-10}, {"tail", 1e-12}};
    e3.params = {{"shift_nodes", 3}};
    e3.symbols = {{"M", Json{{"type", "gaussian"}, {"scale", 1.0}}}};
    e3.symbol_arity = 1;
    e3.cases = {{"violating", Json{{"exponents",
                                    {{"p1", constant_exponent(4.0)}, {"p2", constant_exponent(4.0)},
                                     {"p3", constant_exponent(1.5)}}}}},
                {"satisfying", Json{{"exponents",
                                     {{"p1", constant_exponent(4.0)}, {"p2", constant_exponent(4.0)},
                                      {"p3", constant_exponent(2.0)}}}}}};
    e3.case_keys = {"exponents"};
    e3.case_exponents = {"p1", "p2", "p3"};
    s.push_back(e3);

    ExperimentSchema e4;
    e4.id = "e4";
    e4.title = "localization";
    e4.samples = 20;
    e4.tolerances = {{"spread", 10.0}, {"full_box", 1e-6}, {"identity", 1e-10}};
    e4.params = {{"rectangles", 20}, {"min_width_fraction", 0.25}, {"gaussian_lambdas", {1.0, 1.5, 2.0, 3.0}},
                 {"identity_pairs", 100}};
    const Json p1 = Json{{"type", "radial"}, {"p_inf", 3.0}, {"amplitude", 1.0}, {"radius", 2.0}, {"center", 0.0}};
    const Json p2 = Json{{"type", "radial"}, {"p_inf", 2.5}, {"amplitude", -0.5}, {"radius", 3.0}, {"center", 1.0}};
    e4.exponents = {{"p1", p1}, {"p2", p2}, {"p3", Json{{"type", "harmonic"}, {"parts", {p1, p2}}}}};
    e4.symbols = {{"m", Json{{"type", "constant"}, {"value", 1.0}, {"arity", 2}}}};
    e4.symbol_arity = 2;
    s.push_back(e4);

    ExperimentSchema e5;
    e5.id = "e5";
    e5.title = "composition identity";
    e5.samples = 100;
    e5.tolerances = {{"identity", 1e-10}};
    s.push_back(e5);

    ExperimentSchema e6;
    e6.id = "e6";
    e6.title = "product symbol";
    e6.samples = 100;
    e6.tolerances = {{"identity", 1e-10}, {"holder_constant", 1e-8}, {"holder_variable", 4.0}};
    e6.exponents = {{"p1", Json{{"type", "piecewise"}, {"breakpoints", {0.0}}, {"values", {2.0, 4.0}}}},
                    {"p2", Json{{"type", "piecewise"}, {"breakpoints", {0.0}}, {"values", {2.0, 4.0 / 3.0}}}},
                    {"q1", constant_exponent(3.0)},
                    {"q2", constant_exponent(1.5)}};
    s.push_back(e6);

    ExperimentSchema e7;
    e7.id = "e7";
    e7.title = "convolved symbols";
    e7.samples = 10;
    e7.tolerances = {{"identity", 1e-8}, {"young", 1e-6}, {"tail", 1e-12}};
    e7.params = {{"phi_width", 1.0}, {"phi_width_frequency", 0.25}, {"p3_values", {1.0, 1.5, 2.0}}};
    e7.symbols = {{"M", Json{{"type", "gaussian"}, {"scale", 1.0}}}};
    e7.symbol_arity = 1;
    s.push_back(e7);

    ExperimentSchema e8;
    e8.id = "e8";
    e8.title = "sharp maximal bound";
    e8.samples = 100;
    e8.tolerances = {{"spread_identity", 3.0}, {"spread_coifman_meyer", 10.0}, {"invariance", 1e-6}};
    e8.params = {{"s", 1.5}, {"r", 1.25}, {"delta", 0.5}, {"constant_inputs", 2}};
    e8.symbols = {{"identity", Json{{"type", "constant"}, {"value", 1.0}, {"arity", 2}}},
                  {"coifman_meyer", Json{{"type", "coifman_meyer"}, {"theta", 0.5}, {"arity", 2}}}};
    e8.free_symbols = true;
    e8.symbol_arity = 2;
    s.push_back(e8);

    ExperimentSchema e9;
    e9.id = "e9";
    e9.title = "weighted Hormander estimate";
    e9.samples = 100;
    e9.tolerances = {{"spread", 10.0}, {"refinement", 2.0}};
    e9.params = {{"s", 1.5}};
    e9.exponents = {{"p1", constant_exponent(4.0)}, {"p2", constant_exponent(4.0)}};
    e9.symbols = {{"m", Json{{"type", "coifman_meyer"}, {"theta", 0.5}, {"arity", 2}}}};
    e9.symbol_arity = 2;
    e9.cases = {{"admissible", Json{{"weights", {config::weight(0.1, -0.1), config::weight(0.1, -0.1)}},
                                    {"expect_member", true}}},
                {"unweighted", Json{{"weights", {Json::object(), Json::object()}}, {"expect_member", true}}},
                {"violating", Json{{"weights", {config::weight(0.3, -0.3), config::weight(0.3, -0.3)}},
                                   {"expect_member", false}}},
                {"boundary", Json{{"weights", {config::weight(0.25, -0.25), config::weight(0.25, -0.25)}},
                                  {"expect_member", false}}}};
    e9.case_keys = {"weights", "expect_member"};
    s.push_back(e9);
    return s;
  }();
  return schemas;
}

inline const ExperimentSchema& experiment_schema(const std::string& id) {
  for (const auto& s : experiment_schemas()) {
    if (s.id == id) return s;
  }
  throw ConfigError("unknown experiment '" + id + "'");
}

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> grid_samples;
  std::optional<double> grid_half_width;
};

struct RunConfig {
  std::uint64_t seed = 20240917;
  GridSpec grid{1, 8.0, 128};
  std::vector<ExperimentConfig> experiments;  // schema order

  const ExperimentConfig& experiment(const std::string& id) const {
    for (const auto& e : experiments) {
      if (e.id == id) return e;
    }
    throw ConfigError("unknown experiment '" + id + "'");
  }
};

namespace config {

inline GridSpec parse_grid(const Json& j, const GridSpec& base, const std::string& where) {
  allow_keys(j, {"n", "l", "N"}, where);
  const int n = j.contains("n") ? integer(j.at("n"), where + ".n") : base.dim();
  const double l = j.contains("l") ? number(j.at("l"), where + ".l") : base.half_width();
  const int samples = j.contains("N") ? integer(j.at("N"), where + ".N") : base.samples();
  try {
    return GridSpec(n, l, samples);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

inline Json merge_named(const Json& defaults, const Json* given, bool free, const std::string& where) {
  if (!given) return defaults;
  if (!given->is_object()) throw ConfigError(where + ": expected an object");
  if (free) return *given;
  Json out = defaults;
  for (const auto& [k, v] : given->items()) {
    if (!defaults.contains(k)) throw ConfigError(where + ": unknown key '" + k + "'");
    out[k] = v;
  }
  return out;
}

inline Json merge_values(const Json& defaults, const Json* given, const std::string& where) {
  Json out = defaults;
  if (!given) return out;
  if (!given->is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [k, v] : given->items()) {
    if (!defaults.contains(k)) throw ConfigError(where + ": unknown key '" + k + "'");
    const Json& d = defaults.at(k);
    if (d.is_array()) {
      numbers(v, where + "." + k);
    } else {
      const double x = number(v, where + "." + k);
      if (d.is_number_integer() && x != std::floor(x)) throw ConfigError(where + "." + k + ": expected an integer");
    }
    out[k] = v;
  }
  return out;
}

inline ExperimentConfig build_experiment(const ExperimentSchema& s, const Json* section, std::uint64_t seed,
                                         const GridSpec& grid) {
  const std::string where = "experiments." + s.id;
  std::set<std::string> allowed = {"grid", "tolerances"};
  if (s.uses_lambda) allowed.insert("lambda");
  if (s.samples > 0) allowed.insert("samples");
  if (!s.params.empty()) allowed.insert("params");
  if (!s.exponents.empty() || s.free_exponents) allowed.insert("exponents");
  if (!s.symbols.empty()) allowed.insert("symbols");
  if (!s.cases.empty()) allowed.insert("cases");
  const Json empty = Json::object();
  const Json& sec = section ? *section : empty;
  allow_keys(sec, allowed, where);
  auto get = [&](const char* k) -> const Json* { return sec.contains(k) ? &sec.at(k) : nullptr; };

  ExperimentConfig c;
  c.id = s.id;
  c.seed = seed;
  c.grid = get("grid") ? parse_grid(*get("grid"), grid, where + ".grid") : grid;
  if (c.grid.dim() == 2 && !s.allow_two_dimensions) {
    // only an error if this experiment is actually run
    c.unsupported = where + ": experiment is one-dimensional";
    c.grid = GridSpec(1, c.grid.half_width(), c.grid.samples());
  }
  const int dim = c.grid.dim();

  c.lambda = s.lambda;
  if (const Json* l = get("lambda")) {
    allow_keys(*l, {"min", "max", "count"}, where + ".lambda");
    if (l->contains("min")) c.lambda.min = number(l->at("min"), where + ".lambda.min");
    if (l->contains("max")) c.lambda.max = number(l->at("max"), where + ".lambda.max");
    if (l->contains("count")) c.lambda.count = integer(l->at("count"), where + ".lambda.count");
    if (!(c.lambda.min > 0.0 && c.lambda.max > c.lambda.min && c.lambda.count >= 4)) {
      throw ConfigError(where + ".lambda: need 0 < min < max and count >= 4");
    }
  }
  c.samples = s.samples;
  if (const Json* n = get("samples")) {
    c.samples = integer(*n, where + ".samples");
    if (c.samples < 1) throw ConfigError(where + ".samples: must be positive");
  }
  c.tolerances = merge_values(s.tolerances, get("tolerances"), where + ".tolerances");
  for (const auto& [k, v] : c.tolerances.items()) {
    if (!(v.get<double>() > 0.0)) throw ConfigError(where + ".tolerances." + k + ": must be positive");
  }
  c.params = merge_values(s.params, get("params"), where + ".params");

  const Json exps = merge_named(s.exponents, get("exponents"), s.free_exponents, where + ".exponents");
  for (const auto& [k, v] : exps.items()) c.exponents.emplace_back(k, parse_exponent(v, dim, where + ".exponents." + k));

  const Json syms = merge_named(s.symbols, get("symbols"), s.free_symbols, where + ".symbols");
  if (syms.empty() && !s.symbols.empty()) throw ConfigError(where + ".symbols: at least one symbol needed");
  for (const auto& [k, v] : syms.items()) {
    Symbol sym = parse_symbol(v, dim, where + ".symbols." + k);
    if (s.symbol_arity && sym.arity() != s.symbol_arity) {
      throw ConfigError(where + ".symbols." + k + ": expected arity " + std::to_string(s.symbol_arity));
    }
    c.symbols.emplace_back(k, std::move(sym));
  }
  if (s.id == "e8") {
    for (const auto& [k, v] : c.symbols) {
      const std::string key = "spread_" + k;
      if (!c.tolerances.contains(key)) c.tolerances[key] = 10.0;
    }
  }

  const Json cases = merge_named(s.cases, get("cases"), true, where + ".cases");
  for (const auto& [name, body] : cases.items()) {
    const std::string cw = where + ".cases." + name;
    allow_keys(body, s.case_keys, cw);
    Case cs;
    if (s.case_keys.count("exponents")) {
      const Json& e = need(body, "exponents", cw);
      allow_keys(e, s.case_exponents, cw + ".exponents");
      for (const auto& key : s.case_exponents) {
        cs.exponents.emplace_back(key, parse_exponent(need(e, key, cw + ".exponents"), dim, cw + ".exponents." + key));
      }
    }
    if (s.case_keys.count("weights")) {
      const Json& w = need(body, "weights", cw);
      if (!w.is_array() || w.empty()) throw ConfigError(cw + ".weights: expected a nonempty array");
      for (std::size_t i = 0; i < w.size(); ++i) {
        cs.weights.push_back(parse_weight(w[i], dim, cw + ".weights[" + std::to_string(i) + "]"));
      }
      if (body.contains("expect_member")) {
        if (!body.at("expect_member").is_boolean()) throw ConfigError(cw + ".expect_member: expected a boolean");
        cs.expect_member = body.at("expect_member").get<bool>();
      }
    }
    c.cases.emplace_back(name, std::move(cs));
  }

  c.echo = Json::object();
  c.echo["grid"] = {{"n", c.grid.dim()}, {"l", c.grid.half_width()}, {"N", c.grid.samples()}};
  c.echo["seed"] = c.seed;
  if (s.uses_lambda) c.echo["lambda"] = {{"min", c.lambda.min}, {"max", c.lambda.max}, {"count", c.lambda.count}};
  if (s.samples > 0) c.echo["samples"] = c.samples;
  c.echo["tolerances"] = c.tolerances;
  if (!c.params.empty()) c.echo["params"] = c.params;
  if (!exps.empty()) c.echo["exponents"] = exps;
  if (!syms.empty()) c.echo["symbols"] = syms;
  if (!cases.empty()) c.echo["cases"] = cases;
  return c;
}

}  // namespace config

inline RunConfig load_config(const Json& root, const Overrides& ov = {}) {
  config::allow_keys(root, {"seed", "grid", "experiments"}, "config");
  RunConfig rc;
  if (root.contains("seed")) {
    const Json& s = root.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      throw ConfigError("config.seed: expected a nonnegative integer");
    }
    rc.seed = s.get<std::uint64_t>();
  }
  if (ov.seed) rc.seed = *ov.seed;
  rc.grid = root.contains("grid") ? config::parse_grid(root.at("grid"), rc.grid, "config.grid") : rc.grid;
  try {
    rc.grid = GridSpec(rc.grid.dim(), ov.grid_half_width.value_or(rc.grid.half_width()),
                       ov.grid_samples.value_or(rc.grid.samples()));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid override: ") + e.what());
  }
  const Json empty = Json::object();
  const Json& exps = root.contains("experiments") ? root.at("experiments") : empty;
  std::set<std::string> ids;
  for (const auto& s : experiment_schemas()) ids.insert(s.id);
  config::allow_keys(exps, ids, "config.experiments");
  for (const auto& s : experiment_schemas()) {
    const Json* sec = exps.contains(s.id) ? &exps.at(s.id) : nullptr;
    rc.experiments.push_back(config::build_experiment(s, sec, rc.seed, rc.grid));
  }
  return rc;
}

inline RunConfig load_config_file(const std::string& path, const Overrides& ov = {}) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  Json root;
  try {
    root = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config parse error: " + std::string(e.what()));
  }
  return load_config(root, ov);
}

}  // namespace vlm

#endif  // VLMULT_CONFIG_HPP
