#ifndef VLMULT_REPORT_HPP
#define VLMULT_REPORT_HPP

#include "vlmult/config.hpp"
#include "vlmult/norms.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace vlm {

struct ReportRow {
  std::string experiment;
  std::string param_id;
  std::string quantity;
  double value = 0.0;
  std::optional<double> tolerance;
  std::optional<bool> pass;  // empty for informational rows
};

struct SlopeFit {
  std::string param_id;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of the fit residuals
  std::vector<double> lambdas;
  std::vector<double> values;
};

// Least squares line through (log x, log y) for the upper half of the points.
inline SlopeFit fit_loglog_upper_half(std::string id, const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 4) throw std::invalid_argument("fit_loglog_upper_half: need >= 4 points");
  SlopeFit fit;
  fit.param_id = std::move(id);
  fit.lambdas = x;
  fit.values = y;
  const std::size_t start = x.size() / 2;
  const double m = static_cast<double>(x.size() - start);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = start; i < x.size(); ++i) {
    const double u = std::log(x[i]), v = std::log(y[i]);
    sx += u;
    sy += v;
    sxx += u * u;
    sxy += u * v;
  }
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / m;
  double r2 = 0.0;
  for (std::size_t i = start; i < x.size(); ++i) {
    const double e = std::log(y[i]) - fit.intercept - fit.slope * std::log(x[i]);
    r2 += e * e;
  }
  fit.residual = std::sqrt(r2 / m);
  return fit;
}

struct ExperimentReport {
  std::string experiment;
  Json config = Json::object();
  std::vector<ReportRow> rows;
  std::vector<SlopeFit> slopes;
  Json details = Json::object();
  std::vector<std::string> notes;
  double seconds = 0.0;

  void info(const std::string& id, const std::string& quantity, double value) {
    rows.push_back({experiment, id, quantity, value, std::nullopt, std::nullopt});
  }
  // pass when value <= tol
  bool at_most(const std::string& id, const std::string& quantity, double value, double tol) {
    const bool ok = value <= tol;
    rows.push_back({experiment, id, quantity, value, tol, ok});
    return ok;
  }
  bool at_least(const std::string& id, const std::string& quantity, double value, double tol) {
    const bool ok = value >= tol;
    rows.push_back({experiment, id, quantity, value, tol, ok});
    return ok;
  }
  bool verdict(const std::string& id, const std::string& quantity, double value, std::optional<double> tol, bool ok) {
    rows.push_back({experiment, id, quantity, value, tol, ok});
    return ok;
  }

  bool passed() const {
    for (const auto& r : rows) {
      if (r.pass && !*r.pass) return false;
    }
    return true;
  }
  std::vector<ReportRow> failures() const {
    std::vector<ReportRow> out;
    for (const auto& r : rows) {
      if (r.pass && !*r.pass) out.push_back(r);
    }
    return out;
  }
};

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline void write_csv(std::ostream& out, const std::vector<ExperimentReport>& reports, bool reproducible) {
  if (!reproducible) out << "# generated " << utc_timestamp() << "\n";
  out << "experiment,param_id,quantity,value,tolerance,pass\n";
  for (const auto& rep : reports) {
    for (const auto& r : rep.rows) {
      out << csv_field(r.experiment) << ',' << csv_field(r.param_id) << ',' << csv_field(r.quantity) << ','
          << format_number(r.value) << ',' << (r.tolerance ? format_number(*r.tolerance) : "") << ','
          << (r.pass ? (*r.pass ? "true" : "false") : "") << '\n';
    }
  }
}

inline Json number_json(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

inline Json report_json(const std::vector<ExperimentReport>& reports, std::uint64_t seed, bool reproducible) {
  Json root = Json::object();
  if (!reproducible) root["generated"] = utc_timestamp();
  root["seed"] = seed;
  root["threads"] = 1;
  root["weighted_norm_interpretation"] = kWeightedNormInterpretation;
  root["passed"] = true;
  Json list = Json::array();
  for (const auto& rep : reports) {
    Json e = Json::object();
    e["experiment"] = rep.experiment;
    e["passed"] = rep.passed();
    if (!rep.passed()) root["passed"] = false;
    e["config"] = rep.config;
    if (!reproducible) e["seconds"] = rep.seconds;
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
      Json row = {{"param_id", r.param_id}, {"quantity", r.quantity}, {"value", number_json(r.value)}};
      row["tolerance"] = r.tolerance ? number_json(*r.tolerance) : Json();
      row["pass"] = r.pass ? Json(*r.pass) : Json();
      row["weighted_norm_interpretation"] = kWeightedNormInterpretation;
      rows.push_back(std::move(row));
    }
    e["rows"] = std::move(rows);
    Json fits = Json::array();
    for (const auto& f : rep.slopes) {
      Json pts = Json::array();
      for (std::size_t i = 0; i < f.lambdas.size(); ++i) pts.push_back({number_json(f.lambdas[i]), number_json(f.values[i])});
      fits.push_back({{"param_id", f.param_id},
                      {"slope", number_json(f.slope)},
                      {"intercept", number_json(f.intercept)},
                      {"residual", number_json(f.residual)},
                      {"fit_points", "upper half"},
                      {"points", std::move(pts)}});
    }
    e["slopes"] = std::move(fits);
    e["details"] = rep.details;
    e["notes"] = rep.notes;
    list.push_back(std::move(e));
  }
  root["experiments"] = std::move(list);
  return root;
}

}  // namespace vlm

#endif  // VLMULT_REPORT_HPP
