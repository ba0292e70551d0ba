#ifndef VLMULT_EXPONENTS_HPP
#define VLMULT_EXPONENTS_HPP

// Closed-form variable exponents p(.) and their pointwise analysis.

#include "vlmult/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace vlm {

class ExponentField;

namespace exponent {

struct Constant {
  double value;
};

// values[i] on [breakpoints[i-1], breakpoints[i]) along the first coordinate,
// with breakpoints[-1] = -inf and breakpoints[size] = +inf.
struct Piecewise {
  std::vector<double> breakpoints;
  std::vector<double> values;
};

// p(x) = p_inf + amplitude * max(0, 1 - |x - center| / radius)^2.
struct Radial {
  double p_inf;
  double amplitude;
  double radius;
  Point center;
};

// 1/p = sum 1/p_j for fields that do not reduce to one of the forms above.
struct Harmonic {
  std::vector<ExponentField> parts;
};

}  // namespace exponent

// The ball outside of which an exponent is constant.
struct FarField {
  double p_inf;
  Point center;
  double radius;
};

class ExponentField {
 public:
  using Descriptor =
      std::variant<exponent::Constant, exponent::Piecewise, exponent::Radial, exponent::Harmonic>;

  static ExponentField constant(double c) { return ExponentField(exponent::Constant{c}); }

  static ExponentField piecewise(std::vector<double> breakpoints, std::vector<double> values) {
    if (values.size() != breakpoints.size() + 1) {
      throw std::invalid_argument("piecewise exponent needs one more value than breakpoints");
    }
    if (!std::is_sorted(breakpoints.begin(), breakpoints.end()) ||
        std::adjacent_find(breakpoints.begin(), breakpoints.end()) != breakpoints.end()) {
      throw std::invalid_argument("piecewise breakpoints must be strictly increasing");
    }
    return ExponentField(exponent::Piecewise{std::move(breakpoints), std::move(values)});
  }

  static ExponentField radial(double p_inf, double amplitude, double radius, Point center = {}) {
    if (!(radius > 0.0)) throw std::invalid_argument("radial exponent needs a positive radius");
    return ExponentField(exponent::Radial{p_inf, amplitude, radius, center});
  }

  explicit ExponentField(Descriptor d) : desc_(std::make_shared<const Descriptor>(std::move(d))) {
    std::tie(p_minus_, p_plus_) = std::visit([](const auto& v) { return bounds_of(v); }, *desc_);
    if (!(p_minus_ > 0.0) || !std::isfinite(p_plus_) || p_minus_ > p_plus_) {
      throw std::invalid_argument("exponent must satisfy 0 < p_- <= p_+ < inf");
    }
  }

  const Descriptor& descriptor() const { return *desc_; }

  // Analytic essential bounds over R^n.
  double p_minus() const { return p_minus_; }
  double p_plus() const { return p_plus_; }
  bool is_constant() const { return std::holds_alternative<exponent::Constant>(*desc_); }

  double operator()(const Point& x) const {
    return std::visit([&](const auto& v) { return eval(v, x); }, *desc_);
  }
  double operator()(double x) const { return (*this)(Point{x, 0.0}); }

  // Present when p is constant outside some ball; piecewise fields qualify
  // only in one dimension.
  std::optional<FarField> far_field(int dim) const {
    return std::visit([&](const auto& v) { return far_of(v, dim); }, *desc_);
  }

 private:
  static std::pair<double, double> bounds_of(const exponent::Constant& c) {
    return {c.value, c.value};
  }
  static std::pair<double, double> bounds_of(const exponent::Piecewise& p) {
    auto [lo, hi] = std::minmax_element(p.values.begin(), p.values.end());
    return {*lo, *hi};
  }
  static std::pair<double, double> bounds_of(const exponent::Radial& r) {
    return {std::min(r.p_inf, r.p_inf + r.amplitude), std::max(r.p_inf, r.p_inf + r.amplitude)};
  }
  static std::pair<double, double> bounds_of(const exponent::Harmonic& h) {
    if (h.parts.empty()) throw std::invalid_argument("harmonic exponent needs parts");
    double inv_lo = 0.0, inv_hi = 0.0;
    for (const auto& p : h.parts) {
      inv_lo += 1.0 / p.p_plus();
      inv_hi += 1.0 / p.p_minus();
    }
    return {1.0 / inv_hi, 1.0 / inv_lo};
  }

  static double eval(const exponent::Constant& c, const Point&) { return c.value; }
  static double eval(const exponent::Piecewise& p, const Point& x) {
    auto it = std::upper_bound(p.breakpoints.begin(), p.breakpoints.end(), x[0]);
    return p.values[static_cast<std::size_t>(it - p.breakpoints.begin())];
  }
  static double eval(const exponent::Radial& r, const Point& x) {
    double d = norm2(Point{x[0] - r.center[0], x[1] - r.center[1]});
    double t = std::max(0.0, 1.0 - d / r.radius);
    return r.p_inf + r.amplitude * t * t;
  }
  static double eval(const exponent::Harmonic& h, const Point& x) {
    double inv = 0.0;
    for (const auto& p : h.parts) inv += 1.0 / p(x);
    return 1.0 / inv;
  }

  static std::optional<FarField> far_of(const exponent::Constant& c, int) {
    return FarField{c.value, Point{}, 0.0};
  }
  static std::optional<FarField> far_of(const exponent::Piecewise& p, int dim) {
    if (p.values.front() != p.values.back()) return std::nullopt;
    if (std::all_of(p.values.begin(), p.values.end(),
                    [&](double v) { return v == p.values.front(); })) {
      return FarField{p.values.front(), Point{}, 0.0};
    }
    if (dim != 1) return std::nullopt;
    double lo = p.breakpoints.front(), hi = p.breakpoints.back();
    double r = 0.5 * (hi - lo);
    // x = lo itself already belongs to the second piece
    return FarField{p.values.front(), Point{0.5 * (lo + hi), 0.0}, r * (1.0 + 1e-12) + 1e-12};
  }
  static std::optional<FarField> far_of(const exponent::Radial& r, int) {
    return FarField{r.p_inf, r.center, r.radius};
  }
  static std::optional<FarField> far_of(const exponent::Harmonic& h, int dim) {
    std::vector<FarField> fars;
    for (const auto& p : h.parts) {
      auto f = p.far_field(dim);
      if (!f) return std::nullopt;
      fars.push_back(*f);
    }
    double inv = 0.0;
    for (const auto& f : fars) inv += 1.0 / f.p_inf;
    Point center{};
    for (const auto& f : fars) {
      if (f.radius > 0.0) {
        center = f.center;
        break;
      }
    }
    double radius = 0.0;
    for (const auto& f : fars) {
      if (f.radius > 0.0) {
        Point d{f.center[0] - center[0], f.center[1] - center[1]};
        radius = std::max(radius, norm2(d) + f.radius);
      }
    }
    return FarField{1.0 / inv, center, radius};
  }

  std::shared_ptr<const Descriptor> desc_;
  double p_minus_ = 0.0;
  double p_plus_ = 0.0;
};

inline double evaluate(const ExponentField& p, const Point& x) { return p(x); }

// Min and max of p over the grid nodes.
inline std::pair<double, double> ess_bounds(const ExponentField& p, const GridSpec& g) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double v = p(g.point(i));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

// p' = p / (p - 1); only defined for p > 1.
inline double conjugate_exponent(double p) {
  if (!(p > 1.0)) throw std::domain_error("exponent <= 1 has no finite conjugate");
  return p / (p - 1.0);
}

inline double conjugate(const ExponentField& p, const Point& x) { return conjugate_exponent(p(x)); }

// 1/p(x) = sum_j 1/p_j(x). Constant and one-dimensional piecewise inputs
// collapse back to those forms.
inline ExponentField harmonic_sum(const std::vector<ExponentField>& ps) {
  if (ps.empty()) throw std::invalid_argument("harmonic_sum needs at least one exponent");
  if (ps.size() == 1) return ps.front();

  bool all_const = true, all_simple = true;
  for (const auto& p : ps) {
    all_const = all_const && p.is_constant();
    all_simple = all_simple && (p.is_constant() ||
                                std::holds_alternative<exponent::Piecewise>(p.descriptor()));
  }
  if (all_const) {
    double inv = 0.0;
    for (const auto& p : ps) inv += 1.0 / p(0.0);
    return ExponentField::constant(1.0 / inv);
  }
  if (all_simple) {
    std::vector<double> bps;
    for (const auto& p : ps) {
      if (const auto* pw = std::get_if<exponent::Piecewise>(&p.descriptor())) {
        bps.insert(bps.end(), pw->breakpoints.begin(), pw->breakpoints.end());
      }
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    auto value_at = [&](double x) {
      double inv = 0.0;
      for (const auto& p : ps) inv += 1.0 / p(x);
      return 1.0 / inv;
    };
    std::vector<double> kept_bps;
    std::vector<double> vals{value_at(bps.front() - 1.0)};
    for (std::size_t i = 0; i < bps.size(); ++i) {
      // every piece is constant on [bps[i], bps[i+1]), so its left end is representative
      double v = value_at(bps[i]);
      if (v != vals.back()) {
        kept_bps.push_back(bps[i]);
        vals.push_back(v);
      }
    }
    if (kept_bps.empty()) return ExponentField::constant(vals.front());
    return ExponentField::piecewise(std::move(kept_bps), std::move(vals));
  }
  return ExponentField(exponent::Harmonic{ps});
}

// sup over node pairs with 0 < |x - y| <= 1/2 of |p(x) - p(y)| * (-ln|x - y|).
// In two dimensions only axis-aligned and diagonal pairs are visited.
inline double lh0_modulus(const ExponentField& p, const GridSpec& g) {
  const int n = g.samples();
  const double h = g.spacing();
  std::vector<double> vals(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) vals[i] = p(g.point(i));

  double best = 0.0;
  auto consider = [&](double a, double b, double dist) {
    if (dist > 0.0 && dist <= 0.5) best = std::max(best, std::abs(a - b) * -std::log(dist));
  };
  const int max_step = std::min(n - 1, static_cast<int>(std::floor(0.5 / h + 1e-9)));
  if (g.dim() == 1) {
    for (int i = 0; i < n; ++i) {
      for (int s = 1; s <= max_step && i + s < n; ++s) consider(vals[i], vals[i + s], s * h);
    }
    return best;
  }
  auto at = [&](int a, int b) { return vals[static_cast<std::size_t>(a) * n + b]; };
  const int diag_step = std::min(n - 1, static_cast<int>(std::floor(0.5 / (h * std::sqrt(2.0)) + 1e-9)));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int s = 1; s <= max_step; ++s) {
        if (a + s < n) consider(at(a, b), at(a + s, b), s * h);
        if (b + s < n) consider(at(a, b), at(a, b + s), s * h);
      }
      for (int s = 1; s <= diag_step; ++s) {
        double d = s * h * std::sqrt(2.0);
        if (a + s < n && b + s < n) consider(at(a, b), at(a + s, b + s), d);
        if (a + s < n && b - s >= 0) consider(at(a, b), at(a + s, b - s), d);
      }
    }
  }
  return best;
}

}  // namespace vlm

#endif  // VLMULT_EXPONENTS_HPP
