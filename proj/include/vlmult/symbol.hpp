#ifndef VLMULT_SYMBOL_HPP
#define VLMULT_SYMBOL_HPP

// Closed-form multiplier symbols m on R^{Nn}, N in {1, 2, 3}, n in {1, 2}.
// A symbol takes the concatenated frequency vector (xi_1, ..., xi_N).

#include "vlmult/grid.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace vlm {

class Symbol;

namespace symbol {

struct Constant {
  Complex value;
};
// m(xi_1, ..., xi_N) = prod m_i(xi_i) with arity-1 factors
struct Tensor {
  std::vector<Symbol> factors;
};
// m(xi, eta) = M(xi - eta)
struct Difference {
  std::vector<Symbol> base;  // exactly one arity-1 symbol
};
// Product of per-coordinate interval indicators, 1/2 on an interval endpoint;
// a degenerate interval lo == hi is the indicator of that single point.
struct Indicator {
  std::vector<double> lo, hi;
};
// exp(-|zeta|^2 / scale^2)
struct Gaussian {
  double scale;
};
// (zeta_first^2 + theta zeta_first zeta_last) / |zeta|^2, zero at the origin;
// homogeneous of degree 0 and smooth away from the origin.
struct CoifmanMeyer {
  double theta;
};
// m(xi, eta) = M(xi - eta) Phi(xi + eta)
struct ModulatedDifference {
  std::vector<Symbol> parts;  // {M, Phi}
};
// base(zeta + 2y)
struct Translate {
  std::vector<Symbol> base;
  std::vector<double> shift;
};
// -i sign(xi), sign(0) = 0; one dimension only
struct Hilbert {};
struct Product {
  std::vector<Symbol> factors;
};

}  // namespace symbol

class Symbol {
 public:
  using Descriptor =
      std::variant<symbol::Constant, symbol::Tensor, symbol::Difference, symbol::Indicator, symbol::Gaussian,
                   symbol::CoifmanMeyer, symbol::ModulatedDifference, symbol::Translate, symbol::Hilbert,
                   symbol::Product>;

  static Symbol constant(Complex c, int arity, int dim = 1) { return Symbol(arity, dim, symbol::Constant{c}); }

  static Symbol tensor(std::vector<Symbol> factors) {
    if (factors.empty() || factors.size() > 3) throw std::invalid_argument("tensor symbol needs 1..3 factors");
    const int dim = factors.front().dim();
    for (const auto& f : factors) {
      if (f.arity() != 1 || f.dim() != dim) throw std::invalid_argument("tensor factors must be arity 1");
    }
    const int arity = static_cast<int>(factors.size());
    return Symbol(arity, dim, symbol::Tensor{std::move(factors)});
  }

  static Symbol difference(Symbol base) {
    if (base.arity() != 1) throw std::invalid_argument("difference symbol needs an arity-1 base");
    const int dim = base.dim();
    return Symbol(2, dim, symbol::Difference{{std::move(base)}});
  }

  static Symbol indicator(std::vector<double> lo, std::vector<double> hi, int arity, int dim = 1) {
    if (lo.size() != static_cast<std::size_t>(arity * dim) || hi.size() != lo.size()) {
      throw std::invalid_argument("indicator symbol needs one interval per coordinate");
    }
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (!(lo[i] <= hi[i])) throw std::invalid_argument("indicator symbol needs lo <= hi");
    }
    return Symbol(arity, dim, symbol::Indicator{std::move(lo), std::move(hi)});
  }

  static Symbol gaussian(double scale, int arity, int dim = 1) {
    if (!(scale > 0.0)) throw std::invalid_argument("gaussian symbol needs a positive scale");
    return Symbol(arity, dim, symbol::Gaussian{scale});
  }

  static Symbol coifman_meyer(double theta, int arity, int dim = 1) {
    return Symbol(arity, dim, symbol::CoifmanMeyer{theta});
  }

  static Symbol modulated_difference(Symbol base, Symbol envelope) {
    if (base.arity() != 1 || envelope.arity() != 1 || base.dim() != envelope.dim()) {
      throw std::invalid_argument("modulated_difference needs two arity-1 symbols");
    }
    const int dim = base.dim();
    return Symbol(2, dim, symbol::ModulatedDifference{{std::move(base), std::move(envelope)}});
  }

  static Symbol translate(Symbol base, std::vector<double> shift) {
    if (shift.size() != static_cast<std::size_t>(base.arity() * base.dim())) {
      throw std::invalid_argument("translate needs a shift in R^{Nn}");
    }
    const int arity = base.arity(), dim = base.dim();
    return Symbol(arity, dim, symbol::Translate{{std::move(base)}, std::move(shift)});
  }

  static Symbol hilbert() { return Symbol(1, 1, symbol::Hilbert{}); }

  static Symbol product(std::vector<Symbol> factors) {
    if (factors.empty()) throw std::invalid_argument("product symbol needs factors");
    const int arity = factors.front().arity(), dim = factors.front().dim();
    for (const auto& f : factors) {
      if (f.arity() != arity || f.dim() != dim) throw std::invalid_argument("product factors must agree in shape");
    }
    return Symbol(arity, dim, symbol::Product{std::move(factors)});
  }

  int arity() const { return arity_; }
  int dim() const { return dim_; }
  std::size_t width() const { return static_cast<std::size_t>(arity_ * dim_); }
  const Descriptor& descriptor() const { return *desc_; }

  Complex operator()(std::span<const double> zeta) const {
    if (zeta.size() != width()) throw std::invalid_argument("symbol evaluated with wrong argument length");
    return std::visit([&](const auto& d) { return eval(d, zeta); }, *desc_);
  }
  Complex operator()(std::initializer_list<double> zeta) const {
    return (*this)(std::span<const double>(zeta.begin(), zeta.size()));
  }

 private:
  Symbol(int arity, int dim, Descriptor d)
      : arity_(arity), dim_(dim), desc_(std::make_shared<const Descriptor>(std::move(d))) {
    if (arity < 1 || arity > 3) throw std::invalid_argument("symbol arity must be 1, 2 or 3");
    if (dim != 1 && dim != 2) throw std::invalid_argument("symbol dimension must be 1 or 2");
    if (std::holds_alternative<symbol::Hilbert>(*desc_) && (arity != 1 || dim != 1)) {
      throw std::invalid_argument("Hilbert symbol is one-dimensional");
    }
  }

  Complex eval(const symbol::Constant& c, std::span<const double>) const { return c.value; }

  Complex eval(const symbol::Tensor& t, std::span<const double> z) const {
    Complex v{1.0, 0.0};
    for (std::size_t i = 0; i < t.factors.size(); ++i) {
      v *= t.factors[i](z.subspan(i * dim_, dim_));
    }
    return v;
  }

  Complex eval(const symbol::Difference& d, std::span<const double> z) const {
    std::array<double, 2> u{};
    for (int c = 0; c < dim_; ++c) u[c] = z[c] - z[dim_ + c];
    return d.base.front()(std::span<const double>(u.data(), dim_));
  }

  static double interval_value(double x, double lo, double hi) {
    const double tol = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
    if (hi - lo <= tol) return std::abs(x - lo) <= tol ? 1.0 : 0.0;
    if (std::abs(x - lo) <= tol || std::abs(x - hi) <= tol) return 0.5;
    return (x > lo && x < hi) ? 1.0 : 0.0;
  }

  Complex eval(const symbol::Indicator& q, std::span<const double> z) const {
    double v = 1.0;
    for (std::size_t i = 0; i < z.size() && v != 0.0; ++i) v *= interval_value(z[i], q.lo[i], q.hi[i]);
    return v;
  }

  Complex eval(const symbol::Gaussian& g, std::span<const double> z) const {
    double r2 = 0.0;
    for (double x : z) r2 += x * x;
    return std::exp(-r2 / (g.scale * g.scale));
  }

  Complex eval(const symbol::CoifmanMeyer& c, std::span<const double> z) const {
    double r2 = 0.0;
    for (double x : z) r2 += x * x;
    if (r2 == 0.0) return 0.0;
    const double first = z.front(), last = z.back();
    return (first * first + c.theta * first * last) / r2;
  }

  Complex eval(const symbol::ModulatedDifference& m, std::span<const double> z) const {
    std::array<double, 2> diff{}, sum{};
    for (int c = 0; c < dim_; ++c) {
      diff[c] = z[c] - z[dim_ + c];
      sum[c] = z[c] + z[dim_ + c];
    }
    return m.parts[0](std::span<const double>(diff.data(), dim_)) *
           m.parts[1](std::span<const double>(sum.data(), dim_));
  }

  Complex eval(const symbol::Translate& t, std::span<const double> z) const {
    std::array<double, 6> u{};
    for (std::size_t i = 0; i < z.size(); ++i) u[i] = z[i] + 2.0 * t.shift[i];
    return t.base.front()(std::span<const double>(u.data(), z.size()));
  }

  Complex eval(const symbol::Hilbert&, std::span<const double> z) const {
    const double x = z.front();
    const double sign = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
    return Complex(0.0, -sign);
  }

  Complex eval(const symbol::Product& p, std::span<const double> z) const {
    Complex v{1.0, 0.0};
    for (const auto& f : p.factors) v *= f(z);
    return v;
  }

  int arity_;
  int dim_;
  std::shared_ptr<const Descriptor> desc_;
};

// phi(x) = s^{-n} exp(-pi |x/s|^2): unit mass, transform exp(-pi s^2 |xi|^2).
struct GaussianBump {
  double width;
  int dim = 1;

  double operator()(const Point& x) const {
    const double r2 = (x[0] * x[0] + x[1] * x[1]) / (width * width);
    return std::pow(width, -dim) * std::exp(-std::numbers::pi * r2);
  }

  Symbol transform() const { return Symbol::gaussian(1.0 / (width * std::sqrt(std::numbers::pi)), 1, dim); }

  // Closed form of phi * M for M = gaussian(scale) of arity 1.
  Symbol convolve_gaussian(double scale) const {
    const double widened = std::sqrt(scale * scale + width * width / std::numbers::pi);
    return Symbol::product({Symbol::constant(std::pow(scale / widened, dim), 1, dim),
                            Symbol::gaussian(widened, 1, dim)});
  }
};

}  // namespace vlm

#endif  // VLMULT_SYMBOL_HPP
