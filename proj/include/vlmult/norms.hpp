#ifndef VLMULT_NORMS_HPP
#define VLMULT_NORMS_HPP

// Modulars, Luxemburg norms, P^0 quasi-norms and weighted variable norms on
// grid samples.

#include "vlmult/exponents.hpp"
#include "vlmult/grid.hpp"
#include "vlmult/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace vlm {

struct NormResult {
  double value = 0.0;
  int iterations = 0;
  double residual = 0.0;  // |rho(f / value) - 1| at termination
  double p0 = 1.0;        // inner power used by the quasi-norm (1 for Luxemburg)
};

inline constexpr double kModularTolerance = 1e-10;
inline constexpr int kMaxBisections = 200;

namespace detail {

// |f(x_j)|^{p_j} summed with cell weight, for samples given as log-magnitudes.
class ModularKernel {
 public:
  ModularKernel(std::vector<double> magnitudes, std::vector<double> exponents, double cell)
      : exps_(std::move(exponents)), cell_(cell) {
    logs_.reserve(magnitudes.size());
    for (double m : magnitudes) {
      logs_.push_back(m > 0.0 ? std::log(m) : -std::numeric_limits<double>::infinity());
      max_mag_ = std::max(max_mag_, m);
    }
  }

  double max_magnitude() const { return max_mag_; }

  // rho(f / lambda)
  double operator()(double lambda) const {
    const double shift = std::log(lambda);
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < logs_.size(); ++i) {
      if (std::isfinite(logs_[i])) top = std::max(top, exps_[i] * (logs_[i] - shift));
    }
    if (!std::isfinite(top)) return 0.0;
    double sum = 0.0;
    if (top > 700.0) {
      // log-space accumulation; the final exp may legitimately overflow
      for (std::size_t i = 0; i < logs_.size(); ++i) {
        if (std::isfinite(logs_[i])) sum += std::exp(exps_[i] * (logs_[i] - shift) - top);
      }
      return std::exp(top + std::log(sum * cell_));
    }
    for (std::size_t i = 0; i < logs_.size(); ++i) {
      if (std::isfinite(logs_[i])) sum += std::exp(exps_[i] * (logs_[i] - shift));
    }
    return sum * cell_;
  }

 private:
  std::vector<double> logs_;
  std::vector<double> exps_;
  double cell_;
  double max_mag_ = 0.0;
};

inline std::vector<double> exponent_samples(const ExponentField& p, const GridSpec& g) {
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = p(g.point(i));
  return out;
}

inline std::vector<double> magnitudes(const SampledFunction& f) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::abs(f[i]);
  return out;
}

inline std::vector<double> weighted_magnitudes(const SampledFunction& f, const PowerWeight& w) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::abs(f[i]) * w(f.grid.point(i));
  return out;
}

// inf{lambda > 0 : rho(f / lambda) <= 1} by geometric bisection on lambda.
inline NormResult luxemburg_from_samples(std::vector<double> mags, std::vector<double> exps,
                                         const GridSpec& g) {
  const double min_exp = *std::min_element(exps.begin(), exps.end());
  if (min_exp < 1.0 - 1e-12) {
    throw std::invalid_argument("luxemburg_norm: exponent below 1, use quasi_norm");
  }
  ModularKernel rho(std::move(mags), std::move(exps), g.cell_volume());
  const double top = rho.max_magnitude();
  if (top == 0.0) return {};

  const double vol = g.volume();
  double lo = top * vol * 1e-16;
  double hi = top * std::max(vol, 1.0) * 2.0;
  NormResult res;
  for (int it = 1; it <= kMaxBisections; ++it) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    const double r = rho(mid);
    res = {mid, it, std::abs(r - 1.0), 1.0};
    if (res.residual <= kModularTolerance) return res;
    if (r > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (!(hi > lo)) break;
  }
  throw std::runtime_error("luxemburg_norm: bisection did not converge");
}

}  // namespace detail

// Quadrature of |f w|^{p(x)} over the grid domain (w == 1 when absent).
inline double modular(const SampledFunction& f, const ExponentField& p) {
  detail::ModularKernel k(detail::magnitudes(f), detail::exponent_samples(p, f.grid), f.grid.cell_volume());
  return k(1.0);
}

inline double modular(const SampledFunction& f, const ExponentField& p, const PowerWeight& w) {
  detail::ModularKernel k(detail::weighted_magnitudes(f, w), detail::exponent_samples(p, f.grid),
                          f.grid.cell_volume());
  return k(1.0);
}

inline NormResult luxemburg_norm(const SampledFunction& f, const ExponentField& p) {
  return detail::luxemburg_from_samples(detail::magnitudes(f), detail::exponent_samples(p, f.grid), f.grid);
}

namespace detail {

inline NormResult quasi_from_samples(std::vector<double> mags, std::vector<double> exps, const GridSpec& g,
                                     double p0) {
  if (!(p0 > 0.0)) throw std::invalid_argument("quasi_norm: p0 must be positive");
  for (auto& m : mags) m = std::pow(m, p0);
  for (auto& e : exps) e /= p0;
  NormResult inner = luxemburg_from_samples(std::move(mags), std::move(exps), g);
  inner.value = std::pow(inner.value, 1.0 / p0);
  inner.p0 = p0;
  return inner;
}

inline NormResult norm_from_samples(std::vector<double> mags, std::vector<double> exps, const GridSpec& g) {
  const double lo = *std::min_element(exps.begin(), exps.end());
  if (lo >= 1.0) return luxemburg_from_samples(std::move(mags), std::move(exps), g);
  return quasi_from_samples(std::move(mags), std::move(exps), g, lo / 2.0);
}

}  // namespace detail

// || |f|^{p0} ||_{p/p0}^{1/p0} with p0 = p_-/2 over the grid; exponents with
// p_- > 1 go straight to the Luxemburg norm.
inline NormResult quasi_norm(const SampledFunction& f, const ExponentField& p) {
  return detail::norm_from_samples(detail::magnitudes(f), detail::exponent_samples(p, f.grid), f.grid);
}

// Same with an explicit inner power 0 < p0 <= p_-.
inline NormResult quasi_norm(const SampledFunction& f, const ExponentField& p, double p0) {
  return detail::quasi_from_samples(detail::magnitudes(f), detail::exponent_samples(p, f.grid), f.grid, p0);
}

// Luxemburg norm when p_- >= 1, quasi-norm otherwise.
inline NormResult lp_norm(const SampledFunction& f, const ExponentField& p) { return quasi_norm(f, p); }

// ||f||_{L^{p(.)}(w^{p(.)})}, realized as ||f w||_{p(.)}.
inline NormResult weighted_norm(const SampledFunction& f, const ExponentField& p, const PowerWeight& w) {
  return detail::norm_from_samples(detail::weighted_magnitudes(f, w), detail::exponent_samples(p, f.grid),
                                   f.grid);
}

inline constexpr const char* kWeightedNormInterpretation = "||f||_{L^p(.)(w^p(.))} := ||f*w||_{L^p(.)}";

// ||f g||_{p3} / (||f||_{p1} ||g||_{p2}) for 1/p1 + 1/p2 = 1/p3 pointwise.
inline double holder_check(const SampledFunction& f, const SampledFunction& g, const ExponentField& p1,
                           const ExponentField& p2, const ExponentField& p3) {
  f.require_same(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Point x = f.grid.point(i);
    if (std::abs(1.0 / p1(x) + 1.0 / p2(x) - 1.0 / p3(x)) > 1e-10) {
      throw std::invalid_argument("holder_check: exponents violate 1/p1 + 1/p2 = 1/p3");
    }
  }
  const double den = lp_norm(f, p1).value * lp_norm(g, p2).value;
  if (den == 0.0) throw std::domain_error("holder_check: zero denominator");
  return lp_norm(f * g, p3).value / den;
}

}  // namespace vlm

#endif  // VLMULT_NORMS_HPP
