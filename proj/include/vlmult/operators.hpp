#ifndef VLMULT_OPERATORS_HPP
#define VLMULT_OPERATORS_HPP

// Fourier multiplier operators on the grid and analysis of their symbols.

#include "vlmult/grid.hpp"
#include "vlmult/symbol.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace vlm {

struct HormanderParams {
  double s;
  double r0;
  double r;
  double p0;
  double delta;
  int arity;
  int dim;

  // r0 = Nn/s and p0 = r r0 are derived; the remaining inequalities are checked.
  HormanderParams(double s_, double r_, double delta_, int arity_, int dim_)
      : s(s_), r0(arity_ * dim_ / s_), r(r_), p0(r_ * r0), delta(delta_), arity(arity_), dim(dim_) {
    const double nn = arity * dim;
    if (!(s > nn / 2.0 && s <= nn)) throw std::invalid_argument("HormanderParams: need Nn/2 < s <= Nn");
    const double r_cap = std::min(s > 1.0 ? s / (s - 1.0) : std::numeric_limits<double>::infinity(), 2.0 * s / nn);
    if (!(r > 1.0 && r < r_cap)) throw std::invalid_argument("HormanderParams: r out of range");
    if (!(delta > 0.0 && delta < p0 / arity)) throw std::invalid_argument("HormanderParams: delta out of range");
  }

  double r_upper() const {
    const double nn = arity * dim;
    return std::min(s > 1.0 ? s / (s - 1.0) : std::numeric_limits<double>::infinity(), 2.0 * s / nn);
  }
};

// (m f^)^v
inline SampledFunction apply_linear(const Symbol& m, const SampledFunction& f) {
  if (m.arity() != 1 || m.dim() != f.grid.dim()) throw std::invalid_argument("apply_linear: symbol shape mismatch");
  Spectrum spec = forward_transform(f);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const Point xi = f.grid.freq_point(i);
    spec[i] *= m(std::span<const double>(xi.data(), f.grid.dim()));
  }
  return inverse_transform(spec);
}

inline SampledFunction hilbert(const SampledFunction& f) {
  if (f.grid.dim() != 1) throw std::invalid_argument("hilbert: one dimension only");
  return apply_linear(Symbol::hilbert(), f);
}

// e^{2 pi i <a, x>} f(x); a must be a frequency node so the product stays periodic.
inline SampledFunction modulate(const Point& a, const SampledFunction& f) {
  const GridSpec& g = f.grid;
  for (int c = 0; c < g.dim(); ++c) {
    if (!g.is_freq_node(a[c])) throw std::invalid_argument("modulate: frequency is not a grid node");
  }
  SampledFunction out(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point x = g.point(i);
    const double phase = 2.0 * std::numbers::pi * (a[0] * x[0] + a[1] * x[1]);
    out[i] = f[i] * std::polar(1.0, phase);
  }
  return out;
}
inline SampledFunction modulate(double a, const SampledFunction& f) { return modulate(Point{a, 0.0}, f); }

// (f^ chi_[a,b])^v with chi = 1/2 at the endpoints.
inline SampledFunction bandlimit(double a, double b, const SampledFunction& f) {
  if (f.grid.dim() != 1) throw std::invalid_argument("bandlimit: one dimension only");
  if (!(a < b)) throw std::invalid_argument("bandlimit: need a < b");
  return apply_linear(Symbol::indicator({a}, {b}, 1), f);
}

// The same projection as (i/2)(M^a H M^{-a} - M^b H M^{-b}) f.
inline SampledFunction bandlimit_hilbert(double a, double b, const SampledFunction& f) {
  if (!(a < b)) throw std::invalid_argument("bandlimit: need a < b");
  auto conj_h = [&](double c) { return modulate(c, hilbert(modulate(-c, f))); };
  return Complex(0.0, 0.5) * (conj_h(a) - conj_h(b));
}

namespace detail {

// Folds a summed wavenumber into [-N/2, N/2); each full period crossed flips
// the sign because the half-offset transform is anti-periodic in k.
inline std::pair<int, double> wrap_bin(int q, int n) {
  const int shifted = q + n / 2;
  const int wraps = shifted >= 0 ? shifted / n : -((-shifted + n - 1) / n);
  const int folded = shifted - wraps * n;
  return {folded, (wraps & 1) ? -1.0 : 1.0};
}

inline SampledFunction accumulate_multilinear(const Symbol& m, const std::vector<SampledFunction>& fs) {
  const GridSpec& g = fs.front().grid;
  for (const auto& f : fs) fs.front().require_same(f);
  const int arity = static_cast<int>(fs.size());
  const int dim = g.dim();
  const int n = g.samples();
  if (m.arity() != arity || m.dim() != dim) throw std::invalid_argument("multilinear: symbol shape mismatch");

  std::vector<Spectrum> specs;
  specs.reserve(fs.size());
  for (const auto& f : fs) specs.push_back(forward_transform(f));

  Spectrum acc(g);
  std::array<double, 6> zeta{};
  const std::span<const double> zspan(zeta.data(), static_cast<std::size_t>(arity * dim));
  const std::size_t total = g.size();

  if (arity == 2) {
    for (std::size_t i = 0; i < total; ++i) {
      const Complex fi = specs[0][i];
      if (fi == Complex{}) continue;
      const auto ki = g.index(i);
      for (int c = 0; c < dim; ++c) zeta[c] = g.freq(ki[c]);
      for (std::size_t j = 0; j < total; ++j) {
        const Complex gj = specs[1][j];
        if (gj == Complex{}) continue;
        const auto kj = g.index(j);
        double sign = 1.0;
        std::array<int, 2> bin{};
        for (int c = 0; c < dim; ++c) {
          zeta[dim + c] = g.freq(kj[c]);
          auto [b, s] = wrap_bin(g.wavenumber(ki[c]) + g.wavenumber(kj[c]), n);
          bin[c] = b;
          sign *= s;
        }
        const std::size_t out = dim == 1 ? bin[0] : static_cast<std::size_t>(bin[0]) * n + bin[1];
        acc[out] += sign * fi * gj * m(zspan);
      }
    }
  } else {
    // arity 3, one dimension
    for (std::size_t i = 0; i < total; ++i) {
      const Complex fi = specs[0][i];
      if (fi == Complex{}) continue;
      zeta[0] = g.freq(static_cast<int>(i));
      for (std::size_t j = 0; j < total; ++j) {
        const Complex fij = fi * specs[1][j];
        if (fij == Complex{}) continue;
        zeta[1] = g.freq(static_cast<int>(j));
        for (std::size_t k = 0; k < total; ++k) {
          const Complex fk = specs[2][k];
          if (fk == Complex{}) continue;
          zeta[2] = g.freq(static_cast<int>(k));
          auto [b, s] = wrap_bin(g.wavenumber(static_cast<int>(i)) + g.wavenumber(static_cast<int>(j)) +
                                     g.wavenumber(static_cast<int>(k)),
                                 n);
          acc[b] += s * fij * fk * m(zspan);
        }
      }
    }
  }
  acc *= std::pow(g.freq_cell_volume(), arity - 1);
  return inverse_transform(acc);
}

}  // namespace detail

// B_m(f, g): double sum over frequency node pairs binned by xi + eta.
inline SampledFunction apply_bilinear(const Symbol& m, const SampledFunction& f, const SampledFunction& g) {
  return detail::accumulate_multilinear(m, {f, g});
}

inline constexpr int kMaxTrilinearSamples = 64;

// T_m(f_1, ..., f_N) for N <= 3; the trilinear case is one-dimensional only.
inline SampledFunction apply_nlinear(const Symbol& m, const std::vector<SampledFunction>& fs) {
  if (fs.empty() || fs.size() > 3) throw std::invalid_argument("apply_nlinear: need 1..3 inputs");
  if (fs.size() == 1) return apply_linear(m, fs.front());
  if (fs.size() == 3) {
    if (fs.front().grid.dim() != 1) throw std::invalid_argument("apply_nlinear: trilinear needs n = 1");
    if (fs.front().grid.samples() > kMaxTrilinearSamples) {
      throw std::length_error("apply_nlinear: trilinear grid exceeds 64 samples");
    }
  }
  return detail::accumulate_multilinear(m, fs);
}

// G_lambda with spectrum e^{-2 lambda^2 |xi|^2}.
inline SampledFunction gaussian_G(double lambda, const GridSpec& g) {
  if (!(lambda > 0.0)) throw std::invalid_argument("gaussian_G: lambda must be positive");
  const double c = 2.0 * lambda * lambda;
  return inverse_transform(sample_spectrum(g, [&](const Point& xi) { return std::exp(-c * (xi[0] * xi[0] + xi[1] * xi[1])); }));
}

// Closed form (pi/2)^{n/2} lambda^{-n} e^{-(pi^2/2)|x/lambda|^2}.
inline double gaussian_G_exact(double lambda, const Point& x, int dim) {
  const double r2 = (x[0] * x[0] + x[1] * x[1]) / (lambda * lambda);
  return std::pow(std::numbers::pi / 2.0, dim / 2.0) * std::pow(lambda, -dim) *
         std::exp(-0.5 * std::numbers::pi * std::numbers::pi * r2);
}

struct GaussianTails {
  double spectral;  // e^{-2 lambda^2 xi_max^2}
  double spatial;   // relative size at |x| = L
  bool ok() const { return spectral <= 1e-12 && spatial <= 1e-12; }
};

inline GaussianTails gaussian_tails(double lambda, const GridSpec& g) {
  const double xi = g.nyquist();
  const double l = g.half_width() / lambda;
  return {std::exp(-2.0 * lambda * lambda * xi * xi), std::exp(-0.5 * std::numbers::pi * std::numbers::pi * l * l)};
}

enum class AnnulusCutoff { sharp, smooth };

struct HormanderOptions {
  AnnulusCutoff cutoff = AnnulusCutoff::sharp;
  int samples = 0;       // per axis on [-4, 4]^{Nn}; 0 picks 512 (Nn = 1) or 128 (Nn = 2)
  int sweep_count = 25;  // R = 2^t, t evenly spaced in [-6, 6]
};

struct HormanderReport {
  double sup = 0.0;
  std::vector<std::pair<double, double>> table;  // (R, H^s norm)
};

inline std::vector<double> log_sweep(double lo_exp2, double hi_exp2, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? lo_exp2 : lo_exp2 + (hi_exp2 - lo_exp2) * i / (count - 1);
    out.push_back(std::exp2(t));
  }
  return out;
}

inline double annulus_cutoff(double r, AnnulusCutoff kind) {
  if (kind == AnnulusCutoff::sharp) return (r > 1.0 && r < 2.0) ? 1.0 : 0.0;
  if (!(r > 1.0 && r < 2.0)) return 0.0;
  return std::exp(4.0 - 1.0 / ((r - 1.0) * (2.0 - r)));
}

// H^s norm of m(R .) times the annulus cutoff, for each R in the sweep.
inline HormanderReport hormander_sobolev_norm(const Symbol& m, double s, const std::vector<double>& radii,
                                             const HormanderOptions& opt = {}) {
  const int nn = static_cast<int>(m.width());
  if (nn > 2) throw std::invalid_argument("hormander_sobolev_norm: needs Nn <= 2");
  const int samples = opt.samples > 0 ? opt.samples : (nn == 1 ? 512 : 128);
  const GridSpec g(nn, 4.0, samples);
  HormanderReport rep;
  for (double radius : radii) {
    SampledFunction cut = sample(g, [&](const Point& z) {
      const double r = norm2(z);
      const double w = annulus_cutoff(r, opt.cutoff);
      if (w == 0.0) return Complex{};
      const Point scaled{radius * z[0], radius * z[1]};
      return w * m(std::span<const double>(scaled.data(), nn));
    });
    const Spectrum spec = forward_transform(cut);
    double acc = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      const Point w = g.freq_point(i);
      acc += std::pow(1.0 + w[0] * w[0] + w[1] * w[1], s) * std::norm(spec[i]);
    }
    const double value = std::sqrt(acc * g.freq_cell_volume());
    rep.table.emplace_back(radius, value);
    rep.sup = std::max(rep.sup, value);
  }
  return rep;
}

inline HormanderReport hormander_sobolev_norm(const Symbol& m, double s, const HormanderOptions& opt = {}) {
  return hormander_sobolev_norm(m, s, log_sweep(-6.0, 6.0, opt.sweep_count), opt);
}

struct KernelReport {
  double c1 = 0.0;               // sup |K(x)| |x|
  double c2 = 0.0;               // sup |K'(x)| |x|^2
  double c3 = 0.0;               // sup over ladder pairs r < R of |int_{r<|x|<R} K|
  double c3_inner = 0.0;         // same sup on the middle half of the log ladder
  bool truncated_bounded = false;
  double limit_estimate = 0.0;   // int_{eps<|x|<1} K at the smallest eps
  std::vector<double> increments;
  bool limit_exists = false;
};

// One-dimensional checks of the standard-kernel size, smoothness and
// cancellation conditions over r_min <= |x| <= r_max.
inline KernelReport standard_kernel_check(const std::function<double(double)>& kernel, double r_min = std::exp2(-30.0),
                                          double r_max = std::exp2(30.0)) {
  if (!(r_min > 0.0 && r_max > r_min)) throw std::invalid_argument("standard_kernel_check: bad range");
  KernelReport rep;

  const int pts = 4001;
  const double lr0 = std::log(r_min), lr1 = std::log(r_max);
  for (int i = 0; i < pts; ++i) {
    const double r = std::exp(lr0 + (lr1 - lr0) * i / (pts - 1));
    for (double x : {r, -r}) {
      rep.c1 = std::max(rep.c1, std::abs(kernel(x)) * r);
      const double d = 1e-5 * r;
      const double deriv = (kernel(x + d) - kernel(x - d)) / (2.0 * d);
      rep.c2 = std::max(rep.c2, std::abs(deriv) * r * r);
    }
  }

  // x = e^t so every dyadic segment has the same length in t
  auto segment = [&](double a, double b) {
    auto even = [&](double t) {
      const double x = std::exp(t);
      return (kernel(x) + kernel(-x)) * x;
    };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(even, std::log(a), std::log(b), 10, 1e-13);
  };

  std::vector<double> segs;
  for (double a = r_min; a * 2.0 <= r_max * (1.0 + 1e-12); a *= 2.0) segs.push_back(segment(a, 2.0 * a));
  auto sup_partial = [&](std::size_t lo, std::size_t hi) {
    double best = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      double run = 0.0;
      for (std::size_t j = i; j < hi; ++j) {
        run += segs[j];
        best = std::max(best, std::abs(run));
      }
    }
    return best;
  };
  rep.c3 = sup_partial(0, segs.size());
  rep.c3_inner = sup_partial(segs.size() / 4, segs.size() - segs.size() / 4);
  rep.truncated_bounded = rep.c3 <= 1.25 * rep.c3_inner + 1e-12;

  double total = 0.0;
  for (double eps = 0.5; eps >= r_min * (1.0 - 1e-12); eps *= 0.5) {
    const double inc = segment(eps, 2.0 * eps);
    total += inc;
    rep.increments.push_back(std::abs(inc));
  }
  rep.limit_estimate = total;
  const auto& inc = rep.increments;
  const double scale = std::max(1.0, std::abs(total));
  if (!inc.empty() && inc.back() <= 1e-8 * scale) {
    rep.limit_exists = true;
  } else if (inc.size() >= 4) {
    bool shrinking = true;
    for (std::size_t i = inc.size() - 3; i < inc.size(); ++i) shrinking = shrinking && inc[i] <= 0.75 * inc[i - 1];
    rep.limit_exists = shrinking;
  }
  return rep;
}

}  // namespace vlm

#endif  // VLMULT_OPERATORS_HPP
