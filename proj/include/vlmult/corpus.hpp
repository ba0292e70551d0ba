#ifndef VLMULT_CORPUS_HPP
#define VLMULT_CORPUS_HPP

// Seeded random inputs: band-limited trigonometric polynomials and symbols.

#include "vlmult/grid.hpp"
#include "vlmult/symbol.hpp"

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace vlm {

// f(x) = (2L)^{-n} sum_k F_k e^{2 pi i <k, x> / (2L)} with finitely many k;
// realizable exactly on any grid of the same L whose band contains every k.
struct BandLimited {
  struct Mode {
    std::array<int, 2> k;
    Complex coeff;  // spectrum value F_k
  };
  int dim = 1;
  double half_width = 1.0;
  int kmax = 0;
  std::vector<Mode> modes;

  SampledFunction realize(const GridSpec& g) const {
    if (g.dim() != dim || g.half_width() != half_width) throw std::invalid_argument("BandLimited: grid mismatch");
    if (kmax > g.samples() / 2 - 1) throw std::invalid_argument("BandLimited: band exceeds grid");
    Spectrum spec(g);
    const int n = g.samples();
    for (const auto& m : modes) {
      const std::size_t a = static_cast<std::size_t>(m.k[0] + n / 2);
      const std::size_t idx = dim == 1 ? a : a * n + static_cast<std::size_t>(m.k[1] + n / 2);
      spec[idx] += m.coeff;
    }
    return inverse_transform(spec);
  }

  // Largest |xi| present.
  double band_edge() const { return kmax / (2.0 * half_width); }
};

inline int default_band(const GridSpec& g) { return g.samples() / 4 - 1; }

// Complex normal coefficients on |k_c| <= kmax, scaled to unit RMS modulus.
// With `real` set the coefficients are Hermitian so f is real-valued.
inline BandLimited random_band_limited(const GridSpec& g, std::mt19937_64& rng, int kmax = -1, bool real = false) {
  if (kmax < 0) kmax = default_band(g);
  if (kmax > g.samples() / 2 - 1) throw std::invalid_argument("random_band_limited: band exceeds grid");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  BandLimited out;
  out.dim = g.dim();
  out.half_width = g.half_width();
  out.kmax = kmax;
  const int span = 2 * kmax + 1;
  const int count = g.dim() == 1 ? span : span * span;
  const double scale = 2.0 * g.half_width() / std::sqrt(static_cast<double>(count));
  const double vol = std::pow(2.0 * g.half_width(), g.dim() - 1);
  for (int a = -kmax; a <= kmax; ++a) {
    for (int b = g.dim() == 1 ? 0 : -kmax; b <= (g.dim() == 1 ? 0 : kmax); ++b) {
      const double re = normal(rng), im = normal(rng);
      out.modes.push_back({{a, b}, Complex(re, im) * scale * vol});
    }
  }
  if (real) {
    // F_{-k} = conj(F_k); keep the first half and mirror it
    const std::size_t m = out.modes.size();
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = m - 1 - i;
      if (i < j) {
        out.modes[j].coeff = std::conj(out.modes[i].coeff);
      } else if (i == j) {
        out.modes[i].coeff = out.modes[i].coeff.real() * std::sqrt(2.0);
      }
    }
  }
  return out;
}

inline SampledFunction random_function(const GridSpec& g, std::mt19937_64& rng, bool real = false) {
  return random_band_limited(g, rng, -1, real).realize(g);
}

// True when every spectral value outside |k_c| <= kmax is below tol relative
// to the largest one.
inline bool spectrum_confined(const SampledFunction& f, int kmax, double tol = 1e-12) {
  const Spectrum s = forward_transform(f);
  double inside = 0.0, outside = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto idx = s.grid.index(i);
    bool in = true;
    for (int c = 0; c < s.grid.dim(); ++c) in = in && std::abs(s.grid.wavenumber(idx[c])) <= kmax;
    (in ? inside : outside) = std::max(in ? inside : outside, std::abs(s[i]));
  }
  return outside <= tol * std::max(inside, 1e-300);
}

// A random arity-2 symbol drawn from the closed-form families (one dimension).
inline Symbol random_bilinear_symbol(std::mt19937_64& rng, double band) {
  std::uniform_int_distribution<int> pick(0, 5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto scale = [&] { return band * (0.25 + 1.5 * unit(rng)); };
  switch (pick(rng)) {
    case 0:
      return Symbol::gaussian(scale(), 2);
    case 1:
      return Symbol::coifman_meyer(2.0 * unit(rng) - 1.0, 2);
    case 2:
      return Symbol::difference(Symbol::gaussian(scale(), 1));
    case 3:
      return Symbol::tensor({Symbol::gaussian(scale(), 1), Symbol::coifman_meyer(0.0, 1)});
    case 4:
      return Symbol::modulated_difference(Symbol::gaussian(scale(), 1), Symbol::gaussian(scale(), 1));
    default:
      return Symbol::product({Symbol::constant(Complex(unit(rng), unit(rng)), 2), Symbol::gaussian(scale(), 2)});
  }
}

// A random arity-1 symbol (one dimension).
inline Symbol random_linear_symbol(std::mt19937_64& rng, double band) {
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (pick(rng)) {
    case 0:
      return Symbol::gaussian(band * (0.25 + 1.5 * unit(rng)), 1);
    case 1:
      return Symbol::hilbert();
    case 2: {
      const double a = -band * unit(rng), b = band * unit(rng);
      return Symbol::indicator({a}, {b}, 1);
    }
    default:
      return Symbol::translate(Symbol::gaussian(band * (0.5 + unit(rng)), 1), {band * (unit(rng) - 0.5)});
  }
}

}  // namespace vlm

#endif  // VLMULT_CORPUS_HPP
