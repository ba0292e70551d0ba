#ifndef VLMULT_GRID_HPP
#define VLMULT_GRID_HPP

// Uniform periodic grids on [-L, L]^n (n = 1, 2) with half-offset nodes,
// sampled functions, their spectra and the h^n-scaled discrete transforms.

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vlm {

using Complex = std::complex<double>;

// Coordinates of a point in R^n; unused trailing components are zero.
using Point = std::array<double, 2>;

class GridSpec {
 public:
  GridSpec(int dim, double half_width, int samples)
      : dim_(dim), half_width_(half_width), samples_(samples) {
    if (dim != 1 && dim != 2) {
      throw std::invalid_argument("GridSpec: dimension must be 1 or 2");
    }
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
      throw std::invalid_argument("GridSpec: half-width must be positive");
    }
    if (samples < 16 || (samples & (samples - 1)) != 0) {
      throw std::invalid_argument("GridSpec: samples per axis must be a power of two >= 16");
    }
  }

  int dim() const { return dim_; }
  double half_width() const { return half_width_; }
  int samples() const { return samples_; }

  double spacing() const { return 2.0 * half_width_ / samples_; }
  double freq_spacing() const { return 0.5 / half_width_; }
  double cell_volume() const { return std::pow(spacing(), dim_); }
  double freq_cell_volume() const { return std::pow(freq_spacing(), dim_); }
  double volume() const { return std::pow(2.0 * half_width_, dim_); }
  // Largest |xi| on the frequency grid (attained only at the negative end).
  double nyquist() const { return samples_ * 0.25 / half_width_; }

  std::size_t size() const {
    return dim_ == 1 ? static_cast<std::size_t>(samples_)
                     : static_cast<std::size_t>(samples_) * samples_;
  }

  // x_j = -L + (j + 1/2) h
  double node(int j) const { return -half_width_ + (j + 0.5) * spacing(); }

  // Centered frequency index i in [0, N) maps to k = i - N/2 and xi = k / (2L).
  int wavenumber(int i) const { return i - samples_ / 2; }
  double freq(int i) const { return wavenumber(i) * freq_spacing(); }

  std::array<int, 2> index(std::size_t flat) const {
    if (dim_ == 1) return {static_cast<int>(flat), 0};
    return {static_cast<int>(flat / samples_), static_cast<int>(flat % samples_)};
  }

  Point point(std::size_t flat) const {
    auto [a, b] = index(flat);
    return dim_ == 1 ? Point{node(a), 0.0} : Point{node(a), node(b)};
  }

  Point freq_point(std::size_t flat) const {
    auto [a, b] = index(flat);
    return dim_ == 1 ? Point{freq(a), 0.0} : Point{freq(a), freq(b)};
  }

  // True when `xi` (one axis) is a frequency node representable on this grid.
  bool is_freq_node(double xi) const {
    double k = xi / freq_spacing();
    return std::abs(k - std::round(k)) < 1e-9 && std::round(k) >= -samples_ / 2 &&
           std::round(k) < samples_ / 2;
  }

  // Index of the node closest to x along one axis.
  int nearest_node(double x) const {
    int j = static_cast<int>(std::floor((x + half_width_) / spacing()));
    return std::clamp(j, 0, samples_ - 1);
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int dim_;
  double half_width_;
  int samples_;
};

inline std::string describe(const GridSpec& g) {
  return "n=" + std::to_string(g.dim()) + " L=" + std::to_string(g.half_width()) +
         " N=" + std::to_string(g.samples());
}

inline double norm2(const Point& p) { return std::sqrt(p[0] * p[0] + p[1] * p[1]); }

namespace detail {

template <class Tag>
struct GridArray {
  GridSpec grid;
  std::vector<Complex> values;

  GridArray(GridSpec g, std::vector<Complex> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size()) {
      throw std::invalid_argument("sample count does not match grid size");
    }
  }
  explicit GridArray(GridSpec g) : grid(g), values(g.size(), Complex{}) {}

  std::size_t size() const { return values.size(); }
  Complex& operator[](std::size_t i) { return values[i]; }
  const Complex& operator[](std::size_t i) const { return values[i]; }

  GridArray& operator+=(const GridArray& o) {
    require_same(o);
    for (std::size_t i = 0; i < size(); ++i) values[i] += o.values[i];
    return *this;
  }
  GridArray& operator-=(const GridArray& o) {
    require_same(o);
    for (std::size_t i = 0; i < size(); ++i) values[i] -= o.values[i];
    return *this;
  }
  GridArray& operator*=(const GridArray& o) {
    require_same(o);
    for (std::size_t i = 0; i < size(); ++i) values[i] *= o.values[i];
    return *this;
  }
  GridArray& operator*=(Complex c) {
    for (auto& v : values) v *= c;
    return *this;
  }

  friend GridArray operator+(GridArray a, const GridArray& b) { return a += b; }
  friend GridArray operator-(GridArray a, const GridArray& b) { return a -= b; }
  friend GridArray operator*(GridArray a, const GridArray& b) { return a *= b; }
  friend GridArray operator*(Complex c, GridArray a) { return a *= c; }
  friend GridArray operator*(GridArray a, Complex c) { return a *= c; }

  void require_same(const GridArray& o) const {
    if (!(grid == o.grid)) throw std::invalid_argument("grid mismatch");
  }
};

struct SpatialTag {};
struct FrequencyTag {};

}  // namespace detail

// Samples at the x-nodes.
using SampledFunction = detail::GridArray<detail::SpatialTag>;
// Samples at the centered frequency nodes.
using Spectrum = detail::GridArray<detail::FrequencyTag>;

template <class F>
SampledFunction sample(const GridSpec& g, F&& fn) {
  SampledFunction out(g);
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = Complex(fn(g.point(i)));
  return out;
}

template <class F>
Spectrum sample_spectrum(const GridSpec& g, F&& fn) {
  Spectrum out(g);
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = Complex(fn(g.freq_point(i)));
  return out;
}

template <class Array>
double max_abs(const Array& a) {
  double m = 0.0;
  for (const auto& v : a.values) m = std::max(m, std::abs(v));
  return m;
}

template <class Array>
double max_abs_diff(const Array& a, const Array& b) {
  a.require_same(b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline SampledFunction abs(const SampledFunction& f) {
  SampledFunction out(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::abs(f[i]);
  return out;
}

namespace detail {

// e^{i pi k (1 - 1/N)} for k = i - N/2, the factor relating the half-offset
// transform to a plain DFT of the (-1)^j-modulated samples.
inline std::vector<Complex> axis_phase(int n_samples) {
  std::vector<Complex> phase(n_samples);
  const long long two_n = 2LL * n_samples;
  for (int i = 0; i < n_samples; ++i) {
    long long k = i - n_samples / 2;
    long long r = ((k * (n_samples - 1)) % two_n + two_n) % two_n;
    phase[i] = std::polar(1.0, std::numbers::pi * static_cast<double>(r) / n_samples);
  }
  return phase;
}

inline void run_fft(const GridSpec& g, std::vector<Complex>& data, int sign) {
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan = g.dim() == 1
                       ? fftw_plan_dft_1d(g.samples(), ptr, ptr, sign, FFTW_ESTIMATE)
                       : fftw_plan_dft_2d(g.samples(), g.samples(), ptr, ptr, sign, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

inline double alternating_sign(const GridSpec& g, std::size_t flat) {
  auto [a, b] = g.index(flat);
  return ((a + b) & 1) ? -1.0 : 1.0;
}

}  // namespace detail

// \hat f(xi_k) = h^n sum_j f(x_j) exp(-2 pi i <x_j, xi_k>), exactly.
inline Spectrum forward_transform(const SampledFunction& f) {
  const GridSpec& g = f.grid;
  std::vector<Complex> data(f.values);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= detail::alternating_sign(g, i);
  detail::run_fft(g, data, FFTW_FORWARD);
  const auto phase = detail::axis_phase(g.samples());
  const double scale = g.cell_volume();
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto [a, b] = g.index(i);
    Complex ph = g.dim() == 1 ? phase[a] : phase[a] * phase[b];
    data[i] *= ph * scale;
  }
  return Spectrum(g, std::move(data));
}

// f(x_j) = (2L)^{-n} sum_k F(xi_k) exp(2 pi i <x_j, xi_k>), exactly.
inline SampledFunction inverse_transform(const Spectrum& spec) {
  const GridSpec& g = spec.grid;
  std::vector<Complex> data(spec.values);
  const auto phase = detail::axis_phase(g.samples());
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto [a, b] = g.index(i);
    Complex ph = g.dim() == 1 ? phase[a] : phase[a] * phase[b];
    data[i] *= std::conj(ph);
  }
  detail::run_fft(g, data, FFTW_BACKWARD);
  const double scale = g.freq_cell_volume();
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= detail::alternating_sign(g, i) * scale;
  return SampledFunction(g, std::move(data));
}

// Midpoint-rule quadrature h^n sum f(x_j) over [-L, L]^n.
inline Complex integrate(const SampledFunction& f) {
  Complex s{};
  for (const auto& v : f.values) s += v;
  return s * f.grid.cell_volume();
}

// Frequency-side quadrature (2L)^{-n} sum F(xi_k).
inline Complex integrate(const Spectrum& f) {
  Complex s{};
  for (const auto& v : f.values) s += v;
  return s * f.grid.freq_cell_volume();
}

}  // namespace vlm

#endif  // VLMULT_GRID_HPP
