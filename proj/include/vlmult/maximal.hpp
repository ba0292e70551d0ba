#ifndef VLMULT_MAXIMAL_HPP
#define VLMULT_MAXIMAL_HPP

// Hardy-Littlewood, sharp, delta-power and multilinear maximal functions as
// sups over the exhaustive grid-aligned cube family.

#include "vlmult/cubes.hpp"
#include "vlmult/grid.hpp"
#include "vlmult/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace vlm {

namespace detail {

inline SampledFunction from_real(const GridSpec& g, const std::vector<double>& v) {
  SampledFunction out(g);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

inline std::vector<double> abs_power(const SampledFunction& f, double p) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = p == 1.0 ? std::abs(f[i]) : std::pow(std::abs(f[i]), p);
  return out;
}

// Real parts when f is real, |f| otherwise.
inline std::vector<double> real_view(const SampledFunction& f) {
  const bool real = std::all_of(f.values.begin(), f.values.end(), [](const Complex& v) { return v.imag() == 0.0; });
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = real ? f[i].real() : std::abs(f[i]);
  return out;
}

inline std::size_t node_of(const GridSpec& g, int a, int b) {
  return g.dim() == 1 ? static_cast<std::size_t>(a) : static_cast<std::size_t>(a) * g.samples() + b;
}

inline std::vector<double> hl_from_values(const GridSpec& g, const std::vector<double>& v) {
  const CubeFamily fam(g);
  const PrefixSums ps(g, v);
  return sup_over_containing_cubes(fam, [&](const Cube& q) {
    return q.side == 1 ? v[node_of(g, q.start[0], q.start[1])] : ps.mean(q);
  });
}

inline std::vector<double> sharp_from_values(const GridSpec& g, const std::vector<double>& v) {
  const CubeFamily fam(g);
  std::vector<double> buf;
  return sup_over_containing_cubes(fam, [&](const Cube& q) {
    if (q.side == 1) return 0.0;
    buf.clear();
    const int b_side = g.dim() == 1 ? 1 : q.side;
    for (int a = 0; a < q.side; ++a) {
      for (int b = 0; b < b_side; ++b) buf.push_back(v[node_of(g, q.start[0] + a, q.start[1] + b)]);
    }
    std::vector<double> work(buf);
    auto mid = work.begin() + static_cast<std::ptrdiff_t>((work.size() - 1) / 2);
    std::nth_element(work.begin(), mid, work.end());
    const double med = *mid;
    double acc = 0.0;
    for (double x : buf) acc += std::abs(x - med);
    return acc / static_cast<double>(buf.size());
  });
}

}  // namespace detail

// sup over cubes Q containing x of the average of |f| over Q.
inline SampledFunction hl_maximal(const SampledFunction& f) {
  return detail::from_real(f.grid, detail::hl_from_values(f.grid, detail::abs_power(f, 1.0)));
}

// sup over cubes Q containing x of the mean deviation from the median on Q.
inline SampledFunction sharp_maximal(const SampledFunction& f) {
  return detail::from_real(f.grid, detail::sharp_from_values(f.grid, detail::real_view(f)));
}

inline SampledFunction m_delta(const SampledFunction& f, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("m_delta: delta must be positive");
  auto v = detail::hl_from_values(f.grid, detail::abs_power(f, delta));
  for (auto& x : v) x = std::pow(x, 1.0 / delta);
  return detail::from_real(f.grid, v);
}

inline SampledFunction m_delta_sharp(const SampledFunction& f, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("m_delta_sharp: delta must be positive");
  auto v = detail::sharp_from_values(f.grid, detail::abs_power(f, delta));
  for (auto& x : v) x = std::pow(x, 1.0 / delta);
  return detail::from_real(f.grid, v);
}

// sup over a common cube Q containing x of prod_i (avg_Q |f_i|^{p0})^{1/p0}.
inline SampledFunction multilinear_maximal(const std::vector<SampledFunction>& fs, double p0) {
  if (fs.empty()) throw std::invalid_argument("multilinear_maximal: no inputs");
  if (!(p0 >= 1.0)) throw std::invalid_argument("multilinear_maximal: p0 must be >= 1");
  const GridSpec& g = fs.front().grid;
  std::vector<std::vector<double>> powers;
  std::vector<PrefixSums> sums;
  for (const auto& f : fs) {
    fs.front().require_same(f);
    powers.push_back(detail::abs_power(f, p0));
  }
  for (const auto& p : powers) sums.emplace_back(g, p);
  const CubeFamily fam(g);
  auto v = sup_over_containing_cubes(fam, [&](const Cube& q) {
    double prod = 1.0;
    for (std::size_t i = 0; i < sums.size(); ++i) {
      const double avg = q.side == 1 ? powers[i][detail::node_of(g, q.start[0], q.start[1])] : sums[i].mean(q);
      prod *= std::pow(std::max(avg, 0.0), 1.0 / p0);
    }
    return prod;
  });
  return detail::from_real(g, v);
}

// int (M_delta f)^q w / int (M_delta^# f)^q w
inline double fefferman_stein_ratio(const SampledFunction& f, double delta, double q, const PowerWeight& w = {}) {
  if (!(delta > 0.0 && delta < q)) throw std::invalid_argument("fefferman_stein_ratio: need 0 < delta < q");
  const auto top = m_delta(f, delta);
  const auto bottom = m_delta_sharp(f, delta);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double wx = w(f.grid.point(i));
    num += std::pow(top[i].real(), q) * wx;
    den += std::pow(bottom[i].real(), q) * wx;
  }
  if (den == 0.0) throw std::domain_error("fefferman_stein_ratio: sharp side vanishes");
  return num / den;
}

}  // namespace vlm

#endif  // VLMULT_MAXIMAL_HPP
