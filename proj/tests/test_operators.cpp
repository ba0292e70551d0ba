#include "vlmult/corpus.hpp"
#include "vlmult/operators.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace vlm;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Literal evaluation of T_m at every x-node: (2L)^{-Nn} sum over all frequency
// tuples of prod F_i(xi_i) m(xi) e^{2 pi i <sum xi_i, x>}.
SampledFunction brute_force(const Symbol& m, const std::vector<SampledFunction>& fs) {
  const GridSpec& g = fs.front().grid;
  const int dim = g.dim();
  std::vector<Spectrum> specs;
  for (const auto& f : fs) specs.push_back(forward_transform(f));
  const std::size_t total = g.size();
  const std::size_t tuples = static_cast<std::size_t>(std::pow(total, fs.size()));
  SampledFunction out(g);
  for (std::size_t j = 0; j < total; ++j) {
    const Point x = g.point(j);
    Complex acc{};
    for (std::size_t t = 0; t < tuples; ++t) {
      std::size_t rest = t;
      std::array<double, 6> zeta{};
      Complex prod{1.0, 0.0};
      double phase = 0.0;
      for (std::size_t i = 0; i < fs.size(); ++i) {
        const std::size_t idx = rest % total;
        rest /= total;
        const Point xi = g.freq_point(idx);
        for (int c = 0; c < dim; ++c) zeta[i * dim + c] = xi[c];
        prod *= specs[i][idx];
        phase += xi[0] * x[0] + xi[1] * x[1];
      }
      acc += prod * m(std::span<const double>(zeta.data(), fs.size() * dim)) * std::polar(1.0, 2.0 * kPi * phase);
    }
    out[j] = acc * std::pow(g.freq_cell_volume(), static_cast<double>(fs.size()));
  }
  return out;
}

SampledFunction noise(const GridSpec& g, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  SampledFunction f(g);
  for (auto& v : f.values) v = Complex(nd(rng), nd(rng));
  return f;
}

}  // namespace

TEST_CASE("symbols") {
  CHECK(Symbol::coifman_meyer(0.5, 2)({0.0, 0.0}) == Complex(0.0));
  CHECK(Symbol::coifman_meyer(0.5, 2)({1.0, 1.0}).real() == Approx(0.75));
  CHECK(Symbol::indicator({-1.0}, {1.0}, 1)({1.0}).real() == 0.5);
  CHECK(Symbol::indicator({-1.0}, {1.0}, 1)({0.0}).real() == 1.0);
  CHECK(Symbol::indicator({0.0}, {0.0}, 1)({0.0}).real() == 1.0);
  CHECK(Symbol::indicator({0.0}, {0.0}, 1)({0.1}).real() == 0.0);
  CHECK(Symbol::hilbert()({-2.0}) == Complex(0.0, 1.0));
  CHECK(Symbol::hilbert()({0.0}) == Complex(0.0));
  auto t = Symbol::translate(Symbol::gaussian(1.0, 1), {0.5});
  CHECK(t({-1.0}).real() == Approx(1.0));
  auto d = Symbol::difference(Symbol::gaussian(2.0, 1));
  CHECK(d({1.5, 1.5}).real() == Approx(1.0));
  CHECK_THROWS(Symbol::difference(d));
  CHECK_THROWS(Symbol::tensor({d}));
  CHECK_THROWS(Symbol::gaussian(1.0, 1)({1.0, 2.0}));

  GaussianBump phi{0.7, 1};
  // transform of phi at xi is exp(-pi s^2 xi^2)
  CHECK(phi.transform()({0.9}).real() == Approx(std::exp(-kPi * 0.49 * 0.81)));
}

TEST_CASE("apply_linear and hilbert") {
  GridSpec g(1, 4.0, 64);
  std::mt19937_64 rng(1);
  auto f = random_function(g, rng);
  CHECK(max_abs_diff(apply_linear(Symbol::constant(1.0, 1), f), f) < 1e-12);

  const double k = 5.0;
  auto c = sample(g, [&](const Point& x) { return std::cos(2.0 * kPi * k * x[0] / 8.0); });
  auto s = sample(g, [&](const Point& x) { return std::sin(2.0 * kPi * k * x[0] / 8.0); });
  CHECK(max_abs_diff(hilbert(c), s) < 1e-12);
  CHECK(max_abs(hilbert(sample(g, [](const Point&) { return 3.0; }))) < 1e-12);

  const Complex mean = integrate(f) / 8.0;
  auto centered = f;
  for (auto& v : centered.values) v -= mean;
  CHECK(max_abs_diff(hilbert(hilbert(f)), -1.0 * centered) < 1e-12);

  auto proj = apply_linear(Symbol::indicator({0.0}, {0.0}, 1), f);
  for (const auto& v : proj.values) CHECK(std::abs(v - mean) < 1e-12);
}

TEST_CASE("modulate") {
  GridSpec g(1, 4.0, 64);
  std::mt19937_64 rng(2);
  auto f = random_function(g, rng);
  CHECK(max_abs_diff(modulate(0.0, f), f) < 1e-15);
  const double a = 3.0 / 8.0;
  CHECK(max_abs_diff(modulate(a, modulate(-a, f)), f) < 1e-13);
  CHECK_THROWS(modulate(0.1, f));
  auto lhs = forward_transform(modulate(a, f));
  auto rhs = forward_transform(f);
  for (int i = 0; i < 64; ++i) {
    int src = i - 3;
    double sign = 1.0;
    if (src < 0) {
      src += 64;
      sign = -1.0;
    }
    CHECK(std::abs(lhs[i] - sign * rhs[src]) < 1e-12);
  }
}

TEST_CASE("bandlimit routes agree") {
  GridSpec g(1, 8.0, 128);
  std::mt19937_64 rng(3);
  const int kmax = default_band(g);
  std::uniform_int_distribution<int> pick(-kmax - 1, kmax + 1);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    auto f = random_function(g, rng);
    int a = pick(rng), b = pick(rng);
    if (a == b) ++b;
    if (a > b) std::swap(a, b);
    const double fa = a * g.freq_spacing(), fb = b * g.freq_spacing();
    worst = std::max(worst, max_abs_diff(bandlimit(fa, fb, f), bandlimit_hilbert(fa, fb, f)));
  }
  CHECK(worst < 1e-10);

  auto f = random_function(g, rng);
  const double edge = (kmax + 1) * g.freq_spacing();
  CHECK(max_abs_diff(bandlimit(-edge, edge, f), f) < 1e-12);
  CHECK(max_abs_diff(bandlimit_hilbert(-edge, edge, f), f) < 1e-12);
  auto mode = sample(g, [](const Point& x) { return std::polar(1.0, 2.0 * kPi * 0.5 * x[0]); });
  CHECK(max_abs_diff(bandlimit(0.25, 1.0, mode), mode) < 1e-12);
}

TEST_CASE("bilinear accumulation matches the literal sum") {
  std::mt19937_64 rng(4);
  GridSpec g(1, 2.0, 32);
  // full-spectrum inputs exercise the wrap-around bins
  auto f = noise(g, rng), h = noise(g, rng);
  for (const auto& m : {Symbol::difference(Symbol::gaussian(1.5, 1)), Symbol::coifman_meyer(0.3, 2),
                        Symbol::modulated_difference(Symbol::gaussian(2.0, 1), Symbol::hilbert()),
                        Symbol::indicator({-1.0, 0.0}, {2.0, 3.0}, 2)}) {
    auto fast = apply_bilinear(m, f, h);
    auto slow = brute_force(m, {f, h});
    CHECK(max_abs_diff(fast, slow) < 1e-11 * std::max(1.0, max_abs(slow)));
  }
  GridSpec g2(2, 2.0, 16);
  auto f2 = noise(g2, rng), h2 = noise(g2, rng);
  auto m2 = Symbol::coifman_meyer(-0.4, 2, 2);
  CHECK(max_abs_diff(apply_bilinear(m2, f2, h2), brute_force(m2, {f2, h2})) < 1e-10);
}

TEST_CASE("trilinear") {
  std::mt19937_64 rng(5);
  GridSpec g(1, 2.0, 16);
  auto a = noise(g, rng), b = noise(g, rng), c = noise(g, rng);
  auto prod = a * b * c;
  CHECK(max_abs_diff(apply_nlinear(Symbol::constant(1.0, 3), {a, b, c}), prod) < 1e-10 * max_abs(prod));
  auto id = Symbol::constant(1.0, 1);
  CHECK(max_abs_diff(apply_nlinear(Symbol::tensor({id, id, id}), {a, b, c}), prod) < 1e-10 * max_abs(prod));
  auto cm = Symbol::coifman_meyer(0.7, 3);
  auto fast = apply_nlinear(cm, {a, b, c});
  CHECK(max_abs_diff(fast, brute_force(cm, {a, b, c})) < 1e-11 * max_abs(fast));
  GridSpec big(1, 2.0, 128);
  auto z = SampledFunction(big);
  CHECK_THROWS_AS(apply_nlinear(cm, {z, z, z}), std::length_error);
}

TEST_CASE("bilinear identities") {
  std::mt19937_64 rng(6);
  GridSpec g(1, 8.0, 128);
  const double band = default_band(g) * g.freq_spacing();
  for (int t = 0; t < 10; ++t) {
    auto f = random_function(g, rng), h = random_function(g, rng);
    auto fg = f * h;
    CHECK(max_abs_diff(apply_bilinear(Symbol::constant(1.0, 2), f, h), fg) <= 1e-10 * max_abs(fg));

    auto m1 = random_linear_symbol(rng, band), m2 = random_linear_symbol(rng, band);
    auto sep = apply_bilinear(Symbol::tensor({m1, m2}), f, h);
    CHECK(max_abs_diff(sep, apply_linear(m1, f) * apply_linear(m2, h)) < 1e-10);

    auto m = random_bilinear_symbol(rng, band);
    auto lhs = apply_bilinear(Symbol::product({Symbol::tensor({m1, m2}), m}), f, h);
    auto rhs = apply_bilinear(m, apply_linear(m1, f), apply_linear(m2, h));
    CHECK(max_abs_diff(lhs, rhs) < 1e-10);

    const double y = 3.0 * g.freq_spacing();
    auto big_m = Symbol::gaussian(band * 0.7, 1);
    auto mt = apply_bilinear(Symbol::difference(big_m), modulate(y, f), modulate(-y, h));
    auto tm = apply_bilinear(Symbol::difference(Symbol::translate(big_m, {y})), f, h);
    CHECK(max_abs_diff(mt, tm) < 1e-10);
  }
  auto f = random_function(g, rng), h = random_function(g, rng);
  const double a = -5 * g.freq_spacing(), b = 7 * g.freq_spacing(), c = -2 * g.freq_spacing(), d = 9 * g.freq_spacing();
  auto local = apply_bilinear(Symbol::indicator({a, c}, {b, d}, 2), f, h);
  auto split = apply_bilinear(Symbol::constant(1.0, 2), bandlimit(a, b, f), bandlimit(c, d, h));
  CHECK(max_abs_diff(local, split) < 1e-12);
}

TEST_CASE("gaussian_G") {
  GridSpec g(1, 8.0, 256);
  auto g1 = gaussian_G(1.0, g);
  CHECK(gaussian_tails(1.0, g).ok());
  double at0 = 0.0;
  for (std::size_t j = 0; j < g1.size(); ++j) {
    const Point x = g.point(j);
    const double want = gaussian_G_exact(1.0, x, 1);
    if (want > 1e-8) CHECK(g1[j].real() == Approx(want).epsilon(1e-6));
  }
  // x = 0 is not a node; compare the peak through the spectral integral
  at0 = integrate(forward_transform(g1)).real();
  CHECK(at0 == Approx(std::sqrt(kPi / 2.0)).epsilon(1e-12));
  auto g2 = gaussian_G(2.0, GridSpec(1, 16.0, 256));
  CHECK(integrate(forward_transform(g2)).real() == Approx(0.5 * std::sqrt(kPi / 2.0)).epsilon(1e-12));
  auto spec = forward_transform(g1);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double xi = g.freq(static_cast<int>(i));
    CHECK(std::abs(spec[i] - std::exp(-2.0 * xi * xi)) < 1e-10);
  }
  CHECK_FALSE(gaussian_tails(0.1, g).ok());
  CHECK_FALSE(gaussian_tails(8.0, g).ok());
}

TEST_CASE("hormander sobolev norm") {
  HormanderOptions opt;
  opt.sweep_count = 9;
  auto flat = hormander_sobolev_norm(Symbol::constant(1.0, 1), 1.0, opt);
  auto [lo, hi] = std::minmax_element(flat.table.begin(), flat.table.end(),
                                      [](const auto& a, const auto& b) { return a.second < b.second; });
  CHECK(hi->second / lo->second - 1.0 < 1e-6);

  auto cm = hormander_sobolev_norm(Symbol::coifman_meyer(0.5, 2), 1.5, opt);
  double vmin = 1e300, vmax = 0.0;
  for (auto [r, v] : cm.table) {
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  CHECK(vmax / vmin - 1.0 < 1e-6);
  CHECK(std::isfinite(cm.sup));

  auto gauss = hormander_sobolev_norm(Symbol::gaussian(1.0, 1), 1.0, opt);
  for (std::size_t i = 1; i < gauss.table.size(); ++i) {
    if (gauss.table[i - 1].first >= 1.0 && gauss.table[i - 1].second > 0.0) {
      CHECK(gauss.table[i].second < gauss.table[i - 1].second);
    }
  }
  CHECK(gauss.sup == Approx(gauss.table.front().second));

  opt.cutoff = AnnulusCutoff::smooth;
  auto smooth = hormander_sobolev_norm(Symbol::constant(1.0, 1), 1.0, opt);
  CHECK(std::isfinite(smooth.sup));
  CHECK_THROWS(hormander_sobolev_norm(Symbol::constant(1.0, 3), 2.0, opt));
}

TEST_CASE("hormander params") {
  HormanderParams hp(1.5, 1.25, 0.5, 2, 1);
  CHECK(hp.r0 == Approx(4.0 / 3.0));
  CHECK(hp.p0 == Approx(5.0 / 3.0));
  CHECK_THROWS(HormanderParams(1.0, 1.25, 0.5, 2, 1));
  CHECK_THROWS(HormanderParams(1.5, 1.6, 0.5, 2, 1));
  CHECK_THROWS(HormanderParams(1.5, 1.25, 0.9, 2, 1));
}

TEST_CASE("standard kernel check") {
  auto hil = standard_kernel_check([](double x) { return 1.0 / (kPi * x); });
  CHECK(hil.c1 == Approx(1.0 / kPi).epsilon(1e-12));
  CHECK(hil.c2 == Approx(1.0 / kPi).epsilon(1e-6));
  CHECK(hil.c3 < 1e-12);
  CHECK(hil.truncated_bounded);
  CHECK(hil.limit_exists);
  CHECK(std::abs(hil.limit_estimate) < 1e-12);

  auto inv = standard_kernel_check([](double x) { return 1.0 / std::abs(x); });
  CHECK(inv.c1 == Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(inv.truncated_bounded);
  CHECK_FALSE(inv.limit_exists);
  CHECK(inv.c3 == Approx(2.0 * 60.0 * std::log(2.0)).epsilon(1e-8));

  auto smooth = standard_kernel_check([](double x) { return std::exp(-x * x); });
  CHECK(std::isfinite(smooth.c1));
  CHECK(std::isfinite(smooth.c2));
  CHECK(smooth.truncated_bounded);
  CHECK(smooth.limit_exists);
  CHECK(smooth.limit_estimate == Approx(std::sqrt(kPi) * std::erf(1.0)).epsilon(1e-8));
}
