#include "vlmult/corpus.hpp"
#include "vlmult/norms.hpp"
#include "vlmult/operators.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace vlm;
using Catch::Approx;

namespace {

SampledFunction constant_fn(const GridSpec& g, double c) {
  return sample(g, [c](const Point&) { return c; });
}

ExponentField random_exponent(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (rng() % 3) {
    case 0:
      return ExponentField::constant(1.0 + 3.0 * u(rng));
    case 1:
      return ExponentField::piecewise({-1.0 + u(rng)}, {1.0 + 3.0 * u(rng), 1.0 + 3.0 * u(rng)});
    default:
      return ExponentField::radial(1.2 + 2.0 * u(rng), 2.0 * u(rng) - 0.2, 0.5 + 2.0 * u(rng));
  }
}

}  // namespace

TEST_CASE("modular") {
  GridSpec unit(1, 0.5, 64);
  CHECK(modular(constant_fn(unit, 1.0), ExponentField::constant(2.0)) == Approx(1.0));
  const double c = 1.7;
  auto pw = ExponentField::piecewise({0.0}, {2.0, 4.0});
  CHECK(modular(constant_fn(unit, c), pw) == Approx(c * c / 2 + std::pow(c, 4) / 2));
  // overflow stays finite through the log-space branch when the sum fits
  CHECK(std::isfinite(modular(constant_fn(unit, 1e150), ExponentField::constant(2.0))));
  CHECK(modular(constant_fn(unit, 0.0), pw) == 0.0);
  CHECK(modular(constant_fn(unit, 1.0), ExponentField::constant(2.0), PowerWeight::decay({}, 0.0)) == Approx(1.0));
}

TEST_CASE("luxemburg norm") {
  GridSpec unit(1, 0.5, 64);
  auto r = luxemburg_norm(constant_fn(unit, 1.0), ExponentField::constant(2.0));
  CHECK(r.value == Approx(1.0).epsilon(1e-9));
  CHECK(r.residual <= kModularTolerance);
  auto pw = ExponentField::piecewise({0.0}, {2.0, 4.0});
  CHECK(luxemburg_norm(constant_fn(unit, 3.0), pw).value == Approx(3.0).epsilon(1e-9));
  auto zero = luxemburg_norm(constant_fn(unit, 0.0), pw);
  CHECK(zero.value == 0.0);
  CHECK(zero.iterations == 0);
  CHECK_THROWS(luxemburg_norm(constant_fn(unit, 1.0), ExponentField::constant(0.5)));

  // ||G_lambda||_2 scales like lambda^{1/2 - 1}
  GridSpec g(1, 16.0, 256);
  const double n2 = luxemburg_norm(gaussian_G(2.0, g), ExponentField::constant(2.0)).value;
  const double n4 = luxemburg_norm(gaussian_G(4.0, g), ExponentField::constant(2.0)).value;
  CHECK(std::log(n4 / n2) / std::log(2.0) == Approx(-0.5).margin(1e-8));
}

TEST_CASE("quasi norm") {
  GridSpec unit(1, 0.5, 64);
  auto third = harmonic_sum({ExponentField::constant(2.0), ExponentField::constant(2.0), ExponentField::constant(2.0)});
  auto r = quasi_norm(constant_fn(unit, 1.0), third);
  CHECK(r.value == Approx(1.0).epsilon(1e-9));
  CHECK(r.p0 == Approx(1.0 / 3.0));
  CHECK(quasi_norm(constant_fn(unit, 2.0), third).value == Approx(2.0).epsilon(1e-9));

  GridSpec g(1, 1.0, 4096);
  auto f = sample(g, [](const Point& x) { return x[0] > 0.0 ? std::sqrt(x[0]) : 0.0; });
  CHECK(quasi_norm(f, third).value == Approx(std::pow(0.75, 1.5)).epsilon(1e-4));

  std::mt19937_64 rng(21);
  GridSpec gq(1, 2.0, 64);
  for (double p : {0.4, 0.7, 0.95}) {
    auto h = random_function(gq, rng);
    double s = 0.0;
    for (const auto& v : h.values) s += std::pow(std::abs(v), p);
    const double classical = std::pow(s * gq.cell_volume(), 1.0 / p);
    CHECK(quasi_norm(h, ExponentField::constant(p)).value == Approx(classical).epsilon(1e-9));
    CHECK(quasi_norm(h, ExponentField::constant(p), p / 3.0).value == Approx(classical).epsilon(1e-9));
  }
}

TEST_CASE("weighted norm") {
  GridSpec g(1, 1.0, 1024);
  auto one = constant_fn(g, 1.0);
  auto p2 = ExponentField::constant(2.0);
  CHECK(weighted_norm(one, p2, PowerWeight()).value == Approx(luxemburg_norm(one, p2).value));
  CHECK(weighted_norm(one, p2, PowerWeight::power({}, 0.5)).value == Approx(1.0).epsilon(1e-9));
  GridSpec g8(1, 8.0, 4096);
  CHECK(weighted_norm(constant_fn(g8, 1.0), p2, PowerWeight::decay({}, -1.0)).value ==
        Approx(4.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("homogeneity and modular sandwiches") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  GridSpec g(1, 2.0, 64);
  for (int t = 0; t < 1000; ++t) {
    auto p = random_exponent(rng);
    auto f = std::pow(10.0, u(rng)) * random_function(g, rng);
    const double norm = luxemburg_norm(f, p).value;
    const double rho = modular(f, p);
    const auto [pm, pp] = ess_bounds(p, g);
    const double slack = 1e-8;
    if (norm <= 1.0) {
      CHECK(rho <= norm * (1 + slack));
      CHECK(std::pow(rho, 1.0 / pm) <= norm * (1 + slack));
      CHECK(norm <= std::pow(rho, 1.0 / pp) * (1 + slack));
    } else {
      CHECK(rho >= norm * (1 - slack));
      CHECK(std::pow(rho, 1.0 / pp) <= norm * (1 + slack));
      CHECK(norm <= std::pow(rho, 1.0 / pm) * (1 + slack));
    }
    if (t % 10 == 0) {
      const double c = std::pow(10.0, 2.0 * u(rng));
      CHECK(luxemburg_norm(c * f, p).value == Approx(c * norm).epsilon(1e-9));
    }
  }
}

TEST_CASE("holder check") {
  GridSpec g(1, 2.0, 64);
  auto chi = sample(g, [](const Point& x) { return (x[0] > 0.0 && x[0] < 1.0) ? 1.0 : 0.0; });
  auto c2 = ExponentField::constant(2.0), c1 = ExponentField::constant(1.0);
  CHECK(holder_check(chi, chi, c2, c2, c1) == Approx(1.0).epsilon(1e-9));
  CHECK_THROWS(holder_check(chi, chi, c2, c2, c2));
  auto zero = constant_fn(g, 0.0);
  CHECK_THROWS_AS(holder_check(zero, chi, c2, c2, c1), std::domain_error);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(1.2, 5.0);
  for (int t = 0; t < 50; ++t) {
    const double a = u(rng), b = u(rng);
    auto f = random_function(g, rng), h = random_function(g, rng);
    CHECK(holder_check(f, h, ExponentField::constant(a), ExponentField::constant(b),
                       ExponentField::constant(a * b / (a + b))) <= 1.0 + 1e-8);
  }
  auto p1 = ExponentField::piecewise({0.0}, {2.0, 4.0});
  auto p2 = ExponentField::piecewise({0.0}, {2.0, 4.0 / 3.0});
  for (int t = 0; t < 100; ++t) {
    auto f = random_function(g, rng), h = random_function(g, rng);
    CHECK(holder_check(f, h, p1, p2, c1) <= 4.0);
  }
}
