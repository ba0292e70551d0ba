#include "vlmult/corpus.hpp"
#include "vlmult/maximal.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

using namespace vlm;
using Catch::Approx;

namespace {

SampledFunction indicator(const GridSpec& g, double a, double b) {
  return sample(g, [=](const Point& x) { return (x[0] > a && x[0] < b) ? 1.0 : 0.0; });
}

// Per-node sup by enumerating every interval explicitly.
std::vector<double> naive_hl(const SampledFunction& f) {
  const int n = f.grid.samples();
  std::vector<double> out(n, 0.0);
  for (int a = 0; a < n; ++a) {
    double s = 0.0;
    for (int b = a; b < n; ++b) {
      s += std::abs(f[b]);
      const double avg = s / (b - a + 1);
      for (int x = a; x <= b; ++x) out[x] = std::max(out[x], avg);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("hl_maximal basics") {
  GridSpec g(1, 4.0, 256);
  auto c = sample(g, [](const Point&) { return Complex(-1.5, 2.0); });
  for (const auto& v : hl_maximal(c).values) CHECK(v.real() == Approx(2.5));

  auto chi = indicator(g, 0.0, 1.0);
  auto m = hl_maximal(chi);
  CHECK(std::abs(m[g.nearest_node(2.0)].real() - 0.5) <= g.spacing());

  SampledFunction spike(g);
  spike[128] = 1.0;
  auto ms = hl_maximal(spike);
  for (int d : {4, 16, 64}) {
    CHECK(ms[128 + d].real() == Approx(1.0 / (d + 1)));
  }

  std::mt19937_64 rng(8);
  GridSpec small(1, 2.0, 64);
  auto f = random_function(small, rng);
  auto fast = hl_maximal(f);
  auto slow = naive_hl(f);
  for (std::size_t i = 0; i < slow.size(); ++i) CHECK(fast[i].real() == Approx(slow[i]).epsilon(1e-12));
}

TEST_CASE("maximal properties on random inputs") {
  std::mt19937_64 rng(9);
  GridSpec g(1, 4.0, 64);
  for (int t = 0; t < 200; ++t) {
    auto f = random_function(g, rng, t % 2 == 0);
    auto h = random_function(g, rng, t % 2 == 0);
    auto mf = hl_maximal(f), mh = hl_maximal(h), mfh = hl_maximal(f + h);
    auto sf = sharp_maximal(f);
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(mfh[i].real() <= (mf[i].real() + mh[i].real()) * (1.0 + 1e-12));
      CHECK(mf[i].real() >= std::abs(f[i]));
      CHECK(sf[i].real() <= 2.0 * mf[i].real() * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("sharp maximal") {
  GridSpec g(1, 4.0, 128);
  for (const auto& v : sharp_maximal(sample(g, [](const Point&) { return 2.0; })).values) CHECK(v.real() == 0.0);
  auto step = sample(g, [](const Point& x) { return x[0] >= 0.0 ? 1.0 : 0.0; });
  auto s = sharp_maximal(step);
  for (const auto& v : s.values) CHECK(v.real() <= 0.5 + 1e-15);
  CHECK(s[64].real() == Approx(0.5));
  SampledFunction spike(g);
  spike[40] = 1.0;
  auto ss = sharp_maximal(spike), hs = hl_maximal(spike);
  for (std::size_t i = 0; i < ss.size(); ++i) CHECK(ss[i].real() <= 2.0 * hs[i].real());
}

TEST_CASE("delta maximal functions") {
  GridSpec g(1, 4.0, 128);
  std::mt19937_64 rng(10);
  auto f = random_function(g, rng, true);
  CHECK(max_abs_diff(m_delta(f, 1.0), hl_maximal(f)) < 1e-14);
  CHECK(max_abs_diff(m_delta_sharp(abs(f), 1.0), sharp_maximal(abs(f))) < 1e-14);
  auto c = sample(g, [](const Point&) { return -3.0; });
  for (const auto& v : m_delta(c, 0.4).values) CHECK(v.real() == Approx(3.0));
  for (const auto& v : m_delta_sharp(c, 0.4).values) CHECK(v.real() == 0.0);
  auto chi = indicator(g, 0.0, 1.0);
  auto half = m_delta(chi, 0.5), hl = hl_maximal(chi);
  for (std::size_t i = 0; i < half.size(); ++i) CHECK(half[i].real() == Approx(hl[i].real() * hl[i].real()));
}

TEST_CASE("multilinear maximal") {
  GridSpec g(1, 4.0, 256);
  std::mt19937_64 rng(12);
  auto f = random_function(g, rng);
  auto single = multilinear_maximal({f}, 2.0);
  auto direct = m_delta(f, 2.0);
  CHECK(max_abs_diff(single, direct) < 1e-12);

  auto a = sample(g, [](const Point&) { return 2.0; }), b = sample(g, [](const Point&) { return 0.5; });
  for (const auto& v : multilinear_maximal({a, b}, 1.5).values) CHECK(v.real() == Approx(1.0));

  auto f1 = indicator(g, 0.0, 1.0), f2 = indicator(g, 2.0, 3.0);
  auto mm = multilinear_maximal({f1, f2}, 1.0);
  CHECK(std::abs(mm[g.nearest_node(1.5)].real() - 1.0 / 9.0) <= g.spacing());

  GridSpec gs(1, 4.0, 64);
  for (int t = 0; t < 20; ++t) {
    auto u = random_function(gs, rng), v = random_function(gs, rng);
    auto joint = multilinear_maximal({u, v}, 1.5);
    auto pu = m_delta(u, 1.5), pv = m_delta(v, 1.5);
    for (std::size_t i = 0; i < joint.size(); ++i) CHECK(joint[i].real() <= pu[i].real() * pv[i].real() * (1 + 1e-12));
  }
}

TEST_CASE("two-dimensional maximal functions") {
  GridSpec g(2, 2.0, 16);
  std::mt19937_64 rng(13);
  auto f = random_function(g, rng, true);
  auto m = hl_maximal(f), s = sharp_maximal(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(m[i].real() >= std::abs(f[i]));
    CHECK(s[i].real() <= 2.0 * m[i].real() * (1 + 1e-12));
  }
  double mean = 0.0;
  for (const auto& v : f.values) mean += std::abs(v);
  mean /= static_cast<double>(f.size());
  for (const auto& v : m.values) CHECK(v.real() >= mean * (1 - 1e-12));
}

TEST_CASE("fefferman-stein ratio") {
  GridSpec g(1, 4.0, 128);
  CHECK_THROWS_AS(fefferman_stein_ratio(sample(g, [](const Point&) { return 1.0; }), 0.5, 2.0), std::domain_error);
  std::mt19937_64 rng(14);
  double lo = 1e300, hi = 0.0;
  for (int t = 0; t < 100; ++t) {
    const double r = fefferman_stein_ratio(random_function(g, rng, true), 0.5, 2.0);
    REQUIRE(std::isfinite(r));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(hi / lo < 3.0);
  GridSpec gw(1, 4.0, 128);
  const double r = fefferman_stein_ratio(indicator(gw, 0.0, 1.0), 1.0 / 3.0, 2.0, PowerWeight::decay({}, -1.0));
  CHECK(std::isfinite(r));
  CHECK(r > 0.0);
}
