#ifndef VLMULT_EXPERIMENTS_HPP
#define VLMULT_EXPERIMENTS_HPP

#include "vlmult/config.hpp"
#include "vlmult/corpus.hpp"
#include "vlmult/maximal.hpp"
#include "vlmult/norms.hpp"
#include "vlmult/operators.hpp"
#include "vlmult/report.hpp"
#include "vlmult/weights.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vlm {

using FunctionPair = std::pair<SampledFunction, SampledFunction>;

inline double norm_value(const SampledFunction& f, const ExponentField& p) { return lp_norm(f, p).value; }

inline std::vector<double> bilinear_denominators(const std::vector<FunctionPair>& corpus, const ExponentField& p1,
                                                 const ExponentField& p2) {
  std::vector<double> out;
  out.reserve(corpus.size());
  for (const auto& [f, g] : corpus) out.push_back(norm_value(f, p1) * norm_value(g, p2));
  return out;
}

inline std::vector<double> bilinear_ratios(const Symbol& m, const ExponentField& p3, const std::vector<FunctionPair>& corpus,
                                           const std::vector<double>& denominators) {
  std::vector<double> out;
  out.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!(denominators[i] > 0.0)) throw std::domain_error("bilinear_ratios: zero input norm");
    out.push_back(norm_value(apply_bilinear(m, corpus[i].first, corpus[i].second), p3) / denominators[i]);
  }
  return out;
}

// Lower estimate of the operator norm: the largest ratio over the corpus.
inline double estimate_bilinear_norm(const Symbol& m, const ExponentField& p1, const ExponentField& p2,
                                     const ExponentField& p3, const std::vector<FunctionPair>& corpus) {
  if (corpus.empty()) throw std::invalid_argument("estimate_bilinear_norm: empty corpus");
  const auto r = bilinear_ratios(m, p3, corpus, bilinear_denominators(corpus, p1, p2));
  return *std::max_element(r.begin(), r.end());
}

namespace detail {

inline std::mt19937_64 experiment_rng(std::uint64_t seed, const std::string& id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(std::hash<std::string>{}(id) & 0xffffffffu)};
  return std::mt19937_64(seq);
}

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string lambda_id(double lambda) { return "lambda=" + fmt(lambda); }

// Grid wide enough for the spatial tail of G_lambda and fine enough for its spectrum.
inline GridSpec lambda_grid(const GridSpec& base, double lambda) {
  const double l = std::max(base.half_width(), 3.0 * lambda);
  int n = base.samples();
  while (n < 16.0 * l / lambda) n *= 2;
  return GridSpec(base.dim(), l, n);
}

inline double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of nothing");
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>((v.size() - 1) / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

inline double vmax(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }
inline double vmin(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

inline std::vector<FunctionPair> random_pairs(const GridSpec& g, std::mt19937_64& rng, int count, bool real = false) {
  std::vector<FunctionPair> out;
  for (int i = 0; i < count; ++i) {
    auto f = random_function(g, rng, real);
    auto h = random_function(g, rng, real);
    out.emplace_back(std::move(f), std::move(h));
  }
  return out;
}

inline bool is_constant(const SampledFunction& f) {
  double scale = 0.0, spread = 0.0;
  for (const auto& v : f.values) {
    scale = std::max(scale, std::abs(v));
    spread = std::max(spread, std::abs(v - f.values.front()));
  }
  return spread <= 1e-12 * scale;
}

inline void tail_rows(ExperimentReport& rep, double lambda, const GridSpec& g, double tol) {
  const auto t = gaussian_tails(lambda, g);
  rep.at_most(lambda_id(lambda), "spectral_tail", t.spectral, tol);
  rep.at_most(lambda_id(lambda), "spatial_tail", t.spatial, tol);
}

inline Json membership_json(const MembershipReport& m) {
  Json list = Json::array();
  for (const auto& c : m.constraints) {
    list.push_back({{"name", c.name}, {"margin", c.margin}, {"strict", c.strict}, {"satisfied", c.satisfied()}});
  }
  return {{"member", m.member}, {"binding", m.binding}, {"constraints", list}};
}

inline void hormander_rows(ExperimentReport& rep, const std::string& id, const Symbol& m, double s, double tol) {
  const auto h = hormander_sobolev_norm(m, s);
  rep.verdict(id, "hormander_sup", h.sup, std::nullopt, std::isfinite(h.sup));
  const auto& d = m.descriptor();
  if (std::holds_alternative<symbol::Constant>(d) || std::holds_alternative<symbol::CoifmanMeyer>(d)) {
    double lo = 1e300, hi = 0.0;
    for (const auto& [r, v] : h.table) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    rep.at_most(id, "hormander_dilation_variation", hi > 0.0 ? (hi - lo) / hi : 0.0, tol);
  }
}

}  // namespace detail

// Norm of G_lambda against lambda, slope compared with the scaling law.
inline ExperimentReport run_e1(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.experiment = "e1";
  const int n = cfg.grid.dim();
  const auto lambdas = cfg.lambda.values();
  std::vector<GridSpec> grids;
  for (double lam : lambdas) {
    grids.push_back(detail::lambda_grid(cfg.grid, lam));
    detail::tail_rows(rep, lam, grids.back(), cfg.tol("tail"));
  }
  for (const auto& [name, p] : cfg.exponents) {
    std::vector<double> vals;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      vals.push_back(norm_value(gaussian_G(lambdas[i], grids[i]), p));
      rep.info(name, "norm@" + detail::lambda_id(lambdas[i]), vals.back());
    }
    const auto fit = fit_loglog_upper_half(name, lambdas, vals);
    rep.slopes.push_back(fit);
    rep.info(name, "fit_residual", fit.residual);
    if (p.is_constant()) {
      const double expected = n / p.p_minus() - n;
      rep.info(name, "expected_slope", expected);
      rep.at_most(name, "slope_error", std::abs(fit.slope - expected), cfg.tol("slope_constant"));
    } else {
      const double lo = n / p.p_plus() - n - cfg.tol("slope_band");
      const double hi = n / p.p_minus() - n + cfg.tol("slope_band");
      rep.info(name, "slope_lower_bound", lo);
      rep.info(name, "slope_upper_bound", hi);
      rep.verdict(name, "slope", fit.slope, cfg.tol("slope_band"), fit.slope >= lo && fit.slope <= hi);
    }
  }
  return rep;
}

// V(lambda) = lambda^n int e^{-lambda^2 |xi|^2} M(xi + 2y) dxi = int e^{-|u|^2} M(u/lambda + 2y) du.
inline Complex gaussian_weighted_integral(const Symbol& M, double lambda, const Point& y, double half_width, int nodes) {
  const int n = M.dim();
  const int per_axis = n == 1 ? nodes : std::min(nodes, 512);
  const double h = 2.0 * half_width / per_axis;
  Complex sum{};
  std::array<double, 2> z{};
  for (int a = 0; a < per_axis; ++a) {
    const double u = -half_width + (a + 0.5) * h;
    if (n == 1) {
      z[0] = u / lambda + 2.0 * y[0];
      sum += std::exp(-u * u) * M(std::span<const double>(z.data(), 1));
      continue;
    }
    for (int b = 0; b < per_axis; ++b) {
      const double v = -half_width + (b + 0.5) * h;
      z = {u / lambda + 2.0 * y[0], v / lambda + 2.0 * y[1]};
      sum += std::exp(-u * u - v * v) * M(std::span<const double>(z.data(), 2));
    }
  }
  return sum * std::pow(h, n);
}

inline ExperimentReport run_e2(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.experiment = "e2";
  const int n = cfg.grid.dim();
  const auto lambdas = cfg.lambda.values();
  const double inv_q = 1.0 / cfg.exponent("p1").p_minus() + 1.0 / cfg.exponent("p2").p_minus() -
                       1.0 / cfg.exponent("p3").p_plus();
  const double growth_cap = n * inv_q + cfg.tol("growth");
  rep.info("exponents", "n/q", n * inv_q);
  const double qw = cfg.param("quadrature_half_width");
  const int qn = static_cast<int>(cfg.param("quadrature_nodes"));
  for (const auto& [name, M] : cfg.symbols) {
    for (double shift : cfg.param_list("shifts")) {
      const Point y{shift, 0.0};
      const std::string id = name + ",y=" + detail::fmt(shift);
      std::vector<double> mags;
      Complex last{};
      for (double lam : lambdas) {
        last = gaussian_weighted_integral(M, lam, y, qw, qn);
        mags.push_back(std::abs(last));
        rep.info(id, "abs_value@" + detail::lambda_id(lam), mags.back());
      }
      const Point twice{2.0 * y[0], 2.0 * y[1]};
      const Complex target = std::pow(std::numbers::pi, n / 2.0) * M(std::span<const double>(twice.data(), n));
      rep.info(id, "limit", std::abs(target));
      rep.at_most(id, "limit_abs_error", std::abs(last - target), cfg.tol("limit_rel") * std::abs(target));
      if (const auto* gs = std::get_if<symbol::Gaussian>(&M.descriptor())) {
        const double beta = 1.0 / (gs->scale * gs->scale);
        double worst = 0.0;
        for (double lam : lambdas) {
          const double a = lam * lam;
          double exact = 1.0;
          for (int c = 0; c < n; ++c) {
            exact *= lam * std::sqrt(std::numbers::pi / (a + beta)) * std::exp(-a * beta * twice[c] * twice[c] / (a + beta));
          }
          const double got = std::abs(gaussian_weighted_integral(M, lam, y, qw, qn));
          worst = std::max(worst, std::abs(got - exact) / exact);
        }
        rep.at_most(id, "closed_form_rel_error", worst, cfg.tol("closed_form_rel"));
      }
      if (detail::vmin(mags) > 0.0) {
        const auto fit = fit_loglog_upper_half(id, lambdas, mags);
        rep.slopes.push_back(fit);
        rep.at_most(id, "growth_slope", fit.slope, growth_cap);
      } else {
        rep.notes.push_back(id + ": integral vanishes, no slope fitted");
      }
    }
  }
  return rep;
}

// Ratio ||B_M(G,G)||_{p3} / (||G||_{p1} ||G||_{p2}) against lambda, plus the
// modulation/translation identity on the base grid.
inline ExperimentReport run_e3(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.experiment = "e3";
  const int n = cfg.grid.dim();
  const Symbol& M = cfg.symbol("M");
  const Symbol m = Symbol::difference(M);
  const auto lambdas = cfg.lambda.values();
  std::vector<GridSpec> grids;
  std::vector<SampledFunction> gs, bs;
  for (double lam : lambdas) {
    grids.push_back(detail::lambda_grid(cfg.grid, lam));
    detail::tail_rows(rep, lam, grids.back(), cfg.tol("tail"));
    gs.push_back(gaussian_G(lam, grids.back()));
    bs.push_back(apply_bilinear(m, gs.back(), gs.back()));
  }
  for (const auto& [name, cs] : cfg.cases) {
    const auto &p1 = cs.exponent("p1"), &p2 = cs.exponent("p2"), &p3 = cs.exponent("p3");
    std::vector<double> ratios;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      ratios.push_back(norm_value(bs[i], p3) / (norm_value(gs[i], p1) * norm_value(gs[i], p2)));
      rep.info(name, "ratio@" + detail::lambda_id(lambdas[i]), ratios.back());
    }
    const auto fit = fit_loglog_upper_half(name, lambdas, ratios);
    rep.slopes.push_back(fit);
    const double expected = n * (1.0 / p3.p_plus() - 1.0 / p1.p_minus() - 1.0 / p2.p_minus());
    rep.info(name, "expected_slope", expected);
    if (expected > 0.0) {
      rep.at_most(name, "slope_error", std::abs(fit.slope - expected), cfg.tol("slope"));
    } else {
      rep.at_most(name, "slope", fit.slope, cfg.tol("satisfied_slope"));
    }
  }

  auto rng = detail::experiment_rng(cfg.seed, "e3");
  const GridSpec& g = cfg.grid;
  const double y = cfg.param("shift_nodes") * g.freq_spacing();
  const Symbol shifted = Symbol::difference(Symbol::translate(M, {y}));
  double worst = 0.0;
  for (int t = 0; t < cfg.samples; ++t) {
    const auto f = random_function(g, rng), h = random_function(g, rng);
    const auto lhs = apply_bilinear(m, modulate(y, f), modulate(-y, h));
    worst = std::max(worst, max_abs_diff(lhs, apply_bilinear(shifted, f, h)));
  }
  rep.at_most("modulation_translation", "max_abs_error", worst, cfg.tol("identity"));
  return rep;
}

inline ExperimentReport run_e4(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.experiment = "e4";
  const GridSpec& g = cfg.grid;
  auto rng = detail::experiment_rng(cfg.seed, "e4");
  auto corpus = detail::random_pairs(g, rng, cfg.samples);
  for (double lam : cfg.param_list("gaussian_lambdas")) corpus.emplace_back(gaussian_G(lam, g), gaussian_G(lam, g));
  const auto &p1 = cfg.exponent("p1"), &p2 = cfg.exponent("p2"), &p3 = cfg.exponent("p3");
  const Symbol& m = cfg.symbol("m");
  const auto den = bilinear_denominators(corpus, p1, p2);
  const double base = detail::vmax(bilinear_ratios(m, p3, corpus, den));
  rep.info("m", "norm_estimate", base);

  auto localized = [&](double a1, double b1, double a2, double b2) {
    const Symbol mq = Symbol::product({m, Symbol::indicator({a1, a2}, {b1, b2}, 2, 1)});
    return detail::vmax(bilinear_ratios(mq, p3, corpus, den)) / base;
  };
  const double d = g.freq_spacing();
  const double lo = (-g.samples() / 2 - 0.5) * d, hi = (g.samples() / 2 - 0.5) * d;
  rep.at_most("full_box", "ratio_minus_one", std::abs(localized(lo, hi, lo, hi) - 1.0), cfg.tol("full_box"));

  const int kmax = default_band(g);
  const int min_width = std::max(1, static_cast<int>(std::ceil(cfg.param("min_width_fraction") * 2 * kmax)));
  std::uniform_int_distribution<int> pick(-kmax, kmax - min_width);
  std::vector<double> ratios;
  bool finite = true;
  Json rects = Json::array();
  for (int t = 0; t < static_cast<int>(cfg.param("rectangles")); ++t) {
    int iv[2][2];
    for (auto& e : iv) {
      e[0] = pick(rng);
      e[1] = std::uniform_int_distribution<int>(e[0] + min_width, kmax)(rng);
    }
    const double r = localized((iv[0][0] - 0.5) * d, (iv[0][1] + 0.5) * d, (iv[1][0] - 0.5) * d, (iv[1][1] + 0.5) * d);
    finite = finite && std::isfinite(r) && r > 0.0;
    ratios.push_back(r);
    const std::string id = "Q" + std::to_string(t);
    rep.info(id, "ratio", r);
    rects.push_back({{"id", id},
                     {"xi", {(iv[0][0] - 0.5) * d, (iv[0][1] + 0.5) * d}},
                     {"eta", {(iv[1][0] - 0.5) * d, (iv[1][1] + 0.5) * d}}});
  }
  rep.details["rectangles"] = rects;
  rep.verdict("rectangles", "all_finite", finite ? 1.0 : 0.0, std::nullopt, finite);
  rep.info("rectangles", "min_ratio", detail::vmin(ratios));
  rep.info("rectangles", "max_ratio", detail::vmax(ratios));
  rep.at_most("rectangles", "spread", detail::vmax(ratios) / detail::vmin(ratios), cfg.tol("spread"));

  std::uniform_int_distribution<int> node(-kmax, kmax);
  double worst = 0.0;
  for (int t = 0; t < static_cast<int>(cfg.param("identity_pairs")); ++t) {
    int a = node(rng), b = node(rng);
    if (a > b) std::swap(a, b);
    const auto f = random_function(g, rng);
    worst = std::max(worst, max_abs_diff(bandlimit(a * d, b * d, f), bandlimit_hilbert(a * d, b * d, f)));
  }
  rep.at_most("bandlimit_hilbert", "max_abs_error", worst, cfg.tol("identity"));
  return rep;
}

inline ExperimentReport run_e5(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.experiment = "e5";
  const GridSpec& g = cfg.grid;
  auto rng = detail::experiment_rng(cfg.seed, "e5");
  const double band = default_band(g) * g.freq_spacing();
  double worst = 0.0, scale = 0.0;
  for (int t = 0; t < cfg.samples; ++t) {
    const Symbol m = random_bilinear_symbol(rng, band);
    const Symbol m1 = random_linear_symbol(rng, band), m2 = random_linear_symbol(rng, band);
    const auto f = random_function(g, rng), h = random_function(g, rng);
    const auto lhs = apply_bilinear(m, apply_linear(m1, f), apply_linear(m2, h));
    const auto rhs = apply_bilinear(Symbol::product({m, Symbol::tensor({m1, m2})}), f, h);
    worst = std::max(worst, max_abs_diff(lhs, rhs));
    scale = std::max(scale, max_abs(lhs));
  }
  rep.info("composition", "max_abs_output", scale);
  rep.at_most("composition", "max_abs_error", worst, cfg.tol("identity"));
  return rep;
}

inline ExperimentReport run_e6(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.experiment = "e6";
  const GridSpec& g = cfg.grid;
  auto rng = detail::experiment_rng(cfg.seed, "e6");
  const Symbol one = Symbol::constant(1.0, 2, 1);
  const auto &p1 = cfg.exponent("p1"), &p2 = cfg.exponent("p2"), &q1 = cfg.exponent("q1"), &q2 = cfg.exponent("q2");
  const auto p3 = harmonic_sum({p1, p2}), q3 = harmonic_sum({q1, q2});
  double worst = 0.0, hc = 0.0, hv = 0.0;
  for (int t = 0; t < cfg.samples; ++t) {
    const auto f = random_function(g, rng), h = random_function(g, rng);
    worst = std::max(worst, max_abs_diff(apply_bilinear(one, f, h), f * h));
    hc = std::max(hc, holder_check(f, h, q1, q2, q3));
    hv = std::max(hv, holder_check(f, h, p1, p2, p3));
  }
  rep.at_most("product", "max_abs_error", worst, cfg.tol("identity"));
  rep.at_most("holder_constant", "max_ratio", hc, 1.0 + cfg.tol("holder_constant"));
  rep.at_most("holder_variable", "max_ratio", hv, cfg.tol("holder_variable"));
  return rep;
}

namespace detail {

// h sum_i phi_per(x_j - x_i) f(x_i) on the periodic grid.
inline SampledFunction circular_convolution(const GaussianBump& phi, const SampledFunction& f) {
  const GridSpec& g = f.grid;
  const int n = g.samples();
  const double h = g.spacing(), period = 2.0 * g.half_width();
  std::vector<double> kernel(n);
  for (int l = 0; l < n; ++l) {
    double s = 0.0;
    for (int w = -3; w <= 3; ++w) s += phi(Point{l * h + w * period, 0.0});
    kernel[l] = s;
  }
  SampledFunction out(g);
  for (int j = 0; j < n; ++j) {
    Complex acc{};
    for (int i = 0; i < n; ++i) acc += kernel[((j - i) % n + n) % n] * f[i];
    out[j] = h * acc;
  }
  return out;
}

inline double discrete_l1(const GaussianBump& phi, const GridSpec& g) {
  const SampledFunction delta = [&] {
    SampledFunction d(g);
    d[0] = 1.0 / g.spacing();
    return d;
  }();
  double s = 0.0;
  for (const auto& v : circular_convolution(phi, delta).values) s += std::abs(v);
  return s * g.spacing();
}

}  // namespace detail

inline ExperimentReport run_e7(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.experiment = "e7";
  const GridSpec& g = cfg.grid;
  const Symbol& M = cfg.symbol("M");
  const auto* gauss = std::get_if<symbol::Gaussian>(&M.descriptor());
  if (!gauss) throw ConfigError("experiments.e7.symbols.M: must be a gaussian symbol");
  const GaussianBump phi{cfg.param("phi_width"), 1};
  const GaussianBump psi{cfg.param("phi_width_frequency"), 1};
  const double pi = std::numbers::pi;
  const double L = g.half_width();
  rep.at_most("phi", "spatial_tail", std::exp(-pi * std::pow(L / phi.width, 2)), cfg.tol("tail"));
  rep.at_most("phi", "spectral_tail", std::exp(-pi * std::pow(phi.width * g.nyquist(), 2)), cfg.tol("tail"));

  const int kmax = default_band(g);
  const int kshift = g.samples() / 2 - 1 - kmax;
  rep.at_most("phi_frequency", "truncation_tail", psi(Point{(kshift + 1) * g.freq_spacing(), 0.0}) / psi(Point{}),
              cfg.tol("tail"));

  const Symbol bm = Symbol::difference(M);
  const Symbol modulated = Symbol::modulated_difference(M, phi.transform());
  const Symbol convolved = Symbol::difference(psi.convolve_gaussian(gauss->scale));
  const double l1 = detail::discrete_l1(phi, g);
  rep.info("phi", "l1_norm", l1);
  const auto p3s = cfg.param_list("p3_values");
  std::vector<double> young(p3s.size(), 0.0);
  auto rng = detail::experiment_rng(cfg.seed, "e7");
  double err_mod = 0.0, err_conv = 0.0;
  for (int t = 0; t < cfg.samples; ++t) {
    const auto f = random_function(g, rng), h = random_function(g, rng);
    const auto b = apply_bilinear(bm, f, h);
    const auto smoothed = detail::circular_convolution(phi, b);
    err_mod = std::max(err_mod, max_abs_diff(apply_bilinear(modulated, f, h), smoothed));

    SampledFunction sum(g);
    for (int k = -kshift; k <= kshift; ++k) {
      const double u = k * g.freq_spacing();
      const Complex w = psi(Point{u, 0.0}) * g.freq_spacing();
      sum += w * modulate(u, apply_bilinear(bm, modulate(-u, f), h));
    }
    err_conv = std::max(err_conv, max_abs_diff(apply_bilinear(convolved, f, h), sum));

    for (std::size_t i = 0; i < p3s.size(); ++i) {
      const auto p = ExponentField::constant(p3s[i]);
      young[i] = std::max(young[i], norm_value(smoothed, p) / (l1 * norm_value(b, p)));
    }
  }
  rep.at_most("modulated_difference", "max_abs_error", err_mod, cfg.tol("identity"));
  rep.at_most("convolved_symbol", "max_abs_error", err_conv, cfg.tol("identity"));
  for (std::size_t i = 0; i < p3s.size(); ++i) {
    rep.at_most("p3=" + detail::fmt(p3s[i]), "young_ratio", young[i], 1.0 + cfg.tol("young"));
  }
  return rep;
}

inline ExperimentReport run_e8(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.experiment = "e8";
  const GridSpec& g = cfg.grid;
  const HormanderParams hp = [&] {
    try {
      return HormanderParams(cfg.param("s"), cfg.param("r"), cfg.param("delta"), 2, g.dim());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("experiments.e8.params: ") + e.what());
    }
  }();
  rep.info("params", "r0", hp.r0);
  rep.info("params", "p0", hp.p0);
  rep.info("params", "r_upper", hp.r_upper());

  auto rng = detail::experiment_rng(cfg.seed, "e8");
  auto corpus = detail::random_pairs(g, rng, cfg.samples);
  std::normal_distribution<double> normal;
  for (int t = 0; t < static_cast<int>(cfg.param("constant_inputs")); ++t) {
    const double c = normal(rng);
    corpus.emplace_back(sample(g, [c](const Point&) { return c; }), random_function(g, rng));
  }
  std::vector<FunctionPair> used;
  for (auto& pr : corpus) {
    if (!detail::is_constant(pr.first) && !detail::is_constant(pr.second)) used.push_back(std::move(pr));
  }
  rep.info("corpus", "excluded_constant_inputs", static_cast<double>(corpus.size() - used.size()));
  std::vector<SampledFunction> rhs;
  for (const auto& [f, h] : used) rhs.push_back(multilinear_maximal({f, h}, hp.p0));

  for (const auto& [name, m] : cfg.symbols) {
    detail::hormander_rows(rep, name, m, hp.s, cfg.tol("invariance"));
    std::vector<double> ratios;
    for (std::size_t i = 0; i < used.size(); ++i) {
      const auto lhs = m_delta_sharp(apply_bilinear(m, used[i].first, used[i].second), hp.delta);
      double r = 0.0;
      for (std::size_t x = 0; x < lhs.size(); ++x) r = std::max(r, lhs[x].real() / rhs[i][x].real());
      ratios.push_back(r);
    }
    const double med = detail::median(ratios);
    rep.info(name, "max_ratio", detail::vmax(ratios));
    rep.info(name, "median_ratio", med);
    rep.at_most(name, "max_over_median", detail::vmax(ratios) / med, cfg.tol("spread_" + name));
  }
  return rep;
}

inline ExperimentReport run_e9(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.experiment = "e9";
  const GridSpec& g = cfg.grid;
  const GridSpec fine(g.dim(), g.half_width(), 2 * g.samples());
  const double s = cfg.param("s");
  const Symbol& m = cfg.symbol("m");
  const auto &p1 = cfg.exponent("p1"), &p2 = cfg.exponent("p2");
  const auto p = harmonic_sum({p1, p2});
  if (!(s > 2.0 * g.dim() / 2.0 && s <= 2.0 * g.dim())) throw ConfigError("experiments.e9.params.s: need Nn/2 < s <= Nn");
  detail::hormander_rows(rep, "m", m, s, 1e-6);

  auto rng = detail::experiment_rng(cfg.seed, "e9");
  std::vector<std::pair<BandLimited, BandLimited>> corpus;
  for (int t = 0; t < cfg.samples; ++t) {
    auto a = random_band_limited(g, rng);
    auto b = random_band_limited(g, rng);
    corpus.emplace_back(std::move(a), std::move(b));
  }
  auto realize = [&](const GridSpec& grid) {
    std::vector<FunctionPair> out;
    for (const auto& [a, b] : corpus) out.emplace_back(a.realize(grid), b.realize(grid));
    return out;
  };
  const auto coarse = realize(g), refined = realize(fine);

  auto ratios = [&](const std::vector<FunctionPair>& fs, const PowerWeight& w1, const PowerWeight& w2) {
    const PowerWeight w = w1 * w2;
    std::vector<double> out;
    for (const auto& [f, h] : fs) {
      const double den = weighted_norm(f, p1, w1).value * weighted_norm(h, p2, w2).value;
      out.push_back(weighted_norm(apply_bilinear(m, f, h), p, w).value / den);
    }
    return out;
  };

  Json gates = Json::object();
  for (const auto& [name, cs] : cfg.cases) {
    if (cs.weights.size() != 2) throw ConfigError("experiments.e9.cases." + name + ".weights: need two weights");
    const auto gate = corollary_hypothesis_check({p1, p2}, cs.weights, s, g.dim());
    gates[name] = detail::membership_json(gate.hypotheses);
    const double member = gate.hypotheses.member ? 1.0 : 0.0;
    if (cs.expect_member) {
      rep.verdict(name, "gate_member", member, std::nullopt, gate.hypotheses.member == *cs.expect_member);
    } else {
      rep.info(name, "gate_member", member);
    }
    if (!gate.hypotheses.member) {
      rep.notes.push_back(name + ": hypotheses refused, binding constraint " + gate.hypotheses.binding);
    }
    const auto rc = ratios(coarse, cs.weights[0], cs.weights[1]);
    const auto rf = ratios(refined, cs.weights[0], cs.weights[1]);
    const double mc = detail::vmax(rc), mf = detail::vmax(rf);
    rep.info(name, "max_ratio@N=" + std::to_string(g.samples()), mc);
    rep.info(name, "max_ratio@N=" + std::to_string(fine.samples()), mf);
    rep.info(name, "median_ratio@N=" + std::to_string(g.samples()), detail::median(rc));
    if (gate.hypotheses.member) {
      rep.at_most(name, "max_over_median", mc / detail::median(rc), cfg.tol("spread"));
      rep.at_most(name, "refinement_factor", std::max(mf / mc, mc / mf), cfg.tol("refinement"));
    } else {
      rep.info(name, "refinement_trend", mf / mc);
    }
  }
  rep.details["hypotheses"] = gates;
  rep.details["weighted_norm_interpretation"] = kWeightedNormInterpretation;
  return rep;
}

inline const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = {"e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8", "e9"};
  return ids;
}

inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  if (!cfg.unsupported.empty()) throw ConfigError(cfg.unsupported);
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport rep;
  if (cfg.id == "e1") rep = run_e1(cfg);
  else if (cfg.id == "e2") rep = run_e2(cfg);
  else if (cfg.id == "e3") rep = run_e3(cfg);
  else if (cfg.id == "e4") rep = run_e4(cfg);
  else if (cfg.id == "e5") rep = run_e5(cfg);
  else if (cfg.id == "e6") rep = run_e6(cfg);
  else if (cfg.id == "e7") rep = run_e7(cfg);
  else if (cfg.id == "e8") rep = run_e8(cfg);
  else if (cfg.id == "e9") rep = run_e9(cfg);
  else throw ConfigError("unknown experiment '" + cfg.id + "'");
  rep.config = cfg.echo;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace vlm

#endif  // VLMULT_EXPERIMENTS_HPP
