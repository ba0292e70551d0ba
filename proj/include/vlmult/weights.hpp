#ifndef VLMULT_WEIGHTS_HPP
#define VLMULT_WEIGHTS_HPP

// Power weights [1 + |x - x0|]^{b_inf} prod |x - x_k|^{b_k}, grid estimates
// of Muckenhoupt constants, and the V_{p(.)} / corollary hypothesis checks.

#include "vlmult/cubes.hpp"
#include "vlmult/exponents.hpp"
#include "vlmult/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace vlm {

struct SingularPoint {
  Point location;
  double beta;
};

class PowerWeight {
 public:
  // w == 1
  PowerWeight() = default;

  PowerWeight(Point center, double beta_inf, std::vector<SingularPoint> singular)
      : center_(center), beta_inf_(beta_inf), singular_(std::move(singular)) {
    if (!std::isfinite(beta_inf_)) throw std::invalid_argument("PowerWeight: non-finite beta_inf");
    for (const auto& s : singular_) {
      if (!std::isfinite(s.beta)) throw std::invalid_argument("PowerWeight: non-finite beta");
    }
  }

  // |x - at|^beta
  static PowerWeight power(Point at, double beta) { return PowerWeight(at, 0.0, {{at, beta}}); }
  // [1 + |x - at|]^beta
  static PowerWeight decay(Point at, double beta) { return PowerWeight(at, beta, {}); }

  const Point& center() const { return center_; }
  double beta_inf() const { return beta_inf_; }
  const std::vector<SingularPoint>& singular() const { return singular_; }

  bool is_trivial() const {
    return beta_inf_ == 0.0 &&
           std::all_of(singular_.begin(), singular_.end(), [](const auto& s) { return s.beta == 0.0; });
  }

  double operator()(const Point& x) const {
    double w = std::pow(1.0 + distance(x, center_), beta_inf_);
    for (const auto& s : singular_) {
      if (s.beta == 0.0) continue;
      double d = distance(x, s.location);
      if (d == 0.0) throw std::domain_error("PowerWeight evaluated exactly at a singular point");
      w *= std::pow(d, s.beta);
    }
    return w;
  }

  // Pointwise product; both weights must share the center x0.
  friend PowerWeight operator*(const PowerWeight& a, const PowerWeight& b) {
    if (a.is_trivial()) return b;
    if (b.is_trivial()) return a;
    if (a.center_ != b.center_ && a.beta_inf_ != 0.0 && b.beta_inf_ != 0.0) {
      throw std::invalid_argument("PowerWeight product needs a common center");
    }
    Point center = a.beta_inf_ != 0.0 ? a.center_ : b.center_;
    std::vector<SingularPoint> pts = a.singular_;
    for (const auto& s : b.singular_) {
      auto it = std::find_if(pts.begin(), pts.end(),
                             [&](const SingularPoint& t) { return t.location == s.location; });
      if (it != pts.end()) {
        it->beta += s.beta;
      } else {
        pts.push_back(s);
      }
    }
    return PowerWeight(center, a.beta_inf_ + b.beta_inf_, std::move(pts));
  }

  static double distance(const Point& a, const Point& b) {
    return norm2(Point{a[0] - b[0], a[1] - b[1]});
  }

 private:
  Point center_{};
  double beta_inf_ = 0.0;
  std::vector<SingularPoint> singular_;
};

inline double evaluate_weight(const PowerWeight& w, const Point& x) { return w(x); }

inline std::vector<double> sample_weight(const PowerWeight& w, const GridSpec& g) {
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = w(g.point(i));
  return out;
}

namespace detail {

// min over the nodes of every cube of one side, indexed by cube position
inline std::vector<double> cube_minima(const CubeFamily& fam, int side, std::span<const double> nodes) {
  const int n = fam.grid().samples();
  const int p = fam.positions(side);
  std::vector<double> neg(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) neg[i] = -nodes[i];
  auto window_end_max = [&](std::span<const double> in, std::span<double> out) {
    // out[a] = max over in[a .. a + side - 1]
    std::vector<double> tmp(in.size());
    window_max_1d(in, side, tmp);
    for (int a = 0; a < p; ++a) out[a] = tmp[a + side - 1];
  };
  std::vector<double> result(fam.positions_total(side));
  if (fam.grid().dim() == 1) {
    window_end_max(neg, result);
  } else {
    std::vector<double> stage(static_cast<std::size_t>(n) * p);
    for (int a = 0; a < n; ++a) {
      window_end_max(std::span<const double>(neg).subspan(static_cast<std::size_t>(a) * n, n),
                     std::span<double>(stage).subspan(static_cast<std::size_t>(a) * p, p));
    }
    std::vector<double> col(n), out(p);
    for (int b = 0; b < p; ++b) {
      for (int a = 0; a < n; ++a) col[a] = stage[static_cast<std::size_t>(a) * p + b];
      window_end_max(col, out);
      for (int a = 0; a < p; ++a) result[static_cast<std::size_t>(a) * p + b] = out[a];
    }
  }
  for (auto& v : result) v = -v;
  return result;
}

}  // namespace detail

// sup_Q (avg_Q v)^{1/p} prod_i (avg_Q w_i^{1 - p_i'})^{1/p_i'} over the grid
// cube family, with (inf_Q w_i)^{-1} for p_i = 1.
inline double multilinear_ap_constant(const std::vector<PowerWeight>& ws, const std::vector<double>& ps,
                                      const GridSpec& g) {
  if (ws.empty() || ws.size() != ps.size()) {
    throw std::invalid_argument("multilinear_ap_constant: need one exponent per weight");
  }
  double inv_p = 0.0;
  for (double pi : ps) {
    if (!(pi >= 1.0)) throw std::invalid_argument("multilinear_ap_constant: p_i must be >= 1");
    inv_p += 1.0 / pi;
  }
  const double p = 1.0 / inv_p;
  const std::size_t m = ws.size();

  std::vector<std::vector<double>> samples(m);
  for (std::size_t i = 0; i < m; ++i) samples[i] = sample_weight(ws[i], g);

  std::vector<double> v(g.size(), 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t x = 0; x < g.size(); ++x) v[x] *= std::pow(samples[i][x], p / ps[i]);
  }
  PrefixSums v_sums(g, v);

  std::vector<PrefixSums> dual_sums;
  std::vector<double> dual_power(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (ps[i] == 1.0) {
      dual_sums.emplace_back(g, std::vector<double>(g.size(), 0.0));
      continue;
    }
    const double pc = conjugate_exponent(ps[i]);
    dual_power[i] = 1.0 / pc;
    std::vector<double> u(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) u[x] = std::pow(samples[i][x], 1.0 - pc);
    dual_sums.emplace_back(g, u);
  }

  CubeFamily fam(g);
  double best = 0.0;
  for (int s = 1; s <= fam.max_side(); ++s) {
    std::vector<std::vector<double>> minima(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (ps[i] == 1.0) minima[i] = detail::cube_minima(fam, s, samples[i]);
    }
    for (std::size_t q = 0; q < fam.positions_total(s); ++q) {
      const Cube cube = fam.cube(s, q);
      double val = std::pow(v_sums.mean(cube), 1.0 / p);
      for (std::size_t i = 0; i < m; ++i) {
        val *= ps[i] == 1.0 ? 1.0 / minima[i][q] : std::pow(dual_sums[i].mean(cube), dual_power[i]);
      }
      best = std::max(best, val);
    }
  }
  return best;
}

// sup_Q (avg_Q w)(avg_Q w^{1 - p'})^{p - 1}; for p = 1, (avg_Q w) / inf_Q w.
inline double ap_constant(const PowerWeight& w, double p, const GridSpec& g) {
  if (!(p >= 1.0)) throw std::invalid_argument("ap_constant: p must be >= 1");
  const auto wv = sample_weight(w, g);
  PrefixSums w_sums(g, wv);
  CubeFamily fam(g);
  if (p == 1.0) {
    double best = 0.0;
    for (int s = 1; s <= fam.max_side(); ++s) {
      const auto minima = detail::cube_minima(fam, s, wv);
      for (std::size_t q = 0; q < minima.size(); ++q) {
        best = std::max(best, w_sums.mean(fam.cube(s, q)) / minima[q]);
      }
    }
    return best;
  }
  const double pc = conjugate_exponent(p);
  std::vector<double> u(wv.size());
  for (std::size_t i = 0; i < wv.size(); ++i) u[i] = std::pow(wv[i], 1.0 - pc);
  PrefixSums u_sums(g, u);
  return sup_over_cubes(fam, [&](const Cube& q) {
    return w_sums.mean(q) * std::pow(u_sums.mean(q), p - 1.0);
  });
}

struct Constraint {
  std::string name;
  double margin;        // signed slack; satisfied when > 0 (strict) or >= 0
  bool strict = true;

  bool satisfied() const { return strict ? margin > 0.0 : margin >= 0.0; }
};

struct MembershipReport {
  bool member = true;
  std::vector<Constraint> constraints;
  std::string binding;  // constraint with the smallest margin

  void add(std::string name, double margin, bool strict = true) {
    constraints.push_back({std::move(name), margin, strict});
  }

  // Sets member and binding from the constraints.
  void finalize() {
    member = std::all_of(constraints.begin(), constraints.end(),
                         [](const Constraint& c) { return c.satisfied(); });
    auto it = std::min_element(constraints.begin(), constraints.end(),
                               [](const Constraint& a, const Constraint& b) { return a.margin < b.margin; });
    binding = it == constraints.end() ? std::string{} : it->name;
  }

  const Constraint* find(const std::string& name) const {
    for (const auto& c : constraints) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

namespace detail {

inline double inv_conj(double p) { return 1.0 - 1.0 / p; }  // 1/p'

}  // namespace detail

// w in V_{p(.)}(R^n, Pi): -n/p(x_k) < b_k < n/p'(x_k) and
// -n/p_inf < b_inf + sum b_k < n/p'_inf.
inline MembershipReport v_pdot_membership(const PowerWeight& w, const ExponentField& p, int dim) {
  const auto far = p.far_field(dim);
  if (!far) throw std::invalid_argument("v_pdot_membership: exponent is not constant outside a ball");
  const double n = dim;
  MembershipReport rep;
  double beta_sum = 0.0;
  for (std::size_t k = 0; k < w.singular().size(); ++k) {
    const auto& s = w.singular()[k];
    const double pk = p(s.location);
    const std::string tag = "x_" + std::to_string(k + 1);
    rep.add("-n/p(" + tag + ")", s.beta + n / pk);
    rep.add("n/p'(" + tag + ")", n * detail::inv_conj(pk) - s.beta);
    beta_sum += s.beta;
  }
  const double total = w.beta_inf() + beta_sum;
  rep.add("-n/p_inf", total + n / far->p_inf);
  rep.add("n/p'_inf", n * detail::inv_conj(far->p_inf) - total);
  rep.finalize();
  return rep;
}

struct CorollaryReport {
  MembershipReport hypotheses;
  std::vector<MembershipReport> component_memberships;  // w_j in V_{p_j(.)}
  MembershipReport product_membership;                   // w_1...w_N in V_{p(.)}
  double r0 = 0.0;
  std::vector<double> lh0_moduli;  // per p_j, at the finer of two resolutions
};

// Checks every hypothesis of the weighted multilinear multiplier corollary for
// exponents p_1..p_N and weights w_1..w_N of the power form sharing x0 and x_k.
inline CorollaryReport corollary_hypothesis_check(const std::vector<ExponentField>& ps,
                                                  const std::vector<PowerWeight>& ws, double s, int dim) {
  if (ps.empty() || ps.size() != ws.size()) {
    throw std::invalid_argument("corollary_hypothesis_check: need one weight per exponent");
  }
  const int big_n = static_cast<int>(ps.size());
  const double n = dim;
  const double nn = big_n * n;
  CorollaryReport out;
  auto& rep = out.hypotheses;

  rep.add("s>Nn/2", s - nn / 2.0);
  rep.add("s<=Nn", nn - s, false);
  out.r0 = nn / s;

  const ExponentField p = harmonic_sum(ps);
  rep.add("1<p_-", p.p_minus() - 1.0);

  // common geometry of the weights
  std::vector<Point> points;
  for (const auto& s_pt : ws.front().singular()) points.push_back(s_pt.location);
  bool same_geometry = true;
  for (const auto& w : ws) {
    if (w.singular().size() != points.size()) same_geometry = false;
    for (std::size_t k = 0; same_geometry && k < points.size(); ++k) {
      same_geometry = w.singular()[k].location == points[k];
    }
  }
  rep.add("weights share singular points", same_geometry ? 1.0 : -1.0);

  // grid for the LH0 refinement probe: covers every ball and singular point
  double reach = 1.0;
  for (const auto& pj : ps) {
    if (auto f = pj.far_field(dim)) reach = std::max(reach, norm2(f->center) + f->radius);
  }
  for (const auto& x : points) reach = std::max(reach, norm2(x));
  const double probe_l = reach + 1.0;

  const auto far_p = p.far_field(dim);
  for (int j = 0; j < big_n; ++j) {
    const auto& pj = ps[j];
    const std::string tag = "j=" + std::to_string(j + 1);
    rep.add("r0<(p_j)_- " + tag, pj.p_minus() - out.r0);
    rep.add("(p_j)_+<inf " + tag, std::isfinite(pj.p_plus()) ? 1.0 : -1.0);

    const int coarse_n = dim == 1 ? 256 : 64;
    const double m_coarse = lh0_modulus(pj, GridSpec(dim, probe_l, coarse_n));
    const double m_fine = lh0_modulus(pj, GridSpec(dim, probe_l, 2 * coarse_n));
    out.lh0_moduli.push_back(m_fine);
    const double growth = m_coarse > 0.0 ? m_fine / m_coarse - 1.0 : 0.0;
    rep.add("p_j in LH0 " + tag, 0.05 - growth);

    const auto far = pj.far_field(dim);
    rep.add("p_j constant outside a ball " + tag, far ? 1.0 : -1.0);
    if (!far || !far_p || !same_geometry) continue;

    double beta_sum = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) {
      const double b = ws[j].singular()[k].beta;
      const double pjk = pj(points[k]);
      const double pk = p(points[k]);
      const std::string kt = " k=" + std::to_string(k + 1) + " " + tag;
      rep.add("-n/p_j(x_k)" + kt, b + n / pjk);
      rep.add("min{n/p_j'(x_k),n/(Np'(x_k))}" + kt,
              std::min(n * detail::inv_conj(pjk), n * detail::inv_conj(pk) / big_n) - b);
      beta_sum += b;
    }
    const double total = ws[j].beta_inf() + beta_sum;
    rep.add("-n/(p_j)_inf " + tag, total + n / far->p_inf);
    rep.add("min{n/(p_j)_inf',n/(Np_inf')} " + tag,
            std::min(n * detail::inv_conj(far->p_inf), n * detail::inv_conj(far_p->p_inf) / big_n) - total);
  }
  rep.finalize();

  if (same_geometry && far_p) {
    PowerWeight product;
    bool ok = true;
    for (int j = 0; j < big_n; ++j) {
      if (!ps[j].far_field(dim)) {
        ok = false;
        break;
      }
      out.component_memberships.push_back(v_pdot_membership(ws[j], ps[j], dim));
      product = product * ws[j];
    }
    if (ok) out.product_membership = v_pdot_membership(product, p, dim);
  }
  return out;
}

}  // namespace vlm

#endif  // VLMULT_WEIGHTS_HPP
