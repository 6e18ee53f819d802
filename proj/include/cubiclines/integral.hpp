#pragma once

// The archimedean side: the oscillatory integrals u(gamma) and v(gamma; P),
// and two independent estimators of the singular integral.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "cubiclines/core.hpp"
#include "cubiclines/forms.hpp"

namespace cubiclines {

/// Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline QuadratureRule gauss_legendre(int m) {
  require(m >= 1, "gauss_legendre: order must be >= 1");
  QuadratureRule r;
  r.nodes.resize(static_cast<std::size_t>(m));
  r.weights.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (m == 1) p0 = 1.0;
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= m; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = m * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[static_cast<std::size_t>(i)] = -x;
    r.nodes[static_cast<std::size_t>(m - 1 - i)] = x;
    r.weights[static_cast<std::size_t>(i)] = w;
    r.weights[static_cast<std::size_t>(m - 1 - i)] = w;
  }
  if (m % 2 == 1) r.nodes[static_cast<std::size_t>(m / 2)] = 0.0;
  return r;
}

/// Composite rule: `panels` equal panels on [a, b], each with `order` nodes.
inline QuadratureRule composite_rule(double a, double b, int panels, int order) {
  const auto base = gauss_legendre(order);
  QuadratureRule r;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t k = 0; k < base.nodes.size(); ++k) {
      r.nodes.push_back(mid + 0.5 * h * base.nodes[k]);
      r.weights.push_back(0.5 * h * base.weights[k]);
    }
  }
  return r;
}

struct OscillatoryOptions {
  int order = 16;                    // Gauss nodes per panel and axis
  double max_evaluations = 4e9;      // integrand evaluations before giving up
  double envelope = 1e3;             // largest supported |gamma|_inf
};

namespace detail {

/// Tensor quadrature of e(gamma . nu_3(xi, eta)) over [-1, 1]^2.
inline cplx tensor_u(const std::array<double, 4>& g, const QuadratureRule& rule) {
  ComplexSum outer;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double xi = rule.nodes[i];
    // Cubic in eta for fixed xi.
    const double c3 = g[3], c2 = g[2] * xi, c1 = g[1] * xi * xi, c0 = g[0] * xi * xi * xi;
    cplx inner{0.0, 0.0};
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double eta = rule.nodes[j];
      inner += rule.weights[j] * expi(c0 + eta * (c1 + eta * (c2 + eta * c3)));
    }
    outer.add(rule.weights[i] * inner);
  }
  return outer.value();
}

}  // namespace detail

/// u(gamma) = integral over [-1,1]^2 of e(gamma1 xi^3 + gamma2 xi^2 eta +
/// gamma3 xi eta^2 + gamma4 eta^3). Panel count starts proportional to
/// 1 + sum |gamma_i| and doubles until successive results agree to `tol`.
inline cplx u_eval(const std::array<double, 4>& gamma, double tol = 1e-10,
                   const OscillatoryOptions& opt = {}) {
  require(tol > 0.0, "u_eval: tol must be > 0");
  double size = 0.0;
  for (auto g : gamma) {
    require(std::isfinite(g), "u_eval: gamma must be finite");
    require(std::abs(g) <= opt.envelope,
            "u_eval: |gamma|_inf above the supported envelope " + format_g12(opt.envelope));
    size += std::abs(g);
  }
  int panels = std::max(1, static_cast<int>(std::ceil(0.5 * (1.0 + size))));
  cplx prev = detail::tensor_u(gamma, composite_rule(-1.0, 1.0, panels, opt.order));
  for (;;) {
    panels *= 2;
    const double n = double(panels) * opt.order;
    if (n * n > opt.max_evaluations)
      throw ConvergenceError("u_eval: no convergence to tol " + format_g12(tol) +
                             " within the evaluation budget");
    cplx next = detail::tensor_u(gamma, composite_rule(-1.0, 1.0, panels, opt.order));
    if (std::abs(next - prev) <= tol) return next;
    prev = next;
  }
}

/// v(gamma; P) over [-P, P]^2, through v(gamma; P) = P^2 u(P^3 gamma).
inline cplx v_eval(const std::array<double, 4>& gamma, double P, double tol = 1e-10,
                   const OscillatoryOptions& opt = {}) {
  require(P > 0.0, "v_eval: P must be > 0");
  const double p3 = P * P * P;
  return P * P * u_eval({p3 * gamma[0], p3 * gamma[1], p3 * gamma[2], p3 * gamma[3]}, tol / (P * P), opt);
}

/// prod_j u(c_j gamma).
inline double singular_integrand(const CoefficientVector& c, const std::array<double, 4>& gamma,
                                 double tol = 1e-12) {
  cplx prod{1.0, 0.0};
  for (auto cj : c.entries()) {
    const double k = double(cj);
    prod *= u_eval({k * gamma[0], k * gamma[1], k * gamma[2], k * gamma[3]}, tol);
  }
  return prod.real();
}

// ---------------------------------------------------------------------------
// Monte-Carlo slab estimator
// ---------------------------------------------------------------------------

/// Counter-based generator: the stream for sample i depends only on (seed, i).
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index)
      : state_(mix(seed ^ mix(index + 0x9e3779b97f4a7c15ULL))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t state_;
};

struct DensityEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

namespace detail {

struct Interval {
  double lo;
  double hi;
  double length() const { return hi > lo ? hi - lo : 0.0; }
};

inline Interval intersect(Interval a, Interval b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

inline Interval sorted(double a, double b) { return a <= b ? Interval{a, b} : Interval{b, a}; }

/// Values t with |k t^3 + r| <= sigma, as an interval clipped to [-1, 1].
inline Interval cubic_window(double k, double r, double sigma) {
  auto w = sorted((-r - sigma) / k, (-r + sigma) / k);
  return intersect({std::cbrt(w.lo), std::cbrt(w.hi)}, {-1.0, 1.0});
}

/// Length of {y in [-1,1] : |c x^2 y + r2| <= s, |c x y^2 + r3| <= s} intersected with `base`.
inline double admissible_y_length(double c, double x, double r2, double r3, double sigma,
                                  Interval base) {
  const double k2 = c * x * x;
  Interval from2 = {-1.0, 1.0};
  if (k2 != 0.0) {
    from2 = sorted((-r2 - sigma) / k2, (-r2 + sigma) / k2);
  } else if (std::abs(r2) > sigma) {
    return 0.0;
  }
  Interval y = intersect(base, from2);
  if (y.length() == 0.0) return 0.0;
  const double k3 = c * x;
  if (k3 == 0.0) return std::abs(r3) <= sigma ? y.length() : 0.0;
  // y^2 in [lo, hi]: y in [-sqrt(hi), -sqrt(lo)] u [sqrt(lo), sqrt(hi)].
  auto sq = sorted((-r3 - sigma) / k3, (-r3 + sigma) / k3);
  if (sq.hi < 0.0) return 0.0;
  const double top = std::sqrt(sq.hi), bot = std::sqrt(std::max(sq.lo, 0.0));
  return intersect(y, {bot, top}).length() + intersect(y, {-top, -bot}).length();
}

}  // namespace detail

/// Estimates (2 sigma)^{-4} vol{(x, y) in [-1,1]^{2s} : |Phi_l(x, y)| <= sigma, l = 1..4}
/// where Phi = sum_j c_j nu_3(x_j, y_j). Conditional Monte Carlo: all pairs
/// are sampled; then, for each pair j in turn, the other pairs are held fixed,
/// the x_j-window from Phi_1 and the y_j-window from Phi_4 are solved exactly,
/// x_j is redrawn uniformly in its window, and the admissible y_j-length from
/// Phi_2, Phi_3, Phi_4 is computed in closed form. Each of the s terms is an
/// unbiased estimate of the slab probability; a sample is their mean.
inline DensityEstimate singular_integral_mc(const CoefficientVector& c, double sigma,
                                            std::uint64_t samples, std::uint64_t seed,
                                            const Parallel& par = {}, const Budget& budget = {}) {
  require(sigma > 0.0, "singular_integral_mc: sigma must be > 0");
  require(samples >= 2, "singular_integral_mc: need at least 2 samples");
  const std::size_t s = c.size();
  check_budget(budget, "singular_integral_mc", double(samples) * double(12 * s + 8));
  constexpr std::uint64_t kChunk = 1 << 16;
  const std::size_t chunks = static_cast<std::size_t>((samples + kChunk - 1) / kChunk);
  std::vector<CompensatedSum> sum(chunks), sum_sq(chunks);
  for_each_chunk(chunks, par, [&](std::size_t k) {
    const std::uint64_t begin = k * kChunk, end = std::min<std::uint64_t>(samples, begin + kChunk);
    CompensatedSum acc, acc2;
    std::vector<std::array<double, 4>> terms(s);
    for (std::uint64_t i = begin; i < end; ++i) {
      SampleStream rng(seed, i);
      double total[4] = {0.0, 0.0, 0.0, 0.0};
      for (std::size_t j = 0; j < s; ++j) {
        const double x = rng.uniform(-1.0, 1.0), y = rng.uniform(-1.0, 1.0);
        const double cj = double(c[j]);
        terms[j] = {cj * x * x * x, cj * x * x * y, cj * x * y * y, cj * y * y * y};
        for (int l = 0; l < 4; ++l) total[l] += terms[j][l];
      }
      double g = 0.0;
      for (std::size_t j = 0; j < s; ++j) {
        double r[4];
        for (int l = 0; l < 4; ++l) r[l] = total[l] - terms[j][l];
        const double cj = double(c[j]);
        const auto wx = detail::cubic_window(cj, r[0], sigma);
        const auto wy = detail::cubic_window(cj, r[3], sigma);
        const double u = rng.uniform();
        if (wx.length() > 0.0 && wy.length() > 0.0) {
          const double xj = wx.lo + u * (wx.hi - wx.lo);
          g += wx.length() * detail::admissible_y_length(cj, xj, r[1], r[2], sigma, wy) / 4.0;
        }
      }
      g /= double(s);
      acc.add(g);
      acc2.add(g * g);
    }
    sum[k] = acc;
    sum_sq[k] = acc2;
  });
  CompensatedSum total, total_sq;
  for (std::size_t k = 0; k < chunks; ++k) {
    total.add(sum[k]);
    total_sq.add(sum_sq[k]);
  }
  const double n = double(samples);
  const double mean = total.value() / n;
  const double var = std::max(0.0, (total_sq.value() / n - mean * mean) * n / (n - 1.0));
  const double scale = std::pow(2.0, 2.0 * double(s)) / std::pow(2.0 * sigma, 4.0);
  DensityEstimate e;
  e.value = scale * mean;
  e.standard_error = scale * std::sqrt(var / n);
  e.samples = samples;
  e.sigma = sigma;
  e.seed = seed;
  return e;
}

/// The estimator at sigma and sigma/2, side by side, with the Richardson
/// extrapolation assuming an O(sigma^2) slab bias.
struct SlabConvergence {
  DensityEstimate coarse;
  DensityEstimate fine;
  double relative_difference = 0.0;
  double extrapolated = 0.0;
};

inline SlabConvergence singular_integral_mc_pair(const CoefficientVector& c, double sigma,
                                                 std::uint64_t samples, std::uint64_t seed,
                                                 const Parallel& par = {}, const Budget& budget = {}) {
  SlabConvergence out;
  out.coarse = singular_integral_mc(c, sigma, samples, seed, par, budget);
  out.fine = singular_integral_mc(c, sigma / 2.0, samples, seed, par, budget);
  out.relative_difference =
      std::abs(out.coarse.value - out.fine.value) / std::max(std::abs(out.fine.value), 1e-300);
  out.extrapolated = (4.0 * out.fine.value - out.coarse.value) / 3.0;
  return out;
}

// ---------------------------------------------------------------------------
// Tensor-grid estimator
// ---------------------------------------------------------------------------

struct QuadGridOptions {
  int panels = 2;  // per half-axis [0, 1] of the (xi, eta) node set
  int order = 20;
};

/// Trapezoid rule on a grid x grid x grid x grid lattice over [-R, R]^4 for
/// integral prod_j u(c_j gamma) d gamma. u is evaluated on the whole lattice at
/// once: by the symmetries (xi, eta) -> (+-xi, +-eta) of the square,
///   u(gamma) = 4 sum_k w_k cos(2 pi (g1 a_k + g3 c_k)) cos(2 pi (g2 b_k + g4 d_k))
/// over quadrant nodes, where (a, b, c, d) = nu_3(xi_k, eta_k), which turns
/// the lattice evaluation into a product of two (grid^2 x K) matrices.
inline double singular_integral_quad(const CoefficientVector& c, double R, int grid,
                                     const QuadGridOptions& opt = {}, const Budget& budget = {},
                                     const Parallel& par = {}) {
  require(R >= 0.0, "singular_integral_quad: R must be >= 0");
  require(grid >= 2, "singular_integral_quad: grid must be >= 2");
  if (R == 0.0) return 0.0;
  const auto half = composite_rule(0.0, 1.0, opt.panels, opt.order);
  const std::size_t n1 = half.nodes.size(), K = n1 * n1, G = static_cast<std::size_t>(grid),
                    G2 = G * G;
  std::vector<std::int64_t> distinct;
  for (auto cj : c.entries())
    if (std::find(distinct.begin(), distinct.end(), cj) == distinct.end()) distinct.push_back(cj);
  check_budget(budget, "singular_integral_quad",
               double(distinct.size()) * double(G2) * double(G2) * double(K),
               double(distinct.size() + 1) * double(G2) * double(G2) * 8.0 + 4.0 * G2 * K * 8.0);

  std::vector<double> gammas(G), tw(G);
  for (std::size_t i = 0; i < G; ++i) {
    gammas[i] = -R + 2.0 * R * double(i) / double(G - 1);
    tw[i] = (i == 0 || i + 1 == G) ? 0.5 : 1.0;
  }
  const double h = 2.0 * R / double(G - 1);

  std::vector<double> ka(K), kb(K), kc(K), kd(K), kw(K);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      const double x = half.nodes[i], y = half.nodes[j];
      const std::size_t k = i * n1 + j;
      ka[k] = x * x * x;
      kb[k] = x * x * y;
      kc[k] = x * y * y;
      kd[k] = y * y * y;
      kw[k] = 4.0 * half.weights[i] * half.weights[j];
    }

  std::vector<double> integrand(G2 * G2, 1.0);
  std::vector<double> u(G2 * G2);
  std::vector<double> m13(G2 * K), m24(G2 * K);
  for (auto cj : distinct) {
    const double k = double(cj);
    for (std::size_t i = 0; i < G; ++i)
      for (std::size_t j = 0; j < G; ++j)
        for (std::size_t n = 0; n < K; ++n) {
          const double g_i = k * gammas[i], g_j = k * gammas[j];
          m13[(i * G + j) * K + n] = kw[n] * std::cos(kTwoPi * (g_i * ka[n] + g_j * kc[n]));
          m24[(i * G + j) * K + n] = std::cos(kTwoPi * (g_i * kb[n] + g_j * kd[n]));
        }
    // u[(i1, i3), (i2, i4)] = sum_n m13[(i1, i3), n] m24[(i2, i4), n]
    for_each_chunk(G2, par, [&](std::size_t r13) {
      const double* a = &m13[r13 * K];
      for (std::size_t r24 = 0; r24 < G2; ++r24) {
        const double* b = &m24[r24 * K];
        double acc = 0.0;
        for (std::size_t n = 0; n < K; ++n) acc += a[n] * b[n];
        u[r13 * G2 + r24] = acc;
      }
    });
    const auto mult = static_cast<unsigned>(std::count(c.entries().begin(), c.entries().end(), cj));
    for (std::size_t idx = 0; idx < u.size(); ++idx) {
      double p = 1.0;
      for (unsigned e = 0; e < mult; ++e) p *= u[idx];
      integrand[idx] *= p;
    }
  }
  CompensatedSum total;
  for (std::size_t r13 = 0; r13 < G2; ++r13)
    for (std::size_t r24 = 0; r24 < G2; ++r24) {
      const double w = tw[r13 / G] * tw[r13 % G] * tw[r24 / G] * tw[r24 % G];
      total.add(w * integrand[r13 * G2 + r24]);
    }
  return total.value() * h * h * h * h;
}

}  // namespace cubiclines
