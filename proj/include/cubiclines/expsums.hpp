#pragma once

// Weyl sums over the square grid, complete sums S(q, a) modulo q, the local
// averages S(q), a truncated Euler product for the singular series, and the
// identity tying S(p^j) to exact congruence counts.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubiclines/core.hpp"
#include "cubiclines/counting.hpp"
#include "cubiclines/forms.hpp"

namespace cubiclines {

/// alpha in [0,1)^4 with optional beta in [0,1)^3 and theta in [0,1)^2.
/// Coordinates are reduced mod 1 on construction.
struct PhasePoint {
  std::array<double, 4> alpha{};
  std::optional<std::array<double, 3>> beta;
  std::optional<std::array<double, 2>> theta;

  PhasePoint() = default;
  explicit PhasePoint(std::array<double, 4> a, std::optional<std::array<double, 3>> b = {},
                      std::optional<std::array<double, 2>> t = {})
      : alpha(a), beta(b), theta(t) {
    for (auto& v : alpha) v = frac(v);
    if (beta)
      for (auto& v : *beta) v = frac(v);
    if (theta)
      for (auto& v : *theta) v = frac(v);
  }
};

/// F(alpha) = sum_{x,y} e(c (alpha1 x^3 + alpha2 x^2 y + alpha3 x y^2 + alpha4 y^3))
/// over 1 <= x, y <= X (positive) or |x|, |y| <= X (symmetric).
inline cplx weyl_sum_F(const PhasePoint& p, std::int64_t X, BoxRange range = BoxRange::positive,
                       std::int64_t coefficient = 1) {
  require(X >= 1, "weyl_sum_F: X must be >= 1");
  require(X <= 100000, "weyl_sum_F: X must be <= 1e5");
  require(coefficient != 0, "weyl_sum_F: coefficient must be nonzero");
  const std::int64_t lo = range == BoxRange::positive ? 1 : -X;
  ComplexSum acc;
  for (std::int64_t x = lo; x <= X; ++x) {
    for (std::int64_t y = lo; y <= X; ++y) {
      const std::int64_t m[4] = {coefficient * x * x * x, coefficient * x * x * y,
                                 coefficient * x * y * y, coefficient * y * y * y};
      double t = 0.0;
      for (int l = 0; l < 4; ++l) t += frac_product(p.alpha[l], m[l]);
      acc.add(expi(t));
    }
  }
  return acc.value();
}

/// F(alpha, beta, theta): the nine-phase sum over 1 <= x, y <= X.
inline cplx weyl_sum_full(const PhasePoint& p, std::int64_t X) {
  require(X >= 1, "weyl_sum_full: X must be >= 1");
  require(X <= 100000, "weyl_sum_full: X must be <= 1e5");
  const std::array<double, 3> beta = p.beta.value_or(std::array<double, 3>{});
  const std::array<double, 2> theta = p.theta.value_or(std::array<double, 2>{});
  ComplexSum acc;
  for (std::int64_t x = 1; x <= X; ++x) {
    for (std::int64_t y = 1; y <= X; ++y) {
      double t = frac_product(p.alpha[0], x * x * x) + frac_product(p.alpha[1], x * x * y) +
                 frac_product(p.alpha[2], x * y * y) + frac_product(p.alpha[3], y * y * y) +
                 frac_product(beta[0], x * x) + frac_product(beta[1], x * y) +
                 frac_product(beta[2], y * y) + frac_product(theta[0], x) +
                 frac_product(theta[1], y);
      acc.add(expi(t));
    }
  }
  return acc.value();
}

namespace detail {

inline std::vector<cplx> roots_of_unity(std::int64_t q) {
  std::vector<cplx> r(static_cast<std::size_t>(q));
  for (std::int64_t m = 0; m < q; ++m) {
    // Reduce to |m/q| <= 1/2 before scaling by 2 pi.
    double t = double(m) / double(q);
    if (2 * m > q) t -= 1.0;
    r[static_cast<std::size_t>(m)] = {std::cos(kTwoPi * t), std::sin(kTwoPi * t)};
  }
  return r;
}

}  // namespace detail

/// S(q, a) by the multiplicity vector: n_m = #{(x, y) mod q : Phi_a(x, y) = m}
/// followed by one pass over the q-th roots of unity.
inline cplx complete_sum(std::int64_t q, const std::array<std::int64_t, 4>& a) {
  require(q >= 1, "complete_sum: q must be >= 1");
  require(q <= (std::int64_t{1} << 24), "complete_sum: q must be below 2^24");
  std::array<std::int64_t, 4> r;
  for (int l = 0; l < 4; ++l) r[l] = mod_floor(a[l], q);
  std::vector<std::uint64_t> n(static_cast<std::size_t>(q), 0);
  for (std::int64_t x = 0; x < q; ++x) {
    const std::int64_t x2 = x * x % q, x3 = x2 * x % q;
    for (std::int64_t y = 0; y < q; ++y) {
      const std::int64_t y2 = y * y % q, y3 = y2 * y % q;
      std::int64_t phi = (r[0] * x3 % q + r[1] * (x2 * y % q) % q + r[2] * (x * y2 % q) % q +
                          r[3] * y3 % q) %
                         q;
      ++n[static_cast<std::size_t>(phi)];
    }
  }
  const auto roots = detail::roots_of_unity(q);
  ComplexSum acc;
  for (std::size_t m = 0; m < n.size(); ++m)
    if (n[m] != 0) acc.add(double(n[m]) * roots[m]);
  return acc.value();
}

enum class CompleteSumMethod { direct, multiplicity_vector, multi_axis_transform };

inline std::string_view to_string(CompleteSumMethod m) {
  switch (m) {
    case CompleteSumMethod::direct: return "direct";
    case CompleteSumMethod::multiplicity_vector: return "multiplicity-vector";
    case CompleteSumMethod::multi_axis_transform: return "multi-axis-transform";
  }
  return "?";
}

/// S(q, a) for every a in (Z/q)^4, stored row-major in (a1, a2, a3, a4).
class CompleteSumTable {
 public:
  CompleteSumTable(std::int64_t q, std::vector<cplx> values, CompleteSumMethod method)
      : q_(q), values_(std::move(values)), method_(method) {}

  std::int64_t modulus() const { return q_; }
  CompleteSumMethod method() const { return method_; }
  const std::vector<cplx>& values() const { return values_; }

  std::size_t index(const std::array<std::int64_t, 4>& a) const {
    std::size_t idx = 0;
    for (auto v : a) idx = idx * static_cast<std::size_t>(q_) + static_cast<std::size_t>(mod_floor(v, q_));
    return idx;
  }
  cplx operator()(const std::array<std::int64_t, 4>& a) const { return values_[index(a)]; }
  cplx operator[](std::size_t idx) const { return values_[idx]; }

 private:
  std::int64_t q_;
  std::vector<cplx> values_;
  CompleteSumMethod method_;
};

inline double complete_sum_table_cost(std::int64_t q, CompleteSumMethod method) {
  const double Q = double(q);
  switch (method) {
    case CompleteSumMethod::direct: return Q * Q * Q * Q * Q * Q;
    case CompleteSumMethod::multiplicity_vector: return Q * Q * Q * Q * (Q * Q + Q);
    case CompleteSumMethod::multi_axis_transform: return 4.0 * Q * Q * Q * Q * Q;
  }
  return 0.0;
}

/// Builds the full table. The default method takes the image measure of
/// nu_3 mod q on (Z/q)^4 and applies a length-q DFT along each axis in turn.
inline CompleteSumTable complete_sum_table(
    std::int64_t q, CompleteSumMethod method = CompleteSumMethod::multi_axis_transform,
    const Budget& budget = {}, const Parallel& par = {}) {
  require(q >= 1, "complete_sum_table: q must be >= 1");
  const double entries = double(q) * double(q) * double(q) * double(q);
  check_budget(budget, "complete_sum_table", complete_sum_table_cost(q, method),
               2.0 * entries * double(sizeof(cplx)));
  const auto Q = static_cast<std::size_t>(q);
  const std::size_t N = Q * Q * Q * Q;
  std::vector<cplx> out(N);

  if (method == CompleteSumMethod::multiplicity_vector) {
    for_each_chunk(Q, par, [&](std::size_t a1) {
      for (std::size_t rest = 0; rest < Q * Q * Q; ++rest) {
        std::array<std::int64_t, 4> a{std::int64_t(a1), std::int64_t(rest / (Q * Q)),
                                      std::int64_t(rest / Q % Q), std::int64_t(rest % Q)};
        out[a1 * Q * Q * Q + rest] = complete_sum(q, a);
      }
    });
    return {q, std::move(out), method};
  }

  const auto roots = detail::roots_of_unity(q);
  if (method == CompleteSumMethod::direct) {
    for_each_chunk(Q, par, [&](std::size_t a1) {
      for (std::size_t rest = 0; rest < Q * Q * Q; ++rest) {
        const std::int64_t a[4] = {std::int64_t(a1), std::int64_t(rest / (Q * Q)),
                                   std::int64_t(rest / Q % Q), std::int64_t(rest % Q)};
        ComplexSum acc;
        for (std::int64_t x = 0; x < q; ++x)
          for (std::int64_t y = 0; y < q; ++y) {
            const std::int64_t m[4] = {x * x % q * x % q, x * x % q * y % q, x * y % q * y % q,
                                       y * y % q * y % q};
            std::int64_t phi = 0;
            for (int l = 0; l < 4; ++l) phi = (phi + a[l] * m[l]) % q;
            acc.add(roots[static_cast<std::size_t>(phi)]);
          }
        out[a1 * Q * Q * Q + rest] = acc.value();
      }
    });
    return {q, std::move(out), method};
  }

  // Image measure of (x, y) -> nu_3(x, y) mod q.
  std::vector<cplx> cur(N, cplx{0.0, 0.0});
  for (std::int64_t x = 0; x < q; ++x)
    for (std::int64_t y = 0; y < q; ++y) {
      const std::size_t m1 = std::size_t(x * x % q * x % q), m2 = std::size_t(x * x % q * y % q),
                        m3 = std::size_t(x * y % q * y % q), m4 = std::size_t(y * y % q * y % q);
      cur[((m1 * Q + m2) * Q + m3) * Q + m4] += 1.0;
    }
  // Axis k has stride Q^(3-k). Each output is an independent fixed-order sum.
  for (int axis = 0; axis < 4; ++axis) {
    std::size_t stride = 1;
    for (int k = axis; k < 3; ++k) stride *= Q;
    const std::size_t outer = N / (stride * Q);
    for_each_chunk(outer, par, [&](std::size_t o) {
      std::vector<cplx> line(Q);
      for (std::size_t inner = 0; inner < stride; ++inner) {
        const std::size_t base = o * stride * Q + inner;
        bool any = false;
        for (std::size_t m = 0; m < Q; ++m) {
          line[m] = cur[base + m * stride];
          any = any || line[m] != cplx{0.0, 0.0};
        }
        if (!any) {
          for (std::size_t a = 0; a < Q; ++a) out[base + a * stride] = {0.0, 0.0};
          continue;
        }
        for (std::size_t a = 0; a < Q; ++a) {
          ComplexSum acc;
          for (std::size_t m = 0; m < Q; ++m)
            if (line[m] != cplx{0.0, 0.0}) acc.add(line[m] * roots[(a * m) % Q]);
          out[base + a * stride] = acc.value();
        }
      }
    });
    cur.swap(out);
  }
  return {q, std::move(cur), method};
}

struct LocalAverage {
  double value = 0.0;
  double imaginary_residue = 0.0;
};

/// S(q) = sum over a mod q with gcd(q, a1, a2, a3, a4) = 1 of
/// prod_j q^{-2} S(q, c_j a). A table for the same q may be passed in.
inline LocalAverage local_average(std::int64_t q, const CoefficientVector& c,
                                  const CompleteSumTable* table = nullptr,
                                  const Budget& budget = {}, const Parallel& par = {}) {
  require(q >= 1, "local_average: q must be >= 1");
  std::optional<CompleteSumTable> owned;
  if (table == nullptr) {
    owned.emplace(complete_sum_table(q, CompleteSumMethod::multi_axis_transform, budget, par));
    table = &*owned;
  }
  require(table->modulus() == q, "local_average: table modulus mismatch");

  // Group coefficients by residue so each distinct multiplier costs one lookup.
  std::vector<std::pair<std::int64_t, unsigned>> groups;
  for (auto cj : c.entries()) {
    const std::int64_t r = mod_floor(cj, q);
    auto it = std::find_if(groups.begin(), groups.end(), [&](auto& g) { return g.first == r; });
    if (it == groups.end())
      groups.push_back({r, 1});
    else
      ++it->second;
  }
  const auto Q = static_cast<std::size_t>(q);
  const double norm = 1.0 / (double(q) * double(q));
  std::vector<ComplexSum> slices(Q);
  for_each_chunk(Q, par, [&](std::size_t a1) {
    ComplexSum acc;
    for (std::size_t rest = 0; rest < Q * Q * Q; ++rest) {
      const std::array<std::int64_t, 4> a{std::int64_t(a1), std::int64_t(rest / (Q * Q)),
                                          std::int64_t(rest / Q % Q), std::int64_t(rest % Q)};
      if (gcd4(q, a[0], a[1], a[2], a[3]) != 1) continue;
      cplx prod{1.0, 0.0};
      for (const auto& [r, mult] : groups) {
        const std::array<std::int64_t, 4> ra{r * a[0] % q, r * a[1] % q, r * a[2] % q, r * a[3] % q};
        prod *= cpow((*table)(ra) * norm, mult);
      }
      acc.add(prod);
    }
    slices[a1] = acc;
  });
  ComplexSum total;
  for (const auto& sl : slices) total.add(sl);
  const cplx v = total.value();
  if (std::abs(v.imag()) > 1e-6 * std::max(std::abs(v.real()), 1e-6))
    throw Error("local_average: imaginary residue " + format_g12(v.imag()) + " for q=" +
                std::to_string(q) + " exceeds tolerance");
  return {v.real(), v.imag()};
}

/// S(p^0), ..., S(p^{h_max}) and their sum (the partial Euler factor).
struct LocalFactorTable {
  std::int64_t p = 0;
  int h_max = 0;
  std::vector<double> s_values;
  double partial_factor = 1.0;
};

inline LocalFactorTable local_factor(std::int64_t p, int h_max, const CoefficientVector& c,
                                     const Budget& budget = {}, const Parallel& par = {}) {
  require(is_prime(p), "local_factor: p must be prime");
  require(h_max >= 0, "local_factor: h_max must be >= 0");
  LocalFactorTable t;
  t.p = p;
  t.h_max = h_max;
  t.s_values.push_back(1.0);
  CompensatedSum sum;
  sum.add(1.0);
  for (int h = 1; h <= h_max; ++h) {
    const std::int64_t q = ipow(p, static_cast<unsigned>(h));
    const double v = local_average(q, c, nullptr, budget, par).value;
    t.s_values.push_back(v);
    sum.add(v);
  }
  t.partial_factor = sum.value();
  return t;
}

struct SeriesTruncation {
  std::int64_t p_max = 13;
  std::int64_t deep_prime_cutoff = 7;  // primes <= this use deep_h_max
  int deep_h_max = 2;
  int shallow_h_max = 1;

  int h_max(std::int64_t p) const { return p <= deep_prime_cutoff ? deep_h_max : shallow_h_max; }
};

struct SingularSeries {
  double value = 1.0;
  std::vector<LocalFactorTable> factors;
  double stability = 0.0;
  std::vector<std::int64_t> nonpositive_primes;
};

/// Truncated Euler product prod_{p <= P_max} (1 + sum_{1 <= h <= h_max(p)} S(p^h)).
/// `stability` is the relative change caused by the last prime's factor.
/// Nonpositive factors are listed in `nonpositive_primes`.
inline SingularSeries singular_series(const CoefficientVector& c, const SeriesTruncation& trunc = {},
                                      const Budget& budget = {}, const Parallel& par = {}) {
  require(c.size() >= 2, "singular_series: s must be >= 2");
  SingularSeries out;
  double before_last = 1.0;
  for (auto p : primes_up_to(trunc.p_max)) {
    auto f = local_factor(p, trunc.h_max(p), c, budget, par);
    if (!(f.partial_factor > 0.0)) out.nonpositive_primes.push_back(p);
    before_last = out.value;
    out.value *= f.partial_factor;
    out.factors.push_back(std::move(f));
  }
  if (!out.factors.empty())
    out.stability = std::abs(out.value - before_last) / std::max(std::abs(out.value), 1e-300);
  return out;
}

struct LocalIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
  double relative_error = 0.0;
  u128 congruence_count = 0;
};

/// sum_{j <= h} S(p^j) against p^{h(4 - 2s)} M(p^h), with M counted directly.
inline LocalIdentity local_identity_check(std::int64_t p, int h, const CoefficientVector& c,
                                          const CountConfig& cfg = {}) {
  require(is_prime(p), "local_identity_check: p must be prime");
  require(h >= 1, "local_identity_check: h must be >= 1");
  LocalIdentity r;
  r.lhs = local_factor(p, h, c, cfg.budget, cfg.parallel).partial_factor;
  const std::int64_t q = ipow(p, static_cast<unsigned>(h));
  r.congruence_count = count_local(q, c, cfg).count;
  const double scale = std::pow(double(p), double(h) * (4.0 - 2.0 * double(c.size())));
  r.rhs = scale * double(r.congruence_count);
  r.relative_error = std::abs(r.lhs - r.rhs) / std::max(std::abs(r.rhs), 1e-300);
  return r;
}

}  // namespace cubiclines
