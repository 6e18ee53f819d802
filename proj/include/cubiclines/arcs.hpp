#pragma once

// Arc dissections: the common-denominator arcs N_delta in [0,1)^4, the
// one-dimensional arcs M(H), the pruning shells between M(H)^4 and
// M(H/2)^4, exact arc measures, Dirichlet approximation, and the kernels
// K and T from the variable-shifting argument.

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cubiclines/core.hpp"
#include "cubiclines/forms.hpp"

namespace cubiclines {

struct RationalApprox {
  std::array<std::int64_t, 4> a{};  // only a[0] is used for scalar arcs
  std::int64_t q = 1;
  double distance = 0.0;
};

enum class Verdict { major_N, minor_n, M, m };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::major_N: return "major_N";
    case Verdict::minor_n: return "minor_n";
    case Verdict::M: return "M";
    case Verdict::m: return "m";
  }
  return "?";
}

struct ArcClassification {
  std::array<double, 4> point{};  // only point[0] is used for scalar arcs
  double parameter = 0.0;         // delta for N, H for M
  double X = 0.0;
  Verdict verdict = Verdict::minor_n;
  std::optional<RationalApprox> witness;

  bool major() const { return verdict == Verdict::major_N || verdict == Verdict::M; }
};

namespace detail {

/// |t| measured on the circle R/Z.
inline double circle_distance(double t) {
  const double f = frac(t);
  return std::min(f, 1.0 - f);
}

}  // namespace detail

/// Membership in N_delta: some q <= X^delta and a in [1, q]^4 with
/// gcd(q, a_1, ..., a_4) = 1 and max_i |alpha_i - a_i/q| <= X^{delta-3},
/// distances taken modulo 1 so that alpha_i near 0 sees a_i = q.
inline ArcClassification classify_N(const std::array<double, 4>& alpha, double delta, double X) {
  require(X >= 2.0, "classify_N: X must be >= 2");
  require(delta > 0.0 && delta <= 3.0, "classify_N: delta must lie in (0, 3]");
  ArcClassification out;
  for (int i = 0; i < 4; ++i) out.point[i] = frac(alpha[i]);
  out.parameter = delta;
  out.X = X;
  const double radius = std::pow(X, delta - 3.0);
  const double q_max_d = std::floor(std::pow(X, delta) * (1.0 + 1e-15));
  require(q_max_d <= 1e7, "classify_N: X^delta too large to enumerate denominators");
  const auto q_max = static_cast<std::int64_t>(q_max_d);
  for (std::int64_t q = 1; q <= q_max; ++q) {
    // Per coordinate, every residue a with circular distance <= radius.
    std::array<std::vector<std::int64_t>, 4> cand;
    bool empty = false;
    for (int i = 0; i < 4 && !empty; ++i) {
      const double t = out.point[i] * double(q);
      const auto lo = static_cast<std::int64_t>(std::ceil(t - radius * double(q)));
      const auto hi = static_cast<std::int64_t>(std::floor(t + radius * double(q)));
      for (std::int64_t k = lo; k <= hi && std::int64_t(cand[i].size()) < q; ++k) {
        std::int64_t a = mod_floor(k, q);
        if (a == 0) a = q;
        if (detail::circle_distance(out.point[i] - double(a) / double(q)) <= radius)
          cand[i].push_back(a);
      }
      empty = cand[i].empty();
    }
    if (empty) continue;
    for (auto a1 : cand[0])
      for (auto a2 : cand[1])
        for (auto a3 : cand[2])
          for (auto a4 : cand[3]) {
            if (gcd4(q, a1, a2, a3, a4) != 1) continue;
            RationalApprox w;
            w.q = q;
            w.a = {a1, a2, a3, a4};
            for (int i = 0; i < 4; ++i)
              w.distance = std::max(w.distance, detail::circle_distance(out.point[i] - double(w.a[i]) / double(q)));
            out.verdict = Verdict::major_N;
            out.witness = w;
            return out;
          }
  }
  out.verdict = Verdict::minor_n;
  return out;
}

/// Membership in M(H): alpha in [0, 1) with |alpha - a/q| <= H/(q X^3) for
/// some q <= H, 1 <= a <= q, gcd(q, a) = 1. No wraparound: the arc at a = q
/// covers only the part of [1 - H/(qX^3), 1) inside the unit interval.
inline ArcClassification classify_M(double alpha, double H, double X) {
  require(X >= 1.0, "classify_M: X must be >= 1");
  require(H > 0.0 && H <= std::pow(X, 1.5) * (1.0 + 1e-12), "classify_M: H must lie in (0, X^{3/2}]");
  require(alpha >= 0.0 && alpha < 1.0, "classify_M: alpha must lie in [0, 1)");
  ArcClassification out;
  out.point[0] = alpha;
  out.parameter = H;
  out.X = X;
  out.verdict = Verdict::m;
  const double x3 = X * X * X;
  const auto q_max = static_cast<std::int64_t>(std::floor(H));
  for (std::int64_t q = 1; q <= q_max; ++q) {
    const double radius = H / (double(q) * x3);
    const auto nearest = static_cast<std::int64_t>(std::llround(alpha * double(q)));
    for (std::int64_t a = std::max<std::int64_t>(1, nearest - 1); a <= std::min(q, nearest + 1); ++a) {
      if (std::gcd(q, a) != 1) continue;
      const double d = std::abs(alpha - double(a) / double(q));
      if (d <= radius) {
        out.verdict = Verdict::M;
        out.witness = RationalApprox{{a, 0, 0, 0}, q, d};
        return out;
      }
    }
  }
  return out;
}

inline bool in_M(double alpha, double H, double X) { return classify_M(alpha, H, X).verdict == Verdict::M; }

/// Membership in the pruning shell P_l(H), l = 1..4, straight from the set
/// differences of nested products of M(H) and M(H/2):
///   P_1 = M(H)^4 \ (M(H)^3 x M(H/2))
///   P_2 = (M(H)^3 x M(H/2)) \ (M(H)^2 x M(H/2)^2)
///   P_3 = (M(H)^2 x M(H/2)^2) \ (M(H) x M(H/2)^3)
///   P_4 = (M(H) x M(H/2)^3) \ M(H/2)^4
inline bool in_shell(int l, const std::array<double, 4>& alpha, double H, double X) {
  require(l >= 1 && l <= 4, "in_shell: shell index must be 1..4");
  std::array<bool, 4> big{}, small{};
  for (int i = 0; i < 4; ++i) {
    big[i] = in_M(alpha[i], H, X);
    small[i] = in_M(alpha[i], H / 2.0, X);
  }
  // Product with the last k coordinates in M(H/2), the rest in M(H).
  auto product = [&](int k) {
    for (int i = 0; i < 4; ++i)
      if (!(i >= 4 - k ? small[i] : big[i])) return false;
    return true;
  };
  return product(l - 1) && !product(l);
}

/// Index of the shell containing alpha, or 0 if none does.
inline int shell_index(const std::array<double, 4>& alpha, double H, double X) {
  for (int l = 1; l <= 4; ++l)
    if (in_shell(l, alpha, H, X)) return l;
  return 0;
}

/// The product sets M_l(H): coordinate l lies in the minor arcs m(H), the
/// others are free.
inline bool in_minor_product(int l, const std::array<double, 4>& alpha, double H, double X) {
  require(l >= 1 && l <= 4, "in_minor_product: index must be 1..4");
  return !in_M(alpha[static_cast<std::size_t>(l - 1)], H, X);
}

/// Last continued-fraction convergent b/r of alpha with r <= Q, so that
/// |alpha - b/r| <= 1/(r(Q+1)). The double alpha is expanded exactly.
inline RationalApprox dirichlet_approx(double alpha, std::int64_t Q) {
  require(Q >= 1, "dirichlet_approx: Q must be >= 1");
  require(Q <= (std::int64_t{1} << 53), "dirichlet_approx: Q must be <= 2^53");
  require(std::isfinite(alpha), "dirichlet_approx: alpha must be finite");
  const double fl = std::floor(alpha);
  const double f = alpha - fl;  // exact for |alpha| < 2^52
  const auto base = static_cast<std::int64_t>(fl);
  RationalApprox out;
  out.q = 1;
  out.a[0] = base;
  if (f < std::ldexp(1.0, -62)) {
    out.distance = f;
    return out;
  }
  // f = num / den exactly.
  int e = 0;
  const double m = std::frexp(f, &e);  // f = m 2^e, m in [0.5, 1)
  i128 num = static_cast<i128>(std::ldexp(m, 53));
  i128 den = i128{1} << (53 - e);
  // Convergents p_k / q_k of num/den.
  i128 p_prev = 0, q_prev = 1, p = 1, qq = 0;
  i128 n = num, d = den;
  while (d != 0) {
    const i128 t = n / d;
    const i128 p_next = t * p + p_prev, q_next = t * qq + q_prev;
    if (q_next > Q) break;
    p_prev = p;
    q_prev = qq;
    p = p_next;
    qq = q_next;
    const i128 r = n - t * d;
    n = d;
    d = r;
  }
  out.q = static_cast<std::int64_t>(qq);
  out.a[0] = base * out.q + static_cast<std::int64_t>(p);
  out.distance = std::abs(f - double(p) / double(qq));
  return out;
}

// ---------------------------------------------------------------------------
// Measures
// ---------------------------------------------------------------------------

struct ArcMeasure {
  double value = 0.0;
  std::optional<std::pair<i128, i128>> exact;  // numerator, denominator
  double square_bound = 0.0;                   // H^2 X^-3
  double factor_two_bound = 0.0;               // 2 H^2 X^-3
  double naive_cover_bound = 0.0;              // sum_{q<=H} phi(q) 2 H/(q X^3)
  std::size_t intervals = 0;
};

namespace detail {

inline double naive_cover(double H, double X) {
  double total = 0.0;
  for (std::int64_t q = 1; q <= static_cast<std::int64_t>(std::floor(H)); ++q)
    total += double(euler_phi(q)) * 2.0 * H / (double(q) * X * X * X);
  return total;
}

template <class T>
T merged_length(std::vector<std::pair<T, T>>& iv) {
  std::sort(iv.begin(), iv.end());
  T total = 0;
  std::size_t i = 0;
  while (i < iv.size()) {
    T lo = iv[i].first, hi = iv[i].second;
    std::size_t j = i + 1;
    while (j < iv.size() && iv[j].first <= hi) {
      hi = std::max(hi, iv[j].second);
      ++j;
    }
    total += hi - lo;
    i = j;
  }
  return total;
}

}  // namespace detail

/// Lebesgue measure of M(H) by merging the closed arcs clipped to [0, 1).
/// For integer H and X the union is also computed exactly over the common
/// denominator lcm(1..H) X^3.
inline ArcMeasure measure_M(double H, double X, const Budget& budget = {}) {
  require(X >= 1.0, "measure_M: X must be >= 1");
  require(H >= 0.0, "measure_M: H must be >= 0");
  ArcMeasure out;
  const double x3 = X * X * X;
  out.square_bound = H * H / x3;
  out.factor_two_bound = 2.0 * out.square_bound;
  if (H < 1.0) return out;
  check_budget(budget, "measure_M", H * H * std::log2(H * H + 2.0), H * H * 32.0);
  out.naive_cover_bound = detail::naive_cover(H, X);
  const auto q_max = static_cast<std::int64_t>(std::floor(H));

  std::vector<std::pair<double, double>> iv;
  for (std::int64_t q = 1; q <= q_max; ++q) {
    const double r = H / (double(q) * x3);
    for (std::int64_t a = 1; a <= q; ++a) {
      if (std::gcd(q, a) != 1) continue;
      const double c = double(a) / double(q);
      iv.push_back({std::max(0.0, c - r), std::min(1.0, c + r)});
    }
  }
  out.intervals = iv.size();
  out.value = detail::merged_length(iv);

  const bool integral = H == std::floor(H) && X == std::floor(X);
  if (integral && H <= 40 && X <= 1e6) {
    const auto Hi = static_cast<std::int64_t>(H);
    const auto Xi = static_cast<std::int64_t>(X);
    std::int64_t lcm = 1;
    for (std::int64_t k = 1; k <= Hi; ++k) lcm = std::lcm(lcm, k);
    const i128 L = lcm;
    const i128 X3 = checked_mul(checked_mul(Xi, Xi), Xi);
    const i128 D = checked_mul(L, X3);
    std::vector<std::pair<i128, i128>> ev;
    for (std::int64_t q = 1; q <= q_max; ++q) {
      const i128 scale = L / q;
      for (std::int64_t a = 1; a <= q; ++a) {
        if (std::gcd(q, a) != 1) continue;
        const i128 lo = checked_mul(checked_add(checked_mul(a, X3), -Hi), scale);
        const i128 hi = checked_mul(checked_add(checked_mul(a, X3), Hi), scale);
        ev.push_back({std::max<i128>(0, lo), std::min(D, hi)});
      }
    }
    out.exact = std::pair<i128, i128>{detail::merged_length(ev), D};
  }
  return out;
}

/// Exact check of mes(M(H)) <= 2 H^2 X^-3 when the exact union is available.
inline bool measure_within_factor_two(const ArcMeasure& m, std::int64_t H, std::int64_t X) {
  if (!m.exact) return m.value <= m.factor_two_bound;
  const auto [num, den] = *m.exact;
  // num / den <= 2 H^2 / X^3  <=>  num X^3 <= 2 H^2 den
  const i128 X3 = checked_mul(checked_mul(X, X), X);
  return checked_mul(num, X3) <= checked_mul(checked_mul(2 * H, H), den);
}

// ---------------------------------------------------------------------------
// Kernels
// ---------------------------------------------------------------------------

namespace detail {

/// sum_{y=1}^{X} e(-gamma y), closed form.
inline cplx geometric_kernel(double gamma, std::int64_t X) {
  double g = frac(gamma);
  if (g > 0.5) g -= 1.0;
  const double n = double(X);
  if (std::abs(g) < 1e-15) return {n, 0.0};
  const double ratio = std::sin(std::numbers::pi * n * g) / std::sin(std::numbers::pi * g);
  return ratio * expi(-g * (n + 1.0) / 2.0);
}

/// |sum_{|h| <= Y} e(h theta)| = |sin(pi (2Y+1) theta) / sin(pi theta)|.
inline double dirichlet_abs(double theta, std::int64_t Y) {
  double t = frac(theta);
  if (t > 0.5) t -= 1.0;
  const double n = 2.0 * double(Y) + 1.0;
  if (std::abs(t) < 1e-15) return n;
  // Reduce (2Y+1) t mod 1 before taking the sine for large Y.
  const double s = std::sin(std::numbers::pi * t);
  double nt = frac(frac_product(t, 2 * Y + 1));
  return std::abs(std::sin(std::numbers::pi * nt) / s);
}

}  // namespace detail

/// K(gamma1, gamma2) = sum_{1 <= y1, y2 <= X} e(-gamma1 y1 - gamma2 y2).
inline cplx kernel_K(double gamma1, double gamma2, std::int64_t X) {
  require(X >= 1, "kernel_K: X must be >= 1");
  return detail::geometric_kernel(gamma1, X) * detail::geometric_kernel(gamma2, X);
}

/// T(alpha, beta; X, Y) = sum_{1 <= z1, z2 <= X} |sum_{|h_i| <= Y}
/// e(-z1 L1(h, alpha) - z2 L2(h, alpha) - L3(h, beta))|. The inner sum
/// factors into three Dirichlet kernels.
inline double kernel_T(const std::array<double, 4>& alpha, const std::array<double, 3>& beta,
                       std::int64_t X, std::int64_t Y, const Parallel& par = {},
                       const Budget& budget = {}) {
  require(X >= 1, "kernel_T: X must be >= 1");
  require(Y >= 0, "kernel_T: Y must be >= 0");
  check_budget(budget, "kernel_T", double(X) * double(X) * 3.0);
  const std::size_t rows = static_cast<std::size_t>(X);
  std::vector<CompensatedSum> partial(rows);
  for_each_chunk(rows, par, [&](std::size_t r) {
    const double z1 = double(r + 1);
    CompensatedSum acc;
    for (std::int64_t k = 1; k <= X; ++k) {
      const double z2 = double(k);
      const double t1 = 3.0 * z1 * alpha[0] + z2 * alpha[1] + beta[0];
      const double t2 = 2.0 * z1 * alpha[1] + 2.0 * z2 * alpha[2] + beta[1];
      const double t3 = z1 * alpha[2] + 3.0 * z2 * alpha[3] + beta[2];
      acc.add(detail::dirichlet_abs(t1, Y) * detail::dirichlet_abs(t2, Y) * detail::dirichlet_abs(t3, Y));
    }
    partial[r] = acc;
  });
  CompensatedSum total;
  for (const auto& p : partial) total.add(p);
  return total.value();
}

}  // namespace cubiclines
