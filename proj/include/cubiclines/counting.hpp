#pragma once

// Exact solution counts: rational lines in a box (brute force and
// meet-in-the-middle), the Parsell-Vinogradov mean value J_{s,2,3}(X), the
// eight-variable cube equation behind Hua's bound, and congruence counts
// modulo q. Every count is an exact integer, independent of worker count.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cubiclines/core.hpp"
#include "cubiclines/forms.hpp"

namespace cubiclines {

struct CountConfig {
  Budget budget;
  Parallel parallel;
};

struct CountParameters {
  std::size_t s = 0;
  std::int64_t X = 0;
  std::optional<CoefficientVector> c;
  std::optional<std::int64_t> q;
};

struct CountRecord {
  std::string label;
  CountParameters parameters;
  u128 count = 0;
  double wall_time = 0.0;  // seconds
};

/// Split of the variable indices for the hash join; A holds ceil(s/2)
/// indices and is enumerated, B (the smaller half) is tabulated.
struct HashJoinPlan {
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;
  double estimated_memory_bytes = 0.0;
};

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline double pow_d(double b, double e) { return std::pow(b, e); }

/// c * nu_3(x, y) for every (x, y) in the symmetric box, as int64 quads.
inline std::vector<std::array<std::int64_t, 4>> weighted_cubes(std::int64_t c, std::int64_t X) {
  std::vector<std::array<std::int64_t, 4>> out;
  out.reserve(static_cast<std::size_t>((2 * X + 1) * (2 * X + 1)));
  for (std::int64_t x = -X; x <= X; ++x)
    for (std::int64_t y = -X; y <= X; ++y)
      out.push_back({c * x * x * x, c * x * x * y, c * x * y * y, c * y * y * y});
  return out;
}

/// Bound on every form component for s terms in a box of radius X, checked
/// to leave headroom in int64 (sums stay below 2^62).
inline std::int64_t form_bound(const CoefficientVector& c, std::int64_t X) {
  i128 b = checked_mul(checked_mul(static_cast<i128>(c.size()), c.max_abs()),
                       checked_mul(checked_mul(X, X), X));
  if (b >= (i128{1} << 62))
    throw OverflowError("form values for s=" + std::to_string(c.size()) + ", X=" +
                        std::to_string(X) + " exceed the guarded 62-bit range");
  return static_cast<std::int64_t>(b);
}

/// Packs a vector of bounded signed components into one 128-bit key.
class KeyCodec {
 public:
  KeyCodec() = default;
  explicit KeyCodec(std::vector<std::int64_t> bounds) : bounds_(std::move(bounds)) {
    unsigned total = 0;
    for (auto b : bounds_) {
      unsigned w = static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(2 * b + 1)));
      widths_.push_back(w);
      total += w;
    }
    if (total > 128) throw OverflowError("composite key needs more than 128 bits");
  }

  template <class Range>
  u128 encode(const Range& v) const {
    u128 key = 0;
    std::size_t i = 0;
    for (auto comp : v) {
      key = (key << widths_[i]) | static_cast<u128>(comp + bounds_[i]);
      ++i;
    }
    return key;
  }

  template <class Range>
  bool in_range(const Range& v) const {
    std::size_t i = 0;
    for (auto comp : v) {
      if (comp < -bounds_[i] || comp > bounds_[i]) return false;
      ++i;
    }
    return true;
  }

 private:
  std::vector<std::int64_t> bounds_;
  std::vector<unsigned> widths_;
};

/// Visits every s'-tuple over the given per-index tables, reporting the
/// summed quad. Used for both halves of the hash join.
template <class Visit>
void enumerate_sums(std::span<const std::vector<std::array<std::int64_t, 4>>*> tables,
                    std::size_t depth, std::array<std::int64_t, 4> partial, Visit&& visit) {
  if (depth == tables.size()) {
    visit(partial);
    return;
  }
  for (const auto& t : *tables[depth]) {
    std::array<std::int64_t, 4> next{partial[0] + t[0], partial[1] + t[1], partial[2] + t[2],
                                     partial[3] + t[3]};
    enumerate_sums(tables, depth + 1, next, visit);
  }
}

inline std::uint64_t count_tail(std::span<const std::vector<std::array<std::int64_t, 4>>> tables,
                                std::size_t depth, const std::array<std::int64_t, 4>& partial) {
  const auto& t = tables[depth];
  if (depth + 1 == tables.size()) {
    std::uint64_t hits = 0;
    for (const auto& v : t)
      hits += (v[0] == -partial[0]) & (v[1] == -partial[1]) & (v[2] == -partial[2]) &
              (v[3] == -partial[3]);
    return hits;
  }
  std::uint64_t total = 0;
  for (const auto& v : t)
    total += count_tail(tables, depth + 1,
                        {partial[0] + v[0], partial[1] + v[1], partial[2] + v[2], partial[3] + v[3]});
  return total;
}

}  // namespace detail

/// Exact number of (x, y) in [-X, X]^{2s} on which all four forms vanish, by
/// full enumeration. Oracle for count_lines_mitm.
inline CountRecord count_lines_bruteforce(const CoefficientVector& c, std::int64_t X,
                                          const CountConfig& cfg = {}) {
  require(X >= 0, "box radius X must be >= 0");
  detail::Stopwatch clock;
  const std::size_t s = c.size();
  const double points = detail::pow_d(2.0 * X + 1.0, 2.0);
  check_budget(cfg.budget, "count_lines_bruteforce", detail::pow_d(points, double(s)));
  detail::form_bound(c, X);

  std::vector<std::vector<std::array<std::int64_t, 4>>> tables;
  for (std::size_t i = 0; i < s; ++i) tables.push_back(detail::weighted_cubes(c[i], X));

  const std::size_t chunks = tables[0].size();
  std::vector<std::uint64_t> partial(chunks, 0);
  std::span<const std::vector<std::array<std::int64_t, 4>>> all(tables);
  for_each_chunk(chunks, cfg.parallel, [&](std::size_t k) {
    const auto& v = tables[0][k];
    if (s == 1) {
      partial[k] = (v[0] == 0 && v[1] == 0 && v[2] == 0 && v[3] == 0) ? 1 : 0;
    } else {
      partial[k] = detail::count_tail(all, 1, v);
    }
  });
  CountRecord r;
  r.label = "count_lines_bruteforce";
  r.parameters = {s, X, c, std::nullopt};
  for (auto p : partial) r.count += p;
  r.wall_time = clock.seconds();
  return r;
}

inline HashJoinPlan make_plan(std::size_t s, std::int64_t X) {
  require(s >= 1, "s must be >= 1");
  HashJoinPlan plan;
  const std::size_t na = (s + 1) / 2;
  for (std::size_t i = 0; i < s; ++i) (i < na ? plan.a : plan.b).push_back(i);
  plan.estimated_memory_bytes =
      detail::pow_d(2.0 * X + 1.0, 2.0 * double(plan.b.size())) * double(sizeof(u128));
  return plan;
}

inline void validate_plan(const HashJoinPlan& plan, std::size_t s) {
  std::vector<int> seen(s, 0);
  for (auto i : plan.a) {
    require(i < s, "plan index out of range");
    ++seen[i];
  }
  for (auto i : plan.b) {
    require(i < s, "plan index out of range");
    ++seen[i];
  }
  require(std::all_of(seen.begin(), seen.end(), [](int n) { return n == 1; }),
          "plan halves must partition {1..s}");
  require(plan.a.size() == (s + 1) / 2, "plan half A must hold ceil(s/2) indices");
}

/// Same count as count_lines_bruteforce via a hash join on FormValues: the
/// B-half sums are tabulated as sorted composite keys, and each A-half sum
/// looks up the multiplicity of its negation.
inline CountRecord count_lines_mitm(const CoefficientVector& c, std::int64_t X,
                                    const HashJoinPlan& plan, const CountConfig& cfg = {}) {
  require(X >= 0, "box radius X must be >= 0");
  detail::Stopwatch clock;
  const std::size_t s = c.size();
  validate_plan(plan, s);
  const double points = detail::pow_d(2.0 * X + 1.0, 2.0);
  const double b_size = detail::pow_d(points, double(plan.b.size()));
  const double a_size = detail::pow_d(points, double(plan.a.size()));
  check_budget(cfg.budget, "count_lines_mitm",
               b_size * std::log2(b_size + 2.0) + a_size * std::log2(b_size + 2.0),
               b_size * double(sizeof(u128)));

  const std::int64_t bound = detail::form_bound(c, X);
  detail::KeyCodec codec(std::vector<std::int64_t>(4, bound));

  std::vector<std::vector<std::array<std::int64_t, 4>>> tables(s);
  for (std::size_t i = 0; i < s; ++i) tables[i] = detail::weighted_cubes(c[i], X);

  std::vector<const std::vector<std::array<std::int64_t, 4>>*> b_tables;
  for (auto i : plan.b) b_tables.push_back(&tables[i]);
  std::vector<u128> b_keys;
  b_keys.reserve(static_cast<std::size_t>(b_size));
  detail::enumerate_sums(std::span(b_tables), 0, {0, 0, 0, 0},
                         [&](const std::array<std::int64_t, 4>& v) { b_keys.push_back(codec.encode(v)); });
  std::sort(b_keys.begin(), b_keys.end());

  std::vector<const std::vector<std::array<std::int64_t, 4>>*> a_tables;
  for (auto i : plan.a) a_tables.push_back(&tables[i]);
  const auto& first = *a_tables.front();
  std::vector<std::uint64_t> partial(first.size(), 0);
  std::span<const std::vector<std::array<std::int64_t, 4>>*> rest(a_tables.data() + 1,
                                                                   a_tables.size() - 1);
  for_each_chunk(first.size(), cfg.parallel, [&](std::size_t k) {
    std::uint64_t hits = 0;
    detail::enumerate_sums(rest, 0, first[k], [&](const std::array<std::int64_t, 4>& v) {
      std::array<std::int64_t, 4> neg{-v[0], -v[1], -v[2], -v[3]};
      auto key = codec.encode(neg);
      auto [lo, hi] = std::equal_range(b_keys.begin(), b_keys.end(), key);
      hits += static_cast<std::uint64_t>(hi - lo);
    });
    partial[k] = hits;
  });

  CountRecord r;
  r.label = "count_lines_mitm";
  r.parameters = {s, X, c, std::nullopt};
  for (auto p : partial) r.count += p;
  r.wall_time = clock.seconds();
  return r;
}

/// J_{s,2,3}(X): pairs of s-tuples of points in [1, X]^2 with equal summed
/// Veronese vectors in degrees 1, 2 and 3 (nine equations), computed as
/// sum over keys v of m_v^2.
inline CountRecord count_pv(std::size_t s, std::int64_t X, const CountConfig& cfg = {}) {
  require(s >= 1, "s must be >= 1");
  require(X >= 1, "X must be >= 1");
  detail::Stopwatch clock;
  const double tuples = detail::pow_d(double(X), 2.0 * double(s));
  check_budget(cfg.budget, "count_pv", tuples * std::log2(tuples + 2.0), tuples * sizeof(u128));

  const auto S = static_cast<std::int64_t>(s);
  i128 cube_bound = checked_mul(S, checked_mul(checked_mul(X, X), X));
  if (cube_bound >= (i128{1} << 62)) throw OverflowError("count_pv: degree-3 sums exceed 62 bits");
  // Components are positive, so a bound of B/2 per side encodes [0, B].
  std::vector<std::int64_t> bounds;
  for (int d = 1; d <= 3; ++d) {
    std::int64_t b = S * ipow(X, static_cast<unsigned>(d));
    for (int k = 0; k <= d; ++k) bounds.push_back((b + 1) / 2);
  }
  detail::KeyCodec codec(bounds);

  std::vector<std::array<std::int64_t, 9>> points;
  for (std::int64_t x = 1; x <= X; ++x)
    for (std::int64_t y = 1; y <= X; ++y)
      points.push_back({x, y, x * x, x * y, y * y, x * x * x, x * x * y, x * y * y, y * y * y});

  const std::size_t chunks = points.size();
  std::vector<std::vector<u128>> keys(chunks);
  for_each_chunk(chunks, cfg.parallel, [&](std::size_t k) {
    std::vector<u128>& out = keys[k];
    std::function<void(std::size_t, std::array<std::int64_t, 9>)> rec =
        [&](std::size_t depth, std::array<std::int64_t, 9> acc) {
          if (depth == s) {
            std::array<std::int64_t, 9> shifted;
            for (std::size_t i = 0; i < 9; ++i) shifted[i] = acc[i] - bounds[i];
            out.push_back(codec.encode(shifted));
            return;
          }
          for (const auto& p : points) {
            auto next = acc;
            for (std::size_t i = 0; i < 9; ++i) next[i] += p[i];
            rec(depth + 1, next);
          }
        };
    rec(1, points[k]);
  });
  std::vector<u128> all;
  all.reserve(static_cast<std::size_t>(tuples));
  for (auto& v : keys) {
    all.insert(all.end(), v.begin(), v.end());
    std::vector<u128>().swap(v);
  }
  std::sort(all.begin(), all.end());
  u128 total = 0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j] == all[i]) ++j;
    u128 m = j - i;
    total += m * m;
    i = j;
  }
  CountRecord r;
  r.label = "count_pv";
  r.parameters = {s, X, std::nullopt, std::nullopt};
  r.count = total;
  r.wall_time = clock.seconds();
  return r;
}

/// T(X) = #{x in [1, X]^8 : x1^3+x2^3+x3^3+x4^3 = x5^3+...+x8^3}, computed as
/// sum_n R_4(n)^2 where R_4 is the self-convolution of the two-cube
/// representation function. The paired (x, y) count is T(X)^2.
inline CountRecord count_hua_single(std::int64_t X, const CountConfig& cfg = {}) {
  require(X >= 1, "X must be >= 1");
  // R_4(n) <= X^3 must fit the 32-bit table.
  require(X <= 1600, "count_hua_single: X must be <= 1600");
  detail::Stopwatch clock;

  // Unordered two-cube sums with ordered-pair multiplicities.
  std::vector<std::pair<std::int64_t, std::uint64_t>> r2;
  {
    std::vector<std::pair<std::int64_t, std::uint64_t>> raw;
    for (std::int64_t a = 1; a <= X; ++a)
      for (std::int64_t b = a; b <= X; ++b) raw.push_back({a * a * a + b * b * b, a == b ? 1u : 2u});
    std::sort(raw.begin(), raw.end());
    for (auto& [v, m] : raw) {
      if (!r2.empty() && r2.back().first == v)
        r2.back().second += m;
      else
        r2.push_back({v, m});
    }
  }
  const double support = double(r2.size());
  const std::int64_t n_max = 4 * X * X * X;
  constexpr std::int64_t kSpan = std::int64_t{1} << 22;
  const std::size_t chunks = static_cast<std::size_t>(n_max / kSpan + 1);
  check_budget(cfg.budget, "count_hua_single", support * support / 2.0 + double(n_max),
               double(std::max(1u, cfg.parallel.workers)) * double(kSpan) * 4.0);

  std::vector<u128> partial(chunks, 0);
  for_each_chunk(chunks, cfg.parallel, [&](std::size_t k) {
    const std::int64_t lo = std::int64_t(k) * kSpan;
    const std::int64_t hi = std::min(lo + kSpan, n_max + 1);
    std::vector<std::uint32_t> r4(static_cast<std::size_t>(hi - lo), 0);
    auto value_less = [](const std::pair<std::int64_t, std::uint64_t>& e, std::int64_t v) {
      return e.first < v;
    };
    for (std::size_t i = 0; i < r2.size(); ++i) {
      const auto [u, mu] = r2[i];
      auto jb = std::lower_bound(r2.begin() + static_cast<std::ptrdiff_t>(i), r2.end(), lo - u, value_less);
      auto je = std::lower_bound(jb, r2.end(), hi - u, value_less);
      for (auto j = jb; j != je; ++j) {
        std::uint64_t w = mu * j->second * (j - r2.begin() == std::ptrdiff_t(i) ? 1u : 2u);
        r4[static_cast<std::size_t>(u + j->first - lo)] += static_cast<std::uint32_t>(w);
      }
    }
    u128 acc = 0;
    for (auto v : r4) acc += u128(v) * v;
    partial[k] = acc;
  });
  CountRecord r;
  r.label = "count_hua_single";
  r.parameters = {4, X, std::nullopt, std::nullopt};
  for (auto p : partial) r.count += p;
  r.wall_time = clock.seconds();
  return r;
}

/// M(q): (x, y) in (Z/q)^{2s} satisfying all four congruences modulo q, by
/// direct enumeration.
inline CountRecord count_local(std::int64_t q, const CoefficientVector& c,
                               const CountConfig& cfg = {}) {
  require(q >= 1, "modulus q must be >= 1");
  require(q <= (std::int64_t{1} << 20), "modulus q must be below 2^20");
  detail::Stopwatch clock;
  const std::size_t s = c.size();
  check_budget(cfg.budget, "count_local", detail::pow_d(double(q), 2.0 * double(s)));

  using Quad = std::array<std::int64_t, 4>;
  std::vector<std::vector<Quad>> tables(s);
  for (std::size_t i = 0; i < s; ++i) {
    const std::int64_t ci = mod_floor(c[i], q);
    for (std::int64_t x = 0; x < q; ++x)
      for (std::int64_t y = 0; y < q; ++y) {
        const std::int64_t x2 = x * x % q, y2 = y * y % q;
        tables[i].push_back({ci * (x2 * x % q) % q, ci * (x2 * y % q) % q,
                             ci * (x * y2 % q) % q, ci * (y2 * y % q) % q});
      }
  }
  std::function<std::uint64_t(std::size_t, const Quad&)> rec = [&](std::size_t depth,
                                                                   const Quad& acc) -> std::uint64_t {
    if (depth == s)
      return (acc[0] == 0 && acc[1] == 0 && acc[2] == 0 && acc[3] == 0) ? 1 : 0;
    if (depth + 1 == s) {
      const Quad need{(q - acc[0]) % q, (q - acc[1]) % q, (q - acc[2]) % q, (q - acc[3]) % q};
      std::uint64_t hits = 0;
      for (const auto& t : tables[depth])
        hits += (t[0] == need[0]) & (t[1] == need[1]) & (t[2] == need[2]) & (t[3] == need[3]);
      return hits;
    }
    std::uint64_t total = 0;
    for (const auto& t : tables[depth]) {
      Quad next;
      for (std::size_t l = 0; l < 4; ++l) {
        next[l] = acc[l] + t[l];
        if (next[l] >= q) next[l] -= q;
      }
      total += rec(depth + 1, next);
    }
    return total;
  };
  const std::size_t chunks = tables[0].size();
  std::vector<std::uint64_t> partial(chunks, 0);
  for_each_chunk(chunks, cfg.parallel, [&](std::size_t k) { partial[k] = rec(1, tables[0][k]); });
  CountRecord r;
  r.label = "count_local";
  r.parameters = {s, 0, c, q};
  for (auto p : partial) r.count += p;
  r.wall_time = clock.seconds();
  return r;
}

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least-squares fit of log(count) against log(X).
inline ExponentFit fit_exponent(std::span<const CountRecord> records) {
  require(records.size() >= 3, "fit_exponent needs at least 3 records");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(records.size());
  for (const auto& r : records) {
    require(r.count > 0, "fit_exponent needs positive counts");
    require(r.parameters.X >= 1, "fit_exponent needs X >= 1");
    const double lx = std::log(double(r.parameters.X));
    const double ly = std::log(double(r.count));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  require(std::abs(den) > 1e-12 * std::max(1.0, n * sxx), "fit_exponent: degenerate X values");
  ExponentFit f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

/// Materializes the solutions in the symmetric box (small cases only).
inline std::vector<SolutionPair> enumerate_line_solutions(const CoefficientVector& c, std::int64_t X,
                                                          std::size_t limit,
                                                          const Budget& budget = {}) {
  const std::size_t s = c.size();
  check_budget(budget, "enumerate_line_solutions", detail::pow_d(2.0 * X + 1.0, 2.0 * double(s)));
  std::vector<SolutionPair> out;
  SolutionPair cur{std::vector<std::int64_t>(s), std::vector<std::int64_t>(s), X,
                   BoxRange::symmetric};
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (out.size() >= limit) return;
    if (i == s) {
      if (is_zero(system_values(c, cur.x, cur.y))) out.push_back(cur);
      return;
    }
    for (std::int64_t x = -X; x <= X; ++x)
      for (std::int64_t y = -X; y <= X; ++y) {
        cur.x[i] = x;
        cur.y[i] = y;
        rec(i + 1);
      }
  };
  rec(0);
  return out;
}

}  // namespace cubiclines
