#pragma once

// Job dispatch: a JobSpec names a subcommand and its parameters; run()
// validates, estimates cost, calls the owning module and returns a Report
// whose serialization is deterministic.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubiclines/acceptance.hpp"
#include "cubiclines/arcs.hpp"
#include "cubiclines/counting.hpp"
#include "cubiclines/expsums.hpp"
#include "cubiclines/forms.hpp"
#include "cubiclines/integral.hpp"
#include "cubiclines/report.hpp"

namespace cubiclines {

enum class OutputFormat { jsonl, csv };

struct JobSpec {
  std::string command;
  Json params = Json::object();
  std::string output;  // empty: stdout
  OutputFormat format = OutputFormat::jsonl;
  Budget budget{};
  unsigned workers = 1;
  bool dry_run = false;
  bool timing = false;  // include wall-clock times (makes reports nondeterministic)
};

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {
      "count-lines",  "count-pv",       "count-hua",   "count-local",          "exp-sum",
      "complete-sum", "local-average",  "singular-series", "local-identity",    "u-eval",
      "v-eval",       "singular-integral-mc", "singular-integral-quad",        "classify-arc",
      "measure-arcs", "kernel-k",       "kernel-t",    "fit-exponent",         "acceptance"};
  return names;
}

/// Parses "start:stop:factor" (geometric), "a,b,c" (list) or a single integer.
inline std::vector<std::int64_t> parse_grid(const std::string& text) {
  std::vector<std::int64_t> out;
  auto to_int = [](const std::string& t) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == t.size() && !t.empty(), "cannot parse integer '" + t + "'");
    return static_cast<std::int64_t>(v);
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
      auto pos = text.find(':', start);
      parts.push_back(text.substr(start, pos - start));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    require(parts.size() == 3, "grid must be start:stop:factor");
    const auto a = to_int(parts[0]), b = to_int(parts[1]), f = to_int(parts[2]);
    require(a >= 1 && b >= a && f >= 2, "grid needs 1 <= start <= stop and factor >= 2");
    for (std::int64_t x = a; x <= b; x *= f) out.push_back(x);
    return out;
  }
  std::size_t start = 0;
  for (;;) {
    auto pos = text.find(',', start);
    out.push_back(to_int(text.substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

namespace detail {

class Params {
 public:
  explicit Params(const Json& j) : j_(j) { require(j.is_object(), "job parameters must be an object"); }

  bool has(const char* k) const { return j_.contains(k) && !j_[k].is_null(); }

  std::int64_t integer(const char* k) const {
    require(has(k), std::string("missing parameter '") + k + "'");
    const auto& v = j_[k];
    if (v.is_string()) return parse_grid(v.get<std::string>()).at(0);
    require(v.is_number_integer(), std::string("parameter '") + k + "' must be an integer");
    return v.get<std::int64_t>();
  }
  std::int64_t integer(const char* k, std::int64_t dflt) const { return has(k) ? integer(k) : dflt; }

  double real(const char* k) const {
    require(has(k), std::string("missing parameter '") + k + "'");
    const auto& v = j_[k];
    if (v.is_string()) return parse_real(v.get<std::string>());
    require(v.is_number(), std::string("parameter '") + k + "' must be a number");
    return v.get<double>();
  }
  double real(const char* k, double dflt) const { return has(k) ? real(k) : dflt; }

  std::string text(const char* k, const std::string& dflt) const {
    if (!has(k)) return dflt;
    require(j_[k].is_string(), std::string("parameter '") + k + "' must be a string");
    return j_[k].get<std::string>();
  }

  bool flag(const char* k, bool dflt) const {
    if (!has(k)) return dflt;
    require(j_[k].is_boolean(), std::string("parameter '") + k + "' must be true or false");
    return j_[k].get<bool>();
  }

  std::vector<double> reals(const char* k, std::size_t n) const {
    require(has(k), std::string("missing parameter '") + k + "'");
    std::vector<double> out;
    const auto& v = j_[k];
    if (v.is_string()) {
      const std::string s = v.get<std::string>();
      std::size_t start = 0;
      for (;;) {
        auto pos = s.find(',', start);
        out.push_back(parse_real(s.substr(start, pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
      }
    } else if (v.is_array()) {
      for (const auto& e : v) {
        require(e.is_number(), std::string("parameter '") + k + "' must hold numbers");
        out.push_back(e.get<double>());
      }
    } else if (v.is_number() && n == 1) {
      out.push_back(v.get<double>());
    }
    require(out.size() == n, std::string("parameter '") + k + "' needs " + std::to_string(n) + " values");
    return out;
  }

  std::vector<std::int64_t> grid(const char* k) const {
    require(has(k), std::string("missing parameter '") + k + "'");
    const auto& v = j_[k];
    if (v.is_string()) return parse_grid(v.get<std::string>());
    if (v.is_array()) {
      std::vector<std::int64_t> out;
      for (const auto& e : v) out.push_back(e.get<std::int64_t>());
      return out;
    }
    return {integer(k)};
  }

  CoefficientVector coefficients(const char* k = "c") const {
    std::optional<CoefficientVector> c;
    if (has(k)) {
      const auto& v = j_[k];
      if (v.is_string()) {
        c = CoefficientVector::parse(v.get<std::string>());
      } else if (v.is_number_integer()) {
        c = CoefficientVector({v.get<std::int64_t>()});
      } else {
        require(v.is_array(), "parameter 'c' must be a list of integers");
        c = CoefficientVector(v.get<std::vector<std::int64_t>>());
      }
    } else {
      require(has("s"), "give the coefficients c (or s for c = (1, ..., 1))");
      const auto s = integer("s");
      require(s >= 1, "s must be >= 1");
      c = CoefficientVector::ones(static_cast<std::size_t>(s));
    }
    if (has("s"))
      require(integer("s") == static_cast<std::int64_t>(c->size()), "s does not match the length of c");
    return *c;
  }

 private:
  static double parse_real(const std::string& t) {
    // Accepts plain decimals and simple fractions such as 1/3.
    auto slash = t.find('/');
    auto one = [](const std::string& u) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(u, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      require(used == u.size() && !u.empty(), "cannot parse number '" + u + "'");
      return v;
    };
    if (slash == std::string::npos) return one(t);
    const double den = one(t.substr(slash + 1));
    require(den != 0.0, "zero denominator in '" + t + "'");
    return one(t.substr(0, slash)) / den;
  }

  const Json& j_;
};

inline Json record_json(const CountRecord& r, bool timing) {
  Json j;
  j["label"] = r.label;
  j["s"] = r.parameters.s;
  if (r.parameters.X != 0 || !r.parameters.q) j["X"] = r.parameters.X;
  if (r.parameters.c) j["c"] = r.parameters.c->to_string();
  if (r.parameters.q) j["q"] = *r.parameters.q;
  j["count"] = wide(r.count);
  if (timing) j["wall_time"] = r.wall_time;
  return j;
}

inline Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

template <std::size_t N>
std::array<double, N> to_array(const std::vector<double>& v) {
  std::array<double, N> a{};
  for (std::size_t i = 0; i < N; ++i) a[i] = v[i];
  return a;
}

/// Operation and byte estimates used for --dry-run.
inline std::pair<double, double> estimate(const std::string& cmd, const Params& p) {
  auto pw = [](double b, double e) { return std::pow(b, e); };
  if (cmd == "count-lines") {
    const auto c = p.coefficients();
    const double s = double(c.size());
    double ops = 0, bytes = 0;
    for (auto X : p.grid("X")) {
      const double pts = pw(2.0 * double(X) + 1.0, 2.0);
      if (p.text("method", "mitm") == "bruteforce") {
        ops += pw(pts, s);
      } else {
        const double b = pw(pts, std::floor(s / 2.0)), a = pw(pts, std::ceil(s / 2.0));
        ops += (a + b) * std::log2(b + 2.0);
        bytes = std::max(bytes, b * 16.0);
      }
    }
    return {ops, bytes};
  }
  if (cmd == "count-pv") {
    double ops = 0, bytes = 0;
    for (auto X : p.grid("X")) {
      const double t = pw(double(X), 2.0 * double(p.integer("s")));
      ops += t * std::log2(t + 2.0);
      bytes = std::max(bytes, t * 16.0);
    }
    return {ops, bytes};
  }
  if (cmd == "count-hua") {
    double ops = 0;
    for (auto X : p.grid("X")) ops += pw(double(X), 4.0) / 4.0 + 4.0 * pw(double(X), 3.0);
    return {ops, double(1 << 22) * 4.0};
  }
  if (cmd == "count-local")
    return {pw(double(p.integer("q")), 2.0 * double(p.coefficients().size())), 0.0};
  if (cmd == "complete-sum" || cmd == "local-average") {
    const double q = double(p.integer("q"));
    if (cmd == "complete-sum" && p.has("a")) return {q * q, q * 8.0};
    return {4.0 * pw(q, 5.0), 2.0 * pw(q, 4.0) * 16.0};
  }
  if (cmd == "singular-series") {
    double ops = 0;
    SeriesTruncation t;
    t.p_max = p.integer("p_max", t.p_max);
    for (auto pr : primes_up_to(t.p_max))
      for (int h = 1; h <= t.h_max(pr); ++h) ops += 5.0 * pw(double(pr), 5.0 * h);
    return {ops, 0.0};
  }
  if (cmd == "singular-integral-mc") {
    const double n = p.real("samples", 1e7);
    return {n * 2.0 * double(p.coefficients().size()), 0.0};
  }
  if (cmd == "singular-integral-quad") {
    const double g = double(p.integer("grid", 41));
    return {pw(g, 4.0) * 1600.0, pw(g, 4.0) * 16.0};
  }
  if (cmd == "kernel-t") {
    const double X = double(p.integer("X"));
    return {3.0 * X * X, 0.0};
  }
  if (cmd == "measure-arcs") {
    const double H = p.real("H");
    return {H * H * std::log2(H * H + 2.0), H * H * 32.0};
  }
  return {1.0, 0.0};
}

}  // namespace detail

/// Executes a job. Precondition failures and budget refusals propagate as
/// exceptions carrying the violated condition or the estimate.
inline Report run(const JobSpec& job) {
  const auto& names = subcommands();
  require(std::find(names.begin(), names.end(), job.command) != names.end(),
          "unknown subcommand '" + job.command + "'");
  require(job.workers >= 1, "workers must be >= 1");
  const detail::Params p(job.params);
  const Parallel par{job.workers};
  const CountConfig cfg{job.budget, par};
  Report rep;
  rep.job["command"] = job.command;
  rep.job["params"] = job.params;
  rep.job["workers"] = job.workers;
  rep.job["max_operations"] = job.budget.max_operations;
  rep.job["max_bytes"] = job.budget.max_bytes;

  if (job.dry_run) {
    const auto [ops, bytes] = detail::estimate(job.command, p);
    Json j;
    j["estimated_operations"] = ops;
    j["estimated_bytes"] = bytes;
    j["within_budget"] = ops <= job.budget.max_operations && bytes <= job.budget.max_bytes;
    rep.results.push_back(j);
    return rep;
  }

  const std::string& cmd = job.command;
  if (cmd == "count-lines") {
    const auto c = p.coefficients();
    const auto method = p.text("method", "mitm");
    require(method == "mitm" || method == "bruteforce" || method == "both",
            "method must be mitm, bruteforce or both");
    for (auto X : p.grid("X")) {
      std::optional<CountRecord> m, b;
      if (method != "bruteforce") m = count_lines_mitm(c, X, make_plan(c.size(), X), cfg);
      if (method != "mitm") b = count_lines_bruteforce(c, X, cfg);
      rep.results.push_back(detail::record_json(m ? *m : *b, job.timing));
      if (m && b)
        rep.checks.push_back(checks::exact("mitm vs bruteforce X=" + std::to_string(X),
                                           "hash-join count equals full enumeration", m->count, b->count));
    }
  } else if (cmd == "count-pv") {
    const auto s = p.integer("s");
    require(s >= 1, "s must be >= 1");
    for (auto X : p.grid("X")) {
      auto r = count_pv(static_cast<std::size_t>(s), X, cfg);
      rep.results.push_back(detail::record_json(r, job.timing));
      u128 diag = 1;
      for (std::int64_t i = 0; i < 2 * s; ++i) diag *= u128(X);
      rep.checks.push_back(checks::holds("J_s(X) >= X^{2s}, X=" + std::to_string(X),
                                         "diagonal solutions give J_s(X) >= X^{2s}", r.count >= diag,
                                         wide(r.count), wide(diag)));
    }
  } else if (cmd == "count-hua") {
    for (auto X : p.grid("X")) {
      auto r = count_hua_single(X, cfg);
      auto j = detail::record_json(r, job.timing);
      j["paired_count"] = wide(r.count * r.count);
      rep.results.push_back(j);
    }
  } else if (cmd == "count-local") {
    rep.results.push_back(detail::record_json(count_local(p.integer("q"), p.coefficients(), cfg), job.timing));
  } else if (cmd == "exp-sum") {
    const auto alpha = detail::to_array<4>(p.reals("alpha", 4));
    const auto X = p.integer("X");
    cplx v;
    if (p.has("beta") || p.has("theta")) {
      std::array<double, 3> beta{};
      std::array<double, 2> theta{};
      if (p.has("beta")) beta = detail::to_array<3>(p.reals("beta", 3));
      if (p.has("theta")) theta = detail::to_array<2>(p.reals("theta", 2));
      v = weyl_sum_full(PhasePoint(alpha, beta, theta), X);
    } else {
      const auto range = p.text("range", "positive");
      require(range == "positive" || range == "symmetric", "range must be positive or symmetric");
      v = weyl_sum_F(PhasePoint(alpha), X, range == "positive" ? BoxRange::positive : BoxRange::symmetric,
                     p.integer("coefficient", 1));
    }
    Json j;
    j["X"] = X;
    j["re"] = v.real();
    j["im"] = v.imag();
    j["abs"] = std::abs(v);
    rep.results.push_back(j);
  } else if (cmd == "complete-sum") {
    const auto q = p.integer("q");
    if (p.has("a")) {
      const auto av = p.reals("a", 4);
      std::array<std::int64_t, 4> a{};
      for (int l = 0; l < 4; ++l) a[l] = static_cast<std::int64_t>(std::llround(av[l]));
      const cplx v = complete_sum(q, a);
      rep.results.push_back(Json{{"q", q}, {"a", a}, {"re", v.real()}, {"im", v.imag()}});
    } else {
      const auto m = p.text("method", "multi-axis-transform");
      CompleteSumMethod method = CompleteSumMethod::multi_axis_transform;
      if (m == "direct") method = CompleteSumMethod::direct;
      else if (m == "multiplicity-vector") method = CompleteSumMethod::multiplicity_vector;
      else require(m == "multi-axis-transform", "method must be direct, multiplicity-vector or multi-axis-transform");
      const auto table = complete_sum_table(q, method, job.budget, par);
      const auto Q = static_cast<std::size_t>(q);
      for (std::size_t idx = 0; idx < table.values().size(); ++idx) {
        std::array<std::int64_t, 4> a{};
        std::size_t r = idx;
        for (int l = 3; l >= 0; --l) {
          a[l] = static_cast<std::int64_t>(r % Q);
          r /= Q;
        }
        rep.results.push_back(Json{{"q", q}, {"a", a}, {"re", table[idx].real()}, {"im", table[idx].imag()}});
      }
      rep.checks.push_back(checks::relative("S(q,0) = q^2", "S(q,0) = q^2", table[0].real(), double(q * q), 1e-12));
    }
  } else if (cmd == "local-average") {
    const auto q = p.integer("q");
    const auto c = p.coefficients();
    const auto v = local_average(q, c, nullptr, job.budget, par);
    rep.results.push_back(Json{{"q", q}, {"c", c.to_string()}, {"S", v.value}, {"imaginary_residue", v.imaginary_residue}});
  } else if (cmd == "singular-series") {
    const auto c = p.coefficients();
    SeriesTruncation t;
    t.p_max = p.integer("p_max", t.p_max);
    t.deep_prime_cutoff = p.integer("deep_prime_cutoff", t.deep_prime_cutoff);
    t.deep_h_max = static_cast<int>(p.integer("deep_h_max", t.deep_h_max));
    t.shallow_h_max = static_cast<int>(p.integer("shallow_h_max", t.shallow_h_max));
    if (t.p_max < 2) {
      rep.results.push_back(Json{{"value", 1.0}, {"stability", 0.0}});
      return rep;
    }
    const auto ss = singular_series(c, t, job.budget, par);
    for (const auto& f : ss.factors) {
      for (int h = 1; h <= f.h_max; ++h)
        rep.results.push_back(Json{{"p", f.p}, {"h", h}, {"S", f.s_values[static_cast<std::size_t>(h)]},
                                   {"partial_factor", f.partial_factor}});
      rep.checks.push_back(checks::greater("factor p=" + std::to_string(f.p),
                                           "partial Euler factor 1 + sum_h S(p^h) is positive", f.partial_factor, 0.0));
    }
    rep.results.push_back(Json{{"value", ss.value}, {"stability", ss.stability}});
  } else if (cmd == "local-identity") {
    const auto r = local_identity_check(p.integer("p"), static_cast<int>(p.integer("h")), p.coefficients(), cfg);
    const double tol = p.real("tolerance", 1e-6);
    rep.results.push_back(Json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"relative_error", r.relative_error},
                               {"congruence_count", wide(r.congruence_count)}});
    rep.checks.push_back(checks::relative("local identity", "sum_{j<=h} S(p^j) = p^{h(4-2s)} M(p^h)", r.lhs,
                                          r.rhs, tol));
  } else if (cmd == "u-eval" || cmd == "v-eval") {
    const auto g = detail::to_array<4>(p.reals("gamma", 4));
    const double tol = p.real("tol", 1e-10);
    const cplx v = cmd == "u-eval" ? u_eval(g, tol) : v_eval(g, p.real("P"), tol);
    rep.results.push_back(Json{{"re", v.real()}, {"im", v.imag()}});
  } else if (cmd == "singular-integral-mc") {
    const auto c = p.coefficients();
    const double sigma = p.real("sigma", 0.05);
    const auto n = static_cast<std::uint64_t>(p.real("samples", 1e7));
    require(n >= 10000, "samples must be >= 1e4");
    const auto seed = static_cast<std::uint64_t>(p.integer("seed", 1));
    auto emit = [&](const DensityEstimate& e) {
      rep.results.push_back(Json{{"value", e.value}, {"std_error", e.standard_error}, {"sigma", e.sigma},
                                 {"samples", e.samples}, {"seed", e.seed}});
    };
    if (p.flag("pair", true)) {
      const auto pr = singular_integral_mc_pair(c, sigma, n, seed, par, job.budget);
      emit(pr.coarse);
      emit(pr.fine);
      rep.results.push_back(Json{{"relative_difference", pr.relative_difference}, {"extrapolated", pr.extrapolated}});
      rep.checks.push_back(checks::less("sigma vs sigma/2", "slab density converges as sigma -> 0",
                                        pr.relative_difference, 0.10));
    } else {
      emit(singular_integral_mc(c, sigma, n, seed, par, job.budget));
    }
  } else if (cmd == "singular-integral-quad") {
    const auto c = p.coefficients();
    const double v = singular_integral_quad(c, p.real("R", 2.0), static_cast<int>(p.integer("grid", 41)), {},
                                            job.budget, par);
    rep.results.push_back(Json{{"value", v}});
  } else if (cmd == "classify-arc") {
    const auto family = p.text("family", "N");
    require(family == "N" || family == "M", "family must be N or M");
    ArcClassification r;
    if (family == "N")
      r = classify_N(detail::to_array<4>(p.reals("alpha", 4)), p.real("delta", 1e-10), p.real("X"));
    else
      r = classify_M(p.reals("alpha", 1)[0], p.real("H"), p.real("X"));
    Json j;
    j["verdict"] = std::string(to_string(r.verdict));
    if (r.witness) {
      j["q"] = r.witness->q;
      if (family == "N") j["a"] = r.witness->a;
      else j["a"] = r.witness->a[0];
      j["distance"] = r.witness->distance;
    }
    rep.results.push_back(j);
  } else if (cmd == "measure-arcs") {
    const double X = p.real("X");
    std::vector<double> Hs;
    if (p.has("H") && job.params["H"].is_string() && job.params["H"].get<std::string>().find_first_of(":,") != std::string::npos) {
      for (auto h : p.grid("H")) Hs.push_back(double(h));
    } else {
      Hs.push_back(p.real("H"));
    }
    for (double H : Hs) {
      const auto m = measure_M(H, X, job.budget);
      Json j{{"H", H}, {"X", X}, {"measure", m.value}, {"bound_H2_X3", m.square_bound},
             {"bound_2H2_X3", m.factor_two_bound}, {"naive_cover", m.naive_cover_bound}};
      if (m.exact) {
        j["exact_numerator"] = wide(m.exact->first);
        j["exact_denominator"] = wide(m.exact->second);
      }
      rep.results.push_back(j);
      if (H >= 1.0 && H == std::floor(H) && X == std::floor(X))
        rep.checks.push_back(checks::holds("measure <= 2H^2/X^3, H=" + format_g12(H), "mes(M(H)) <= 2 H^2 X^-3",
                                           measure_within_factor_two(m, std::int64_t(H), std::int64_t(X)),
                                           m.value, m.factor_two_bound));
    }
  } else if (cmd == "kernel-k") {
    const cplx v = kernel_K(p.real("gamma1"), p.real("gamma2"), p.integer("X"));
    rep.results.push_back(Json{{"re", v.real()}, {"im", v.imag()}, {"abs", std::abs(v)}});
  } else if (cmd == "kernel-t") {
    const double v = kernel_T(detail::to_array<4>(p.reals("alpha", 4)), detail::to_array<3>(p.reals("beta", 3)),
                              p.integer("X"), p.integer("Y"), par, job.budget);
    rep.results.push_back(Json{{"value", v}});
  } else if (cmd == "fit-exponent") {
    std::vector<CountRecord> recs;
    if (p.has("counts")) {
      const auto Xs = p.grid("X");
      const auto cs = p.grid("counts");
      require(cs.size() == Xs.size(), "counts and X must have the same length");
      for (std::size_t i = 0; i < Xs.size(); ++i) {
        require(cs[i] > 0, "counts must be positive");
        CountRecord r;
        r.parameters.X = Xs[i];
        r.count = static_cast<u128>(cs[i]);
        recs.push_back(r);
      }
    } else {
      const auto kind = p.text("kind", "count-pv");
      for (auto X : p.grid("X")) {
        if (kind == "count-pv") recs.push_back(count_pv(static_cast<std::size_t>(p.integer("s")), X, cfg));
        else if (kind == "count-hua") recs.push_back(count_hua_single(X, cfg));
        else if (kind == "count-lines") recs.push_back(count_lines_mitm(p.coefficients(), X, make_plan(p.coefficients().size(), X), cfg));
        else throw PreconditionError("kind must be count-pv, count-hua or count-lines");
      }
    }
    for (const auto& r : recs) rep.results.push_back(Json{{"X", r.parameters.X}, {"count", wide(r.count)}});
    const auto fit = fit_exponent(recs);
    rep.results.push_back(Json{{"slope", fit.slope}, {"intercept", fit.intercept}});
  } else if (cmd == "acceptance") {
    acceptance::Options o;
    o.profile = p.text("profile", "quick") == "full" ? acceptance::Profile::full : acceptance::Profile::quick;
    o.seed = static_cast<std::uint64_t>(p.integer("seed", static_cast<std::int64_t>(o.seed)));
    o.workers = job.workers;
    o.alternate_workers = static_cast<unsigned>(p.integer("alternate_workers", job.workers == 3 ? 1 : 3));
    o.tolerance_scale = p.real("tolerance_scale", 1.0);
    o.budget = job.budget;
    std::vector<int> only;
    if (p.has("only"))
      for (auto n : p.grid("only")) only.push_back(static_cast<int>(n));
    auto results = acceptance::run_suite(o, only);
    auto sub = acceptance::to_report(results, o);
    rep.results = sub.results;
    rep.checks = std::move(sub.checks);
  }
  return rep;
}

inline std::string serialize(const Report& r, OutputFormat f) { return f == OutputFormat::csv ? to_csv(r) : to_jsonl(r); }

}  // namespace cubiclines
