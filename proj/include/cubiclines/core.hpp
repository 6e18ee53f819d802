#pragma once

// Shared plumbing: wide integers, error types, budgets, deterministic
// chunked parallelism and compensated floating-point accumulation.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace cubiclines {

using i128 = __int128;
using u128 = unsigned __int128;
using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An exact computation would leave its guarded integer range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// The dry-run cost estimate exceeds the configured budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, double estimate, double limit)
      : Error(what), estimate_(estimate), limit_(limit) {}
  double estimate() const noexcept { return estimate_; }
  double limit() const noexcept { return limit_; }

 private:
  double estimate_;
  double limit_;
};

/// Numerical routine failed to reach its tolerance within its resources.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

// ---------------------------------------------------------------------------
// Wide integers
// ---------------------------------------------------------------------------

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

inline std::string to_string(i128 v) {
  if (v < 0) return "-" + to_string(static_cast<u128>(-(v + 1)) + 1);
  return to_string(static_cast<u128>(v));
}

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit multiplication overflow");
  return r;
}

inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit addition overflow");
  return r;
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t q) {
  std::int64_t r = a % q;
  return r < 0 ? r + q : r;
}

inline std::int64_t gcd4(std::int64_t q, std::int64_t a1, std::int64_t a2, std::int64_t a3,
                         std::int64_t a4) {
  return std::gcd(std::gcd(std::gcd(q, a1), std::gcd(a2, a3)), a4);
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p <= n; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

inline std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

inline std::int64_t ipow(std::int64_t base, unsigned exp) {
  i128 r = 1;
  for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
  if (r > INT64_MAX || r < INT64_MIN) throw OverflowError("integer power exceeds 64 bits");
  return static_cast<std::int64_t>(r);
}

// ---------------------------------------------------------------------------
// Budgets
// ---------------------------------------------------------------------------

struct Budget {
  double max_operations = 1e10;
  double max_bytes = 8.0 * 1024 * 1024 * 1024;
};

inline void check_budget(const Budget& b, std::string_view what, double operations,
                         double bytes = 0.0) {
  if (operations > b.max_operations) {
    std::ostringstream os;
    os << what << ": estimated " << operations << " operations exceeds the work limit "
       << b.max_operations;
    throw BudgetExceeded(os.str(), operations, b.max_operations);
  }
  if (bytes > b.max_bytes) {
    std::ostringstream os;
    os << what << ": estimated " << bytes << " bytes exceeds the memory limit " << b.max_bytes;
    throw BudgetExceeded(os.str(), bytes, b.max_bytes);
  }
}

// ---------------------------------------------------------------------------
// Parallelism
// ---------------------------------------------------------------------------

/// Worker pool size handed down from the harness. Work is always split into
/// chunks whose boundaries do not depend on `workers`, so results are
/// identical for any worker count.
struct Parallel {
  unsigned workers = 1;
};

/// Calls fn(i) for every chunk index i in [0, n). Chunks are claimed
/// dynamically; callers store per-chunk results by index and reduce in order.
template <class Fn>
void for_each_chunk(std::size_t n, const Parallel& par, Fn&& fn) {
  std::size_t w = std::min<std::size_t>(std::max(1u, par.workers), n);
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (std::size_t t = 0; t < w; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(n);
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------
// Floating point
// ---------------------------------------------------------------------------

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  void add(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexSum {
 public:
  void add(cplx z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  void add(const ComplexSum& other) {
    re_.add(other.re_);
    im_.add(other.im_);
  }
  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Fractional part in [0, 1).
inline double frac(double t) {
  double f = t - std::floor(t);
  return f >= 1.0 ? 0.0 : f;
}

/// e(t) = exp(2 pi i t), with t reduced mod 1 first.
inline cplx expi(double t) {
  double f = frac(t);
  if (f > 0.5) f -= 1.0;
  return {std::cos(kTwoPi * f), std::sin(kTwoPi * f)};
}

/// frac(a * m) for an exactly representable integer m, using the exact
/// two-product a*m = p + err so large monomials keep full phase precision.
inline double frac_product(double a, std::int64_t m) {
  double md = static_cast<double>(m);
  double p = a * md;
  double err = std::fma(a, md, -p);
  return frac(frac(p) + err);
}

/// Integer power of a complex number by repeated squaring (std::pow goes
/// through log and misbehaves at zero).
inline cplx cpow(cplx z, unsigned e) {
  cplx r{1.0, 0.0};
  while (e != 0) {
    if (e & 1u) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}

/// Formats with 12 significant digits; used for every serialized float.
inline std::string format_g12(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline double round_g12(double v) { return std::strtod(format_g12(v).c_str(), nullptr); }

}  // namespace cubiclines
