#pragma once

// Exact integer algebra of the rational-line system on a diagonal cubic:
// Veronese embeddings, the difference functionals sigma_{s,d,l}, the four
// weighted form values, and the linear forms produced by shifting variables.

#include <array>
#include <charconv>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cubiclines/core.hpp"

namespace cubiclines {

/// Nonzero integer coefficients (c_1, ..., c_s) of sum c_i z_i^3 = 0.
class CoefficientVector {
 public:
  explicit CoefficientVector(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {
    require(!entries_.empty(), "coefficient vector must have s >= 1 entries");
    for (auto c : entries_) {
      require(c != 0, "coefficients must be nonzero");
      require(c > -(std::int64_t{1} << 31) && c < (std::int64_t{1} << 31),
              "coefficients must fit in 32 bits");
    }
  }

  /// Parses a comma-separated signed list such as "1,-1,2".
  static CoefficientVector parse(std::string_view text) {
    std::vector<std::int64_t> out;
    while (!text.empty()) {
      auto comma = text.find(',');
      auto tok = text.substr(0, comma);
      while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
      while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
      if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      require(ec == std::errc{} && ptr == tok.data() + tok.size() && !tok.empty(),
              "cannot parse coefficient '" + std::string(tok) + "'");
      out.push_back(v);
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
    return CoefficientVector(std::move(out));
  }

  static CoefficientVector ones(std::size_t s) {
    return CoefficientVector(std::vector<std::int64_t>(s, 1));
  }

  std::size_t size() const { return entries_.size(); }
  std::int64_t operator[](std::size_t i) const { return entries_[i]; }
  std::span<const std::int64_t> entries() const { return entries_; }

  std::int64_t max_abs() const {
    std::int64_t m = 0;
    for (auto c : entries_) m = std::max(m, c < 0 ? -c : c);
    return m;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(entries_[i]);
    }
    return s;
  }

  friend bool operator==(const CoefficientVector&, const CoefficientVector&) = default;

 private:
  std::vector<std::int64_t> entries_;
};

/// The monomials of degree d in two variables, in decreasing x-exponent
/// order: component k (0-based) is x^{d-k} y^k.
struct VeroneseVector {
  int degree = 0;
  std::array<i128, 4> components{};

  std::size_t size() const { return static_cast<std::size_t>(degree) + 1; }
  i128 operator[](std::size_t k) const { return components[k]; }
};

inline VeroneseVector veronese(int degree, std::int64_t x, std::int64_t y) {
  require(degree >= 1 && degree <= 3, "Veronese degree must be 1, 2 or 3");
  VeroneseVector v;
  v.degree = degree;
  for (int k = 0; k <= degree; ++k) {
    i128 m = 1;
    for (int e = 0; e < degree - k; ++e) m = checked_mul(m, x);
    for (int e = 0; e < k; ++e) m = checked_mul(m, y);
    v.components[static_cast<std::size_t>(k)] = m;
  }
  return v;
}

/// sigma_{s,d,l}(x, y): the l-th (1-based) degree-d Veronese component summed
/// over the first s index pairs minus the last s.
inline i128 sigma(std::size_t s, int degree, int l, std::span<const std::int64_t> x,
                  std::span<const std::int64_t> y) {
  require(degree >= 1 && degree <= 3, "sigma: degree must be 1, 2 or 3");
  require(l >= 1 && l <= degree + 1, "sigma: component index out of range");
  require(x.size() == 2 * s && y.size() == 2 * s, "sigma: x and y must have length 2s");
  i128 acc = 0;
  for (std::size_t i = 0; i < 2 * s; ++i) {
    i128 m = veronese(degree, x[i], y[i])[static_cast<std::size_t>(l - 1)];
    acc = i < s ? checked_add(acc, m) : checked_add(acc, -m);
  }
  return acc;
}

/// (sum c_i x_i^3, sum c_i x_i^2 y_i, sum c_i x_i y_i^2, sum c_i y_i^3).
using FormValues = std::array<i128, 4>;

inline FormValues system_values(const CoefficientVector& c, std::span<const std::int64_t> x,
                                std::span<const std::int64_t> y) {
  require(x.size() == c.size() && y.size() == c.size(),
          "system_values: x and y must have length s");
  FormValues v{};
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto nu = veronese(3, x[i], y[i]);
    for (std::size_t l = 0; l < 4; ++l) v[l] = checked_add(v[l], checked_mul(c[i], nu[l]));
  }
  return v;
}

inline bool is_zero(const FormValues& v) {
  return v[0] == 0 && v[1] == 0 && v[2] == 0 && v[3] == 0;
}

enum class BoxRange { symmetric, positive };

inline std::string_view to_string(BoxRange r) {
  return r == BoxRange::symmetric ? "symmetric" : "positive";
}

/// A candidate (x, y) in Z^{2s}, tagged with the box it was drawn from.
struct SolutionPair {
  std::vector<std::int64_t> x;
  std::vector<std::int64_t> y;
  std::int64_t radius = 0;
  BoxRange range = BoxRange::symmetric;

  bool in_box() const {
    if (x.size() != y.size()) return false;
    std::int64_t lo = range == BoxRange::symmetric ? -radius : 1;
    auto ok = [&](std::int64_t v) { return v >= lo && v <= radius; };
    return std::all_of(x.begin(), x.end(), ok) && std::all_of(y.begin(), y.end(), ok);
  }
};

/// Linear forms L1(h, alpha), L2(h, alpha), L3(h, beta) from the shifted
/// cubic phase. T may be double or an exact rational type.
template <class T>
struct LinearForms {
  T l1{};
  T l2{};
  T l3{};
};

template <class T>
LinearForms<T> linear_forms(const std::array<std::int64_t, 3>& h, const std::array<T, 4>& alpha,
                            const std::array<T, 3>& beta) {
  T h1(h[0]), h2(h[1]), h3(h[2]);
  LinearForms<T> out;
  out.l1 = T(3) * h1 * alpha[0] + T(2) * h2 * alpha[1] + h3 * alpha[2];
  out.l2 = h1 * alpha[1] + T(2) * h2 * alpha[2] + T(3) * h3 * alpha[3];
  out.l3 = beta[0] * h1 + beta[1] * h2 + beta[2] * h3;
  return out;
}

/// Phase lost by the cubic part when (x, y) is shifted by (z1, z2) under the
/// degree <= 2 constraints; equals z1 * L1 + z2 * L2.
template <class T>
T shift_correction(const std::array<std::int64_t, 3>& h, std::int64_t z1, std::int64_t z2,
                   const std::array<T, 4>& alpha) {
  T h1(h[0]), h2(h[1]), h3(h[2]), a(z1), b(z2);
  return T(3) * h1 * a * alpha[0] + (h1 * b + T(2) * h2 * a) * alpha[1] +
         (h3 * a + T(2) * h2 * b) * alpha[2] + T(3) * h3 * b * alpha[3];
}

}  // namespace cubiclines
