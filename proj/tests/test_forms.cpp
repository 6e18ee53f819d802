#include <random>

#include <boost/rational.hpp>
#include <gtest/gtest.h>

#include "cubiclines/forms.hpp"

using namespace cubiclines;
using Rational = boost::rational<long long>;

namespace {

std::vector<std::int64_t> random_vec(std::mt19937_64& rng, std::size_t n, int lim) {
  std::uniform_int_distribution<int> d(-lim, lim);
  std::vector<std::int64_t> v(n);
  for (auto& e : v) e = d(rng);
  return v;
}

}  // namespace

TEST(Veronese, MonomialsInDecreasingXExponent) {
  auto v = veronese(3, 2, 3);
  ASSERT_EQ(v.size(), 4u);
  EXPECT_TRUE(v[0] == 8 && v[1] == 12 && v[2] == 18 && v[3] == 27);
  auto w = veronese(1, 5, -7);
  ASSERT_EQ(w.size(), 2u);
  EXPECT_TRUE(w[0] == 5 && w[1] == -7);
  auto u = veronese(2, -1, 1);
  EXPECT_TRUE(u[0] == 1 && u[1] == -1 && u[2] == 1);
}

TEST(Veronese, RejectsBadDegreeAndOverflow) {
  EXPECT_THROW(veronese(0, 1, 1), PreconditionError);
  EXPECT_THROW(veronese(4, 1, 1), PreconditionError);
  EXPECT_THROW(veronese(3, INT64_MAX, 1), OverflowError);
  EXPECT_NO_THROW(veronese(3, std::int64_t{1} << 40, 1));
}

TEST(Sigma, Examples) {
  std::vector<std::int64_t> x{2, 2}, y{3, 3};
  EXPECT_TRUE(sigma(1, 3, 2, x, y) == 0);
  std::vector<std::int64_t> x2{1, 1}, y2{4, 1};
  EXPECT_TRUE(sigma(1, 2, 3, x2, y2) == 15);
  std::vector<std::int64_t> x3{1, 2, 3, 4}, y3{9, -9, 5, 0};
  EXPECT_TRUE(sigma(2, 1, 1, x3, y3) == -4);
}

TEST(Sigma, RejectsBadIndexAndLength) {
  std::vector<std::int64_t> x{1, 2}, y{1, 2};
  EXPECT_THROW(sigma(1, 2, 4, x, y), PreconditionError);
  EXPECT_THROW(sigma(1, 2, 0, x, y), PreconditionError);
  EXPECT_THROW(sigma(2, 2, 1, x, y), PreconditionError);
}

TEST(Sigma, AntisymmetricUnderSwappingHalves) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t s = 1 + trial % 4;
    auto x = random_vec(rng, 2 * s, 20), y = random_vec(rng, 2 * s, 20);
    std::vector<std::int64_t> xs(x.begin() + s, x.end()), ys(y.begin() + s, y.end());
    xs.insert(xs.end(), x.begin(), x.begin() + s);
    ys.insert(ys.end(), y.begin(), y.begin() + s);
    for (int d = 1; d <= 3; ++d)
      for (int l = 1; l <= d + 1; ++l) EXPECT_TRUE(sigma(s, d, l, x, y) == -sigma(s, d, l, xs, ys));
  }
}

TEST(SystemValues, Examples) {
  CoefficientVector c1({1, -1});
  std::vector<std::int64_t> x{3, 3}, y{5, 5};
  EXPECT_TRUE(is_zero(system_values(c1, x, y)));
  auto v = system_values(CoefficientVector({1}), std::vector<std::int64_t>{1}, std::vector<std::int64_t>{2});
  EXPECT_TRUE(v[0] == 1 && v[1] == 2 && v[2] == 4 && v[3] == 8);
  auto w = system_values(CoefficientVector({2, 1}), std::vector<std::int64_t>{1, -2}, std::vector<std::int64_t>{0, 1});
  EXPECT_TRUE(w[0] == -6 && w[1] == 4 && w[2] == -2 && w[3] == 1);
}

TEST(SystemValues, LinearInCoefficientsAndOdd) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t s = 1 + trial % 5;
    auto x = random_vec(rng, s, 30), y = random_vec(rng, s, 30);
    auto ca = random_vec(rng, s, 5), cb = random_vec(rng, s, 5);
    for (auto& v : ca) v = v == 0 ? 1 : v;
    for (auto& v : cb) v = v == 0 ? -2 : v;
    std::vector<std::int64_t> sum(s);
    bool nonzero = true;
    for (std::size_t i = 0; i < s; ++i) {
      sum[i] = ca[i] + cb[i];
      nonzero = nonzero && sum[i] != 0;
    }
    auto va = system_values(CoefficientVector(ca), x, y), vb = system_values(CoefficientVector(cb), x, y);
    if (nonzero) {
      auto vs = system_values(CoefficientVector(sum), x, y);
      for (int l = 0; l < 4; ++l) EXPECT_TRUE(vs[l] == va[l] + vb[l]);
    }
    std::vector<std::int64_t> nx(s), ny(s);
    for (std::size_t i = 0; i < s; ++i) {
      nx[i] = -x[i];
      ny[i] = -y[i];
    }
    auto vn = system_values(CoefficientVector(ca), nx, ny);
    for (int l = 0; l < 4; ++l) EXPECT_TRUE(vn[l] == -va[l]);
  }
}

TEST(SystemValues, LengthMismatch) {
  EXPECT_THROW(system_values(CoefficientVector({1, 2}), std::vector<std::int64_t>{1},
                             std::vector<std::int64_t>{1}),
               PreconditionError);
}

TEST(CoefficientVector, ValidationAndParsing) {
  EXPECT_THROW(CoefficientVector(std::vector<std::int64_t>{}), PreconditionError);
  EXPECT_THROW(CoefficientVector({1, 0}), PreconditionError);
  EXPECT_EQ(CoefficientVector::parse("1,-1, +2"), CoefficientVector({1, -1, 2}));
  EXPECT_THROW(CoefficientVector::parse("1,,2"), PreconditionError);
  EXPECT_THROW(CoefficientVector::parse("a"), PreconditionError);
  EXPECT_EQ(CoefficientVector::ones(3).to_string(), "1,1,1");
}

TEST(SolutionPair, RangeTagDecidesBox) {
  SolutionPair sym{{-2, 0}, {1, 2}, 2, BoxRange::symmetric};
  EXPECT_TRUE(sym.in_box());
  SolutionPair pos{{-2, 1}, {1, 2}, 2, BoxRange::positive};
  EXPECT_FALSE(pos.in_box());
  pos.x[0] = 1;
  EXPECT_TRUE(pos.in_box());
}

TEST(LinearForms, Examples) {
  auto a = linear_forms<double>({1, 1, 1}, {1, 1, 1, 1}, {7, 8, 9});
  EXPECT_EQ(a.l1, 6.0);
  auto z = linear_forms<double>({0, 0, 0}, {0.3, 0.1, 0.2, 0.9}, {1, 2, 3});
  EXPECT_EQ(z.l1, 0.0);
  EXPECT_EQ(z.l2, 0.0);
  EXPECT_EQ(z.l3, 0.0);
  auto u = linear_forms<double>({1, 0, 0}, {0, 1, 0, 0}, {1, 0, 0});
  EXPECT_EQ(u.l1, 0.0);
  EXPECT_EQ(u.l2, 1.0);
  EXPECT_EQ(u.l3, 1.0);
}

TEST(ShiftCorrection, Examples) {
  EXPECT_EQ(shift_correction<double>({4, -2, 7}, 0, 0, {0.1, 0.2, 0.3, 0.4}), 0.0);
  EXPECT_EQ(shift_correction<double>({1, 0, 0}, 1, 0, {1, 0, 0, 0}), 3.0);
}

TEST(ShiftCorrection, EqualsZ1L1PlusZ2L2InRationals) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> d(-50, 50), den(1, 30);
  for (int trial = 0; trial < 2000; ++trial) {
    std::array<std::int64_t, 3> h{d(rng), d(rng), d(rng)};
    std::array<Rational, 4> alpha;
    for (auto& a : alpha) a = Rational(d(rng), den(rng));
    std::array<Rational, 3> beta{Rational(0), Rational(0), Rational(0)};
    const std::int64_t z1 = d(rng), z2 = d(rng);
    auto L = linear_forms<Rational>(h, alpha, beta);
    EXPECT_EQ(shift_correction<Rational>(h, z1, z2, alpha), Rational(z1) * L.l1 + Rational(z2) * L.l2);
  }
}

namespace {

/// Tuples (u, v) of length 2s with both degree-1 differences zero: the last
/// entry of each half-difference is solved for.
void balanced(std::mt19937_64& rng, std::size_t s, std::vector<std::int64_t>& u, std::vector<std::int64_t>& v) {
  u = random_vec(rng, 2 * s, 20);
  v = random_vec(rng, 2 * s, 20);
  std::int64_t du = 0, dv = 0;
  for (std::size_t i = 0; i + 1 < 2 * s; ++i) {
    du += i < s ? u[i] : -u[i];
    dv += i < s ? v[i] : -v[i];
  }
  u[2 * s - 1] = du;
  v[2 * s - 1] = dv;
}

}  // namespace

TEST(ShiftIdentity, DegreeOneAndTwoConditionsAreShiftInvariant) {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> zd(-20, 20);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t s = 1 + trial % 4;
    std::vector<std::int64_t> u, v;
    balanced(rng, s, u, v);
    ASSERT_TRUE(sigma(s, 1, 1, u, v) == 0 && sigma(s, 1, 2, u, v) == 0);
    const std::int64_t z1 = zd(rng), z2 = zd(rng);
    std::vector<std::int64_t> x(2 * s), y(2 * s);
    for (std::size_t i = 0; i < 2 * s; ++i) {
      x[i] = u[i] + z1;
      y[i] = v[i] + z2;
    }
    for (int l = 1; l <= 3; ++l) EXPECT_TRUE(sigma(s, 2, l, x, y) == sigma(s, 2, l, u, v));
    EXPECT_TRUE(sigma(s, 1, 1, x, y) == 0);
    EXPECT_TRUE(sigma(s, 1, 2, x, y) == 0);
  }
}

TEST(ShiftIdentity, CubicPhaseLosesExactlyTheShiftCorrection) {
  std::mt19937_64 rng(15);
  std::uniform_int_distribution<int> zd(-20, 20), num(-40, 40), den(1, 25);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t s = 1 + trial % 4;
    std::vector<std::int64_t> u, v;
    balanced(rng, s, u, v);
    const std::int64_t z1 = zd(rng), z2 = zd(rng);
    std::vector<std::int64_t> x(2 * s), y(2 * s);
    for (std::size_t i = 0; i < 2 * s; ++i) {
      x[i] = u[i] + z1;
      y[i] = v[i] + z2;
    }
    std::array<std::int64_t, 3> h;
    for (int l = 1; l <= 3; ++l) h[l - 1] = static_cast<std::int64_t>(sigma(s, 2, l, u, v));
    std::array<Rational, 4> alpha;
    for (auto& a : alpha) a = Rational(num(rng), den(rng));
    Rational shifted(0), original(0);
    for (int l = 1; l <= 4; ++l) {
      shifted += alpha[l - 1] * Rational(static_cast<long long>(sigma(s, 3, l, u, v)));
      original += alpha[l - 1] * Rational(static_cast<long long>(sigma(s, 3, l, x, y)));
    }
    EXPECT_EQ(shifted, original - shift_correction<Rational>(h, z1, z2, alpha));
  }
}
