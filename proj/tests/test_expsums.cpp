#include <random>

#include <gtest/gtest.h>

#include "cubiclines/expsums.hpp"

using namespace cubiclines;

namespace {

/// S(q, a) as the literal double sum over x, y = 1..q.
cplx direct_sum(std::int64_t q, const std::array<std::int64_t, 4>& a) {
  cplx acc{0.0, 0.0};
  for (std::int64_t x = 1; x <= q; ++x)
    for (std::int64_t y = 1; y <= q; ++y) {
      const std::int64_t m = a[0] * x * x * x + a[1] * x * x * y + a[2] * x * y * y + a[3] * y * y * y;
      const double t = double(mod_floor(m, q)) / double(q);
      acc += cplx{std::cos(kTwoPi * t), std::sin(kTwoPi * t)};
    }
  return acc;
}

std::array<std::int64_t, 4> random_a(std::mt19937_64& rng, std::int64_t q) {
  std::uniform_int_distribution<std::int64_t> d(0, q - 1);
  return {d(rng), d(rng), d(rng), d(rng)};
}

}  // namespace

TEST(WeylSum, ZeroPhaseCountsPoints) {
  EXPECT_NEAR(std::abs(weyl_sum_F(PhasePoint({0, 0, 0, 0}), 7) - cplx(49, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(weyl_sum_F(PhasePoint({0, 0, 0, 0}), 3, BoxRange::symmetric) - cplx(49, 0)), 0.0, 1e-12);
}

TEST(WeylSum, HalfPhaseCancels) {
  EXPECT_NEAR(std::abs(weyl_sum_F(PhasePoint({0.5, 0, 0, 0}), 2)), 0.0, 1e-12);
}

TEST(WeylSum, ConjugationPeriodicityAndBound) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    std::array<double, 4> a{u(rng), u(rng), u(rng), u(rng)};
    std::array<double, 4> neg{-a[0], -a[1], -a[2], -a[3]};
    std::array<double, 4> shifted{a[0] + 3, a[1] - 2, a[2] + 1, a[3] + 7};
    const cplx f = weyl_sum_F(PhasePoint(a), 5);
    EXPECT_NEAR(std::abs(weyl_sum_F(PhasePoint(neg), 5) - std::conj(f)), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(weyl_sum_F(PhasePoint(shifted), 5) - f), 0.0, 1e-10);
    EXPECT_LE(std::abs(f), 25.0 + 1e-9);
  }
}

TEST(WeylSum, CoefficientScalesEveryPhase) {
  const std::array<double, 4> a{0.1, 0.27, 0.33, 0.71};
  const std::array<double, 4> a3{0.3, 0.81, 0.99, 2.13};
  EXPECT_NEAR(std::abs(weyl_sum_F(PhasePoint(a), 4, BoxRange::symmetric, 3) -
                       weyl_sum_F(PhasePoint(a3), 4, BoxRange::symmetric)),
              0.0, 1e-10);
}

TEST(WeylSum, FullSumReducesAndCancels) {
  const std::array<double, 4> a{0.13, 0.4, 0.77, 0.05};
  EXPECT_NEAR(std::abs(weyl_sum_full(PhasePoint(a, std::array<double, 3>{0, 0, 0}, std::array<double, 2>{0, 0}), 6) -
                       weyl_sum_F(PhasePoint(a), 6)),
              0.0, 1e-10);
  EXPECT_NEAR(std::abs(weyl_sum_full(PhasePoint({0, 0, 0, 0}), 4) - cplx(16, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(weyl_sum_full(PhasePoint({0, 0, 0, 0}, std::array<double, 3>{0, 0, 0},
                                                std::array<double, 2>{0.5, 0}),
                                     2)),
              0.0, 1e-12);
}

TEST(GridOrthogonality, MeanSquareCountsSolutions) {
  constexpr int G = 17;
  CompensatedSum acc;
  for (int i1 = 0; i1 < G; ++i1)
    for (int i2 = 0; i2 < G; ++i2)
      for (int i3 = 0; i3 < G; ++i3)
        for (int i4 = 0; i4 < G; ++i4)
          acc.add(std::norm(weyl_sum_F(PhasePoint({double(i1) / G, double(i2) / G, double(i3) / G, double(i4) / G}), 2)));
  EXPECT_NEAR(acc.value() / (G * G * G * G), 4.0, 1e-9);
}

TEST(CompleteSum, Examples) {
  EXPECT_NEAR(std::abs(complete_sum(1, {5, 1, 2, 3}) - cplx(1, 0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(complete_sum(2, {1, 0, 0, 1})), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(complete_sum(3, {1, 0, 0, 0})), 0.0, 1e-12);
}

TEST(CompleteSum, MatchesLiteralDoubleSum) {
  std::mt19937_64 rng(32);
  for (std::int64_t q = 1; q <= 16; ++q)
    for (int k = 0; k < 20; ++k) {
      auto a = random_a(rng, q);
      EXPECT_NEAR(std::abs(complete_sum(q, a) - direct_sum(q, a)), 0.0, 1e-9 * double(q * q));
    }
  EXPECT_NEAR(std::abs(complete_sum(6, {-1, 7, -13, 2}) - direct_sum(6, {5, 1, 5, 2})), 0.0, 1e-10);
}

TEST(CompleteSumTable, MethodsAgreeWithPointwise) {
  for (std::int64_t q : {1, 2, 3, 5, 6}) {
    const auto t1 = complete_sum_table(q, CompleteSumMethod::direct);
    const auto t2 = complete_sum_table(q, CompleteSumMethod::multiplicity_vector);
    const auto t3 = complete_sum_table(q, CompleteSumMethod::multi_axis_transform);
    ASSERT_EQ(t3.values().size(), static_cast<std::size_t>(q * q * q * q));
    for (std::size_t i = 0; i < t3.values().size(); ++i) {
      EXPECT_NEAR(std::abs(t1[i] - t3[i]), 0.0, 1e-8 * double(q * q));
      EXPECT_NEAR(std::abs(t2[i] - t3[i]), 0.0, 1e-8 * double(q * q));
    }
  }
  const auto t = complete_sum_table(2);
  EXPECT_NEAR(t({2, 2, 2, 2}).real(), 4.0, 1e-12);
  for (std::int64_t a1 = 0; a1 < 2; ++a1)
    for (std::int64_t a2 = 0; a2 < 2; ++a2)
      for (std::int64_t a3 = 0; a3 < 2; ++a3)
        for (std::int64_t a4 = 0; a4 < 2; ++a4)
          EXPECT_NEAR(std::abs(t({a1, a2, a3, a4}) - complete_sum(2, {a1, a2, a3, a4})), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(complete_sum_table(3)({1, 0, 0, 0})), 0.0, 1e-12);
}

TEST(CompleteSumTable, Invariants) {
  for (std::int64_t q : {4, 7, 9}) {
    const auto t = complete_sum_table(q);
    EXPECT_NEAR(t({0, 0, 0, 0}).real(), double(q * q), 1e-9);
    std::mt19937_64 rng(33 + q);
    for (int k = 0; k < 200; ++k) {
      auto a = random_a(rng, q);
      const cplx v = t(a);
      EXPECT_LE(std::abs(v), double(q * q) + 1e-9);
      EXPECT_NEAR(std::abs(t({-a[0], -a[1], -a[2], -a[3]}) - std::conj(v)), 0.0, 1e-9);
    }
  }
}

TEST(CompleteSumTable, WorkerIndependentBits) {
  Parallel three{3};
  const auto a = complete_sum_table(8);
  const auto b = complete_sum_table(8, CompleteSumMethod::multi_axis_transform, {}, three);
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    EXPECT_EQ(a[i].real(), b[i].real());
    EXPECT_EQ(a[i].imag(), b[i].imag());
  }
}

TEST(CompleteSumTable, Budget) {
  Budget tiny;
  tiny.max_operations = 1000;
  EXPECT_THROW(complete_sum_table(12, CompleteSumMethod::multi_axis_transform, tiny), BudgetExceeded);
}

TEST(Multiplicativity, SquaredMultipliersGiveTheCrtLaw) {
  std::mt19937_64 rng(34);
  for (std::int64_t q1 = 2; q1 <= 12; ++q1)
    for (std::int64_t q2 = q1 + 1; q2 <= 12; ++q2) {
      if (std::gcd(q1, q2) != 1) continue;
      for (int k = 0; k < 10; ++k) {
        auto a = random_a(rng, q1 * q2);
        std::array<std::int64_t, 4> a1, a2;
        for (int l = 0; l < 4; ++l) {
          a1[l] = q2 * q2 % q1 * a[l] % q1;
          a2[l] = q1 * q1 % q2 * a[l] % q2;
        }
        const cplx lhs = complete_sum(q1 * q2, a);
        const cplx rhs = complete_sum(q1, a1) * complete_sum(q2, a2);
        EXPECT_LE(std::abs(lhs - rhs), 1e-8 * std::max(std::abs(rhs), 1.0)) << q1 << "," << q2;
      }
    }
}

TEST(Multiplicativity, CubedMultipliersDoNotFactor) {
  // x = q2 u + q1 v makes every cubic monomial pick up q2^3 mod q1, so the
  // normalised phase a/(q1 q2) sees q2^2, not q2^3. A witness:
  const std::array<std::int64_t, 4> a{2, 0, 0, 0};
  const cplx lhs = complete_sum(14, a);
  const cplx cubed = complete_sum(7, {8 * 2 % 7, 0, 0, 0}) * complete_sum(2, {0, 0, 0, 0});
  const cplx squared = complete_sum(7, {4 * 2 % 7, 0, 0, 0}) * complete_sum(2, {0, 0, 0, 0});
  EXPECT_GT(std::abs(lhs - cubed), 1.0);
  EXPECT_NEAR(std::abs(lhs - squared), 0.0, 1e-10);
}

TEST(LocalAverage, Examples) {
  EXPECT_NEAR(local_average(1, CoefficientVector({1})).value, 1.0, 1e-14);
  EXPECT_NEAR(local_average(2, CoefficientVector({1})).value, 3.0, 1e-12);
  // q = 2, c = (1, 1): (1/16) sum over the 15 content-one residues of S(2, a)^2.
  cplx acc{0.0, 0.0};
  for (int m = 1; m < 16; ++m) {
    std::array<std::int64_t, 4> a{m >> 3 & 1, m >> 2 & 1, m >> 1 & 1, m & 1};
    acc += direct_sum(2, a) * direct_sum(2, a);
  }
  EXPECT_NEAR(local_average(2, CoefficientVector({1, 1})).value, acc.real() / 16.0, 1e-12);
}

TEST(LocalAverage, RealAndMultiplicative) {
  const CoefficientVector c({1, -1, 2});
  for (std::int64_t q : {3, 4, 5, 6, 10, 12}) EXPECT_LT(std::abs(local_average(q, c).imaginary_residue), 1e-9);
  EXPECT_NEAR(local_average(6, c).value, local_average(2, c).value * local_average(3, c).value, 1e-9);
  EXPECT_NEAR(local_average(10, c).value, local_average(2, c).value * local_average(5, c).value, 1e-9);
  EXPECT_NEAR(local_average(12, c).value, local_average(4, c).value * local_average(3, c).value, 1e-9);
}

TEST(LocalAverage, NegativeCoefficientsReduceModQ) {
  EXPECT_NEAR(local_average(7, CoefficientVector({-1, 3})).value, local_average(7, CoefficientVector({6, 3})).value,
              1e-12);
}

TEST(LocalFactor, SingleTermAtTwo) {
  const auto f = local_factor(2, 1, CoefficientVector({1}));
  EXPECT_NEAR(f.partial_factor, 4.0, 1e-12);
  EXPECT_EQ(f.s_values.size(), 2u);
  EXPECT_EQ(f.s_values[0], 1.0);
}

TEST(SingularSeries, EmptyProductAndDepthSchedule) {
  SeriesTruncation none;
  none.p_max = 1;
  const auto e = singular_series(CoefficientVector({1, 1}), none);
  EXPECT_EQ(e.value, 1.0);
  EXPECT_TRUE(e.factors.empty());
  SeriesTruncation t;
  EXPECT_EQ(t.h_max(2), 2);
  EXPECT_EQ(t.h_max(7), 2);
  EXPECT_EQ(t.h_max(11), 1);
  EXPECT_THROW(singular_series(CoefficientVector({1})), PreconditionError);
}

TEST(SingularSeries, ProductOfFactorsAndStability) {
  SeriesTruncation t;
  t.p_max = 5;
  t.deep_prime_cutoff = 3;
  const auto ss = singular_series(CoefficientVector({1, 1, 1, 1, 1, 1, 1, 1}), t);
  ASSERT_EQ(ss.factors.size(), 3u);
  double prod = 1.0;
  for (const auto& f : ss.factors) prod *= f.partial_factor;
  EXPECT_NEAR(ss.value, prod, 1e-12 * prod);
  const double before = prod / ss.factors.back().partial_factor;
  EXPECT_NEAR(ss.stability, std::abs(prod - before) / prod, 1e-12);
}

TEST(SingularSeries, FlagsNonpositiveFactors) {
  // Two variables, c = (1, 1): mod 2 the factor 1 + S(2) + S(4) stays positive;
  // the report lists only primes whose factor is not.
  SeriesTruncation t;
  t.p_max = 3;
  const auto ss = singular_series(CoefficientVector({1, 1}), t);
  for (auto p : ss.nonpositive_primes) {
    bool found = false;
    for (const auto& f : ss.factors)
      if (f.p == p) found = f.partial_factor <= 0.0;
    EXPECT_TRUE(found);
  }
}

TEST(LocalIdentity, Examples) {
  const auto a = local_identity_check(2, 1, CoefficientVector({1}));
  EXPECT_NEAR(a.lhs, 4.0, 1e-12);
  EXPECT_NEAR(a.rhs, 4.0, 1e-12);
  const auto b = local_identity_check(3, 1, CoefficientVector({1}));
  EXPECT_EQ(static_cast<std::uint64_t>(b.congruence_count), 1u);
  EXPECT_NEAR(b.rhs, 9.0, 1e-12);
  EXPECT_NEAR(b.lhs, 9.0, 1e-9);
  EXPECT_LT(local_identity_check(2, 2, CoefficientVector({1, -1})).relative_error, 1e-6);
}

TEST(LocalIdentity, HoldsOnAGrid) {
  for (std::int64_t p : {2, 3})
    for (int h = 1; h <= 3; ++h)
      for (const auto& c : {CoefficientVector({2}), CoefficientVector({1, 2}), CoefficientVector({1, -1})}) {
        if (std::pow(double(p), 2.0 * h * double(c.size())) > 3e6) continue;
        EXPECT_LT(local_identity_check(p, h, c).relative_error, 1e-6) << p << " " << h << " " << c.to_string();
      }
}
