#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "cubiclines/integral.hpp"

using namespace cubiclines;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
               double whole, double eps, int depth) {
  const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm), right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps) return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

double adaptive(const std::function<double(double)>& f, double a, double b, double eps) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return simpson(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), eps, 50);
}

/// Composite Simpson on an n x n lattice over [-P, P]^2.
cplx simpson_2d(const std::array<double, 4>& g, double P, int n) {
  const double h = 2.0 * P / n;
  cplx acc{0.0, 0.0};
  for (int i = 0; i <= n; ++i) {
    const double wi = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double x = -P + i * h;
    for (int j = 0; j <= n; ++j) {
      const double wj = (j == 0 || j == n) ? 1.0 : (j % 2 ? 4.0 : 2.0);
      const double y = -P + j * h;
      const double t = g[0] * x * x * x + g[1] * x * x * y + g[2] * x * y * y + g[3] * y * y * y;
      acc += wi * wj * cplx{std::cos(kTwoPi * t), std::sin(kTwoPi * t)};
    }
  }
  return acc * (h * h / 9.0);
}

}  // namespace

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  for (int m : {1, 2, 5, 16, 20}) {
    const auto r = gauss_legendre(m);
    double wsum = 0.0;
    for (double w : r.weights) wsum += w;
    EXPECT_NEAR(wsum, 2.0, 1e-13);
    for (int k = 0; k <= 2 * m - 1; ++k) {
      double q = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) q += r.weights[i] * std::pow(r.nodes[i], k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      EXPECT_NEAR(q, exact, 1e-12) << m << " " << k;
    }
  }
  const auto c = composite_rule(0.0, 3.0, 4, 5);
  double q = 0.0;
  for (std::size_t i = 0; i < c.nodes.size(); ++i) q += c.weights[i] * c.nodes[i] * c.nodes[i];
  EXPECT_NEAR(q, 9.0, 1e-12);
}

TEST(UEval, OriginIsTheArea) { EXPECT_NEAR(std::abs(u_eval({0, 0, 0, 0}) - cplx(4, 0)), 0.0, 1e-12); }

TEST(UEval, PureCubeMatchesOneDimensionalIntegral) {
  for (double t : {0.3, 1.0, 2.5, 7.0, 20.0}) {
    const double oracle = 2.0 * adaptive([t](double x) { return std::cos(kTwoPi * t * x * x * x); }, -1.0, 1.0, 1e-13);
    const cplx u = u_eval({t, 0, 0, 0}, 1e-11);
    EXPECT_NEAR(u.real(), oracle, 1e-9) << t;
    EXPECT_NEAR(u.imag(), 0.0, 1e-9) << t;
    // Swapping xi and eta sends the pure xi^3 phase to the pure eta^3 phase.
    EXPECT_NEAR(std::abs(u_eval({0, 0, 0, t}, 1e-11) - u), 0.0, 1e-9);
  }
}

TEST(UEval, ConjugationAndBound) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  for (int k = 0; k < 30; ++k) {
    std::array<double, 4> g{d(rng), d(rng), d(rng), d(rng)};
    const cplx u = u_eval(g);
    EXPECT_NEAR(std::abs(u_eval({-g[0], -g[1], -g[2], -g[3]}) - std::conj(u)), 0.0, 1e-9);
    // The phase is odd under (xi, eta) -> (-xi, -eta), so u is real.
    EXPECT_NEAR(u.imag(), 0.0, 1e-9);
    EXPECT_LE(std::abs(u), 4.0 + 1e-9);
  }
}

TEST(UEval, MatchesTwoDimensionalSimpson) {
  const std::array<double, 4> g{1.3, -0.7, 2.1, 0.4};
  EXPECT_NEAR(std::abs(u_eval(g, 1e-11) - simpson_2d(g, 1.0, 600)), 0.0, 1e-7);
}

TEST(UEval, EnvelopeToleranceAndBudget) {
  EXPECT_THROW(u_eval({2000.0, 0, 0, 0}), PreconditionError);
  EXPECT_THROW(u_eval({1, 0, 0, 0}, 0.0), PreconditionError);
  EXPECT_THROW(u_eval({std::nan(""), 0, 0, 0}), PreconditionError);
  OscillatoryOptions tiny;
  tiny.max_evaluations = 100;
  EXPECT_THROW(u_eval({3, 1, 0, 2}, 1e-12, tiny), ConvergenceError);
}

TEST(VEval, UnitScaleIsUAndOriginIsTheArea) {
  const std::array<double, 4> g{0.4, 1.1, -0.3, 0.9};
  EXPECT_NEAR(std::abs(v_eval(g, 1.0) - u_eval(g)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(v_eval({0, 0, 0, 0}, 3.0) - cplx(36, 0)), 0.0, 1e-9);
}

TEST(VEval, MatchesDirectIntegralOverTheLargerSquare) {
  std::mt19937_64 rng(42);
  for (double P : {1.0, 2.0, 5.0}) {
    std::uniform_real_distribution<double> d(-2.0 / (P * P * P), 2.0 / (P * P * P));
    for (int k = 0; k < 5; ++k) {
      std::array<double, 4> g{d(rng), d(rng), d(rng), d(rng)};
      EXPECT_NEAR(std::abs(v_eval(g, P, 1e-10) - simpson_2d(g, P, 400)), 0.0, 1e-6 * P * P) << P;
    }
  }
}

TEST(SingularIntegrand, OriginAndProduct) {
  EXPECT_NEAR(singular_integrand(CoefficientVector({1, 1, -1}), {0, 0, 0, 0}), 64.0, 1e-9);
  const std::array<double, 4> g{0.2, -0.1, 0.3, 0.05};
  const double u1 = u_eval(g).real(), u2 = u_eval({0.4, -0.2, 0.6, 0.1}).real();
  EXPECT_NEAR(singular_integrand(CoefficientVector({1, 2}), g), u1 * u2, 1e-9);
}

TEST(SampleStream, DeterministicAndUniform) {
  SampleStream a(7, 3), b(7, 3), c(7, 4);
  const auto x = a.next_u64();
  EXPECT_EQ(x, b.next_u64());
  EXPECT_NE(x, c.next_u64());
  SampleStream u(1, 0);
  double mean = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double v = u.uniform();
    ASSERT_GE(v, 0.0);
    ASSERT_LT(v, 1.0);
    mean += v;
  }
  EXPECT_NEAR(mean / 100000, 0.5, 0.005);
}

TEST(SingularIntegralMC, WideSlabAcceptsEverything) {
  const CoefficientVector c({1, -1, 2});
  const double sigma = 100.0;
  const auto e = singular_integral_mc(c, sigma, 1000, 5);
  EXPECT_DOUBLE_EQ(e.value, std::pow(2.0, 6.0) / std::pow(2.0 * sigma, 4.0));
  EXPECT_EQ(e.standard_error, 0.0);
}

TEST(SingularIntegralMC, MatchesHitOrMissSampling) {
  const CoefficientVector c({1, 1, -1});
  const double sigma = 0.4;
  const std::uint64_t n = 400000;
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    double r[4] = {0, 0, 0, 0};
    for (auto cj : c.entries()) {
      const double x = d(rng), y = d(rng);
      r[0] += cj * x * x * x;
      r[1] += cj * x * x * y;
      r[2] += cj * x * y * y;
      r[3] += cj * y * y * y;
    }
    hits += std::abs(r[0]) <= sigma && std::abs(r[1]) <= sigma && std::abs(r[2]) <= sigma && std::abs(r[3]) <= sigma;
  }
  const double scale = std::pow(2.0, 6.0) / std::pow(2.0 * sigma, 4.0);
  const double p = double(hits) / double(n);
  const double oracle = scale * p, oracle_se = scale * std::sqrt(p * (1 - p) / double(n));
  const auto e = singular_integral_mc(c, sigma, 200000, 9);
  EXPECT_LT(std::abs(e.value - oracle), 4.0 * std::hypot(e.standard_error, oracle_se));
  // Conditioning on the first pair removes variance.
  EXPECT_LT(e.standard_error * std::sqrt(200000.0), oracle_se * std::sqrt(double(n)));
}

TEST(SingularIntegralMC, SeedsAgreeAndErrorShrinks) {
  const CoefficientVector c({1, 1, -1, -1});
  const auto a = singular_integral_mc(c, 0.2, 100000, 1);
  const auto b = singular_integral_mc(c, 0.2, 100000, 2);
  EXPECT_LT(std::abs(a.value - b.value), 4.0 * std::hypot(a.standard_error, b.standard_error));
  const auto big = singular_integral_mc(c, 0.2, 400000, 1);
  EXPECT_NEAR(a.standard_error / big.standard_error, 2.0, 0.4);
}

TEST(SingularIntegralMC, IndependentOfWorkersAndSignOfC) {
  const CoefficientVector c({1, 2, -1, 1});
  Parallel three{3};
  const auto a = singular_integral_mc(c, 0.3, 200000, 11);
  const auto b = singular_integral_mc(c, 0.3, 200000, 11, three);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.standard_error, b.standard_error);
  // c -> -c maps the slab onto itself through (x, y) -> (-x, -y); same draws, same value.
  const auto m = singular_integral_mc(CoefficientVector({-1, -2, 1, -1}), 0.3, 200000, 11);
  EXPECT_NEAR(m.value, a.value, 1e-9 * a.value);
}

TEST(SingularIntegralMC, RefusesOverBudget) {
  Budget tiny;
  tiny.max_operations = 10;
  EXPECT_THROW(singular_integral_mc(CoefficientVector({1, 1}), 0.1, 1000, 1, {}, tiny), BudgetExceeded);
  EXPECT_THROW(singular_integral_mc(CoefficientVector({1, 1}), 0.0, 1000, 1), PreconditionError);
}

TEST(SingularIntegralMC, PairReportsRelativeChange) {
  const auto p = singular_integral_mc_pair(CoefficientVector({1, 1, -1, -1}), 0.2, 50000, 3);
  EXPECT_EQ(p.fine.sigma, 0.1);
  EXPECT_NEAR(p.relative_difference, std::abs(p.coarse.value - p.fine.value) / p.fine.value, 1e-15);
  EXPECT_NEAR(p.extrapolated, (4 * p.fine.value - p.coarse.value) / 3, 1e-9 * p.fine.value);
}

TEST(SingularIntegralQuad, ZeroRadiusAndDirectLattice) {
  const CoefficientVector c({1, 2});
  EXPECT_EQ(singular_integral_quad(c, 0.0, 5), 0.0);
  const double R = 1.0;
  const int G = 5;
  const double h = 2.0 * R / (G - 1);
  double direct = 0.0;
  for (int i1 = 0; i1 < G; ++i1)
    for (int i2 = 0; i2 < G; ++i2)
      for (int i3 = 0; i3 < G; ++i3)
        for (int i4 = 0; i4 < G; ++i4) {
          double w = 1.0;
          for (int i : {i1, i2, i3, i4}) w *= (i == 0 || i == G - 1) ? 0.5 : 1.0;
          direct += w * singular_integrand(c, {-R + i1 * h, -R + i2 * h, -R + i3 * h, -R + i4 * h});
        }
  direct *= h * h * h * h;
  EXPECT_NEAR(singular_integral_quad(c, R, G), direct, 1e-8 * std::abs(direct));
}

TEST(SingularIntegralQuad, AgreesWithSlabEstimateForManyVariables) {
  const auto c = CoefficientVector::ones(16);
  const double quad = singular_integral_quad(c, 2.0, 21);
  const auto mc = singular_integral_mc(c, 0.05, 400000, 20240611);
  EXPECT_NEAR(mc.value / quad, 1.0, 0.15);
}
