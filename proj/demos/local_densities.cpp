// Local densities: the Euler factors of the truncated singular series for
// sum_{i<=s} z_i^3 and a check of the congruence-count identity at p = 3.

#include <cstdio>

#include "cubiclines/expsums.hpp"

int main() {
  using namespace cubiclines;
  for (std::size_t s : {8, 12, 16}) {
    const auto ss = singular_series(CoefficientVector::ones(s));
    std::printf("s=%zu\n", s);
    for (const auto& f : ss.factors) std::printf("  p=%-3lld factor %.10f\n", static_cast<long long>(f.p), f.partial_factor);
    std::printf("  product %.10f, last-prime change %.3g\n", ss.value, ss.stability);
  }
  const auto id = local_identity_check(3, 2, CoefficientVector({1, 1, -1}));
  std::printf("p=3 h=2 c=(1,1,-1): sum S = %.12f, 3^{-4} M(9) = %.12f\n", id.lhs, id.rhs);
}
