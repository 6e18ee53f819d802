// Counts integer points (x, y) in [-X, X]^{2s} on which all four forms of
// sum c_i (x_i + t y_i)^3 vanish, and prints the growth exponent.

#include <cstdio>
#include <vector>

#include "cubiclines/counting.hpp"

int main() {
  using namespace cubiclines;
  const CoefficientVector c({1, 1, -1, -1});
  std::vector<CountRecord> recs;
  std::printf("c = (%s)\n", c.to_string().c_str());
  for (std::int64_t X = 1; X <= 8; X *= 2) {
    auto r = count_lines_mitm(c, X, make_plan(c.size(), X));
    std::printf("  X=%-3lld N=%s  (%.2f s)\n", static_cast<long long>(X), to_string(r.count).c_str(), r.wall_time);
    recs.push_back(r);
  }
  const auto fit = fit_exponent(recs);
  std::printf("log-log slope %.3f\n", fit.slope);

  std::printf("eight-cube equation counts\n");
  for (std::int64_t X : {10, 20, 40}) {
    auto r = count_hua_single(X);
    std::printf("  T(%lld) = %s\n", static_cast<long long>(X), to_string(r.count).c_str());
  }
}
