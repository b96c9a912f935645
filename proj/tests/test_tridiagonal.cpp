#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "fflab/error.hpp"
#include "fflab/quadrature.hpp"
#include "fflab/tridiagonal.hpp"

using namespace fflab;

TEST(Tridiagonal, SecondDifferenceMatrixHasCosineSpectrum) {
  for (int n : {1, 2, 5, 17, 40}) {
    std::vector<double> d(n, 2.0), e(n - 1, -1.0);
    const auto eig = symmetric_tridiagonal_eigen(d, e);
    ASSERT_EQ(eig.values.size(), static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
      const double expect = 2.0 - 2.0 * std::cos(k * std::numbers::pi / (n + 1));
      EXPECT_NEAR(eig.values[k - 1], expect, 1e-13) << "n=" << n << " k=" << k;
    }
  }
}

TEST(Tridiagonal, FirstComponentsFormUnitVector) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> d(12), e(11);
  for (auto& v : d) v = u(rng);
  for (auto& v : e) v = 0.1 + std::abs(u(rng));
  const auto eig = symmetric_tridiagonal_eigen(d, e, true);
  double s = 0.0;
  for (double c : eig.first_components) s += c * c;
  EXPECT_NEAR(s, 1.0, 1e-13);
  EXPECT_TRUE(std::is_sorted(eig.values.begin(), eig.values.end()));
  // Trace is preserved.
  EXPECT_NEAR(std::accumulate(eig.values.begin(), eig.values.end(), 0.0),
              std::accumulate(d.begin(), d.end(), 0.0), 1e-12);
}

TEST(Tridiagonal, SizeMismatchIsRejected) {
  std::vector<double> d(3, 0.0), e(3, 1.0);
  EXPECT_THROW(symmetric_tridiagonal_eigen(d, e), InvalidArgument);
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  for (int order : {2, 5, 20, 32}) {
    const auto& g = gauss_legendre(order);
    for (int k = 0; k < 2 * order; ++k) {
      double s = 0.0;
      for (int i = 0; i < order; ++i) s += g.weights[i] * std::pow(g.nodes[i], k);
      const double expect = k % 2 ? 0.0 : 2.0 / (k + 1);
      EXPECT_NEAR(s, expect, 1e-14) << "order " << order << " k " << k;
    }
  }
}

TEST(CompositeRule, GradedPanelsHandleEndpointSingularity) {
  // int_0^1 sqrt(x) dx = 2/3
  const auto breaks = graded_panels(0.0, 1.0, 4, true, false);
  const auto rule = composite_rule(breaks, 20, [](double) { return 1.0; });
  EXPECT_NEAR(rule.integrate([](double x) { return std::sqrt(x); }), 2.0 / 3.0, 1e-10);
}
