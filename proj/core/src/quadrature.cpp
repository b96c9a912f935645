#include "fflab/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "fflab/error.hpp"
#include "fflab/tridiagonal.hpp"

namespace fflab {
namespace {

// Legendre P_n and its derivative by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

GaussRule build_gauss_legendre(int order) {
  std::vector<double> diag(order, 0.0);
  std::vector<double> off(order - 1);
  for (int k = 1; k < order; ++k) {
    off[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  }
  auto eig = symmetric_tridiagonal_eigen(diag, off);

  GaussRule rule;
  rule.nodes = std::move(eig.values);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = rule.nodes[i];
    for (int it = 0; it < 3; ++it) {
      auto [p, dp] = legendre_with_derivative(order, x);
      x -= p / dp;
    }
    auto [p, dp] = legendre_with_derivative(order, x);
    (void)p;
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  // Exact symmetry.
  for (int i = 0; i < order / 2; ++i) {
    const int j = order - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[j] + rule.weights[i]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = rule.weights[j] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1) throw InvalidArgument("gauss_legendre: order must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) {
    if (order == 1) {
      slot = std::make_unique<GaussRule>(GaussRule{{0.0}, {2.0}});
    } else {
      slot = std::make_unique<GaussRule>(build_gauss_legendre(order));
    }
  }
  return *slot;
}

double Discretization::integrate(const std::function<double(double)>& f) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
  return sum;
}

std::vector<double> graded_panels(double a, double b, int uniform, bool grade_lower,
                                  bool grade_upper, int levels, double ratio) {
  if (!(b > a) || uniform < 1) throw InvalidArgument("graded_panels: empty interval");
  const double h = (b - a) / uniform;
  std::vector<double> breaks;
  breaks.push_back(a);
  if (grade_lower) {
    std::vector<double> inner;
    double len = h;
    for (int k = 0; k < levels; ++k) {
      len *= ratio;
      inner.push_back(a + len);
    }
    breaks.insert(breaks.end(), inner.rbegin(), inner.rend());
  }
  for (int k = 1; k < uniform; ++k) breaks.push_back(a + k * h);
  if (grade_upper) {
    double len = h;
    for (int k = 0; k < levels; ++k) {
      len *= ratio;
      breaks.push_back(b - len);
    }
  }
  breaks.push_back(b);
  return breaks;
}

Discretization composite_rule(std::span<const double> breaks, int order,
                              const std::function<double(double)>& density) {
  const auto& rule = gauss_legendre(order);
  Discretization out;
  out.nodes.reserve((breaks.size() - 1) * order);
  out.weights.reserve((breaks.size() - 1) * order);
  const double first = breaks.front();
  const double last = breaks.back();
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double lo = breaks[p];
    const double hi = breaks[p + 1];
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (int i = 0; i < order; ++i) {
      const double t = mid + half * rule.nodes[i];
      // Nodes of very thin end panels can round onto the interval ends.
      if (t <= first || t >= last) continue;
      out.nodes.push_back(t);
      out.weights.push_back(half * rule.weights[i] * density(t));
    }
  }
  return out;
}

}  // namespace fflab
