#include <algorithm>
#include <cmath>
#include <numbers>

#include "fflab/analysis.hpp"
#include "fflab/error.hpp"

namespace fflab {

GridSpec GridSpec::doubled() const {
  GridSpec g = *this;
  g.count = 2 * count - 1;
  g.tail = 2 * tail;
  return g;
}

double auto_radius(const Weight& w, const std::vector<double>& nodes, double L) {
  double r = 0.0;
  for (double x : nodes) r = std::max(r, 1.25 * std::abs(x));
  if (w.is_even() && !w.bounded_below() && !w.bounded_above() && !nodes.empty()) {
    try {
      r = std::max(r, L * mrs_number(w, static_cast<double>(nodes.size())));
    } catch (const Error&) {
    }
  }
  return r > 0.0 ? r : 1.0;
}

std::vector<double> build_grid(const GridSpec& spec, const Weight& w,
                               const std::vector<double>& nodes, double center_radius) {
  if (spec.count < 2) throw InvalidArgument("grid: count must be >= 2");
  const double r = spec.radius > 0.0 ? spec.radius : center_radius;
  const double lo = std::max(-r, w.lower());
  const double hi = std::min(r, w.upper());
  if (!(hi > lo)) throw InvalidArgument("grid: center interval misses the domain");

  std::vector<double> g;
  g.reserve(spec.count + 2 * spec.tail + spec.near_node * nodes.size());
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (int j = 0; j < spec.count; ++j) {
    g.push_back(mid - half * std::cos((2.0 * j + 1.0) * std::numbers::pi / (2.0 * spec.count)));
  }

  const int degree = std::max<int>(1, static_cast<int>(nodes.size()));
  if (spec.tail > 0 && (!w.bounded_below() || !w.bounded_above())) {
    const double far = std::max(2.0 * r, truncation_radius(w, degree, spec.tail_eps));
    const double ratio = std::pow(far / r, 1.0 / spec.tail);
    double t = r;
    for (int j = 0; j < spec.tail; ++j) {
      t *= ratio;
      if (!w.bounded_above()) g.push_back(t);
      if (!w.bounded_below()) g.push_back(-t);
    }
  }

  for (double x : nodes) {
    g.push_back(x);
    const int side = (spec.near_node - 1) / 2;
    for (int j = 1; j <= side; ++j) {
      const double h = spec.near_gap * j / side;
      g.push_back(x - h);
      g.push_back(x + h);
    }
  }

  std::erase_if(g, [&w](double x) { return !std::isfinite(x) || !w.contains(x); });
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

}  // namespace fflab
