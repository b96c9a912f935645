#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace fflab {

struct GaussRule {
  std::vector<double> nodes;    // ascending, on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre rule of the given order. Initial nodes come from the Jacobi
/// matrix (Golub-Welsch), then are polished with Newton steps on P_order.
/// Rules are cached; the returned reference stays valid for the program's life.
const GaussRule& gauss_legendre(int order);

/// A finite set of nodes with positive weights approximating a measure.
struct Discretization {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  double integrate(const std::function<double(double)>& f) const;
};

/// Panel endpoints covering [a, b]: `uniform` equal panels, plus, at each end
/// flagged in `grade_lower`/`grade_upper`, a geometric refinement of the end
/// panel towards the endpoint (for algebraic endpoint behaviour).
std::vector<double> graded_panels(double a, double b, int uniform, bool grade_lower,
                                  bool grade_upper, int levels = 14, double ratio = 0.15);

/// Composite Gauss-Legendre rule over consecutive panels, with weights
/// multiplied by `density(t)`.
Discretization composite_rule(std::span<const double> breaks, int order,
                              const std::function<double(double)>& density);

}  // namespace fflab
