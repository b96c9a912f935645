#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fflab/quadrature.hpp"
#include "fflab/weights.hpp"

namespace fflab {

/// Three-term recurrence of the orthonormal polynomials p_k of a weight:
///   x p_k = beta_{k+1} p_{k+1} + alpha_k p_k + beta_k p_{k-1},  p_0 = 1/sqrt(m0).
///
/// Coefficients are stored one step past n_max (alpha_0..alpha_{n_max},
/// beta_1..beta_{n_max+1}) so that p_{n_max} and rho_{n_max+1} are available.
/// beta_k is also rho_k = gamma_{k-1}/gamma_k, the leading-coefficient ratio.
struct RecurrenceTable {
  int n_max = 0;
  std::vector<double> alpha;  // index k = 0..n_max
  std::vector<double> beta;   // index k = 0..n_max+1, beta[0] = 0
  double m0 = 0.0;
  std::string weight_id;
  WeightSpec spec;
  bool even = false;

  /// Discretized measure the coefficients were computed on, and the half-size
  /// one they were checked against. Shared, immutable.
  std::shared_ptr<const Discretization> fine;
  std::shared_ptr<const Discretization> coarse;

  double rho(int n) const { return beta.at(n); }
};

struct StieltjesOptions {
  int points = 4000;
  int max_points = 256000;
  double tolerance = 1e-12;
};

/// Discretized Stieltjes procedure on a composite Gauss-Legendre rule over the
/// truncated support; the rule is doubled until every beta agrees with the
/// previous level to `tolerance` (relative). Throws PrecisionFailure naming the
/// failing index on loss of positivity or non-convergence.
RecurrenceTable recurrence_table(const Weight& w, int n_max, const StieltjesOptions& opts = {});

/// The composite rule used by recurrence_table for a given point budget.
Discretization discretize_weight(const Weight& w, int degree, int points);

double eval_orthonormal(const RecurrenceTable& t, int n, double x);

/// p_n(x) and p_n'(x).
std::pair<double, double> eval_orthonormal_with_derivative(const RecurrenceTable& t, int n,
                                                           double x);

enum class Provenance { op_zeros, fekete, user };

const char* provenance_name(Provenance p);

/// Interpolation nodes x_1 < ... < x_n.
struct NodeSet {
  std::vector<double> nodes;
  Provenance provenance = Provenance::user;
  std::string weight_id;

  int n() const { return static_cast<int>(nodes.size()); }

  /// Checks strict ordering (InvalidArgument on coincident or unordered nodes).
  static NodeSet from_user(std::vector<double> xs, std::string weight_id = {});
};

/// Throws InvalidArgument unless nodes are strictly increasing and inside the
/// open domain of `w`.
void validate_nodes(const NodeSet& nodes, const Weight& w);

/// Zeros of p_n: eigenvalues of the n x n Jacobi matrix, ascending.
NodeSet zeros(const RecurrenceTable& t, int n);

/// Freud's string equation residual 4 b_n^2 (b_{n-1}^2 + b_n^2 + b_{n+1}^2) - n,
/// defined for the e^{-x^4} table only.
double freud_string_residual(const RecurrenceTable& t, int n);

}  // namespace fflab
