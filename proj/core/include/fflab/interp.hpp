#pragma once

#include <span>
#include <vector>

#include "fflab/orthopoly.hpp"
#include "fflab/weights.hpp"

namespace fflab {

/// sign * exp(log_abs); sign 0 encodes an exact zero (log_abs = -inf).
struct SignedLog {
  double log_abs = 0.0;
  int sign = 1;

  static SignedLog from(double v);
  double value() const;
};

/// Max-shifted sum of signed log-magnitudes.
SignedLog log_sum(std::span<const SignedLog> terms);

struct BasisEval {
  int k = 0;
  double log_abs = 0.0;
  int sign = 1;
};

/// log|l_k(x)| as sum_{i != k} [log|x - x_i| - log|x_k - x_i|], sign by parity.
BasisEval lagrange_basis_log(const NodeSet& nodes, int k, double x);

/// All fundamentals at once: O(n) per evaluation point after O(n^2) setup.
class LagrangeBasis {
 public:
  explicit LagrangeBasis(const NodeSet& nodes);

  int n() const { return static_cast<int>(x_.size()); }
  const std::vector<double>& nodes() const { return x_; }

  /// Fills out[k] for k = 0..n-1.
  void eval(double x, std::vector<BasisEval>& out) const;

 private:
  std::vector<double> x_;
  std::vector<double> log_dw_;  // log|omega'(x_k)|
  std::vector<int> sign_dw_;
};

enum class Operator { grunwald, grunwald_kernel, hermite_fejer, hermite };

const char* operator_name(Operator op);

struct OperatorSample {
  double x = 0.0;
  double value = 0.0;
  Operator op = Operator::grunwald;
};

/// Y_n(f, x) = sum_k l_k(x)^2 f(x_k).
OperatorSample grunwald_apply(const NodeSet& nodes, std::span<const double> fvals, double x);

/// exp(log_scale) * Y_n(f, x) with f(x_k) given as signed logs, so neither the
/// data nor the weight has to fit in a double.
OperatorSample grunwald_apply(const LagrangeBasis& basis, std::span<const SignedLog> fvals,
                              double x, double log_scale = 0.0);

/// Y_{n,w}(x) = w(x) sum_k l_k(x)^2 / w(x_k). Exactly 1 at the nodes.
OperatorSample grunwald_kernel(const NodeSet& nodes, const Weight& w, double x);
OperatorSample grunwald_kernel(const LagrangeBasis& basis, std::span<const double> log_w_nodes,
                               const Weight& w, double x);

/// w(x) H_{n,w}(f, x) = w(x) sum_k (1 - C_k (x - x_k)) l_k(x)^2 (fw)(x_k) / w(x_k).
OperatorSample hermite_fejer_apply(const NodeSet& nodes, const Weight& w,
                                   std::span<const double> fw_vals, double x);

/// w(x) H_n(f, f', x): the Hermite-Fejer part plus
/// w(x) sum_k (x - x_k) l_k(x)^2 (fw)'(x_k) / w(x_k).
OperatorSample hermite_apply(const NodeSet& nodes, const Weight& w,
                             std::span<const double> fw_vals, std::span<const double> dfw_vals,
                             double x);

}  // namespace fflab
