#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fflab/interp.hpp"
#include "fflab/orthopoly.hpp"
#include "fflab/weights.hpp"

namespace fflab {

/// Evaluation grid for sup norms.
struct GridSpec {
  double radius = 0.0;     // center half-width; 0 picks one from the nodes and a_n
  int count = 4001;        // Chebyshev points on the center interval
  int tail = 40;           // geometric points past the center, per unbounded side
  int near_node = 5;       // points within +-near_gap of each node (node included)
  double near_gap = 1e-3;
  double tail_eps = 1e-20; // tails reach the radius where w(x) |x|^{2n} < tail_eps

  GridSpec doubled() const;
};

/// Sorted, duplicate-free grid inside the open domain of `w`, containing the nodes.
std::vector<double> build_grid(const GridSpec& spec, const Weight& w,
                               const std::vector<double>& nodes, double center_radius);

/// Center radius used when spec.radius is 0: max(L a_n, 1.25 max|x_k|), with
/// a_n left out when the MRS number is unavailable.
double auto_radius(const Weight& w, const std::vector<double>& nodes, double L);

struct KernelSup {
  double value = 0.0;
  double at = 0.0;
};

/// sup over `grid` of w(x) sum_k l_k(x)^2 / w(x_k).
KernelSup kernel_sup(const NodeSet& nodes, const Weight& w, const std::vector<double>& grid);

struct NormalityReport {
  int n = 0;
  double L = 0.0;
  std::optional<double> a_n;     // empty when the MRS number is unavailable
  bool node_bound = true;        // |x_k| < L a_n, or not applicable
  double kernel_sup = 0.0;
  double sup_at = 0.0;
  double max_abs_c = 0.0;
  bool pass = false;
};

/// Pass iff the kernel stays <= 1 + 1e-9 on the grid and the node bound holds.
NormalityReport normality_check(const NodeSet& nodes, const Weight& w, double L = 1.5,
                                const GridSpec& grid = {});

struct StabilityReport {
  int trials = 0;
  bool stable = false;
  double min_output = 0.0;   // min over trials and grid of the operator output
  double max_ratio = 0.0;    // max over trials and grid of output / max y
  long degree_sum = 0;       // sum of deg l_k^2
  long economical_bound = 0; // 2 n (n - 1)
  bool most_economical = false;
};

/// Checks 0 <= w(x) sum_k l_k(x)^2 y_k / w(x_k) <= max y on the grid for
/// `trials` nonnegative y; the first trial is y = 1.
StabilityReport stability_check(const NodeSet& nodes, const Weight& w, int trials = 100,
                                const GridSpec& grid = {}, std::uint64_t seed = 1, double L = 1.5);

struct Flag {
  bool value = false;
  double residual = 0.0;
  std::string note;
};

/// Properties of the zeros of p_{n,w}, under w (unprimed) and under w_n (primed).
struct EquivalenceVerdict {
  std::string weight_id;
  int n = 0;
  NodeSet nodes;
  Flag A, B, D, E;
  Flag A_prime, B_prime, C, D_prime, E_prime;
  bool hypothesis = false;  // (1/w)^{(2n)} >= 0 holds structurally

  bool primed_all() const {
    return A_prime.value && B_prime.value && C.value && D_prime.value && E_prime.value;
  }
};

struct EquivalenceOptions {
  double root_tolerance = 1e-8;
  double L = 1.5;
  int trials = 100;
  std::uint64_t seed = 1;
  GridSpec grid;
};

/// Runs the chain on one node set. Errors from a sub-check are rethrown with
/// the property letter prefixed.
EquivalenceVerdict equivalence_suite(const Weight& w, const RecurrenceTable& t, int n,
                                     const EquivalenceOptions& opts = {});
EquivalenceVerdict equivalence_suite(const Weight& w, int n, const EquivalenceOptions& opts = {});

/// True for Q = sum_k d_k x^{2k} with every d_k >= 0 (hermite, even freud, even-poly).
bool evenq_hypothesis_check(const WeightSpec& spec);

struct ErrorCurve {
  std::string weight_id;
  double d = 0.0;
  std::vector<int> n_list;
  std::vector<double> sup_error;   // NaN when not computed
  std::vector<double> kernel_sup;
};

/// Per n: sup over the grid of w~(x) sum_k l_k(x)^2 / w~(x_k) on the zeros of p_{n,w}.
ErrorCurve operator_norm_curve(const Weight& w, double d, const std::vector<int>& n_list,
                               const GridSpec& grid = {}, double L = 1.5);

/// f given as x -> sign and log|f(x)|.
using LogSampler = std::function<SignedLog(double)>;

/// Per n: sup over the grid of |Y_n(f, x) - f(x)| w~(x) on the zeros of p_{n,w},
/// plus the kernel sup. Rejects f whose |f w~| at the outermost grid points is
/// not below 1e-3 of its maximum over the inner half of the grid.
ErrorCurve convergence_experiment(const Weight& w, double d, const LogSampler& f,
                                  const std::vector<int>& n_list, const GridSpec& grid = {},
                                  double L = 1.5);

/// Test functions for convergence_experiment.
LogSampler sampler_inverse_quadratic();                 // 1 / (1 + x^2)
LogSampler sampler_sine_root_weight(const Weight& w);   // sin(x) e^{Q(x)/4}
LogSampler sampler_reciprocal(const Weight& w);         // 1 / w(x)
LogSampler sampler_polynomial(std::vector<double> coeffs);

}  // namespace fflab
