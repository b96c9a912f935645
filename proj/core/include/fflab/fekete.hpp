#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fflab/orthopoly.hpp"
#include "fflab/weights.hpp"

namespace fflab {

struct FejerReport {
  NodeSet nodes;
  std::vector<double> c;
  double max_abs_c = 0.0;
  bool hessian_negative_definite = false;
  int iterations = 0;
};

/// C_k = 2 sum_{i != k} 1/(x_k - x_i) - Q'(x_k). Also fills the Hessian verdict.
FejerReport fejer_constants(const NodeSet& nodes, const Weight& w);

/// F(X) = 2 sum_{i<j} log|x_i - x_j| - sum_k Q(x_k).
double fekete_objective(const NodeSet& nodes, const Weight& w);

/// Row-major n x n Hessian of F.
std::vector<double> fekete_hessian(const NodeSet& nodes, const Weight& w);

/// Eigenvalues of the Hessian, ascending.
std::vector<double> hessian_eigenvalues(const NodeSet& nodes, const Weight& w);

struct FeketeOptions {
  double tolerance = 1e-10;
  int max_iterations = 200;
  int max_halvings = 60;
};

/// Damped Newton ascent on F. Without `init`, starts from Chebyshev points on
/// [-a_n, a_n] (even weights on the line), on the domain (bounded), or on an
/// interval sized by x Q'(x) = 4n (half-lines).
FejerReport solve_fekete(const Weight& w, int n, std::optional<NodeSet> init = std::nullopt,
                         const FeketeOptions& opts = {});

/// Starting configuration used by solve_fekete when none is given.
NodeSet default_fekete_init(const Weight& w, int n);

struct UniquenessReport {
  int n = 0;
  int starts = 0;
  double max_distance = 0.0;
  bool all_negative_definite = true;
  std::vector<FejerReport> solutions;
};

/// Solves from `starts` random initializations drawn around the default init.
UniquenessReport uniqueness_probe(const Weight& w, int n, int starts, std::uint64_t seed = 1);

/// max_k |a_k - b_k|; sizes must match.
double node_distance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace fflab
