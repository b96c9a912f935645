#include "fflab/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "fflab/error.hpp"
#include "fflab/tridiagonal.hpp"

namespace fflab {
namespace {

constexpr int kPanelOrder = 20;

struct Coefficients {
  std::vector<double> alpha;
  std::vector<double> beta;
  double m0 = 0.0;
};

// Normalized Stieltjes: p_{k+1} = ((t - alpha_k) p_k - beta_k p_{k-1}) / beta_{k+1}
// evaluated on the discrete measure.
Coefficients stieltjes(const Discretization& disc, int steps, bool even) {
  const std::size_t m = disc.size();
  Coefficients out;
  out.alpha.assign(steps, 0.0);
  out.beta.assign(steps + 1, 0.0);

  double m0 = 0.0;
  for (double lam : disc.weights) m0 += lam;
  if (!(m0 > 0.0) || !std::isfinite(m0)) {
    throw PrecisionFailure("recurrence_table: zeroth moment is not positive and finite");
  }
  out.m0 = m0;

  std::vector<double> prev(m, 0.0);
  std::vector<double> cur(m, 1.0 / std::sqrt(m0));
  std::vector<double> next(m);
  for (int k = 0; k < steps; ++k) {
    double a = 0.0;
    if (!even) {
      for (std::size_t i = 0; i < m; ++i) a += disc.weights[i] * disc.nodes[i] * cur[i] * cur[i];
    }
    out.alpha[k] = a;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      next[i] = (disc.nodes[i] - a) * cur[i] - out.beta[k] * prev[i];
      norm2 += disc.weights[i] * next[i] * next[i];
    }
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
      throw PrecisionFailure("recurrence_table: beta_" + std::to_string(k + 1) +
                             " lost positivity");
    }
    const double b = std::sqrt(norm2);
    out.beta[k + 1] = b;
    for (std::size_t i = 0; i < m; ++i) next[i] /= b;
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return out;
}

}  // namespace

Discretization discretize_weight(const Weight& w, int degree, int points) {
  const double lo = w.bounded_below() ? w.lower() : -truncation_radius(w, degree, 1e-30);
  const double hi = w.bounded_above() ? w.upper() : truncation_radius(w, degree, 1e-30);
  const int panels = std::max(1, points / kPanelOrder);
  const auto breaks = graded_panels(lo, hi, panels, w.bounded_below(), w.bounded_above());
  return composite_rule(breaks, kPanelOrder, [&w](double t) { return w.value(t); });
}

RecurrenceTable recurrence_table(const Weight& w, int n_max, const StieltjesOptions& opts) {
  if (n_max < 1) throw InvalidArgument("recurrence_table: n_max must be >= 1");
  const int steps = n_max + 1;
  const int degree = n_max + 2;

  auto coarse = std::make_shared<Discretization>(discretize_weight(w, degree, opts.points));
  Coefficients prev = stieltjes(*coarse, steps, w.is_even());

  for (int points = 2 * opts.points; points <= opts.max_points; points *= 2) {
    auto fine = std::make_shared<Discretization>(discretize_weight(w, degree, points));
    Coefficients cur = stieltjes(*fine, steps, w.is_even());

    int worst = -1;
    double worst_diff = 0.0;
    for (int k = 1; k <= steps; ++k) {
      const double diff = std::abs(cur.beta[k] - prev.beta[k]) / cur.beta[k];
      if (diff > worst_diff) {
        worst_diff = diff;
        worst = k;
      }
    }
    for (int k = 0; k < steps; ++k) {
      const double diff = std::abs(cur.alpha[k] - prev.alpha[k]) / (1.0 + std::abs(cur.alpha[k]));
      worst_diff = std::max(worst_diff, diff);
    }
    if (worst_diff <= opts.tolerance) {
      RecurrenceTable t;
      t.n_max = n_max;
      t.alpha = std::move(cur.alpha);
      t.beta = std::move(cur.beta);
      t.m0 = cur.m0;
      t.weight_id = w.id();
      t.spec = w.spec();
      t.even = w.is_even();
      t.fine = std::move(fine);
      t.coarse = std::move(coarse);
      return t;
    }
    if (points * 2 > opts.max_points) {
      std::ostringstream msg;
      msg << "recurrence_table: coefficient " << worst << " not stable to " << opts.tolerance
          << " for " << w.id() << " (last change " << worst_diff << ")";
      throw PrecisionFailure(msg.str());
    }
    coarse = std::move(fine);
    prev = std::move(cur);
  }
  throw PrecisionFailure("recurrence_table: point budget exhausted for " + w.id());
}

std::pair<double, double> eval_orthonormal_with_derivative(const RecurrenceTable& t, int n,
                                                           double x) {
  if (n < 0 || n > t.n_max) {
    throw InvalidArgument("eval_orthonormal: degree " + std::to_string(n) + " outside [0, " +
                          std::to_string(t.n_max) + "]");
  }
  double p_prev = 0.0;
  double p = 1.0 / std::sqrt(t.m0);
  double d_prev = 0.0;
  double d = 0.0;
  for (int k = 0; k < n; ++k) {
    const double p_next = ((x - t.alpha[k]) * p - t.beta[k] * p_prev) / t.beta[k + 1];
    const double d_next = ((x - t.alpha[k]) * d + p - t.beta[k] * d_prev) / t.beta[k + 1];
    p_prev = p;
    p = p_next;
    d_prev = d;
    d = d_next;
  }
  return {p, d};
}

double eval_orthonormal(const RecurrenceTable& t, int n, double x) {
  return eval_orthonormal_with_derivative(t, n, x).first;
}

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::op_zeros: return "op_zeros";
    case Provenance::fekete: return "fekete";
    case Provenance::user: return "user";
  }
  return "user";
}

NodeSet NodeSet::from_user(std::vector<double> xs, std::string weight_id) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) {
      throw InvalidArgument("nodes must be strictly increasing (coincident or unordered at index " +
                            std::to_string(i) + ")");
    }
  }
  return NodeSet{std::move(xs), Provenance::user, std::move(weight_id)};
}

void validate_nodes(const NodeSet& nodes, const Weight& w) {
  if (nodes.nodes.empty()) throw InvalidArgument("node set is empty");
  for (std::size_t i = 0; i < nodes.nodes.size(); ++i) {
    const double x = nodes.nodes[i];
    if (!std::isfinite(x) || !w.contains(x)) {
      throw InvalidArgument("node " + std::to_string(i) + " lies outside the domain of " + w.id());
    }
    if (i > 0 && !(x > nodes.nodes[i - 1])) {
      throw InvalidArgument("degenerate node set: nodes " + std::to_string(i - 1) + " and " +
                            std::to_string(i) + " are coincident or unordered");
    }
  }
}

NodeSet zeros(const RecurrenceTable& t, int n) {
  if (n < 1 || n > t.n_max) {
    throw InvalidArgument("zeros: degree " + std::to_string(n) + " outside [1, " +
                          std::to_string(t.n_max) + "]");
  }
  std::vector<double> diag(t.alpha.begin(), t.alpha.begin() + n);
  std::vector<double> off(t.beta.begin() + 1, t.beta.begin() + n);
  auto eig = symmetric_tridiagonal_eigen(diag, off);
  return NodeSet{std::move(eig.values), Provenance::op_zeros, t.weight_id};
}

double freud_string_residual(const RecurrenceTable& t, int n) {
  if (t.spec.family != Family::freud || t.spec.m != 4) {
    throw Unsupported("freud_string_residual: table for " + t.weight_id +
                      " is not the freud(m=4) weight");
  }
  if (n < 1 || n > t.n_max) {
    throw InvalidArgument("freud_string_residual: n outside [1, n_max]");
  }
  const double b0 = t.beta[n - 1] * t.beta[n - 1];
  const double b1 = t.beta[n] * t.beta[n];
  const double b2 = t.beta[n + 1] * t.beta[n + 1];
  return 4.0 * b1 * (b0 + b1 + b2) - n;
}

}  // namespace fflab
