#include "fflab/fekete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "fflab/error.hpp"

namespace fflab {
namespace {

void check_distinct(const std::vector<double>& x, const char* who) {
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) {
      throw InvalidArgument(std::string(who) + ": degenerate node set (nodes " +
                            std::to_string(i - 1) + " and " + std::to_string(i) +
                            " coincide or are unordered)");
    }
  }
}

bool admissible(const std::vector<double>& x, const Weight& w) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !w.contains(x[i])) return false;
    if (i > 0 && !(x[i] > x[i - 1])) return false;
  }
  return true;
}

std::vector<double> gradient(const std::vector<double>& x, const Weight& w) {
  const std::size_t n = x.size();
  std::vector<double> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != k) s += 1.0 / (x[k] - x[i]);
    }
    c[k] = 2.0 * s - w.dq1(x[k]);
  }
  return c;
}

double objective(const std::vector<double>& x, const Weight& w) {
  double f = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) f += 2.0 * std::log(std::abs(x[i] - x[j]));
    f += w.log_w(x[i]);
  }
  return f;
}

Eigen::MatrixXd hessian(const std::vector<double>& x, const Weight& w) {
  const Eigen::Index n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double diag = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k == j) continue;
      const double d = x[j] - x[k];
      const double v = 2.0 / (d * d);
      h(j, k) = v;
      diag -= v;
    }
    h(j, j) = diag - w.derivs(x[j]).dq2;
  }
  return h;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double a : v) m = std::max(m, std::abs(a));
  return m;
}

bool negative_definite(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  return es.info() == Eigen::Success && es.eigenvalues().maxCoeff() < 0.0;
}

// Smallest t > 0 with s t Q'(s t) >= target, for s = +1 or -1.
double field_radius(const Weight& w, double s, double target) {
  auto reach = [&](double t) { return s * t * w.dq1(s * t) >= target; };
  double hi = 1.0;
  while (!reach(hi)) {
    hi *= 2.0;
    if (hi > 1e8) throw ConvergenceFailure("default_fekete_init: external field too weak");
  }
  double lo = 0.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (reach(mid)) hi = mid; else lo = mid;
  }
  return hi;
}

std::vector<double> chebyshev(double lo, double hi, int n) {
  std::vector<double> x(n);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (int k = 0; k < n; ++k) {
    x[k] = mid - half * std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * n));
  }
  return x;
}

}  // namespace

double node_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw InvalidArgument("node_distance: size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

FejerReport fejer_constants(const NodeSet& nodes, const Weight& w) {
  check_distinct(nodes.nodes, "fejer_constants");
  FejerReport r;
  r.nodes = nodes;
  r.c = gradient(nodes.nodes, w);
  r.max_abs_c = max_abs(r.c);
  r.hessian_negative_definite = negative_definite(hessian(nodes.nodes, w));
  return r;
}

double fekete_objective(const NodeSet& nodes, const Weight& w) {
  check_distinct(nodes.nodes, "fekete_objective");
  return objective(nodes.nodes, w);
}

std::vector<double> fekete_hessian(const NodeSet& nodes, const Weight& w) {
  check_distinct(nodes.nodes, "fekete_hessian");
  const Eigen::MatrixXd h = hessian(nodes.nodes, w);
  std::vector<double> out(h.size());
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      out.data(), h.rows(), h.cols()) = h;
  return out;
}

std::vector<double> hessian_eigenvalues(const NodeSet& nodes, const Weight& w) {
  check_distinct(nodes.nodes, "hessian_eigenvalues");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hessian(nodes.nodes, w),
                                                    Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

NodeSet default_fekete_init(const Weight& w, int n) {
  if (n < 1) throw InvalidArgument("default_fekete_init: n must be >= 1");
  double lo = 0.0;
  double hi = 0.0;
  if (w.bounded_below() && w.bounded_above()) {
    lo = w.lower();
    hi = w.upper();
  } else if (w.is_even() && !w.bounded_below() && !w.bounded_above()) {
    double a = 0.0;
    try {
      a = mrs_number(w, n);
    } catch (const Error&) {
      a = field_radius(w, 1.0, 4.0 * n);
    }
    lo = -a;
    hi = a;
  } else {
    lo = w.bounded_below() ? w.lower() : -field_radius(w, -1.0, 4.0 * n);
    hi = w.bounded_above() ? w.upper() : field_radius(w, 1.0, 4.0 * n);
  }
  return NodeSet{chebyshev(lo, hi, n), Provenance::fekete, w.id()};
}

FejerReport solve_fekete(const Weight& w, int n, std::optional<NodeSet> init,
                         const FeketeOptions& opts) {
  if (n < 1) throw InvalidArgument("solve_fekete: n must be >= 1");
  const bool user_init = init.has_value();
  std::vector<double> x = user_init ? init->nodes : default_fekete_init(w, n).nodes;
  if (static_cast<int>(x.size()) != n) {
    throw InvalidArgument("solve_fekete: initial node count " + std::to_string(x.size()) +
                          " differs from n = " + std::to_string(n));
  }
  if (!admissible(x, w)) {
    throw InvalidArgument("solve_fekete: initial nodes are unordered or outside the domain");
  }

  bool restarted = false;
  int iter = 0;
  std::vector<double> c = gradient(x, w);
  double f = objective(x, w);
  while (max_abs(c) >= opts.tolerance) {
    if (iter >= opts.max_iterations) {
      throw ConvergenceFailure("solve_fekete: no convergence after " +
                               std::to_string(opts.max_iterations) +
                               " iterations (max|C| = " + std::to_string(max_abs(c)) + ")");
    }
    ++iter;

    const Eigen::MatrixXd h = hessian(x, w);
    const Eigen::Map<const Eigen::VectorXd> g(c.data(), n);
    Eigen::LLT<Eigen::MatrixXd> llt(-h);
    Eigen::VectorXd step;
    if (llt.info() == Eigen::Success) {
      step = llt.solve(g);
    } else {
      double gap = std::numeric_limits<double>::infinity();
      for (int k = 1; k < n; ++k) gap = std::min(gap, x[k] - x[k - 1]);
      step = g * (0.1 * (n > 1 ? gap : 1.0) / g.cwiseAbs().maxCoeff());
    }

    double t = 1.0;
    bool accepted = false;
    std::vector<double> trial(n);
    for (int half = 0; half <= opts.max_halvings; ++half, t *= 0.5) {
      for (int k = 0; k < n; ++k) trial[k] = x[k] + t * step[k];
      if (!admissible(trial, w)) continue;
      const double ft = objective(trial, w);
      if (!std::isfinite(ft)) continue;
      const double slack = 1e-13 * (1.0 + std::abs(f));
      if (ft > f) {
        accepted = true;
      } else if (ft >= f - slack && max_abs(gradient(trial, w)) < max_abs(c)) {
        accepted = true;
      }
      if (accepted) {
        x = trial;
        f = ft;
        break;
      }
    }
    if (!accepted) {
      if (user_init && !restarted) {
        restarted = true;
        x = default_fekete_init(w, n).nodes;
        f = objective(x, w);
        c = gradient(x, w);
        continue;
      }
      throw ConvergenceFailure("solve_fekete: line search failed after " +
                               std::to_string(opts.max_halvings) + " halvings at iteration " +
                               std::to_string(iter) + " (max|C| = " +
                               std::to_string(max_abs(c)) + ")");
    }
    c = gradient(x, w);
  }

  FejerReport r = fejer_constants(NodeSet{x, Provenance::fekete, w.id()}, w);
  r.iterations = iter;
  return r;
}

UniquenessReport uniqueness_probe(const Weight& w, int n, int starts, std::uint64_t seed) {
  if (starts < 1) throw InvalidArgument("uniqueness_probe: starts must be >= 1");
  const auto base = default_fekete_init(w, n).nodes;
  double lo = base.front();
  double hi = base.back();
  if (n == 1) {
    lo = w.bounded_below() ? w.lower() + 0.25 * std::min(1.0, w.upper() - w.lower()) : base[0] - 1.0;
    hi = w.bounded_above() ? w.upper() - 0.25 * std::min(1.0, w.upper() - w.lower()) : base[0] + 1.0;
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(lo, hi);
  UniquenessReport rep;
  rep.n = n;
  rep.starts = starts;
  for (int s = 0; s < starts; ++s) {
    std::vector<double> x(n);
    do {
      for (double& v : x) v = unif(rng);
      std::sort(x.begin(), x.end());
    } while (!admissible(x, w));
    try {
      rep.solutions.push_back(solve_fekete(w, n, NodeSet{x, Provenance::user, w.id()}));
    } catch (const Error& e) {
      throw ConvergenceFailure("uniqueness_probe: start " + std::to_string(s) + ": " + e.what());
    }
    const auto& sol = rep.solutions.back();
    rep.all_negative_definite = rep.all_negative_definite && sol.hessian_negative_definite;
    for (std::size_t i = 0; i + 1 < rep.solutions.size(); ++i) {
      rep.max_distance =
          std::max(rep.max_distance, node_distance(rep.solutions[i].nodes.nodes, sol.nodes.nodes));
    }
  }
  return rep;
}

}  // namespace fflab
