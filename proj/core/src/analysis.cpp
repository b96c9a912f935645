#include "fflab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "fflab/anfun.hpp"
#include "fflab/error.hpp"
#include "fflab/fekete.hpp"

namespace fflab {
namespace {

constexpr double kKernelSlack = 1e-9;

template <class F>
auto annotate(const char* property, F&& body) -> decltype(body()) {
  const std::string p = std::string("equivalence (") + property + "): ";
  try {
    return body();
  } catch (const ConstraintViolation& e) {
    throw ConstraintViolation(p + e.what(), e.where());
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(p + e.what());
  } catch (const DomainError& e) {
    throw DomainError(p + e.what());
  } catch (const Unsupported& e) {
    throw Unsupported(p + e.what());
  } catch (const PrecisionFailure& e) {
    throw PrecisionFailure(p + e.what());
  } catch (const ConvergenceFailure& e) {
    throw ConvergenceFailure(p + e.what());
  }
}

std::vector<double> log_weights_at(const std::vector<double>& xs, const Weight& w) {
  std::vector<double> out(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) out[k] = w.log_w(xs[k]);
  return out;
}

std::optional<double> try_mrs(const Weight& w, int n) {
  try {
    return mrs_number(w, n);
  } catch (const Error&) {
    return std::nullopt;
  }
}

int max_of(const std::vector<int>& ns, const char* who) {
  if (ns.empty()) throw InvalidArgument(std::string(who) + ": empty n list");
  const int top = *std::max_element(ns.begin(), ns.end());
  if (*std::min_element(ns.begin(), ns.end()) < 1) {
    throw InvalidArgument(std::string(who) + ": n must be >= 1");
  }
  return top;
}

Flag fekete_flag(const Weight& w, const NodeSet& nodes, double tol) {
  try {
    const auto sol = solve_fekete(w, nodes.n());
    const double d = node_distance(sol.nodes.nodes, nodes.nodes);
    return {d < tol, d, ""};
  } catch (const ConvergenceFailure& e) {
    return {false, std::numeric_limits<double>::quiet_NaN(), e.what()};
  }
}

}  // namespace

KernelSup kernel_sup(const NodeSet& nodes, const Weight& w, const std::vector<double>& grid) {
  const LagrangeBasis basis(nodes);
  const auto lw = log_weights_at(nodes.nodes, w);
  KernelSup best{-std::numeric_limits<double>::infinity(), 0.0};
  for (double x : grid) {
    const double v = grunwald_kernel(basis, lw, w, x).value;
    if (v > best.value) best = {v, x};
  }
  return best;
}

NormalityReport normality_check(const NodeSet& nodes, const Weight& w, double L,
                                const GridSpec& grid) {
  validate_nodes(nodes, w);
  NormalityReport r;
  r.n = nodes.n();
  r.L = L;
  r.a_n = try_mrs(w, r.n);
  if (r.a_n) {
    for (double x : nodes.nodes) r.node_bound = r.node_bound && std::abs(x) < L * *r.a_n;
  }
  const auto g = build_grid(grid, w, nodes.nodes, auto_radius(w, nodes.nodes, L));
  const auto sup = kernel_sup(nodes, w, g);
  r.kernel_sup = sup.value;
  r.sup_at = sup.at;
  r.max_abs_c = fejer_constants(nodes, w).max_abs_c;
  r.pass = r.node_bound && r.kernel_sup <= 1.0 + kKernelSlack;
  return r;
}

StabilityReport stability_check(const NodeSet& nodes, const Weight& w, int trials,
                                const GridSpec& grid, std::uint64_t seed, double L) {
  validate_nodes(nodes, w);
  if (trials < 1) throw InvalidArgument("stability_check: trials must be >= 1");
  const int n = nodes.n();
  const auto g = build_grid(grid, w, nodes.nodes, auto_radius(w, nodes.nodes, L));
  const LagrangeBasis basis(nodes);
  const auto lw = log_weights_at(nodes.nodes, w);

  // terms[j * n + k] = w(x_j) l_k(x_j)^2 / w(x_k) >= 0
  std::vector<double> terms(g.size() * n, 0.0);
  std::vector<BasisEval> l;
  for (std::size_t j = 0; j < g.size(); ++j) {
    basis.eval(g[j], l);
    const double lwx = w.log_w(g[j]);
    for (int k = 0; k < n; ++k) {
      if (l[k].sign != 0) terms[j * n + k] = std::exp(lwx + 2.0 * l[k].log_abs - lw[k]);
    }
  }

  StabilityReport r;
  r.trials = trials;
  r.min_output = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> y(n, 1.0);
  for (int trial = 0; trial < trials; ++trial) {
    if (trial > 0) {
      for (double& v : y) v = unif(rng);
    }
    const double ymax = *std::max_element(y.begin(), y.end());
    if (!(ymax > 0.0)) continue;
    for (std::size_t j = 0; j < g.size(); ++j) {
      double out = 0.0;
      for (int k = 0; k < n; ++k) out += terms[j * n + k] * y[k];
      r.min_output = std::min(r.min_output, out);
      r.max_ratio = std::max(r.max_ratio, out / ymax);
    }
  }
  r.stable = r.min_output >= 0.0 && r.max_ratio <= 1.0 + kKernelSlack;
  r.degree_sum = static_cast<long>(n) * 2L * (n - 1);
  r.economical_bound = 2L * n * (n - 1);
  r.most_economical = r.degree_sum == r.economical_bound;
  return r;
}

bool evenq_hypothesis_check(const WeightSpec& spec) {
  if (spec.tilde.enabled) return false;
  switch (spec.family) {
    case Family::hermite:
      return true;
    case Family::freud:
      return spec.m >= 2 && spec.m % 2 == 0;
    case Family::even_poly:
      // d_0 only scales w.
      return spec.d_coeffs.size() >= 2 &&
             std::all_of(spec.d_coeffs.begin() + 1, spec.d_coeffs.end(),
                         [](double d) { return d >= 0.0; });
    default:
      return false;
  }
}

EquivalenceVerdict equivalence_suite(const Weight& w, int n, const EquivalenceOptions& opts) {
  const auto t = recurrence_table(w, std::max(n, 1));
  return equivalence_suite(w, t, n, opts);
}

EquivalenceVerdict equivalence_suite(const Weight& w, const RecurrenceTable& t, int n,
                                     const EquivalenceOptions& opts) {
  const double tol = opts.root_tolerance;
  EquivalenceVerdict v;
  v.weight_id = w.id();
  v.n = n;
  v.hypothesis = evenq_hypothesis_check(w.spec());

  v.nodes = annotate("C", [&] { return zeros(t, n); });
  v.C = annotate("C", [&] {
    double res = 0.0;
    for (double x : v.nodes.nodes) {
      const auto [p, dp] = eval_orthonormal_with_derivative(t, n, x);
      res = std::max(res, std::abs(p / dp));
    }
    return Flag{res < tol, res, ""};
  });

  const Weight wn = annotate("A'", [&] { return wn_weight(w, t, n); });

  v.A = annotate("A", [&] {
    const double c = fejer_constants(v.nodes, w).max_abs_c;
    return Flag{c < tol, c, ""};
  });
  v.A_prime = annotate("A'", [&] {
    const double c = fejer_constants(v.nodes, wn).max_abs_c;
    return Flag{c < tol, c, ""};
  });
  v.B = annotate("B", [&] { return fekete_flag(w, v.nodes, tol); });
  v.B_prime = annotate("B'", [&] { return fekete_flag(wn, v.nodes, tol); });

  v.D = annotate("D", [&] {
    const auto s = stability_check(v.nodes, w, opts.trials, opts.grid, opts.seed, opts.L);
    return Flag{s.stable && s.most_economical, s.max_ratio - 1.0, ""};
  });
  v.D_prime = annotate("D'", [&] {
    const auto s = stability_check(v.nodes, wn, opts.trials, opts.grid, opts.seed, opts.L);
    return Flag{s.stable && s.most_economical, s.max_ratio - 1.0, ""};
  });
  v.E = annotate("E", [&] {
    const auto r = normality_check(v.nodes, w, opts.L, opts.grid);
    return Flag{r.pass, r.kernel_sup - 1.0, r.node_bound ? "" : "node bound |x_k| < L a_n fails"};
  });
  v.E_prime = annotate("E'", [&] {
    const auto r = normality_check(v.nodes, wn, opts.L, opts.grid);
    return Flag{r.pass, r.kernel_sup - 1.0, r.node_bound ? "" : "node bound |x_k| < L a_n fails"};
  });
  if (!v.hypothesis) {
    v.E_prime.note += v.E_prime.note.empty() ? "" : "; ";
    v.E_prime.note += "side condition (1/w)^(2n) >= 0 not established; reported only";
  }
  return v;
}

ErrorCurve operator_norm_curve(const Weight& w, double d, const std::vector<int>& n_list,
                               const GridSpec& grid, double L) {
  const int top = max_of(n_list, "operator_norm_curve");
  const auto t = recurrence_table(w, top);
  const Weight tilde = make_tilde(w, d);
  ErrorCurve curve;
  curve.weight_id = w.id();
  curve.d = d;
  curve.n_list = n_list;
  for (int n : n_list) {
    const auto nodes = zeros(t, n);
    const auto g = build_grid(grid, tilde, nodes.nodes, auto_radius(w, nodes.nodes, L));
    curve.sup_error.push_back(std::numeric_limits<double>::quiet_NaN());
    curve.kernel_sup.push_back(kernel_sup(nodes, tilde, g).value);
  }
  return curve;
}

ErrorCurve convergence_experiment(const Weight& w, double d, const LogSampler& f,
                                  const std::vector<int>& n_list, const GridSpec& grid, double L) {
  const int top = max_of(n_list, "convergence_experiment");
  const auto t = recurrence_table(w, top);
  const Weight tilde = make_tilde(w, d);

  {
    const auto nodes = zeros(t, top);
    const auto g = build_grid(grid, tilde, nodes.nodes, auto_radius(w, nodes.nodes, L));
    const double reach = std::max(std::abs(g.front()), std::abs(g.back()));
    auto log_fw = [&](double x) {
      const auto s = f(x);
      return s.sign == 0 ? -std::numeric_limits<double>::infinity() : s.log_abs + tilde.log_w(x);
    };
    double inner = -std::numeric_limits<double>::infinity();
    for (double x : g) {
      if (std::abs(x) <= 0.5 * reach) inner = std::max(inner, log_fw(x));
    }
    const double outer = std::max(log_fw(g.front()), log_fw(g.back()));
    if (!(outer < inner + std::log(1e-3))) {
      throw InvalidArgument("convergence_experiment: f w~ does not decay (|f w~| = " +
                            std::to_string(std::exp(outer)) + " at the outermost grid points vs " +
                            std::to_string(std::exp(inner)) + " inside); f is not in C_w~");
    }
  }

  ErrorCurve curve;
  curve.weight_id = w.id();
  curve.d = d;
  curve.n_list = n_list;
  for (int n : n_list) {
    const auto nodes = zeros(t, n);
    const auto g = build_grid(grid, tilde, nodes.nodes, auto_radius(w, nodes.nodes, L));
    const LagrangeBasis basis(nodes);
    std::vector<SignedLog> fk(n);
    for (int k = 0; k < n; ++k) fk[k] = f(nodes.nodes[k]);
    double err = 0.0;
    for (double x : g) {
      const double lw = tilde.log_w(x);
      const double y = grunwald_apply(basis, fk, x, lw).value;
      const auto fx = f(x);
      const double target = fx.sign == 0 ? 0.0 : fx.sign * std::exp(fx.log_abs + lw);
      err = std::max(err, std::abs(y - target));
    }
    curve.sup_error.push_back(err);
    curve.kernel_sup.push_back(kernel_sup(nodes, tilde, g).value);
  }
  return curve;
}

LogSampler sampler_inverse_quadratic() {
  return [](double x) { return SignedLog{-std::log1p(x * x), 1}; };
}

LogSampler sampler_sine_root_weight(const Weight& w) {
  return [w](double x) {
    const double s = std::sin(x);
    if (s == 0.0) return SignedLog{-std::numeric_limits<double>::infinity(), 0};
    return SignedLog{std::log(std::abs(s)) - 0.25 * w.log_w(x), s > 0.0 ? 1 : -1};
  };
}

LogSampler sampler_reciprocal(const Weight& w) {
  return [w](double x) { return SignedLog{-w.log_w(x), 1}; };
}

LogSampler sampler_polynomial(std::vector<double> coeffs) {
  return [c = std::move(coeffs)](double x) {
    double v = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) v = v * x + c[j];
    return SignedLog::from(v);
  };
}

}  // namespace fflab
