#include "fflab/interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fflab/error.hpp"

namespace fflab {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_length(std::size_t got, int n, const char* who) {
  if (static_cast<int>(got) != n) {
    throw InvalidArgument(std::string(who) + ": expected " + std::to_string(n) +
                          " values, got " + std::to_string(got));
  }
}

std::vector<double> fejer_vector(const std::vector<double>& x, const Weight& w) {
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

// w(x) sum_k a_k(x) l_k(x)^2 b_k / w(x_k), with a_k and b_k plain doubles.
double weighted_square_sum(const NodeSet& nodes, const Weight& w, double x,
                           const std::vector<double>& a, std::span<const double> b) {
  LagrangeBasis basis(nodes);
  std::vector<BasisEval> l;
  basis.eval(x, l);
  const double lwx = w.log_w(x);
  std::vector<SignedLog> terms;
  terms.reserve(l.size());
  for (std::size_t k = 0; k < l.size(); ++k) {
    const SignedLog ak = SignedLog::from(a[k]);
    const SignedLog bk = SignedLog::from(b[k]);
    const int sign = l[k].sign == 0 ? 0 : ak.sign * bk.sign;
    if (sign == 0) continue;
    terms.push_back({lwx + 2.0 * l[k].log_abs + ak.log_abs + bk.log_abs - w.log_w(nodes.nodes[k]),
                     sign});
  }
  return log_sum(terms).value();
}

}  // namespace

SignedLog SignedLog::from(double v) {
  if (v == 0.0) return {kNegInf, 0};
  return {std::log(std::abs(v)), v > 0.0 ? 1 : -1};
}

double SignedLog::value() const {
  return sign == 0 ? 0.0 : sign * std::exp(log_abs);
}

SignedLog log_sum(std::span<const SignedLog> terms) {
  double top = kNegInf;
  for (const auto& t : terms) {
    if (t.sign != 0) top = std::max(top, t.log_abs);
  }
  if (top == kNegInf) return {kNegInf, 0};
  double s = 0.0;
  for (const auto& t : terms) {
    if (t.sign != 0) s += t.sign * std::exp(t.log_abs - top);
  }
  if (s == 0.0) return {kNegInf, 0};
  return {top + std::log(std::abs(s)), s > 0.0 ? 1 : -1};
}

BasisEval lagrange_basis_log(const NodeSet& nodes, int k, double x) {
  const auto& xs = nodes.nodes;
  if (k < 0 || k >= nodes.n()) {
    throw InvalidArgument("lagrange_basis_log: index " + std::to_string(k) + " out of range");
  }
  BasisEval b{k, 0.0, 1};
  for (int i = 0; i < nodes.n(); ++i) {
    if (i == k) continue;
    const double num = x - xs[i];
    if (num == 0.0) return {k, kNegInf, 0};
    const double den = xs[k] - xs[i];
    b.log_abs += std::log(std::abs(num)) - std::log(std::abs(den));
    if ((num < 0.0) != (den < 0.0)) b.sign = -b.sign;
  }
  return b;
}

LagrangeBasis::LagrangeBasis(const NodeSet& nodes)
    : x_(nodes.nodes), log_dw_(x_.size(), 0.0), sign_dw_(x_.size(), 1) {
  for (std::size_t k = 0; k < x_.size(); ++k) {
    for (std::size_t i = 0; i < x_.size(); ++i) {
      if (i == k) continue;
      const double d = x_[k] - x_[i];
      if (d == 0.0) throw InvalidArgument("LagrangeBasis: coincident nodes");
      log_dw_[k] += std::log(std::abs(d));
      if (d < 0.0) sign_dw_[k] = -sign_dw_[k];
    }
  }
}

void LagrangeBasis::eval(double x, std::vector<BasisEval>& out) const {
  const int n = this->n();
  out.resize(n);
  for (int k = 0; k < n; ++k) {
    if (x == x_[k]) {
      for (int i = 0; i < n; ++i) out[i] = {i, kNegInf, 0};
      out[k] = {k, 0.0, 1};
      return;
    }
  }
  double log_omega = 0.0;
  int sign_omega = 1;
  for (int i = 0; i < n; ++i) {
    const double d = x - x_[i];
    log_omega += std::log(std::abs(d));
    if (d < 0.0) sign_omega = -sign_omega;
  }
  for (int k = 0; k < n; ++k) {
    const double d = x - x_[k];
    const int s = sign_omega * sign_dw_[k] * (d < 0.0 ? -1 : 1);
    out[k] = {k, log_omega - std::log(std::abs(d)) - log_dw_[k], s};
  }
}

const char* operator_name(Operator op) {
  switch (op) {
    case Operator::grunwald: return "grunwald";
    case Operator::grunwald_kernel: return "grunwald_kernel";
    case Operator::hermite_fejer: return "hermite_fejer";
    case Operator::hermite: return "hermite";
  }
  return "grunwald";
}

OperatorSample grunwald_apply(const NodeSet& nodes, std::span<const double> fvals, double x) {
  check_length(fvals.size(), nodes.n(), "grunwald_apply");
  std::vector<SignedLog> f(fvals.size());
  std::transform(fvals.begin(), fvals.end(), f.begin(), SignedLog::from);
  return grunwald_apply(LagrangeBasis(nodes), f, x);
}

OperatorSample grunwald_apply(const LagrangeBasis& basis, std::span<const SignedLog> fvals,
                              double x, double log_scale) {
  check_length(fvals.size(), basis.n(), "grunwald_apply");
  std::vector<BasisEval> l;
  basis.eval(x, l);
  std::vector<SignedLog> terms;
  terms.reserve(l.size());
  for (std::size_t k = 0; k < l.size(); ++k) {
    if (l[k].sign == 0 || fvals[k].sign == 0) continue;
    terms.push_back({log_scale + 2.0 * l[k].log_abs + fvals[k].log_abs, fvals[k].sign});
  }
  return {x, log_sum(terms).value(), Operator::grunwald};
}

OperatorSample grunwald_kernel(const NodeSet& nodes, const Weight& w, double x) {
  std::vector<double> lw(nodes.nodes.size());
  for (std::size_t k = 0; k < lw.size(); ++k) lw[k] = w.log_w(nodes.nodes[k]);
  return grunwald_kernel(LagrangeBasis(nodes), lw, w, x);
}

OperatorSample grunwald_kernel(const LagrangeBasis& basis, std::span<const double> log_w_nodes,
                               const Weight& w, double x) {
  check_length(log_w_nodes.size(), basis.n(), "grunwald_kernel");
  std::vector<BasisEval> l;
  basis.eval(x, l);
  const double lwx = w.log_w(x);
  std::vector<SignedLog> terms;
  terms.reserve(l.size());
  for (std::size_t k = 0; k < l.size(); ++k) {
    if (l[k].sign == 0) continue;
    // At a node the only term is lwx - lwx = 0 exactly.
    terms.push_back({lwx + 2.0 * l[k].log_abs - log_w_nodes[k], 1});
  }
  return {x, log_sum(terms).value(), Operator::grunwald_kernel};
}

OperatorSample hermite_fejer_apply(const NodeSet& nodes, const Weight& w,
                                   std::span<const double> fw_vals, double x) {
  check_length(fw_vals.size(), nodes.n(), "hermite_fejer_apply");
  const auto c = fejer_vector(nodes.nodes, w);
  std::vector<double> a(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) a[k] = 1.0 - c[k] * (x - nodes.nodes[k]);
  return {x, weighted_square_sum(nodes, w, x, a, fw_vals), Operator::hermite_fejer};
}

OperatorSample hermite_apply(const NodeSet& nodes, const Weight& w,
                             std::span<const double> fw_vals, std::span<const double> dfw_vals,
                             double x) {
  check_length(fw_vals.size(), nodes.n(), "hermite_apply");
  check_length(dfw_vals.size(), nodes.n(), "hermite_apply");
  const double fejer = hermite_fejer_apply(nodes, w, fw_vals, x).value;
  std::vector<double> a(nodes.nodes.size());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = x - nodes.nodes[k];
  return {x, fejer + weighted_square_sum(nodes, w, x, a, dfw_vals), Operator::hermite};
}

}  // namespace fflab
