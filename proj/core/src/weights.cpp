#include "fflab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "fflab/error.hpp"
#include "fflab/quadrature.hpp"

namespace fflab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Q(x) = sum_j c_j x^j and its first three derivatives by Horner.
struct PolyQ {
  std::vector<double> c;

  LogWDerivs operator()(double x) const {
    double q = 0, q1 = 0, q2 = 0, q3 = 0;
    for (std::size_t j = c.size(); j-- > 0;) {
      q3 = q3 * x + q2;
      q2 = q2 * x + q1;
      q1 = q1 * x + q;
      q = q * x + c[j];
    }
    // q2, q3 hold Q''/2! and Q'''/3!.
    return {-q, q1, 2.0 * q2, 6.0 * q3};
  }
};

std::vector<double> monomial_coeffs(const std::vector<double>& d) {
  std::vector<double> c(2 * d.size() - 1, 0.0);
  for (std::size_t k = 0; k < d.size(); ++k) c[2 * k] = d[k];
  return c;
}

Weight even_poly_weight(std::string id, const WeightSpec& spec, std::vector<double> d) {
  PolyQ poly{monomial_coeffs(d)};
  WeightEvaluator eval{
      [poly](double x) { return poly(x).log_w; },
      poly,
  };
  return Weight(std::move(id), spec, -kInf, kInf, true, std::move(eval));
}

std::optional<double> endpoint_value(double exponent, double other_factor) {
  if (exponent > 0.0) return 0.0;
  if (exponent == 0.0) return other_factor;
  return std::nullopt;
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::hermite: return "hermite";
    case Family::laguerre: return "laguerre";
    case Family::jacobi: return "jacobi";
    case Family::freud: return "freud";
    case Family::even_poly: return "even-poly";
    case Family::custom: return "custom";
  }
  return "unknown";
}

WeightSpec WeightSpec::hermite() { return {}; }

WeightSpec WeightSpec::laguerre(double alpha) {
  WeightSpec s;
  s.family = Family::laguerre;
  s.alpha = alpha;
  return s;
}

WeightSpec WeightSpec::jacobi(double alpha, double beta) {
  WeightSpec s;
  s.family = Family::jacobi;
  s.alpha = alpha;
  s.beta = beta;
  return s;
}

WeightSpec WeightSpec::freud(int m) {
  WeightSpec s;
  s.family = Family::freud;
  s.m = m;
  return s;
}

WeightSpec WeightSpec::even_poly(std::vector<double> d) {
  WeightSpec s;
  s.family = Family::even_poly;
  s.d_coeffs = std::move(d);
  return s;
}

Weight::Weight(std::string id, WeightSpec spec, double lower, double upper, bool even,
               WeightEvaluator eval, EndpointLimits limits)
    : state_(std::make_shared<const State>(State{std::move(id), std::move(spec), lower, upper,
                                                 even, std::move(eval), std::move(limits),
                                                 std::nullopt})) {}

bool Weight::bounded_below() const { return std::isfinite(lower()); }
bool Weight::bounded_above() const { return std::isfinite(upper()); }

void Weight::check_domain(double x) const {
  if (!contains(x)) {
    throw DomainError("weight " + id() + ": x = " + fmt_g(x) + " outside (" + fmt_g(lower()) +
                      ", " + fmt_g(upper()) + ")");
  }
}

double Weight::log_w(double x) const {
  check_domain(x);
  return state_->eval.log_w(x);
}

double Weight::value(double x) const { return std::exp(log_w(x)); }

LogWDerivs Weight::derivs(double x) const {
  check_domain(x);
  return state_->eval.derivs(x);
}

Weight make_weight(const WeightSpec& spec) {
  switch (spec.family) {
    case Family::hermite:
      return even_poly_weight("hermite", spec, {0.0, 1.0});

    case Family::freud: {
      if (spec.m < 2 || spec.m % 2 != 0) {
        throw InvalidArgument("freud: exponent m must be even and >= 2, got m = " +
                              std::to_string(spec.m));
      }
      std::vector<double> d(spec.m / 2 + 1, 0.0);
      d.back() = 1.0;
      return even_poly_weight("freud(m=" + std::to_string(spec.m) + ")", spec, std::move(d));
    }

    case Family::even_poly: {
      const auto& d = spec.d_coeffs;
      if (d.size() < 2) {
        throw InvalidArgument("even-poly: d_coeffs needs at least d_0 and d_1");
      }
      bool growing = false;
      for (std::size_t k = 1; k < d.size(); ++k) {
        if (!(d[k] >= 0.0)) {
          throw InvalidArgument("even-poly: coefficient d_" + std::to_string(k) + " = " +
                                fmt_g(d[k]) + " must be >= 0");
        }
        growing = growing || d[k] > 0.0;
      }
      if (!growing) throw InvalidArgument("even-poly: all d_k (k >= 1) are zero");
      std::string id = "even-poly(";
      for (std::size_t k = 0; k < d.size(); ++k) id += (k ? "," : "") + fmt_g(d[k]);
      return even_poly_weight(id + ")", spec, d);
    }

    case Family::laguerre: {
      const double a = spec.alpha;
      if (!(a > -1.0)) {
        throw InvalidArgument("laguerre: alpha must be > -1, got alpha = " + fmt_g(a));
      }
      WeightEvaluator eval{
          [a](double x) { return (a == 0.0 ? 0.0 : a * std::log(x)) - x; },
          [a](double x) {
            const double lw = (a == 0.0 ? 0.0 : a * std::log(x)) - x;
            return LogWDerivs{lw, 1.0 - a / x, a / (x * x), -2.0 * a / (x * x * x)};
          },
      };
      return Weight("laguerre(alpha=" + fmt_g(a) + ")", spec, 0.0, kInf, false,
                    std::move(eval), {endpoint_value(a, 1.0), std::nullopt});
    }

    case Family::jacobi: {
      const double a = spec.alpha;
      const double b = spec.beta;
      if (!(a > -1.0) || !(b > -1.0)) {
        throw InvalidArgument("jacobi: alpha and beta must be > -1, got alpha = " + fmt_g(a) +
                              ", beta = " + fmt_g(b));
      }
      auto logw = [a, b](double x) {
        return (a == 0.0 ? 0.0 : a * std::log1p(-x)) + (b == 0.0 ? 0.0 : b * std::log1p(x));
      };
      WeightEvaluator eval{
          logw,
          [a, b, logw](double x) {
            const double u = 1.0 - x;
            const double v = 1.0 + x;
            return LogWDerivs{logw(x), a / u - b / v, a / (u * u) + b / (v * v),
                              2.0 * a / (u * u * u) - 2.0 * b / (v * v * v)};
          },
      };
      EndpointLimits limits{endpoint_value(b, std::pow(2.0, a)),
                            endpoint_value(a, std::pow(2.0, b))};
      return Weight("jacobi(alpha=" + fmt_g(a) + ",beta=" + fmt_g(b) + ")", spec, -1.0, 1.0,
                    a == b, std::move(eval), limits);
    }

    case Family::custom:
      throw InvalidArgument("custom weights are built with make_custom_weight");
  }
  throw InvalidArgument("unknown weight family");
}

Weight make_custom_weight(std::string id, double lower, double upper, bool even,
                          WeightEvaluator eval, EndpointLimits limits) {
  if (!(upper > lower)) throw InvalidArgument("custom weight: empty domain");
  WeightSpec spec;
  spec.family = Family::custom;
  return Weight(std::move(id), spec, lower, upper, even, std::move(eval), limits);
}

LogWDerivs eval_logw_derivs(const Weight& w, double x) { return w.derivs(x); }

std::vector<double> interior_samples(const Weight& w, int count) {
  std::vector<double> xs;
  xs.reserve(count);
  double lo = w.lower();
  double hi = w.upper();
  if (!w.bounded_below() || !w.bounded_above()) {
    const double r = truncation_radius(w, 0, 1e-30);
    if (!w.bounded_below()) lo = w.bounded_above() ? hi - 2.0 * r : -r;
    if (!w.bounded_above()) hi = w.bounded_below() ? std::max(lo, 0.0) + r : r;
  }
  // Chebyshev points of the first kind never touch the endpoints.
  for (int j = 0; j < count; ++j) {
    const double c = std::cos(std::numbers::pi * (2.0 * j + 1.0) / (2.0 * count));
    xs.push_back(0.5 * (lo + hi) - 0.5 * (hi - lo) * c);
  }
  return xs;
}

double mrs_number(const Weight& w, double u) {
  if (!w.is_even() || w.bounded_below() || w.bounded_above()) {
    throw Unsupported("mrs_number: needs an even weight on the real line, got " + w.id());
  }
  if (!(u > 0.0)) throw InvalidArgument("mrs_number: u must be positive");

  const auto& gl = gauss_legendre(32);
  constexpr int kPanels = 4;
  const double half_pi = 0.5 * std::numbers::pi;
  auto field = [&](double a) {
    double sum = 0.0;
    for (int p = 0; p < kPanels; ++p) {
      const double lo = half_pi * p / kPanels;
      const double hi = half_pi * (p + 1) / kPanels;
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double theta = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gl.nodes[i];
        const double x = a * std::sin(theta);
        sum += 0.5 * (hi - lo) * gl.weights[i] * x * w.dq1(x);
      }
    }
    return sum / std::numbers::pi;
  };

  double lo = 0.0;
  double hi = 1.0;
  while (field(hi) < u) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw Unsupported("mrs_number: field never reaches u for " + w.id());
  }
  for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (field(mid) < u ? lo : hi) = mid;
  }
  const double a = 0.5 * (lo + hi);

  // Q' must be increasing on (0, a]; sampled.
  double prev = w.dq1(a * 1e-3);
  for (int j = 2; j <= 400; ++j) {
    const double cur = w.dq1(a * j / 400.0);
    if (cur < prev - 1e-12 * (std::abs(prev) + 1.0)) {
      throw Unsupported("mrs_number: Q' is not increasing on (0, a_u) for " + w.id());
    }
    prev = cur;
  }
  return a;
}

double truncation_radius(const Weight& w, int degree, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("truncation_radius: eps must be in (0,1)");
  if (degree < 0) throw InvalidArgument("truncation_radius: negative degree");
  if (w.bounded_above() && w.bounded_below()) return w.upper();

  // Radius on the unbounded side(s).
  const double log_eps = std::log(eps);
  auto below = [&](double t) {
    double worst = -kInf;
    if (!w.bounded_above()) worst = w.log_w(t) + 2.0 * degree * std::log(t);
    if (!w.bounded_below()) {
      worst = std::max(worst, w.log_w(-t) + 2.0 * degree * std::log(t));
    }
    return worst < log_eps;
  };

  double lo = std::max(1.0, w.lower());
  double hi = lo;
  if (below(hi)) return hi;
  while (!below(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e9) throw PrecisionFailure("truncation_radius: weight " + w.id() + " decays too slowly");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (below(mid) ? hi : lo) = mid;
  }
  return hi;
}

Weight make_tilde(const Weight& w, double d) {
  if (!w.is_even() || w.bounded_below() || w.bounded_above()) {
    throw InvalidArgument("make_tilde: needs an even Freud weight on the real line, got " + w.id());
  }
  if (!(d > 1.0)) throw InvalidArgument("make_tilde: d must be > 1, got d = " + fmt_g(d));

  // log(1/w~) outside [-d, d], for x of either sign.
  auto outer = [w](double x) {
    const auto q = w.derivs(x);
    const double g = -q.log_w - std::log(x / q.dq1);
    const double g1 = q.dq1 - 1.0 / x + q.dq2 / q.dq1;
    const double g2 = q.dq2 + 1.0 / (x * x) + (q.dq3 * q.dq1 - q.dq2 * q.dq2) / (q.dq1 * q.dq1);
    return std::array<double, 3>{g, g1, g2};
  };

  const auto at_one = w.derivs(1.0);
  if (!(at_one.dq1 > 0.0)) {
    throw ConstraintViolation("make_tilde: Q'(1) must be positive", 1.0);
  }
  const auto at_d = outer(d);
  const double h = d - 1.0;
  std::array<double, 6> c{};
  c[0] = -at_one.log_w;
  c[1] = at_one.dq1 * h;
  c[2] = 0.5 * at_one.dq2 * h * h;
  const double r0 = at_d[0] - (c[0] + c[1] + c[2]);
  const double r1 = at_d[1] * h - (c[1] + 2.0 * c[2]);
  const double r2 = at_d[2] * h * h - 2.0 * c[2];
  c[3] = 10.0 * r0 - 4.0 * r1 + 0.5 * r2;
  c[4] = -15.0 * r0 + 7.0 * r1 - r2;
  c[5] = 6.0 * r0 - 3.0 * r1 + 0.5 * r2;

  auto bridge = [c, h](double ax) {
    const double s = (ax - 1.0) / h;
    const double p = c[0] + s * (c[1] + s * (c[2] + s * (c[3] + s * (c[4] + s * c[5]))));
    const double p1 = c[1] + s * (2 * c[2] + s * (3 * c[3] + s * (4 * c[4] + s * 5 * c[5])));
    const double p2 = 2 * c[2] + s * (6 * c[3] + s * (12 * c[4] + s * 20 * c[5]));
    const double p3 = 6 * c[3] + s * (24 * c[4] + s * 60 * c[5]);
    return std::array<double, 4>{p, p1 / h, p2 / (h * h), p3 / (h * h * h)};
  };

  auto log_w_tilde = [w, d, bridge](double x) {
    const double ax = std::abs(x);
    if (ax <= 1.0) return w.log_w(x);
    if (ax >= d) return w.log_w(x) + std::log(x / w.dq1(x));
    return -bridge(ax)[0];
  };

  auto derivs_tilde = [w, d, bridge, outer](double x) {
    const double ax = std::abs(x);
    if (ax <= 1.0) return w.derivs(x);
    if (ax >= d) {
      const auto g = outer(x);
      const double step = 1e-4 * (1.0 + ax);
      const double g3 = (outer(x + step)[2] - outer(x - step)[2]) / (2.0 * step);
      return LogWDerivs{-g[0], g[1], g[2], g3};
    }
    const auto b = bridge(ax);
    const double sgn = x < 0.0 ? -1.0 : 1.0;
    return LogWDerivs{-b[0], sgn * b[1], b[2], sgn * b[3]};
  };

  // Positivity of (log 1/w~)' and (log 1/w~)'' on (0, inf), sampled.
  auto check = [&](double x) {
    const auto q = derivs_tilde(x);
    if (!(q.dq1 > 0.0)) {
      throw ConstraintViolation("make_tilde: (log 1/w~)' = " + fmt_g(q.dq1) +
                                    " is not positive at x = " + fmt_g(x),
                                x);
    }
    if (!(q.dq2 > 0.0)) {
      throw ConstraintViolation("make_tilde: (log 1/w~)'' = " + fmt_g(q.dq2) +
                                    " is not positive at x = " + fmt_g(x) + " (d = " + fmt_g(d) + ")",
                                x);
    }
  };
  for (int j = 1; j <= 200; ++j) check(j / 200.0);
  for (int j = 1; j <= 2000; ++j) check(1.0 + h * j / 2000.0);
  const double far = std::max(4.0 * d, 10.0);
  for (int j = 1; j <= 400; ++j) check(d + (far - d) * j / 400.0);

  WeightSpec spec = w.spec();
  spec.family = Family::custom;
  spec.tilde = {true, d};
  Weight out(w.id() + "~(d=" + fmt_g(d) + ")", spec, w.lower(), w.upper(), true,
             WeightEvaluator{log_w_tilde, derivs_tilde});
  auto state = std::make_shared<Weight::State>(*out.state_);
  state->bridge = TildeBridge{d, c};
  out.state_ = std::move(state);
  return out;
}

ApproximatingReport check_approximating(const Weight& w, int samples) {
  ApproximatingReport rep;
  double worst = 0.0;
  for (double x : interior_samples(w, samples)) {
    const double q2 = w.derivs(x).dq2;
    if (q2 < worst) {
      worst = q2;
      rep.worst_x = x;
    }
  }
  rep.convex = worst >= -1e-12;

  const auto& s = w.spec();
  switch (s.family) {
    case Family::laguerre:
      rep.lower_ratio_vanishes = s.alpha > 1.0;
      break;
    case Family::jacobi:
      rep.lower_ratio_vanishes = s.beta > 1.0;
      rep.upper_ratio_vanishes = s.alpha > 1.0;
      break;
    case Family::custom: {
      // w(x)/dist should shrink as the endpoint is approached.
      auto ratio = [&](double x, double dist) { return w.log_w(x) - std::log(dist); };
      if (w.bounded_below()) {
        const double a = w.lower();
        rep.lower_ratio_vanishes = ratio(a + 1e-9, 1e-9) < ratio(a + 1e-5, 1e-5) &&
                                   ratio(a + 1e-9, 1e-9) < std::log(1e-3);
      }
      if (w.bounded_above()) {
        const double b = w.upper();
        rep.upper_ratio_vanishes = ratio(b - 1e-9, 1e-9) < ratio(b - 1e-5, 1e-5) &&
                                   ratio(b - 1e-9, 1e-9) < std::log(1e-3);
      }
      break;
    }
    default:
      break;
  }
  return rep;
}

}  // namespace fflab
