#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fflab {

enum class Family { hermite, laguerre, jacobi, freud, even_poly, custom };

const char* family_name(Family f);

struct TildeConfig {
  bool enabled = false;
  double d = 3.0;
};

/// Parameters of a weight w = e^{-Q}. Only the fields used by `family` matter.
struct WeightSpec {
  Family family = Family::hermite;
  double alpha = 0.0;               // laguerre, jacobi
  double beta = 0.0;                // jacobi
  int m = 2;                        // freud exponent
  std::vector<double> d_coeffs;     // even-poly: Q = sum_k d_k x^{2k}
  TildeConfig tilde;

  static WeightSpec hermite();
  static WeightSpec laguerre(double alpha);
  static WeightSpec jacobi(double alpha, double beta);
  static WeightSpec freud(int m);
  static WeightSpec even_poly(std::vector<double> d);
};

/// log w together with the first three derivatives of Q = -log w.
struct LogWDerivs {
  double log_w;
  double dq1;
  double dq2;
  double dq3;
};

struct WeightEvaluator {
  std::function<double(double)> log_w;
  std::function<LogWDerivs(double)> derivs;
};

/// Limit of w at a finite endpoint: 0, a finite positive value, or nullopt when
/// w is unbounded there (or the endpoint is infinite).
struct EndpointLimits {
  std::optional<double> lower;
  std::optional<double> upper;
};

/// C^2 bridge of log(1/w~) on [1, d], stored as a quintic in s = (x-1)/(d-1).
struct TildeBridge {
  double d;
  std::array<double, 6> coeffs;
};

/// An immutable weight on an open interval. Copies share the evaluators.
class Weight {
 public:
  Weight(std::string id, WeightSpec spec, double lower, double upper, bool even,
         WeightEvaluator eval, EndpointLimits limits = {});

  const std::string& id() const { return state_->id; }
  const WeightSpec& spec() const { return state_->spec; }
  Family family() const { return state_->spec.family; }
  double lower() const { return state_->lower; }
  double upper() const { return state_->upper; }
  bool is_even() const { return state_->even; }
  bool bounded_below() const;
  bool bounded_above() const;
  bool contains(double x) const { return x > lower() && x < upper(); }
  const EndpointLimits& endpoint_limits() const { return state_->limits; }

  /// Throws DomainError outside the open domain.
  double log_w(double x) const;
  double value(double x) const;
  LogWDerivs derivs(double x) const;
  double dq1(double x) const { return derivs(x).dq1; }

  const std::optional<TildeBridge>& bridge() const { return state_->bridge; }

 private:
  friend Weight make_tilde(const Weight& w, double d);

  struct State {
    std::string id;
    WeightSpec spec;
    double lower;
    double upper;
    bool even;
    WeightEvaluator eval;
    EndpointLimits limits;
    std::optional<TildeBridge> bridge;
  };
  std::shared_ptr<const State> state_;
  void check_domain(double x) const;
};

/// Validates `spec` and builds the family weight. Throws InvalidArgument with
/// a diagnostic for out-of-range parameters.
Weight make_weight(const WeightSpec& spec);

/// Weight from caller-supplied evaluators (family = custom).
Weight make_custom_weight(std::string id, double lower, double upper, bool even,
                          WeightEvaluator eval, EndpointLimits limits = {});

LogWDerivs eval_logw_derivs(const Weight& w, double x);

/// Mhaskar-Rakhmanov-Saff number a_u for an even weight on the real line:
/// the root of u = (1/pi) int_0^1 a t Q'(a t) / sqrt(1 - t^2) dt.
double mrs_number(const Weight& w, double u);

/// Modified weight w~: w on |x| <= 1, w x / Q'(x) on |x| >= d, and a C^2
/// quintic bridge of log(1/w~) in between. Throws ConstraintViolation at the
/// first sampled x > 0 where (log 1/w~)' or (log 1/w~)'' is not positive.
Weight make_tilde(const Weight& w, double d);

/// Upper radius T past which w(x) |x|^{2 degree} < eps. Bounded domains
/// return the upper endpoint.
double truncation_radius(const Weight& w, int degree, double eps);

/// Sampled structural checks for "approximating" weights.
struct ApproximatingReport {
  bool convex = true;            // Q'' >= 0 at all samples
  double worst_x = 0.0;          // sample with the most negative Q''
  bool lower_ratio_vanishes = true;   // w(x)/(x-a) -> 0 at a finite lower end
  bool upper_ratio_vanishes = true;   // w(x)/(b-x) -> 0 at a finite upper end
  bool approximating() const {
    return convex && lower_ratio_vanishes && upper_ratio_vanishes;
  }
};

ApproximatingReport check_approximating(const Weight& w, int samples = 400);

/// Sample points strictly inside the domain, used by the sampled checks.
std::vector<double> interior_samples(const Weight& w, int count);

}  // namespace fflab
