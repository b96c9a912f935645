#include "fflab/anfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fflab/error.hpp"

namespace fflab {
namespace {

constexpr double kSingularGap = 1e-8;
constexpr double kRefinementTolerance = 1e-8;

// p_n^2 times the discrete weights, so repeated x evaluations are O(points).
class AnIntegrand {
 public:
  AnIntegrand(const Weight& w, const RecurrenceTable& t, int n, const Discretization& disc)
      : w_(w), disc_(disc), mass_(disc.size()), qprime_(disc.size()) {
    for (std::size_t i = 0; i < disc.size(); ++i) {
      const double p = eval_orthonormal(t, n, disc.nodes[i]);
      mass_[i] = disc.weights[i] * p * p;
      qprime_[i] = w.dq1(disc.nodes[i]);
    }
  }

  double integral(double x) const {
    const auto qx = w_.derivs(x);
    double sum = 0.0;
    for (std::size_t i = 0; i < mass_.size(); ++i) {
      const double gap = disc_.nodes[i] - x;
      const double dd = std::abs(gap) < kSingularGap ? qx.dq2 : (qprime_[i] - qx.dq1) / gap;
      sum += mass_[i] * dd;
    }
    return sum;
  }

 private:
  const Weight& w_;
  const Discretization& disc_;
  std::vector<double> mass_;
  std::vector<double> qprime_;
};

double endpoint_term(const Weight& w, const RecurrenceTable& t, int n, double x) {
  double term = 0.0;
  const auto& lim = w.endpoint_limits();
  if (w.bounded_above()) {
    if (!lim.upper) {
      throw Unsupported("A_n: weight " + w.id() + " is unbounded at the upper endpoint");
    }
    if (*lim.upper != 0.0) {
      const double b = w.upper();
      const double p = eval_orthonormal(t, n, b);
      term += *lim.upper * p * p / (b - x);
    }
  }
  if (w.bounded_below()) {
    if (!lim.lower) {
      throw Unsupported("A_n: weight " + w.id() + " is unbounded at the lower endpoint");
    }
    if (*lim.lower != 0.0) {
      const double a = w.lower();
      const double p = eval_orthonormal(t, n, a);
      term -= *lim.lower * p * p / (a - x);
    }
  }
  return term;
}

void check_degree(const RecurrenceTable& t, int n, const char* who) {
  if (n < 0 || n > t.n_max) {
    throw InvalidArgument(std::string(who) + ": n = " + std::to_string(n) +
                          " exceeds the table's n_max = " + std::to_string(t.n_max));
  }
}

struct LogDerivs {
  double v, d1, d2, d3;
};

// log A and its derivatives from A and its derivatives.
LogDerivs log_of(double a, double a1, double a2, double a3) {
  const double r1 = a1 / a;
  return {std::log(a), r1, a2 / a - r1 * r1, a3 / a - 3.0 * a2 * a1 / (a * a) + 2.0 * r1 * r1 * r1};
}

Weight induced(const Weight& w, int n, std::function<LogDerivs(double)> log_a,
               EndpointLimits limits) {
  WeightEvaluator eval{
      [w, log_a](double x) { return w.log_w(x) - log_a(x).v; },
      [w, log_a](double x) {
        const auto q = w.derivs(x);
        const auto l = log_a(x);
        return LogWDerivs{q.log_w - l.v, q.dq1 + l.d1, q.dq2 + l.d2, q.dq3 + l.d3};
      },
  };
  return make_custom_weight("w_n[" + w.id() + ",n=" + std::to_string(n) + "]", w.lower(),
                            w.upper(), w.is_even(), std::move(eval), limits);
}

}  // namespace

AnProbe an_over_rho(const Weight& w, const RecurrenceTable& t, int n, double x) {
  check_degree(t, n, "an_over_rho");
  if (!t.fine || !t.coarse) throw InvalidArgument("an_over_rho: table has no discretization");
  if (t.weight_id != w.id()) {
    throw InvalidArgument("an_over_rho: table was built for " + t.weight_id + ", not " + w.id());
  }
  const double boundary = endpoint_term(w, t, n, x);
  const double fine = AnIntegrand(w, t, n, *t.fine).integral(x) + boundary;
  const double coarse = AnIntegrand(w, t, n, *t.coarse).integral(x) + boundary;
  if (std::abs(fine - coarse) > kRefinementTolerance * std::abs(fine)) {
    throw PrecisionFailure("an_over_rho: refinements disagree at n = " + std::to_string(n) +
                           ", x = " + std::to_string(x) + " (" + std::to_string(fine) + " vs " +
                           std::to_string(coarse) + ")");
  }
  return {n, x, fine, AnMethod::quadrature};
}

AnProbe an_closed_form(const Weight& w, const RecurrenceTable& t, int n, double x) {
  check_degree(t, n, "an_closed_form");
  const auto& s = w.spec();
  double value = 0.0;
  switch (s.family) {
    case Family::hermite:
      value = 2.0;
      break;
    case Family::laguerre:
      if (!(x > 0.0)) throw DomainError("an_closed_form: laguerre needs x > 0");
      value = 1.0 / x;
      break;
    case Family::jacobi:
      if (!(std::abs(x) < 1.0)) throw DomainError("an_closed_form: jacobi needs |x| < 1");
      value = (s.alpha + s.beta + 1.0 + 2.0 * n) / (1.0 - x * x);
      break;
    case Family::freud:
      if (s.m != 4) throw Unsupported("an_closed_form: freud closed form exists for m = 4 only");
      value = 4.0 * (x * x + t.rho(n) * t.rho(n) + t.rho(n + 1) * t.rho(n + 1));
      break;
    default:
      throw Unsupported(std::string("an_closed_form: no closed form for ") + w.id());
  }
  return {n, x, value, AnMethod::closed_form};
}

Weight wn_weight(const Weight& w, const RecurrenceTable& t, int n) {
  check_degree(t, n, "wn_weight");
  const auto& s = w.spec();

  switch (s.family) {
    case Family::hermite:
      return induced(w, n, [](double) { return LogDerivs{std::log(2.0), 0.0, 0.0, 0.0}; }, {});

    case Family::laguerre:
      // A_n/rho_n = 1/x.
      return induced(
          w, n,
          [](double x) { return LogDerivs{-std::log(x), -1.0 / x, 1.0 / (x * x), -2.0 / (x * x * x)}; },
          {0.0, std::nullopt});

    case Family::jacobi: {
      // A_n/rho_n = c / (1 - x^2).
      const double c = s.alpha + s.beta + 1.0 + 2.0 * n;
      return induced(
          w, n,
          [c](double x) {
            const double u = 1.0 - x;
            const double v = 1.0 + x;
            return LogDerivs{std::log(c) - std::log1p(-x) - std::log1p(x), 1.0 / u - 1.0 / v,
                             1.0 / (u * u) + 1.0 / (v * v), 2.0 / (u * u * u) - 2.0 / (v * v * v)};
          },
          {0.0, 0.0});
    }

    case Family::freud:
    case Family::even_poly: {
      // Q = sum_k d_k x^{2k}; A_n/rho_n = sum_l c_l x^l, c_l = sum_k 2k d_k mu_{2k-2-l}.
      std::vector<double> d;
      if (s.family == Family::freud) {
        d.assign(s.m / 2 + 1, 0.0);
        d.back() = 1.0;
      } else {
        d = s.d_coeffs;
      }
      const int top = 2 * static_cast<int>(d.size()) - 4;  // highest power of x in A
      std::vector<double> mu(std::max(top, 0) + 1, 0.0);
      if (s.family == Family::freud && s.m == 4) {
        mu[0] = 1.0;
        mu[2] = t.rho(n) * t.rho(n) + t.rho(n + 1) * t.rho(n + 1);
      } else {
        const auto& disc = *t.fine;
        for (std::size_t i = 0; i < disc.size(); ++i) {
          const double p = eval_orthonormal(t, n, disc.nodes[i]);
          double tp = disc.weights[i] * p * p;
          for (std::size_t j = 0; j < mu.size(); ++j) {
            if (j % 2 == 0) mu[j] += tp;
            tp *= disc.nodes[i];
          }
        }
      }
      std::vector<double> c(mu.size(), 0.0);
      for (std::size_t k = 1; k < d.size(); ++k) {
        for (std::size_t l = 0; l + 2 <= 2 * k; ++l) {
          c[l] += 2.0 * k * d[k] * mu[2 * k - 2 - l];
        }
      }
      auto log_a = [c, id = w.id()](double x) {
        double a = 0, a1 = 0, a2 = 0, a3 = 0;
        for (std::size_t j = c.size(); j-- > 0;) {
          a3 = a3 * x + a2;
          a2 = a2 * x + a1;
          a1 = a1 * x + a;
          a = a * x + c[j];
        }
        if (!(a > 0.0)) {
          throw ConstraintViolation("wn_weight: A_n <= 0 for " + id, x);
        }
        return log_of(a, a1, 2.0 * a2, 6.0 * a3);
      };
      return induced(w, n, log_a, {});
    }

    case Family::custom:
      break;
  }

  // Quadrature plus central differences.
  auto table = std::make_shared<const RecurrenceTable>(t);
  auto integrand = std::make_shared<const AnIntegrand>(w, *table, n, *table->fine);
  auto log_a_at = [w, table, integrand, n](double x) {
    const double a = integrand->integral(x) + endpoint_term(w, *table, n, x);
    if (!(a > 0.0)) throw ConstraintViolation("wn_weight: A_n <= 0 for " + w.id(), x);
    return std::log(a);
  };
  auto log_a = [log_a_at](double x) {
    const double h = 1e-5 * (1.0 + std::abs(x));
    const double f0 = log_a_at(x);
    const double fp = log_a_at(x + h);
    const double fm = log_a_at(x - h);
    const double fpp = log_a_at(x + 2 * h);
    const double fmm = log_a_at(x - 2 * h);
    return LogDerivs{f0, (fp - fm) / (2 * h), (fp - 2 * f0 + fm) / (h * h),
                     (fpp - 2 * fp + 2 * fm - fmm) / (2 * h * h * h)};
  };
  for (double x : interior_samples(w, 50)) log_a_at(x);
  return induced(w, n, log_a, w.endpoint_limits());
}

double freud_index_lower(const Weight& w) {
  if (!w.is_even() || w.bounded_below() || w.bounded_above()) {
    throw Unsupported("freud_index_lower: needs an even weight on the real line");
  }
  const double r = truncation_radius(w, 0, 1e-30);
  double lowest = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= 1000; ++j) {
    const double x = r * j / 1000.0;
    const auto q = w.derivs(x);
    lowest = std::min(lowest, 1.0 + x * q.dq2 / q.dq1);
  }
  return lowest;
}

double lemma7_threshold(const Weight& w, std::span<const int> n_list) {
  const double a_index = freud_index_lower(w);
  const int shift = static_cast<int>(std::floor(a_index - 1.0 + 1e-9)) + 1;
  double l0 = 0.0;
  for (int n : n_list) {
    l0 = std::max(l0, 2.0 * mrs_number(w, 2.0 * n + shift) / mrs_number(w, n));
  }
  return l0;
}

Lemma7Band lemma7_band(const Weight& w, const RecurrenceTable& t, std::span<const int> n_list,
                       std::optional<double> L) {
  if (n_list.empty()) throw InvalidArgument("lemma7_band: empty n list");
  Lemma7Band band;
  band.n_list.assign(n_list.begin(), n_list.end());
  band.L0 = lemma7_threshold(w, n_list);
  band.L = L.value_or(1.2 * band.L0);
  if (!(band.L > band.L0)) {
    throw InvalidArgument("lemma7_band: L = " + std::to_string(band.L) +
                          " must exceed L_0 = " + std::to_string(band.L0));
  }

  bool have_closed = true;
  double gap = 0.0;
  auto widen = [](RatioBounds& b, double r, bool first) {
    if (first) {
      b = {r, r};
    } else {
      b.min = std::min(b.min, r);
      b.max = std::max(b.max, r);
    }
  };

  bool first_inner = true;
  bool first_outer = true;
  for (int n : n_list) {
    const double an = mrs_number(w, n);
    const double edge = band.L * an;
    auto record = [&](double x, bool inner) {
      const double a = an_over_rho(w, t, n, x).value;
      if (have_closed) {
        try {
          const double c = an_closed_form(w, t, n, x).value;
          gap = std::max(gap, std::abs(a - c) / std::abs(c));
        } catch (const Unsupported&) {
          have_closed = false;
        }
      }
      const double scale = inner ? n / (an * an) : w.dq1(x) / x;
      const double ratio = a / scale;
      if (!(ratio > 0.0) || !std::isfinite(ratio)) {
        throw PrecisionFailure("lemma7_band: non-positive ratio at n = " + std::to_string(n) +
                               ", x = " + std::to_string(x));
      }
      band.samples.push_back({n, inner, x, ratio});
      if (inner) {
        widen(band.inner, ratio, first_inner);
        first_inner = false;
        auto [it, fresh] = band.inner_by_n.try_emplace(n, RatioBounds{ratio, ratio});
        if (!fresh) widen(it->second, ratio, false);
      } else {
        widen(band.outer, ratio, first_outer);
        first_outer = false;
        auto [it, fresh] = band.outer_by_n.try_emplace(n, RatioBounds{ratio, ratio});
        if (!fresh) widen(it->second, ratio, false);
      }
    };
    for (int j = 0; j < 50; ++j) record(edge * j / 49.0, true);
    for (int j = 0; j < 20; ++j) record(edge + 2.0 * edge * j / 19.0, false);
  }
  if (have_closed) band.closed_form_gap = gap;
  return band;
}

}  // namespace fflab
