#pragma once

// Reference computations that share no code with the library.

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

using Real = long double;

// Moments of x^k against each weight, k = 0..count-1, from Gamma functions.
inline std::vector<Real> hermite_moments(int count) {
  std::vector<Real> mu(count, 0.0L);
  for (int k = 0; k < count; k += 2) mu[k] = std::tgamma((k + 1) / 2.0L);
  return mu;
}

inline std::vector<Real> freud_moments(int m, int count) {
  std::vector<Real> mu(count, 0.0L);
  for (int k = 0; k < count; k += 2) mu[k] = 2.0L * std::tgamma((k + 1.0L) / m) / m;
  return mu;
}

inline std::vector<Real> laguerre_moments(Real alpha, int count) {
  std::vector<Real> mu(count);
  for (int k = 0; k < count; ++k) mu[k] = std::tgamma(k + alpha + 1.0L);
  return mu;
}

// int_{-1}^{1} (1-x)^a (1+x)^b x^k dx via x = 2t - 1 and Beta integrals.
inline std::vector<Real> jacobi_moments(Real a, Real b, int count) {
  auto beta_fn = [](Real p, Real q) {
    return std::exp(std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q));
  };
  std::vector<Real> mu(count);
  for (int k = 0; k < count; ++k) {
    Real s = 0.0L;
    Real binom = 1.0L;
    for (int j = 0; j <= k; ++j) {
      const Real sign = ((k - j) % 2 == 0) ? 1.0L : -1.0L;
      s += binom * std::pow(2.0L, static_cast<Real>(j)) * sign * beta_fn(j + b + 1.0L, a + 1.0L);
      binom = binom * (k - j) / (j + 1);
    }
    mu[k] = std::pow(2.0L, a + b + 1.0L) * s;
  }
  return mu;
}

struct Recurrence {
  std::vector<Real> alpha;  // alpha_0..alpha_{n-1}
  std::vector<Real> beta;   // orthonormal beta_1..beta_{n-1} stored at [1..n-1]; beta[0] = mu_0
};

// Chebyshev's algorithm: monic recurrence from 2n moments.
inline Recurrence chebyshev_algorithm(const std::vector<Real>& mu, int n) {
  Recurrence r;
  r.alpha.assign(n, 0.0L);
  r.beta.assign(n, 0.0L);
  const int len = 2 * n;
  std::vector<Real> prev(len, 0.0L);
  std::vector<Real> cur(mu.begin(), mu.begin() + len);
  r.alpha[0] = mu[1] / mu[0];
  Real b_monic_prev = mu[0];
  r.beta[0] = mu[0];
  for (int k = 1; k < n; ++k) {
    std::vector<Real> next(len, 0.0L);
    for (int l = k; l < len - k; ++l) {
      next[l] = cur[l + 1] - r.alpha[k - 1] * cur[l] - (k >= 2 ? b_monic_prev : 0.0L) * prev[l];
    }
    r.alpha[k] = next[k + 1] / next[k] - cur[k] / cur[k - 1];
    const Real b = next[k] / cur[k - 1];
    r.beta[k] = std::sqrt(b);
    b_monic_prev = b;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return r;
}

// Composite Simpson on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Orthonormal p_0..p_n at x from an oracle recurrence in long double.
inline std::vector<Real> orthonormal_values(const Recurrence& r, int n, Real x) {
  std::vector<Real> p(n + 1);
  p[0] = 1.0L / std::sqrt(r.beta[0]);
  Real prev = 0.0L;
  for (int k = 0; k < n; ++k) {
    const Real bk = k == 0 ? 0.0L : r.beta[k];
    const Real next = ((x - r.alpha[k]) * p[k] - bk * prev) / r.beta[k + 1];
    prev = p[k];
    p[k + 1] = next;
  }
  return p;
}

}  // namespace oracle
