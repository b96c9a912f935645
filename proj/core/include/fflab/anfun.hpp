#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "fflab/orthopoly.hpp"
#include "fflab/weights.hpp"

namespace fflab {

enum class AnMethod { quadrature, closed_form };

/// One evaluation of A_n(x)/rho_n.
struct AnProbe {
  int n = 0;
  double x = 0.0;
  double value = 0.0;
  AnMethod method = AnMethod::quadrature;
};

/// A_n(x)/rho_n = int p_n^2(t) w(t) (Q'(t) - Q'(x))/(t - x) dt, plus the
/// endpoint term [w p_n^2 / (t - x)] at a finite endpoint where w has a finite
/// nonzero limit (it vanishes for approximating weights).
///
/// The integral uses the table's discretization and is repeated on the
/// half-size one; a relative disagreement above 1e-8 raises PrecisionFailure.
AnProbe an_over_rho(const Weight& w, const RecurrenceTable& t, int n, double x);

/// Known closed forms: hermite 2, laguerre 1/x, jacobi (a+b+1+2n)/(1-x^2),
/// freud(4) 4(x^2 + rho_n^2 + rho_{n+1}^2). Unsupported for other families.
AnProbe an_closed_form(const Weight& w, const RecurrenceTable& t, int n, double x);

/// The induced weight w_n = w / (A_n/rho_n) with Q_n' = Q' + (log A_n)'.
///
/// Closed forms are used for hermite, laguerre, jacobi and freud(4). For other
/// even polynomial Q, A_n/rho_n is a polynomial in x whose coefficients are
/// moments of p_n^2 w, which gives exact derivatives. Otherwise log A_n is
/// differentiated by central differences with step 1e-5 (1 + |x|).
Weight wn_weight(const Weight& w, const RecurrenceTable& t, int n);

struct RatioBounds {
  double min = 0.0;
  double max = 0.0;
  double spread() const { return max / min; }
};

struct Lemma7Sample {
  int n;
  bool inner;
  double x;
  double ratio;
};

/// Two-regime comparison of A_n/rho_n against n/a_n^2 (|x| <= L a_n) and
/// Q'(x)/x (|x| >= L a_n).
struct Lemma7Band {
  std::vector<int> n_list;
  double L = 0.0;
  double L0 = 0.0;
  std::vector<Lemma7Sample> samples;
  RatioBounds inner;
  RatioBounds outer;
  std::map<int, RatioBounds> inner_by_n;
  std::map<int, RatioBounds> outer_by_n;
  /// Largest relative gap between quadrature and closed form, when one exists.
  std::optional<double> closed_form_gap;
};

/// Lower bound of (x Q'(x))'/Q'(x) over (0, inf), sampled.
double freud_index_lower(const Weight& w);

/// Smallest L with (L/2) a_n > a_{2n + [A-1] + 1} for every n in the list.
double lemma7_threshold(const Weight& w, std::span<const int> n_list);

/// Samples 50 points on [0, L a_n] and 20 on [L a_n, 3 L a_n] per n. L defaults
/// to 1.2 times lemma7_threshold and must exceed it.
Lemma7Band lemma7_band(const Weight& w, const RecurrenceTable& t, std::span<const int> n_list,
                       std::optional<double> L = std::nullopt);

}  // namespace fflab
