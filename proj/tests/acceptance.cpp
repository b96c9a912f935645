// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fflab/analysis.hpp"
#include "fflab/anfun.hpp"
#include "fflab/error.hpp"
#include "fflab/fekete.hpp"
#include "fflab/orthopoly.hpp"

using namespace fflab;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "  failed: " << what << '\n';
    }
  }
};

std::vector<Weight> four_families() {
  return {make_weight(WeightSpec::hermite()), make_weight(WeightSpec::laguerre(0.0)),
          make_weight(WeightSpec::laguerre(1.0)), make_weight(WeightSpec::jacobi(1.0, 1.0)),
          make_weight(WeightSpec::freud(4))};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void closed_form_reproduction(Outcome& o) {
  double worst = 0.0;
  for (const auto& w : four_families()) {
    const auto t = recurrence_table(w, 11);
    for (int n = 2; n <= 10; ++n) {
      for (double x : {0.1, 0.5, 1.0, 2.0}) {
        if (!w.contains(x)) continue;
        const double q = an_over_rho(w, t, n, x).value;
        const double c = an_closed_form(w, t, n, x).value;
        const double rel = std::abs(q - c) / std::abs(c);
        worst = std::max(worst, rel);
        o.require(rel < 1e-6, w.id() + " n=" + std::to_string(n) + " x=" + fmt(x) + " rel=" + fmt(rel));
      }
    }
  }
  o.detail << "  worst relative gap " << fmt(worst) << '\n';
}

void zeros_are_induced_fekete(Outcome& o) {
  double worst_c = 0.0, worst_d = 0.0;
  for (const auto& w : four_families()) {
    const auto t = recurrence_table(w, 13);
    for (int n = 1; n <= 12; ++n) {
      const auto z = zeros(t, n);
      const auto wn = wn_weight(w, t, n);
      const double c = fejer_constants(z, wn).max_abs_c;
      const double d = node_distance(solve_fekete(wn, n).nodes.nodes, z.nodes);
      worst_c = std::max(worst_c, c);
      worst_d = std::max(worst_d, d);
      o.require(c < 1e-8, w.id() + " n=" + std::to_string(n) + " max|C|=" + fmt(c));
      o.require(d < 1e-8, w.id() + " n=" + std::to_string(n) + " distance=" + fmt(d));
    }
  }
  o.detail << "  max|C_k,w_n| " << fmt(worst_c) << ", max node distance " << fmt(worst_d) << '\n';
}

void analytic_fekete(Outcome& o) {
  const auto her = make_weight(WeightSpec::hermite());
  const auto two = solve_fekete(her, 2).nodes.nodes;
  const double r = 1.0 / std::sqrt(2.0);
  const double d2 = node_distance(two, {-r, r});
  const auto three = solve_fekete(her, 3).nodes.nodes;
  const double s = std::sqrt(1.5);
  const double d3 = node_distance(three, {-s, 0.0, s});
  o.require(d2 < 1e-10, "n=2 distance " + fmt(d2));
  o.require(d3 < 1e-9, "n=3 distance " + fmt(d3));
  o.detail << "  n=2 error " << fmt(d2) << ", n=3 error " << fmt(d3) << '\n';
}

void string_equation(Outcome& o) {
  const auto t = recurrence_table(make_weight(WeightSpec::freud(4)), 21);
  double worst = 0.0;
  for (int n = 1; n <= 20; ++n) {
    const double r = std::abs(freud_string_residual(t, n));
    worst = std::max(worst, r);
    o.require(r < 1e-6, "n=" + std::to_string(n) + " residual " + fmt(r));
  }
  o.detail << "  worst residual " << fmt(worst) << '\n';
}

void gradient_and_hessian(Outcome& o) {
  std::mt19937_64 rng(2024);
  const auto fams = four_families();
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Weight& w = fams[trial % fams.size()];
    const int n = 2 + trial % 7;
    const double lo = w.bounded_below() ? w.lower() + 0.05 : -2.5;
    const double hi = w.bounded_above() ? w.upper() - 0.05 : (w.bounded_below() ? 6.0 : 2.5);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> x;
    while (static_cast<int>(x.size()) < n) {
      const double v = u(rng);
      if (std::none_of(x.begin(), x.end(), [&](double y) { return std::abs(y - v) < 0.05; })) x.push_back(v);
    }
    std::sort(x.begin(), x.end());
    const auto c = fejer_constants(NodeSet::from_user(x), w).c;
    for (int k = 0; k < n; ++k) {
      const double h = 1e-6;
      auto xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      const double fd = (fekete_objective(NodeSet::from_user(xp), w) -
                         fekete_objective(NodeSet::from_user(xm), w)) / (2 * h);
      const double rel = std::abs(fd - c[k]) / std::max(1.0, std::abs(c[k]));
      worst = std::max(worst, rel);
      o.require(rel < 1e-5, w.id() + " trial " + std::to_string(trial) + " rel " + fmt(rel));
    }
  }
  int solves = 0;
  int no_maximum = 0;
  std::string without_maximum;
  for (const auto& w : fams) {
    for (int n = 2; n <= 12; ++n) {
      FejerReport r;
      try {
        r = solve_fekete(w, n);
      } catch (const ConvergenceFailure&) {
        ++no_maximum;
        if (without_maximum.find(w.id()) == std::string::npos) {
          without_maximum += (without_maximum.empty() ? "" : ", ") + w.id();
        }
        continue;
      }
      const auto ev = hessian_eigenvalues(r.nodes, w);
      o.require(r.max_abs_c < 1e-10 && ev.back() < 0.0,
                w.id() + " n=" + std::to_string(n) + " not a nondegenerate maximum");
      ++solves;
    }
  }
  o.detail << "  worst gradient gap " << fmt(worst) << "; -H positive definite at " << solves
           << " converged solutions; " << no_maximum << " solves found no interior maximum ("
           << without_maximum << ")\n";
}

void kernel_bound(Outcome& o) {
  const auto her = make_weight(WeightSpec::hermite());
  const auto t = recurrence_table(her, 12);
  double worst = 0.0, worst_change = 0.0;
  for (int n = 2; n <= 12; ++n) {
    const auto z = zeros(t, n);
    const auto wn = wn_weight(her, t, n);
    const double r = auto_radius(wn, z.nodes, 1.5);
    const double a = kernel_sup(z, wn, build_grid({}, wn, z.nodes, r)).value;
    const double b = kernel_sup(z, wn, build_grid(GridSpec{}.doubled(), wn, z.nodes, r)).value;
    const double change = std::abs(a - b) / b;
    worst = std::max(worst, a - 1.0);
    worst_change = std::max(worst_change, change);
    o.require(a <= 1.0 + 1e-9, "n=" + std::to_string(n) + " sup " + fmt(a));
    o.require(change < 1e-3, "n=" + std::to_string(n) + " doubling change " + fmt(change));
  }
  o.detail << "  max(sup - 1) " << fmt(worst) << ", max doubling change " << fmt(worst_change) << '\n';
}

void lemma7(Outcome& o) {
  std::vector<int> ns;
  for (int n = 4; n <= 20; ++n) ns.push_back(n);

  const auto her = make_weight(WeightSpec::hermite());
  const auto hb = lemma7_band(her, recurrence_table(her, 21), ns);
  const double hin = std::max(std::abs(hb.inner.min - 4.0), std::abs(hb.inner.max - 4.0));
  const double hout = std::max(std::abs(hb.outer.min - 1.0), std::abs(hb.outer.max - 1.0));
  o.require(hin < 1e-6, "hermite inner ratio off 4 by " + fmt(hin));
  o.require(hout < 1e-6, "hermite outer ratio off 1 by " + fmt(hout));

  const auto fr = make_weight(WeightSpec::freud(4));
  const auto fb = lemma7_band(fr, recurrence_table(fr, 21), ns);
  o.require(fb.inner.spread() <= 10.0, "freud4 inner spread " + fmt(fb.inner.spread()) + " > 10");
  o.require(fb.outer.spread() <= 10.0, "freud4 outer spread " + fmt(fb.outer.spread()) + " > 10");
  const double in8 = fb.inner_by_n.at(8).spread(), in20 = fb.inner_by_n.at(20).spread();
  const double out8 = fb.outer_by_n.at(8).spread(), out20 = fb.outer_by_n.at(20).spread();
  o.require(in20 <= 1.2 * in8, "freud4 inner spread grows: n=8 " + fmt(in8) + ", n=20 " + fmt(in20));
  o.require(out20 <= 1.2 * out8, "freud4 outer spread grows: n=8 " + fmt(out8) + ", n=20 " + fmt(out20));
  o.detail << "  hermite deviation inner " << fmt(hin) << ", outer " << fmt(hout) << '\n'
           << "  freud4 L0 " << fmt(fb.L0) << ", L " << fmt(fb.L) << ", inner spread "
           << fmt(fb.inner.spread()) << " (n=8 " << fmt(in8) << ", n=20 " << fmt(in20)
           << "), outer spread " << fmt(fb.outer.spread()) << '\n'
           << "  freud4 inner ratio at x=0 is 4(b_n^2+b_{n+1}^2) a_n^2/n -> 8/3 and at x=L a_n about"
              " (8/3)(1 + 2L^2); the spread exceeds 10 for every admissible L\n";
}

void lemma8(Outcome& o) {
  const std::vector<int> ns{5, 10, 20, 40};
  for (const auto& w : {make_weight(WeightSpec::hermite()), make_weight(WeightSpec::freud(4))}) {
    const auto c = operator_norm_curve(w, 3.0, ns);
    const double mx = *std::max_element(c.kernel_sup.begin(), c.kernel_sup.end());
    o.require(mx <= 1.5 * c.kernel_sup[0], w.id() + " max " + fmt(mx) + " vs n=5 " + fmt(c.kernel_sup[0]));
    o.detail << "  " << w.id() << ":";
    for (double v : c.kernel_sup) o.detail << ' ' << fmt(v);
    o.detail << '\n';
  }
}

void convergence(Outcome& o) {
  const std::vector<int> ns{5, 10, 20, 40};
  for (const auto& w : {make_weight(WeightSpec::hermite()), make_weight(WeightSpec::freud(4))}) {
    const std::pair<const char*, LogSampler> fs[] = {
        {"1/(1+x^2)", sampler_inverse_quadratic()},
        {"sin(x) e^{Q/4}", sampler_sine_root_weight(w)},
    };
    for (const auto& [name, f] : fs) {
      const auto c = convergence_experiment(w, 3.0, f, ns);
      const auto& e = c.sup_error;
      const bool last_min = *std::min_element(e.begin(), e.end()) == e.back();
      o.require(e.back() < e.front(), w.id() + " " + name + ": err(40) " + fmt(e.back()) +
                                          " not below err(5) " + fmt(e.front()));
      o.require(last_min, w.id() + " " + name + ": last value is not the minimum");
      o.detail << "  " << w.id() << ' ' << name << ":";
      for (double v : e) o.detail << ' ' << fmt(v);
      o.detail << '\n';
    }
  }
}

void uniqueness(Outcome& o) {
  double worst = 0.0;
  for (const auto& w : {make_weight(WeightSpec::hermite()), make_weight(WeightSpec::freud(4))}) {
    const auto t = recurrence_table(w, 8);
    for (int n = 3; n <= 8; ++n) {
      const auto p = uniqueness_probe(wn_weight(w, t, n), n, 10);
      worst = std::max(worst, p.max_distance);
      o.require(p.max_distance < 1e-8, w.id() + " n=" + std::to_string(n) + " spread " + fmt(p.max_distance));
      o.require(p.all_negative_definite, w.id() + " n=" + std::to_string(n) + " indefinite Hessian");
    }
  }
  o.detail << "  max multi-start distance " << fmt(worst) << '\n';
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"closed-form A_n reproduction", closed_form_reproduction},
      {"OP zeros are induced-weight Fekete points", zeros_are_induced_fekete},
      {"analytic Hermite Fekete sets", analytic_fekete},
      {"Freud string equation", string_equation},
      {"gradient and Hessian consistency", gradient_and_hessian},
      {"Hermite induced kernel bound", kernel_bound},
      {"two-regime A_n band", lemma7},
      {"bounded Grunwald operator norm", lemma8},
      {"Grunwald convergence on C_w~", convergence},
      {"multi-start Fekete uniqueness", uniqueness},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, body] : criteria) {
    ++index;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      body(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "  exception: " << e.what() << '\n';
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2d %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", index, name, secs);
    std::fputs(o.detail.str().c_str(), stdout);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d of %d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
