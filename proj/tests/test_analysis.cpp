#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fflab/analysis.hpp"
#include "fflab/anfun.hpp"
#include "fflab/error.hpp"
#include "fflab/fekete.hpp"

using namespace fflab;

namespace {

NodeSet ns(std::vector<double> x) { return NodeSet::from_user(std::move(x)); }

struct Induced {
  NodeSet nodes;
  Weight wn;
};

Induced hermite_induced(int n) {
  const auto her = make_weight(WeightSpec::hermite());
  const auto t = recurrence_table(her, n);
  return {zeros(t, n), wn_weight(her, t, n)};
}

}  // namespace

TEST(Grid, ContainsNodesAndStaysInDomain) {
  const auto jac = make_weight(WeightSpec::jacobi(1, 1));
  const auto z = zeros(recurrence_table(jac, 6), 6).nodes;
  const auto g = build_grid({}, jac, z, 1.0);
  EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
  EXPECT_EQ(std::adjacent_find(g.begin(), g.end()), g.end());
  for (double x : g) EXPECT_TRUE(jac.contains(x));
  for (double x : z) EXPECT_TRUE(std::binary_search(g.begin(), g.end(), x));

  const auto her = make_weight(WeightSpec::hermite());
  const auto hz = zeros(recurrence_table(her, 10), 10).nodes;
  const auto hg = build_grid({}, her, hz, auto_radius(her, hz, 1.5));
  EXPECT_LE(hg.front(), -(1.0 - 1e-12) * 2.0 * 1.5 * mrs_number(her, 10));
  EXPECT_GE(hg.back(), (1.0 - 1e-12) * 2.0 * 1.5 * mrs_number(her, 10));
  GridSpec d = GridSpec{}.doubled();
  EXPECT_EQ(d.count, 8001);
  EXPECT_EQ(d.tail, 80);
}

TEST(Normality, Examples) {
  const auto [z, wn] = hermite_induced(5);
  const auto r = normality_check(z, wn);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.kernel_sup, 1.0 + 1e-9);
  EXPECT_TRUE(r.node_bound);

  const auto her = make_weight(WeightSpec::hermite());
  const auto bad = normality_check(ns({0.0, 3.0}), her);
  EXPECT_FALSE(bad.pass);
  EXPECT_GT(bad.kernel_sup, 1.0 + 1e-9);

  const auto single = normality_check(ns({0.0}), her);
  EXPECT_TRUE(single.pass);
  EXPECT_NEAR(single.kernel_sup, 1.0, 1e-15);
}

TEST(Normality, NodeBoundUsesMrsNumber) {
  const auto her = make_weight(WeightSpec::hermite());
  const auto far = normality_check(ns({-5.0, 5.0}), her, 1.0);
  ASSERT_TRUE(far.a_n.has_value());
  EXPECT_NEAR(*far.a_n, 2.0, 1e-10);
  EXPECT_FALSE(far.node_bound);
  EXPECT_FALSE(far.pass);
  const auto jac = make_weight(WeightSpec::jacobi(1, 1));
  const auto r = normality_check(ns({-0.5, 0.5}), jac);
  EXPECT_FALSE(r.a_n.has_value());
  EXPECT_TRUE(r.node_bound);
}

TEST(Normality, PassImpliesVanishingFejerConstants) {
  const auto her = make_weight(WeightSpec::hermite());
  const auto t = recurrence_table(her, 12);
  std::vector<std::pair<NodeSet, Weight>> cases;
  for (int n = 2; n <= 12; ++n) cases.emplace_back(zeros(t, n), wn_weight(her, t, n));
  for (int n = 2; n <= 6; ++n) cases.emplace_back(zeros(t, n), her);
  cases.emplace_back(ns({0.0, 3.0}), her);
  cases.emplace_back(ns({-1.0, 0.2, 1.0}), her);
  int passes = 0;
  for (const auto& [nodes, w] : cases) {
    const auto r = normality_check(nodes, w);
    if (r.pass) {
      ++passes;
      EXPECT_LT(fejer_constants(nodes, w).max_abs_c, 1e-8);
    }
  }
  EXPECT_GE(passes, 11);
}

TEST(Normality, HypothesisAndVanishingConstantsGiveNormality) {
  ASSERT_TRUE(evenq_hypothesis_check(WeightSpec::hermite()));
  for (int n = 2; n <= 12; ++n) {
    const auto [z, wn] = hermite_induced(n);
    ASSERT_LT(fejer_constants(z, wn).max_abs_c, 1e-10);
    EXPECT_TRUE(normality_check(z, wn).pass) << n;
  }
}

TEST(Stability, Examples) {
  const auto [z, wn] = hermite_induced(6);
  const auto r = stability_check(z, wn, 100);
  EXPECT_TRUE(r.stable);
  EXPECT_EQ(r.trials, 100);
  EXPECT_EQ(r.degree_sum, 60);
  EXPECT_EQ(r.economical_bound, 60);
  EXPECT_TRUE(r.most_economical);
  EXPECT_GE(r.min_output, 0.0);

  const auto her = make_weight(WeightSpec::hermite());
  EXPECT_FALSE(stability_check(ns({0.0, 3.0}), her).stable);
}

TEST(Stability, AllOnesTrialMatchesNormalitySup) {
  const auto [z, wn] = hermite_induced(6);
  const auto s = stability_check(z, wn, 1);
  const auto n = normality_check(z, wn);
  EXPECT_NEAR(s.max_ratio, n.kernel_sup, 1e-15);
}

TEST(Stability, AgreesWithNormalitySupVerdict) {
  const auto her = make_weight(WeightSpec::hermite());
  const auto fr = make_weight(WeightSpec::freud(4));
  std::vector<std::pair<NodeSet, Weight>> cases;
  for (int n : {3, 6, 9}) {
    const auto [z, wn] = hermite_induced(n);
    cases.emplace_back(z, wn);
    cases.emplace_back(z, her);
    const auto t = recurrence_table(fr, n);
    cases.emplace_back(zeros(t, n), wn_weight(fr, t, n));
    cases.emplace_back(zeros(t, n), fr);
  }
  cases.emplace_back(ns({0.0, 3.0}), her);
  for (const auto& [nodes, w] : cases) {
    const bool stable = stability_check(nodes, w, 20).stable;
    const bool sup_ok = normality_check(nodes, w).kernel_sup <= 1.0 + 1e-9;
    EXPECT_EQ(stable, sup_ok) << w.id() << " n=" << nodes.n();
  }
}

TEST(Equivalence, HermiteAllPrimedTrue) {
  const auto v = equivalence_suite(make_weight(WeightSpec::hermite()), 5);
  EXPECT_TRUE(v.primed_all());
  EXPECT_TRUE(v.hypothesis);
  EXPECT_TRUE(v.A.value);
  EXPECT_TRUE(v.E.value);
  EXPECT_EQ(v.nodes.n(), 5);
  EXPECT_EQ(v.nodes.provenance, Provenance::op_zeros);
}

TEST(Equivalence, JacobiPrimedRootProperties) {
  const auto v = equivalence_suite(make_weight(WeightSpec::jacobi(1, 1)), 4);
  EXPECT_TRUE(v.A_prime.value);
  EXPECT_LT(v.A_prime.residual, 1e-8);
  EXPECT_TRUE(v.B_prime.value);
  EXPECT_LT(v.B_prime.residual, 1e-8);
  EXPECT_TRUE(v.C.value);
  EXPECT_FALSE(v.hypothesis);
}

TEST(Equivalence, Freud4ResidualFromClosedForm) {
  const auto v = equivalence_suite(make_weight(WeightSpec::freud(4)), 6);
  EXPECT_LT(v.A_prime.residual, 1e-7);
  EXPECT_TRUE(v.A_prime.value);
  EXPECT_TRUE(v.primed_all());
}

TEST(Equivalence, UnprimedPropertiesAgreeForHermite) {
  // The unprimed chain runs on the zeros under w itself, where C_{k,w} != 0.
  const auto v = equivalence_suite(make_weight(WeightSpec::hermite()), 4);
  EXPECT_EQ(v.A.value, v.B.value);
  EXPECT_EQ(v.A.value, v.D.value);
  EXPECT_EQ(v.A.value, v.E.value);
}

TEST(Equivalence, RejectsBadDegree) {
  EXPECT_THROW(equivalence_suite(make_weight(WeightSpec::hermite()), 0), InvalidArgument);
}

TEST(EvenQHypothesis, Examples) {
  EXPECT_TRUE(evenq_hypothesis_check(WeightSpec::hermite()));
  EXPECT_TRUE(evenq_hypothesis_check(WeightSpec::even_poly({0.0, 1.0})));
  EXPECT_TRUE(evenq_hypothesis_check(WeightSpec::even_poly({0.0, 1.0, 1.0})));
  EXPECT_TRUE(evenq_hypothesis_check(WeightSpec::freud(4)));
  EXPECT_FALSE(evenq_hypothesis_check(WeightSpec::even_poly({0.0, 1.0, -1.0})));
  EXPECT_FALSE(evenq_hypothesis_check(WeightSpec::freud(3)));
  EXPECT_FALSE(evenq_hypothesis_check(WeightSpec::laguerre(0.0)));
  EXPECT_FALSE(evenq_hypothesis_check(WeightSpec::jacobi(1, 1)));
}

TEST(OperatorNorm, BoundedAndAtLeastOne) {
  const std::vector<int> ns_list{5, 10, 20, 40};
  for (const auto& w : {make_weight(WeightSpec::hermite()), make_weight(WeightSpec::freud(4))}) {
    const auto c = operator_norm_curve(w, 3.0, ns_list);
    ASSERT_EQ(c.kernel_sup.size(), ns_list.size());
    for (double v : c.kernel_sup) {
      EXPECT_TRUE(std::isfinite(v));
      EXPECT_GE(v, 1.0);
    }
    for (double e : c.sup_error) EXPECT_TRUE(std::isnan(e));
    EXPECT_LE(*std::max_element(c.kernel_sup.begin(), c.kernel_sup.end()), 1.5 * c.kernel_sup[0])
        << w.id();
  }
}

TEST(Convergence, Freud4CurvesDecrease) {
  const auto w = make_weight(WeightSpec::freud(4));
  const std::vector<int> n_list{5, 10, 20, 40};
  for (const auto& f : {sampler_inverse_quadratic(), sampler_sine_root_weight(w)}) {
    const auto c = convergence_experiment(w, 3.0, f, n_list);
    for (double e : c.sup_error) {
      EXPECT_TRUE(std::isfinite(e));
      EXPECT_GT(e, 0.0);
    }
    EXPECT_LT(c.sup_error.back(), c.sup_error.front());
    EXPECT_EQ(*std::min_element(c.sup_error.begin(), c.sup_error.end()), c.sup_error.back());
  }
}

TEST(Convergence, HermiteSineDecreases) {
  const auto w = make_weight(WeightSpec::hermite());
  const auto c = convergence_experiment(w, 3.0, sampler_sine_root_weight(w), {5, 10, 20, 40});
  EXPECT_LT(c.sup_error.back(), c.sup_error.front());
}

TEST(Convergence, HermiteInverseQuadraticIsSlow) {
  // Even n peak at the origin and decay slowly; at n = 40 the error is still
  // above the n = 5 value.
  const auto w = make_weight(WeightSpec::hermite());
  const auto c = convergence_experiment(w, 3.0, sampler_inverse_quadratic(), {5, 10, 20, 40});
  EXPECT_NEAR(c.sup_error[0], 0.1622587, 1e-4);
  EXPECT_NEAR(c.sup_error[3], 0.1728782, 1e-4);
  EXPECT_LT(c.sup_error[3], c.sup_error[2]);
  EXPECT_LT(c.sup_error[2], c.sup_error[1]);
}

TEST(Convergence, ReciprocalWeightFailsMembershipScreen) {
  const auto w = make_weight(WeightSpec::hermite());
  EXPECT_THROW(convergence_experiment(w, 3.0, sampler_reciprocal(w), {5, 10}), InvalidArgument);
}

TEST(Convergence, PolynomialAliasingIsReported) {
  const auto w = make_weight(WeightSpec::hermite());
  const auto c = convergence_experiment(w, 3.0, sampler_polynomial({1.0, 0.0, -1.0, 0.0, 0.5}),
                                        {5, 10});
  for (double e : c.sup_error) {
    EXPECT_TRUE(std::isfinite(e));
    EXPECT_GT(e, 0.0);
  }
}

TEST(Grid, DoublingChangesSupLittle) {
  for (int n : {2, 7, 12}) {
    const auto [z, wn] = hermite_induced(n);
    const GridSpec g;
    const double r = auto_radius(wn, z.nodes, 1.5);
    const double a = kernel_sup(z, wn, build_grid(g, wn, z.nodes, r)).value;
    const double b = kernel_sup(z, wn, build_grid(g.doubled(), wn, z.nodes, r)).value;
    EXPECT_LT(std::abs(a - b) / b, 1e-3);
  }
  const auto fr = make_weight(WeightSpec::freud(4));
  const auto c1 = operator_norm_curve(fr, 3.0, {10, 20});
  const auto c2 = operator_norm_curve(fr, 3.0, {10, 20}, GridSpec{}.doubled());
  for (int i = 0; i < 2; ++i) EXPECT_LT(std::abs(c1.kernel_sup[i] - c2.kernel_sup[i]) / c2.kernel_sup[i], 1e-3);
}
