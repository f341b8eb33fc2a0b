#include <gtest/gtest.h>

#include <cmath>

#include "summa/bounds_lab.hpp"

using namespace summa;

namespace {

constexpr std::size_t kGrid = 1024;

CheckOptions small_grid(bool force = false) {
  CheckOptions o;
  o.grid_size = kGrid;
  o.force = force;
  return o;
}

}  // namespace

TEST(NList, Forms) {
  EXPECT_EQ(parse_n_list("8..256"), (std::vector<std::size_t>{8, 16, 32, 64, 128, 256}));
  EXPECT_EQ(parse_n_list("8..100"), (std::vector<std::size_t>{8, 16, 32, 64}));
  EXPECT_EQ(parse_n_list("8,32,128"), (std::vector<std::size_t>{8, 32, 128}));
  EXPECT_EQ(parse_n_list(" 3 5 "), (std::vector<std::size_t>{3, 5}));
  EXPECT_THROW(parse_n_list("0..8"), InputError);
  EXPECT_THROW(parse_n_list("16..8"), InputError);
  EXPECT_THROW(parse_n_list(""), InputError);
  EXPECT_THROW(parse_n_list("8,x"), InputError);
}

TEST(Inequality, NamesRoundTrip) {
  for (const auto& [id, name] : kInequalityNames) EXPECT_EQ(inequality_from_string(name), id);
  EXPECT_THROW(inequality_from_string("thm4"), InputError);
}

TEST(Summary, SkipsDegenerateEntriesAndFitsSlope) {
  BoundCheckReport r;
  for (std::size_t n : {8u, 16u, 32u, 64u}) r.per_n.push_back({n, 1.0, 2.0, 0.5, false});
  r.per_n.push_back({128, 1.0, 0.0, std::numeric_limits<double>::infinity(), true});
  summarize(r);
  EXPECT_TRUE(r.bounded);
  EXPECT_EQ(r.ratio_max, 0.5);
  EXPECT_NEAR(r.ratio_trend, 0.0, 1e-15);
  EXPECT_EQ(r.non_degenerate_count(), 4u);

  BoundCheckReport g;
  for (std::size_t n : {8u, 16u, 32u, 64u}) {
    const double ratio = 0.5 * std::log(static_cast<double>(n));
    g.per_n.push_back({n, ratio, 1.0, ratio, false});
  }
  summarize(g);
  EXPECT_NEAR(g.ratio_trend, 0.5, 1e-12);
  EXPECT_FALSE(g.bounded);

  BoundCheckReport spread;
  for (double ratio : {0.1, 0.1, 0.1, 5.0}) spread.per_n.push_back({16, ratio, 1.0, ratio, false});
  for (std::size_t i = 0; i < 4; ++i) spread.per_n[i].n = std::size_t{8} << i;
  summarize(spread);
  EXPECT_FALSE(spread.bounded);  // max > 10 × median
}

TEST(Entry, DegenerateWhenRightSideVanishes) {
  const auto both = detail::make_entry(8, 1e-14, 1e-14, 1e-11, 1e-11);
  EXPECT_TRUE(both.degenerate);
  EXPECT_EQ(both.ratio, 0.0);
  const auto lhs_only = detail::make_entry(8, 0.5, 0.0, 1e-11, 1e-11);
  EXPECT_TRUE(lhs_only.degenerate);
  EXPECT_TRUE(std::isinf(lhs_only.ratio));
  const auto normal = detail::make_entry(8, 0.5, 0.25, 1e-11, 1e-11);
  EXPECT_FALSE(normal.degenerate);
  EXPECT_EQ(normal.ratio, 2.0);
}

TEST(StrongMeanBound, CesaroTriangleBoundedAndRegroupingHolds) {
  BoundsLab lab;
  const auto r = inequality_check(lab, InequalityId::thm3_eq6, SummabilityMatrix::parse("cesaro"),
                                  FunctionSpec::parse("triangle"), 1.0, 2.0, parse_n_list("8..128"), small_grid());
  EXPECT_TRUE(r.bounded) << r.ratio_trend;
  EXPECT_FALSE(r.forced);
  ASSERT_EQ(r.per_n.size(), 5u);
  for (const auto& e : r.per_n) {
    EXPECT_FALSE(e.degenerate);
    EXPECT_TRUE(std::isfinite(e.ratio));
    EXPECT_GT(e.lhs, 0.0);
  }
  ASSERT_TRUE(r.regrouping_excess.has_value());
  EXPECT_LE(*r.regrouping_excess, 1e-10);
}

TEST(StrongMeanBound, RightSideUsesFlooredBlockIndex) {
  BoundsLab lab;
  const auto fspec = FunctionSpec::parse("lip:alpha=0.5");
  const auto m = SummabilityMatrix::parse("cesaro");
  const auto r = inequality_check(lab, InequalityId::thm3_eq6, m, fspec, 2.0, 2.5, {12}, small_grid());
  auto& fl = lab.function(fspec, kGrid);
  double rhs = 0.0;
  for (int k = 0; k <= 12; ++k) rhs += std::pow(fl.best(k / 4), 2) / 13;  // 2^[2.5] = 4
  EXPECT_NEAR(r.per_n[0].rhs, rhs, 1e-14);
  EXPECT_NEAR(r.per_n[0].lhs, strong_mean(m.row(12), 2.0, fl.residuals()).sup, 1e-14);
}

TEST(Regrouping, CosineOnlyLowTermsInRightSide) {
  BoundsLab lab;
  const auto r = inequality_check(lab, InequalityId::remark2, SummabilityMatrix::parse("cesaro"),
                                  FunctionSpec::parse("cos:m=4"), 2.0, 2.0, {8, 16, 32}, small_grid());
  for (const auto& e : r.per_n) {
    EXPECT_NEAR(e.rhs, 4.0 / (e.n + 1), 1e-9) << e.n;  // E_k = 1 for k < 4, 0 after
    EXPECT_TRUE(std::isfinite(e.ratio));
  }
}

TEST(Hypotheses, IdentityRefusedForThm3UnlessForced) {
  BoundsLab lab;
  const auto id = SummabilityMatrix::parse("identity");
  const auto f = FunctionSpec::parse("triangle");
  EXPECT_THROW(inequality_check(lab, InequalityId::thm3_eq6, id, f, 1.0, 2.0, {8, 16, 32}, small_grid()),
               HypothesisError);
  const auto r = inequality_check(lab, InequalityId::thm3_eq6, id, f, 1.0, 2.0, {8, 16, 32}, small_grid(true));
  EXPECT_TRUE(r.forced);
  EXPECT_FALSE(r.notes.empty());
  auto& fl = lab.function(f, kGrid);
  for (const auto& e : r.per_n) {
    EXPECT_NEAR(e.rhs, fl.best(static_cast<int>(e.n / 4)), 1e-14);
    const auto res = fl.residuals().at(static_cast<int>(e.n));
    EXPECT_NEAR(e.lhs, std::abs(res[detail::argmax_abs({res.begin(), res.end()})]), 1e-14);
  }
  // The unblocked E_k form (thm2) accepts the identity: its rows are NMCS.
  EXPECT_NO_THROW(inequality_check(lab, InequalityId::thm2, id, f, 1.0, 2.0, {8, 16, 32}, small_grid()));
  EXPECT_THROW(inequality_check(lab, InequalityId::remark2, SummabilityMatrix::parse("gm5_synthetic"), f, 1.0, 2.0,
                                {8, 16}, small_grid()),
               HypothesisError);
}

TEST(ModulusBound, RightSideIsWeightedModulus) {
  BoundsLab lab;
  const auto m = SummabilityMatrix::parse("cesaro");
  const auto r = inequality_check(lab, InequalityId::thm1, m, FunctionSpec::parse("triangle"), 3.0, 2.0, {16}, small_grid());
  const Grid g(kGrid);
  double rhs = 0.0;
  for (int k = 0; k <= 16; ++k) rhs += snap_delta(g, 1.0 / (k + 1)).delta_used / 17;  // ω(δ) = δ for |x|
  EXPECT_NEAR(r.per_n[0].rhs, rhs, 1e-12);
  EXPECT_EQ(r.p, 1.0);  // the transform form has no p
}

TEST(PhiBound, PowerPhiReducesToBlockedForm) {
  BoundsLab lab;
  const auto m = SummabilityMatrix::parse("riesz:s=1");
  const auto f = FunctionSpec::parse("weierstrass");
  auto opts = small_grid();
  opts.phi = PhiSpec::power(1.0);
  const auto a = inequality_check(lab, InequalityId::remark5_ek, m, f, 1.0, 2.0, {16, 32}, opts);
  const auto b = inequality_check(lab, InequalityId::thm3_eq6, m, f, 1.0, 2.0, {16, 32}, opts);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_NEAR(a.per_n[i].lhs, b.per_n[i].lhs, 1e-12);
    EXPECT_NEAR(a.per_n[i].rhs, b.per_n[i].rhs, 1e-12);
  }
  opts.phi = PhiSpec::parse("power:2;A=1");
  EXPECT_THROW(inequality_check(lab, InequalityId::remark5_omega, m, f, 1.0, 2.0, {16}, opts), InputError);
}

TEST(RightSide, UpperBoundsForEOnlyRaiseIt) {
  // Replacing E_j by ‖f − σ_j f‖ (Fejér) can only raise the right side.
  BoundsLab lab;
  const auto fspec = FunctionSpec::parse("lip:alpha=0.5");
  const auto m = SummabilityMatrix::parse("norlund");
  const auto r = inequality_check(lab, InequalityId::thm3_eq6, m, fspec, 1.0, 2.0, parse_n_list("8..64"), small_grid());
  auto& fl = lab.function(fspec, kGrid);
  const auto& coeffs = fl.residuals().coefficients();
  const auto fejer_gap = [&](int j) {
    auto t = coeffs.truncated(j);
    for (int q = 1; q <= j; ++q) {
      t.a[q] *= 1.0 - static_cast<double>(q) / (j + 1);
      t.b[q] *= 1.0 - static_cast<double>(q) / (j + 1);
    }
    return sup_norm(fl.function() - t.on(fl.grid()));
  };
  BoundCheckReport upper = r;
  for (auto& e : upper.per_n) {
    const auto row = m.row(e.n);
    double rhs = 0.0;
    for (std::size_t k = 0; k < row.size(); ++k) rhs += row[k] * fejer_gap(static_cast<int>(k / 4));
    EXPECT_GE(rhs, e.rhs * (1 - 1e-12));
    e.rhs = rhs;
    e.ratio = e.lhs / rhs;
  }
  summarize(upper);
  EXPECT_TRUE(r.bounded);
  EXPECT_TRUE(upper.bounded);
}

TEST(WindowedMean, TrigPolynomialIsDegenerate) {
  BoundsLab lab;
  const auto r = lemma_check(lab, FunctionSpec::parse("poly_trig:coeffs=1;1;0;0;1;1;0"), 1.0, LambdaRule::parse("half"),
                             {16}, 4.0, small_grid());
  ASSERT_EQ(r.per_n.size(), 1u);
  EXPECT_TRUE(r.per_n[0].degenerate);
  EXPECT_EQ(r.per_n[0].lhs, 0.0);
  EXPECT_TRUE(r.bounded);
}

TEST(WindowedMean, RuleViolatingBigORefusedUnlessForced) {
  BoundsLab lab;
  const auto f = FunctionSpec::parse("triangle");
  EXPECT_THROW(lemma_check(lab, f, 1.0, LambdaRule::parse("const:2"), {16, 32}, 4.0, small_grid()), HypothesisError);
  const auto r = lemma_check(lab, f, 1.0, LambdaRule::parse("const:2"), {16, 32}, 4.0, small_grid(true));
  EXPECT_TRUE(r.forced);
  EXPECT_EQ(r.per_n.size(), 2u);
}

TEST(WindowedMean, LambdaRules) {
  EXPECT_EQ(LambdaRule::parse("half")(9), 5);
  EXPECT_EQ(LambdaRule::parse("fraction:0.25")(16), 4);
  EXPECT_EQ(LambdaRule::parse("const:3")(2), 2);
  EXPECT_THROW(LambdaRule::parse("fraction:2"), InputError);
  EXPECT_THROW(LambdaRule::parse("tenth"), InputError);
}

TEST(Totik, ConstantIsDegenerateAndTriangleBounded) {
  BoundsLab lab;
  const auto c = totik_check(lab, FunctionSpec::parse("const:v=2"), PhiSpec::log1p(), {8, 16}, small_grid());
  for (const auto& e : c.per_n) EXPECT_TRUE(e.degenerate);
  const auto t = totik_check(lab, FunctionSpec::parse("triangle"), PhiSpec::power(1.0), parse_n_list("8..128"), small_grid());
  EXPECT_TRUE(t.bounded) << t.ratio_trend;
  EXPECT_EQ(t.matrix, "none");
}

TEST(Counterexample, WitnessAndGrowth) {
  BoundsLab lab;
  const Grid g(1024);
  const auto w = dirichlet_sign_witness(8, g);
  EXPECT_EQ(w.degree(), 32);
  EXPECT_LE(sup_norm(w.on(g)), 1.0 + 1e-12);

  const auto rep = remark4_counterexample(lab, {8, 16, 32, 64}, 1024);
  ASSERT_EQ(rep.entries.size(), 4u);
  EXPECT_TRUE(rep.increasing);
  EXPECT_GT(rep.slope, 0.1);
  EXPECT_GT(rep.lebesgue_correlation, 0.9);
  EXPECT_TRUE(rep.classical_bound_ok);
  for (const auto& e : rep.entries) {
    EXPECT_LE(e.best, e.witness_sup + 1e-12);  // the zero polynomial certifies E_n <= ‖f_n‖
    EXPECT_GE(e.grid_size, 16 * e.n);
  }
}

TEST(Config, ParsesGroupsAndRejectsNonsense) {
  const auto groups = parse_experiment_config(
      "# comment\n[a]\ninequality = thm3-eq6 remark2\nmatrix = cesaro norlund\nfunction = triangle\n"
      "p = 1 2\nn_list = 8,16\ngrid_size = 512\n[b]\ninequality = totik\nphi = log1p\nforce = true\n");
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(groups[0].name, "a");
  EXPECT_EQ(groups[0].inequalities.size(), 2u);
  EXPECT_EQ(groups[0].p, (std::vector<double>{1, 2}));
  EXPECT_EQ(groups[0].grid_size, 512u);
  EXPECT_TRUE(groups[1].force);
  EXPECT_EQ(groups[1].n_list, "8..256");

  EXPECT_TRUE(parse_experiment_config("").empty());
  EXPECT_TRUE(parse_experiment_config("# nothing\n\n").empty());
  EXPECT_THROW(parse_experiment_config("matrix = cesaro\n"), InputError);
  EXPECT_THROW(parse_experiment_config("[a]\ncolour = red\n"), InputError);
  EXPECT_THROW(parse_experiment_config("[a]\ngrid_size = 1000\n"), InputError);
  EXPECT_THROW(parse_experiment_config("[a\n"), InputError);
  EXPECT_THROW(parse_experiment_config("[a]\nn_list = 0..4\n"), InputError);
}

TEST(Suite, CountsCellsAndIsolatesFailures) {
  BoundsLab lab;
  EXPECT_TRUE(run_experiment_suite(lab, std::vector<ExperimentGroup>{}).empty());

  const auto groups = parse_experiment_config(
      "[cells]\ninequality = thm3-eq6\nmatrix = cesaro abel riesz:s=1\nfunction = triangle cos:m=4\n"
      "p = 1 2\nn_list = 8..32\ngrid_size = 512\n"
      "[lemma]\ninequality = lemma\nlambda = half fraction:0.5\nfunction = triangle\np = 1\nn_list = 8..32\n"
      "grid_size = 512\n");
  const auto reports = run_experiment_suite(lab, groups);
  ASSERT_EQ(reports.size(), 3u * 2 * 2 + 2);
  std::size_t failed = 0;
  for (const auto& r : reports) {
    if (!r.error.empty()) {
      ++failed;
      EXPECT_EQ(r.matrix, "abel");
      EXPECT_TRUE(r.per_n.empty());
    } else {
      EXPECT_EQ(r.per_n.size(), 3u);
    }
  }
  EXPECT_EQ(failed, 4u);
  EXPECT_EQ(reports.back().inequality_id, InequalityId::lemma);

  const auto again = run_experiment_suite(lab, groups);
  for (std::size_t i = 0; i < reports.size(); ++i) EXPECT_EQ(reports[i].fixture, again[i].fixture);
}

TEST(Suite, ShippedDefaultConfigHas48Cells) {
  const auto groups = parse_experiment_config(R"(
[gm5-matrices]
inequality = thm3-eq6
matrix = cesaro riesz:s=1 norlund gm5_synthetic
function = triangle lip:alpha=0.5 weierstrass cos:m=4
p = 0.5 1 2
c = 2
n_list = 8..256
grid_size = 4096
)");
  ASSERT_EQ(groups.size(), 1u);
  const auto& g = groups[0];
  EXPECT_EQ(g.inequalities.size() * g.matrices.size() * g.functions.size() * g.p.size() * g.c.size(), 48u);
}
