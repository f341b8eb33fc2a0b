#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracle_values.hpp"
#include "summa/minimax.hpp"

using namespace summa;

namespace {

// Tolerance against the LP oracle: the LP's own accuracy is about 1e-9.
constexpr double kOracleTol = 1e-8;

template <class Table>
void expect_matches_oracle(const char* spec, const Table& table) {
  const auto f = make_function(spec, Grid(oracle::kOracleGridSize));
  for (const auto& [k, value] : table) {
    const auto r = best_approximation(f, k);
    EXPECT_NEAR(r.value, value, kOracleTol * std::max(1.0, value)) << spec << " k=" << k;
    EXPECT_LE(r.lower_bound, value + kOracleTol) << spec << " k=" << k;
  }
}

}  // namespace

TEST(BestApproximation, MatchesLinearProgramOracle) {
  expect_matches_oracle("triangle", oracle::k_best_triangle);
  expect_matches_oracle("lip:alpha=0.5", oracle::k_best_lip_half);
  expect_matches_oracle("weierstrass", oracle::k_best_weierstrass);
  expect_matches_oracle("cos:m=5", oracle::k_best_cos5);
}

TEST(BestApproximation, DegreeZeroIsHalfTheRange) {
  const Grid g(1024);
  for (const char* spec : {"triangle", "lip:alpha=0.5", "weierstrass", "smooth_bump", "poly_trig:coeffs=1;2;0;0;-1"}) {
    const auto f = make_function(spec, g);
    const auto [lo, hi] = std::minmax_element(f.values.begin(), f.values.end());
    EXPECT_NEAR(best_approximation(f, 0).value, (*hi - *lo) / 2, 1e-12) << spec;
  }
}

TEST(BestApproximation, CosineWhenExtremaAreNodes) {
  // Exact value 1 for every k < m; the solver stops within its relative tolerance.
  const Grid g(1024);
  for (int m : {1, 2, 4, 8, 16}) {
    const auto f = make_function("cos:m=" + std::to_string(m), g);
    for (int k = 0; k < m; ++k) EXPECT_NEAR(best_approximation(f, k).value, 1.0, 1e-9) << m << " " << k;
    for (int k = m; k < m + 3; ++k) EXPECT_LT(best_approximation(f, k).value, 1e-12);
  }
}

TEST(BestApproximation, ErrorCurveEquioscillates) {
  const auto f = make_function("triangle", Grid(2048));
  for (int k : {2, 5, 11, 20}) {
    const auto r = best_approximation(f, k);
    ASSERT_TRUE(r.converged);
    EXPECT_GE(r.equioscillation_count, 2 * k + 2) << k;
    EXPECT_NEAR(sup_norm(f - r.witness.on(f.grid)), r.value, 1e-12);
    EXPECT_LE(r.value - r.lower_bound, 1e-8 * r.value);
  }
}

TEST(BestApproximation, MonotoneInDegree) {
  const Grid g(2048);
  for (const char* spec : {"triangle", "lip:alpha=0.5", "weierstrass", "smooth_bump"}) {
    const auto f = make_function(spec, g);
    double prev = best_approximation(f, 0).value;
    for (int k = 1; k <= 40; ++k) {
      const double e = best_approximation(f, k).value;
      EXPECT_LE(e, prev * (1 + 1e-9) + 1e-13) << spec << " k=" << k;
      prev = e;
    }
  }
}

TEST(BestApproximation, ScalesAndIgnoresLowDegreeShifts) {
  const Grid g(1024);
  const auto f = make_function("lip:alpha=0.5", g);
  const auto shift = make_function("poly_trig:coeffs=3;1;-2;0.5;0.25", g);
  for (int k : {2, 6}) {
    const double e = best_approximation(f, k).value;
    EXPECT_NEAR(best_approximation(-3.0 * f, k).value, 3 * e, 1e-10);
    std::vector<double> sum(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) sum[j] = f[j] + shift[j];
    EXPECT_NEAR(best_approximation(GridFunction{g, sum}, k).value, e, 1e-10);
  }
}

TEST(BestApproximation, BoundedByFourierTruncation) {
  const Grid g(1024);
  const auto f = make_function("weierstrass", g);
  const auto c = fourier_coefficients(f, 100);
  for (int k : {3, 9, 27, 81}) {
    EXPECT_LE(best_approximation(f, k).value, sup_norm(partial_sum(c, k, g) - f) + 1e-12);
  }
}

TEST(BestApproximation, RejectsDegreesTooCloseToTheGrid) {
  const auto f = make_function("triangle", Grid(64));
  EXPECT_THROW(best_approximation(f, 16), InputError);
  EXPECT_THROW(best_approximation(f, -1), InputError);
  EXPECT_NO_THROW(best_approximation(f, 15));
}

TEST(BestApproximation, IterationCapRaisesWithBracket) {
  const auto f = make_function("weierstrass", Grid(4096));
  MinimaxOptions opts;
  opts.max_iterations = 1;
  try {
    best_approximation(f, 40, opts);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_LE(e.lower_bound, e.upper_bound);
    EXPECT_GT(e.upper_bound, 0.0);
  }
}

TEST(Jackson, RatioStaysModerate) {
  const auto f = make_function("triangle", Grid(4096));
  for (int k : {3, 7, 15, 31, 63}) {
    const double r = jackson_ratio(f, k);
    EXPECT_GT(r, 0.05);
    EXPECT_LT(r, 1.0);
  }
  EXPECT_EQ(jackson_ratio(make_function("const:v=2", Grid(256)), 3), 0.0);
}
