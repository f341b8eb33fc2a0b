#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "direct_oracles.hpp"
#include "summa/periodic_function.hpp"

using namespace summa;

TEST(Grid, RejectsSizesThatAreNotPowersOfTwo) {
  EXPECT_THROW(Grid(8), InputError);
  EXPECT_THROW(Grid(100), InputError);
  EXPECT_NO_THROW(Grid(16));
  const Grid g(4096);
  EXPECT_DOUBLE_EQ(g.node(0), -std::numbers::pi);
  EXPECT_NEAR(g.node(2048), 0.0, 1e-15);
}

TEST(FunctionSpec, ParsesDefaultsAndRoundTrips) {
  const auto w = FunctionSpec::parse("weierstrass");
  EXPECT_EQ(w.param("a"), 0.5);
  EXPECT_EQ(w.param("b"), 3.0);
  EXPECT_EQ(w.param("terms"), 30.0);
  for (const char* text : {"triangle", "cos:m=4", "lip:alpha=0.5", "poly_trig:coeffs=1;0.5;-2;0;3", "smooth_bump:width=2"}) {
    const auto spec = FunctionSpec::parse(text);
    EXPECT_EQ(FunctionSpec::parse(spec.to_string()).to_string(), spec.to_string()) << text;
  }
}

TEST(FunctionSpec, RejectsBadParameters) {
  EXPECT_THROW(FunctionSpec::parse("nope"), InputError);
  EXPECT_THROW(FunctionSpec::parse("cos:m=1.5"), InputError);
  EXPECT_THROW(FunctionSpec::parse("cos:k=2"), InputError);
  EXPECT_THROW(FunctionSpec::parse("weierstrass:b=4"), InputError);
  EXPECT_THROW(FunctionSpec::parse("lip:alpha=1.5"), InputError);
  EXPECT_THROW(FunctionSpec::parse("lip:alpha=0"), InputError);
}

TEST(FunctionSpec, TrigDegree) {
  EXPECT_EQ(FunctionSpec::parse("cos:m=7").trig_degree(), 7);
  EXPECT_EQ(FunctionSpec::parse("const:v=3").trig_degree(), 0);
  EXPECT_EQ(FunctionSpec::parse("poly_trig:coeffs=1;0;0;2;1").trig_degree(), 2);
  EXPECT_FALSE(FunctionSpec::parse("triangle").trig_degree().has_value());
}

TEST(MakeFunction, MatchesDirectFormulas) {
  const Grid g(1024);
  const auto tri = make_function("triangle", g);
  const auto c7 = make_function("cos:m=7", g);
  const auto s3 = make_function("sin:m=3", g);
  const auto poly = make_function("poly_trig:coeffs=1;0.5;-2;0;3", g);
  const auto lip = make_function("lip:alpha=0.5", g);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = oracle_direct::node(j, g.size());
    EXPECT_NEAR(tri[j], std::abs(x), 1e-15);
    EXPECT_NEAR(c7[j], std::cos(7 * x), 1e-13);
    EXPECT_NEAR(s3[j], std::sin(3 * x), 1e-13);
    EXPECT_NEAR(poly[j], 1 + 0.5 * std::cos(x) - 2 * std::sin(x) + 3 * std::sin(2 * x), 1e-13);
    EXPECT_NEAR(lip[j], std::sqrt(std::abs(std::sin(x / 2))), 1e-15);
  }
}

TEST(MakeFunction, WeierstrassMatchesDirectSum) {
  const Grid g(512);
  const auto w = make_function("weierstrass:a=0.5,b=3,terms=12", g);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = oracle_direct::node(j, g.size());
    double s = 0.0;
    for (int k = 0; k < 12; ++k) s += std::pow(0.5, k) * std::cos(std::pow(3.0, k) * x);
    EXPECT_NEAR(w[j], s, 1e-9);
  }
}

TEST(SupNorm, OfCosineIsOne) {
  EXPECT_DOUBLE_EQ(sup_norm(make_function("cos:m=3", Grid(256))), 1.0);
}

TEST(Modulus, SnapsDeltaDownToGridSteps) {
  const Grid g(4096);
  const auto snap = snap_delta(g, 0.5);
  EXPECT_EQ(snap.shift, 325u);
  EXPECT_NEAR(snap.delta_used, 325 * g.step(), 1e-15);
  EXPECT_GE(snap.snap_amount, 0.0);
  EXPECT_LT(snap.snap_amount, g.step());
  EXPECT_THROW(snap_delta(g, -0.1), InputError);
  EXPECT_THROW(snap_delta(g, 7.0), InputError);
}

TEST(Modulus, TriangleEqualsSnappedDelta) {
  const Grid g(4096);
  const auto tri = make_function("triangle", g);
  EXPECT_NEAR(modulus_of_continuity(tri, 0.5), 0.5, g.step());
  EXPECT_NEAR(modulus_of_continuity(tri, 0.5), snap_delta(g, 0.5).delta_used, 1e-12);
  EXPECT_EQ(modulus_of_continuity(tri, 0.0), 0.0);
}

TEST(Modulus, MatchesBruteForceAndProfile) {
  const Grid g(256);
  for (const char* spec : {"lip:alpha=0.5", "weierstrass", "smooth_bump", "cos:m=5"}) {
    const auto f = make_function(spec, g);
    const ModulusProfile profile(f);
    for (std::size_t s : {1u, 3u, 17u, 64u, 128u}) {
      const double delta = s * g.step();
      const double direct = oracle_direct::modulus(f.values, s);
      EXPECT_NEAR(modulus_of_continuity(f, delta), direct, 1e-14) << spec << " s=" << s;
      EXPECT_NEAR(profile(delta), direct, 1e-14) << spec << " s=" << s;
    }
  }
}

TEST(Modulus, IsMonotoneAndSubadditive) {
  const Grid g(1024);
  for (const char* spec : {"triangle", "lip:alpha=0.5", "weierstrass"}) {
    const ModulusProfile w(make_function(spec, g));
    for (std::size_t s = 1; s < 256; ++s) {
      EXPECT_LE(w.at_shift(s), w.at_shift(s + 1) + 1e-15);
      EXPECT_LE(w.at_shift(2 * s), 2 * w.at_shift(s) + 1e-12);
    }
  }
}

TEST(Modulus, HolderFunctionScalesLikeDeltaToAlpha) {
  // |sin(x/2)|^α: the worst shift starts at the zero, so ω(δ) = sin(δ/2)^α.
  const Grid g(4096);
  const auto f = make_function("lip:alpha=0.5", g);
  for (std::size_t s : {8u, 64u, 512u}) {
    const double d = s * g.step();
    EXPECT_NEAR(modulus_of_continuity(f, d), std::pow(std::sin(d / 2), 0.5), 1e-12);
  }
}
