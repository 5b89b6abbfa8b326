#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "conftorus/numerics/profiles.hpp"
#include "conftorus/verify/symbolic.hpp"
#include "conftorus/xi/field.hpp"
#include "conftorus/xi/radial.hpp"

using namespace conftorus;
using sym::Rational;

TEST(Radial, ClosedForms) {
  // int_0^inf r (1 + r^2)^-2 dr = 1/2
  EXPECT_EQ(xi::radial_integral(0, 2), Rational(1, 2));
  // int_0^inf r^3 (1 + r^2)^-4 dr = B(2, 2) / 2 = 1/12
  EXPECT_EQ(xi::radial_integral(1, 4), Rational(1, 12));
  // scaling by a
  EXPECT_EQ(xi::radial_integral(0, 2, Rational(2)), Rational(1, 8));
  EXPECT_THROW(xi::radial_integral(1, 2), xi::DivergenceError);
}

TEST(Radial, QuadratureAgreesWithClosedForm) {
  for (int k = 0; k < 4; ++k)
    for (int m = k + 2; m < k + 6; ++m) {
      // u = r^2: int r^{2k+1} (1+r^2)^-m dr = (1/2) int u^k (1+u)^-m du
      const double exact = static_cast<double>(xi::radial_integral(k, m));
      EXPECT_NEAR(0.5 * xi::radial_quadrature(k, {{1.0, m}}), exact, 1e-12 * std::max(1.0, exact));
    }
  EXPECT_THROW(xi::radial_quadrature(2, {{1.0, 3}}), xi::DivergenceError);
}

TEST(Angular, CircleAverages) {
  const auto s = sym::parse_term("xi(1) xi(1)");
  EXPECT_EQ(xi::angular_average(s), sym::parse_term("1/2 xisq"));
  EXPECT_EQ(xi::angular_average(sym::parse_term("xi(1) xi(2)")), sym::SymbolPoly());
  EXPECT_EQ(xi::angular_average(sym::parse_term("xi(1) xi(1) xi(2) xi(2)")), sym::parse_term("1/8 xisq^2"));
}

class Densities : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { parts_ = new xi::DensityParts(xi::curvature_pipeline()); }
  static void TearDownTestSuite() { delete parts_; }
  static xi::DensityParts* parts_;
};
xi::DensityParts* Densities::parts_ = nullptr;

TEST_F(Densities, PureHPart) {
  xi::PureH expect;
  expect[{-2, {2, 0}, {}}] = Rational(-1, 3);
  expect[{-2, {0, 2}, {}}] = Rational(-1, 3);
  expect[{-1, {}, {1, 0, 0}}] = Rational(1, 3);
  expect[{-1, {}, {0, 0, 1}}] = Rational(1, 3);
  EXPECT_EQ(parts_->pureH.pureH, expect);
}

TEST_F(Densities, OracleAgreement) {
  const auto r = verify::oracle_sweep(*parts_, 8, 99);
  EXPECT_LE(r.worst, 1e-8);
}

TEST_F(Densities, TracesVanishPointwise) {
  const auto r = verify::trace_cancellations(*parts_, 40, 5);
  EXPECT_LE(r.linear, 1e-10);
  EXPECT_LE(r.delta, 1e-10);
  EXPECT_LE(r.quadratic, 1e-10);
}

TEST_F(Densities, ScalarFactorHasTotalDerivativeCurvature) {
  // for scalar H the density is a divergence, so its integral vanishes
  const auto p = num::make_profile("P2", 1);
  const xi::FieldData F(p.H);
  EXPECT_NEAR(xi::torus_integral(parts_->total(), F, 64), 0.0, 1e-12);
}

TEST_F(Densities, GaugedMatrixProfileIntegratesToZero) {
  const auto p = num::make_profile("P4", 2);
  const xi::FieldData F(p.H, p.A);
  EXPECT_NEAR(xi::torus_integral(parts_->total(), F, 96), 0.0, 1e-10);
}

TEST_F(Densities, SingularPointsRejected) {
  std::mt19937 rng(1);
  xi::PointData d = verify::random_point(2, rng);
  d.lambda[0] = -1.0;
  EXPECT_THROW(xi::evaluate(parts_->total(), d), DomainError);
}
