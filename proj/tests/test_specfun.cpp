#include <gtest/gtest.h>

#include <cmath>

#include "conftorus/specfun/spectral.hpp"

using namespace conftorus::specfun;

namespace {
std::vector<double> log_points(int n = 50) {
  std::vector<double> s;
  for (int q = 0; q < n; ++q) s.push_back(std::pow(10.0, -3.0 + 6.0 * q / (n - 1)));
  return s;
}
}  // namespace

TEST(Specfun, ValuesAtOne) {
  EXPECT_NEAR(eval_G(1.0), 1.0 / 3, 1e-15);
  EXPECT_EQ(eval_F(1.0), 0.0);
  EXPECT_EQ(eval_Fd(1.0), 0.0);
}

TEST(Specfun, ReflectionLaw) {
  // F(1/s) = -s F(s)
  for (double s : log_points()) EXPECT_NEAR(eval_F(1 / s) + s * eval_F(s), 0.0, 1e-12 * std::max(1.0, s));
}

TEST(Specfun, QReducesToF) {
  for (double s : log_points()) EXPECT_NEAR(eval_Q(s, 1.0), eval_F(s), 1e-12);
}

TEST(Specfun, BranchesAreContinuous) {
  for (double c : {0.25, 1.0, 4.0}) {
    const double r = kSeriesRadius;
    for (double sg : {-1.0, 1.0}) {
      const double in = 1 + sg * (r - 1e-12), out = 1 + sg * (r + 1e-12);
      EXPECT_NEAR(eval_G(in), eval_G(out), 1e-10);
      EXPECT_NEAR(eval_F(in), eval_F(out), 1e-10);
      EXPECT_NEAR(eval_Fd(in), eval_Fd(out), 1e-10);
      const double qin = c + sg * c * (r - 1e-12), qout = c + sg * c * (r + 1e-12);
      EXPECT_NEAR(eval_Q(qin, c), eval_Q(qout, c), 1e-10 * std::max(1.0, std::abs(eval_Q(qout, c))));
    }
  }
}

TEST(Specfun, DomainErrors) {
  EXPECT_THROW(eval_G(0.0), conftorus::DomainError);
  EXPECT_THROW(eval_F(-1.0), conftorus::DomainError);
  EXPECT_THROW(eval_Q(1.0, 0.0), conftorus::DomainError);
  EXPECT_THROW(parse_fn("K"), conftorus::InputError);
}

TEST(Specfun, ParseRoundTrip) {
  for (Fn f : {Fn::G, Fn::F, Fn::Fd, Fn::Q}) EXPECT_EQ(parse_fn(name(f)), f);
  EXPECT_EQ(arity(Fn::Q), 2);
  EXPECT_EQ(arity(Fn::G), 1);
}

TEST(DeltaActionTest, EqualEigenvaluesScaleByValueAtOne) {
  const DeltaAction act({1.3, 1.3});
  Matrix X(2, 2);
  X << 1, 2, std::complex<double>(0, 3), 4;
  EXPECT_LT((apply(Fn::G, act, X) - X * eval_G(1.0)).norm(), 1e-14);
}

TEST(DeltaActionTest, OffDiagonalEntries) {
  const DeltaAction act({1.0, std::pow(2.0, 0.25)});
  Matrix X = Matrix::Ones(2, 2);
  const Matrix Y = apply(Fn::G, act, X);
  EXPECT_NEAR(Y(0, 1).real(), eval_G(2.0), 1e-14);
  EXPECT_NEAR(Y(1, 0).real(), eval_G(0.5), 1e-14);
  EXPECT_NEAR(Y(0, 0).real(), eval_G(1.0), 1e-14);
}

TEST(DeltaActionTest, FTracePairingVanishes) {
  // F(1) = 0, so the diagonal of F(Delta)(X) vanishes
  const DeltaAction act({0.7, 1.1, 1.9});
  Matrix X = Matrix::Random(3, 3);
  X = (X + X.adjoint()).eval();
  EXPECT_NEAR(std::abs(apply(Fn::F, act, X).trace()), 0.0, 1e-15);
}

TEST(DeltaActionTest, ArityAndSizeChecked) {
  const DeltaAction act({1.0, 2.0});
  EXPECT_THROW(apply(Fn::Q, act, Matrix::Ones(2, 2)), conftorus::InputError);
  EXPECT_THROW(apply(Fn::G, act, Matrix::Ones(3, 3)), conftorus::InputError);
  EXPECT_THROW(DeltaAction({1.0, 0.0}), conftorus::DomainError);
}
