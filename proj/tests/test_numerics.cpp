#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <numbers>

#include "conftorus/numerics/profiles.hpp"

using namespace conftorus;
using namespace conftorus::num;

TEST(Dirac, CutoffOneSpectrum) {
  for (int n : {1, 2}) {
    const TruncatedOperator D = build_dirac(1, n);
    EXPECT_EQ(D.basis.dim(), 2 * n * 9);
    EXPECT_EQ(D.hermiticity_defect(), 0.0);
    const std::vector<double> got = eigenvalues(D.mat), want = dirac_spectrum(1, n);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t q = 0; q < got.size(); ++q) EXPECT_NEAR(got[q], want[q], 1e-12);
    // 2n zero modes, and +-2 pi, +-2 pi sqrt 2
    EXPECT_EQ(std::count_if(want.begin(), want.end(), [](double x) { return x == 0.0; }), 2 * n);
    EXPECT_NEAR(want.back(), 2 * std::numbers::pi * std::sqrt(2.0), 1e-14);
  }
}

TEST(MatrixFunctionTest, SamplesAreHermitianSymmetric) {
  const Profile p = make_profile("P3", 2);
  for (const auto& [k, c] : p.h.coeffs()) EXPECT_LT((p.h.coeff(-k.first, -k.second) - c.adjoint()).norm(), 1e-13);
  EXPECT_TRUE(p.h.is_hermitian());
  EXPECT_GT(p.h.min_eigenvalue(), 0.0);
}

TEST(MatrixFunctionTest, DeltaIsMinusIDerivative) {
  MatrixFunction f(1);
  f.add_mode(1, 0, Matrix::Constant(1, 1, 1.0));
  const MatrixFunction df = f.delta(1);
  // delta e^{2 pi i x} = 2 pi e^{2 pi i x}
  EXPECT_NEAR(std::abs(df.coeff(1, 0)(0, 0) - 2 * std::numbers::pi), 0.0, 1e-14);
}

TEST(Assembly, ExactCompressionEqualsGuardedProduct) {
  const Profile p = make_profile("P2", 1);
  const int K = p.h.band_limit();
  const TruncatedOperator exact = assemble_exact(p.h, nullptr, 4);
  const Matrix guarded = assemble_guarded(p.h, nullptr, 4, K);
  EXPECT_LT((guarded - exact.mat).norm() / exact.mat.norm(), 1e-13);
  const TruncatedOperator g1 = assemble_rescaled(p.h, 4, 1);
  EXPECT_GT(g1.compression_error, 1e-6);  // a short guard misses products of high modes
}

TEST(Assembly, GaugedExactCompression) {
  const Profile p = make_profile("P4", 2);
  const int K = p.H.band_limit();
  const TruncatedOperator exact = assemble_exact(p.H, &*p.A, 3);
  EXPECT_LT((assemble_guarded(p.H, &*p.A, 3, K) - exact.mat).norm() / exact.mat.norm(), 1e-13);
  EXPECT_LT(exact.hermiticity_defect(), 1e-14);
}

TEST(Assembly, IdentityProfileIsFlatDirac) {
  const TruncatedOperator Dh = assemble_rescaled(MatrixFunction::identity(1), 3);
  EXPECT_LT((Dh.mat - build_dirac(3, 1).mat).norm(), 1e-12);
}

TEST(Assembly, RejectsNonPositiveFactor) {
  MatrixFunction h(1);
  h.add_mode(0, 0, Matrix::Constant(1, 1, 0.2));
  h.add_mode(1, 0, Matrix::Constant(1, 1, 0.5));
  h.add_mode(-1, 0, Matrix::Constant(1, 1, 0.5));
  EXPECT_THROW(assemble_rescaled(h, 3), InputError);
  EXPECT_THROW(build_mult(h, 0), InputError);
}

TEST(Assembly, GaugeEquivalence) {
  // h D h with h = U H U^* is unitarily equivalent to H (D + U^* [D, U]) H
  const Profile p = make_profile("P3", 2);
  EXPECT_LT(gauge_spectral_distance(p, 6), 1e-3);
}

TEST(Eigen, VectorsAreOrthonormal) {
  const TruncatedOperator op = assemble_rescaled(make_profile("P2", 1).h, 9);  // dim 722
  auto [w, V] = eigensystem(op.mat);
  const Matrix G = V.adjoint() * V;
  EXPECT_LT((G - Matrix::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff(), 1e-10);
  const std::vector<double> w2 = eigenvalues(op.mat);
  for (std::size_t q = 0; q < w.size(); ++q) EXPECT_NEAR(w[q], w2[q], 1e-9);
}

TEST(Epstein, LatticeSumAndValueAtZero) {
  double direct = 0.0;
  const int R = 400;
  for (int a = -R; a <= R; ++a)
    for (int b = -R; b <= R; ++b)
      if (a || b) direct += std::pow(double(a) * a + double(b) * b, -2.0);
  // tail beyond the box is about pi / R^2
  EXPECT_NEAR(epstein_zeta(2.0), direct, 3.0 / (R * R));
  EXPECT_NEAR(epstein_zeta(0.0), -1.0, 1e-12);
  EXPECT_NEAR(epstein_zeta(1e-4), -1.0, 1e-3);
}

TEST(Zeta, FlatTorusAtSmallCutoff) {
  const int N = 10, n = 1;
  const HeatTraceFit f = zeta_at_zero(dirac_spectrum(N, n), N, 2.0 * n / (4 * std::numbers::pi));
  EXPECT_EQ(f.kernel_dim, 2 * n);
  EXPECT_NEAR(f.zeta0, 2 * n * epstein_zeta(0.0), 0.02);
  EXPECT_LE(f.lo, f.zeta0);
  EXPECT_GE(f.hi, f.zeta0);
}

TEST(Zeta, RichardsonIsExactOnModel) {
  std::vector<int> N{8, 12, 16};
  std::vector<double> z;
  for (int k : N) z.push_back(-2.0 + 3.0 / (k * k));
  EXPECT_NEAR(richardson(N, z), -2.0, 1e-12);
}

TEST(Profiles, KeyValueFile) {
  const std::string path = ::testing::TempDir() + "profile.txt";
  {
    std::ofstream f(path);
    f << "# scalar profile\nname = bump\nn = 1\nH 0 0 = 1\nH 1 0 = 0.1\nH -1 0 = 0.1\nA2 0 1 = 0:0.2\nA2 0 -1 = 0:-0.2\n";
  }
  const Profile p = load_profile(path);
  EXPECT_EQ(p.name, "bump");
  EXPECT_EQ(p.n, 1);
  EXPECT_NEAR(p.H(0.0, 0.0)(0, 0).real(), 1.2, 1e-14);
  ASSERT_TRUE(p.A.has_value());
  EXPECT_TRUE((*p.A)[1].is_hermitian());
  {
    std::ofstream f(path);
    f << "n = 1\nH 0 0 = 1 2\n";
  }
  EXPECT_THROW(load_profile(path), InputError);
  {
    std::ofstream f(path);
    f << "n = 1\nbogus line\n";
  }
  EXPECT_THROW(load_profile(path), InputError);
  EXPECT_THROW(make_profile("P9", 1), InputError);
  EXPECT_THROW(make_profile("P3", 1), InputError);
}
