#include <gtest/gtest.h>

#include <fstream>
#include <numbers>
#include <random>

#include "conftorus/chern/mesh.hpp"

using namespace conftorus;
using namespace conftorus::chern;

namespace {
Matrix rotation_field(double x1, double x2) {
  const double th = 0.7 * std::sin(2 * std::numbers::pi * x1) + 0.4 * std::cos(2 * std::numbers::pi * x2);
  Matrix U(2, 2), D = Matrix::Zero(2, 2);
  U << std::cos(th), std::sin(th), -std::sin(th), std::cos(th);
  D(0, 0) = 1;
  D(1, 1) = 2;
  return U * D * U.adjoint();
}
}  // namespace

TEST(Bott, ProjectionAndChernNumber) {
  const ProjectionField P = bott_projection(50, 100);
  EXPECT_TRUE(validate(P).ok());
  EXPECT_NEAR(chern_number_density(P), -1.0, 1e-3);
  EXPECT_NEAR(plaquette_chern(mesh_for(P), P.values), -1.0, 1e-9);
}

TEST(Bott, DensityIsUniform) {
  // -sin(theta) / (4 pi) per d theta d phi
  const ProjectionField P = bott_projection(40, 80);
  const std::vector<double> d = chern_density(P);
  for (int i = 0; i < P.nu; ++i) EXPECT_NEAR(d[i * P.nv], -std::sin(P.u(i)) / (4 * std::numbers::pi), 1e-5);
}

TEST(Meshes, EulerCharacteristics) {
  EXPECT_EQ(sphere_mesh(10, 20).euler(), 2);
  EXPECT_TRUE(sphere_mesh(10, 20).oriented_closed());
  EXPECT_EQ(torus_mesh(8, 6).euler(), 0);
  for (int g = 1; g <= 3; ++g) {
    const SurfaceMesh s = genus_mesh(g, 16, 8);
    EXPECT_EQ(s.mesh.genus(), g);
    EXPECT_TRUE(s.mesh.oriented_closed());
    EXPECT_TRUE(s.mesh.reversed().oriented_closed());
  }
  EXPECT_THROW(genus_mesh(0, 16, 8), InputError);
}

TEST(Bumps, ShippedTripleSatisfiesConstraints) {
  const BumpTriple b = shipped_bumps();
  const BumpCheck c = check_bumps(b);
  EXPECT_TRUE(c.ok()) << c.gh << " " << c.quadratic << " " << c.boundary;
}

TEST(Torus, ChernNumberMinusOne) {
  const BumpTriple b = shipped_bumps();
  const ProjectionField P = make_torus_projection(b, 400, 64);
  EXPECT_NEAR(chern_number_density(P), -1.0, 1e-3);
  EXPECT_NEAR(plaquette_chern(mesh_for(P), P.values), -1.0, 1e-9);
}

TEST(Torus, ClosedFormAndSupportSplit) {
  const BumpTriple b = shipped_bumps();
  const ProjectionField P = make_torus_projection(b, 400, 64);
  // closed form on supp g
  double closed = 0.0;
  for (int i = 0; i < P.nu; ++i) closed += reference_torus_density(b, P.u(i));
  EXPECT_NEAR(closed / P.nu, -1.0, 1e-3);
  // the supp h half contributes nothing
  const std::vector<double> d = chern_density(P);
  double upper = 0.0;
  for (int i = P.nu / 2; i < P.nu; ++i)
    for (int j = 0; j < P.nv; ++j) upper += d[i * P.nv + j];
  EXPECT_NEAR(upper * P.du() * P.dv(), 0.0, 1e-6);
}

TEST(Torus, BrokenTripleIsRejected) {
  BumpTriple b = shipped_bumps();
  // h no longer vanishes where g lives
  b.h = [](double t) { return t > 0.2 && t < 0.8 ? 0.1 : 0.0; };
  EXPECT_FALSE(check_bumps(b).ok());
  EXPECT_THROW(make_torus_projection(b, 64, 16), VerificationError);
}

TEST(Embedding, GenusTwoSurface) {
  const ProjectionField P = make_torus_projection(shipped_bumps(), 64, 32);
  for (int g : {1, 2, 3}) {
    const SurfaceMesh S = genus_mesh(g, 128, 32);
    const std::vector<Matrix> f = embed_in_surface(P, S, 0);
    EXPECT_NEAR(plaquette_chern(S.mesh.reversed(), f), -1.0, 1e-9) << "genus " << g;
  }
  EXPECT_THROW(embed_in_surface(P, genus_mesh(2, 64, 32), 0), InputError);
}

TEST(Diagonalizability, OnePlusBott) {
  const ProjectionField P = sample(Chart::Sphere, 40, 80, [](double t, double p) {
    return Matrix(Matrix::Identity(2, 2) + bott_matrix(t, p));
  });
  const ChernReport r = diagonalizability_verdict(sphere_mesh(40, 80), P.values);
  ASSERT_EQ(r.bands.size(), 2u);
  EXPECT_EQ(r.bands[0].chern_int, 1);
  EXPECT_EQ(r.bands[1].chern_int, -1);
  EXPECT_NEAR(r.band_sum, 0.0, 1e-9);
  EXPECT_FALSE(r.diagonalizable);
}

TEST(Diagonalizability, GlobalFrame) {
  const ProjectionField P = sample(Chart::Torus, 32, 32, rotation_field);
  const ChernReport r = diagonalizability_verdict(torus_mesh(32, 32), P.values);
  for (const auto& b : r.bands) EXPECT_EQ(b.chern_int, 0);
  EXPECT_TRUE(r.diagonalizable);
}

TEST(Diagonalizability, ConstantField) {
  Matrix c = Matrix::Zero(3, 3);
  c.diagonal() << 1, 2, 3;
  const ChernReport r = diagonalizability_verdict(torus_mesh(8, 8), std::vector<Matrix>(64, c));
  for (const auto& b : r.bands) EXPECT_NEAR(b.chern, 0.0, 1e-14);
  EXPECT_TRUE(r.diagonalizable);
}

TEST(Diagonalizability, DegenerateSpectrumRejected) {
  EXPECT_THROW(diagonalizability_verdict(torus_mesh(4, 4), std::vector<Matrix>(16, Matrix::Identity(2, 2))), NumericalError);
}

TEST(Plaquette, PhaseGaugeInvariance) {
  // projections rebuilt from eigenvectors with random per-site phases
  const ProjectionField P = bott_projection(30, 60);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> phase(0, 2 * std::numbers::pi);
  std::vector<Matrix> rebuilt;
  for (const auto& p : P.values) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(p);
    const Eigen::VectorXcd v = es.eigenvectors().col(1) * std::polar(1.0, phase(rng));
    rebuilt.push_back(v * v.adjoint());
  }
  const Mesh m = mesh_for(P);
  EXPECT_NEAR(plaquette_chern(m, rebuilt), plaquette_chern(m, P.values), 1e-9);
}

TEST(FieldCsv, RoundTrip) {
  const std::string path = ::testing::TempDir() + "field.csv";
  const ProjectionField P = sample(Chart::Torus, 6, 5, rotation_field);
  {
    std::ofstream out(path);
    out.precision(17);
    out << "u,v,re_00,im_00,re_01,im_01,re_10,im_10,re_11,im_11\n";
    for (int i = 0; i < P.nu; ++i)
      for (int j = 0; j < P.nv; ++j) {
        out << P.u(i) << "," << P.v(j);
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) out << "," << P.at(i, j)(a, b).real() << "," << P.at(i, j)(a, b).imag();
        out << "\n";
      }
  }
  int nu = 0, nv = 0;
  const std::vector<Matrix> f = read_field_csv(path, nu, nv);
  EXPECT_EQ(nu, 6);
  EXPECT_EQ(nv, 5);
  for (std::size_t q = 0; q < f.size(); ++q) EXPECT_LT((f[q] - P.values[q]).norm(), 1e-14);
  {
    std::ofstream out(path);
    out << "u,v,x\n0,0,abc\n";
  }
  EXPECT_THROW(read_field_csv(path, nu, nv), InputError);
}
