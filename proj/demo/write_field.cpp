// Writes sampled positive fields for diag-check:
//   bott_field.csv   H = 1 + p on the sphere (theta midpoints x phi)
//   frame_field.csv  H = U diag(1, 2) U^* on the torus, U = exp(i theta(x) sigma_2)
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "conftorus/chern/projection.hpp"

namespace ch = conftorus::chern;

void write(const char* path, const ch::ProjectionField& P) {
  std::ofstream out(path);
  out.precision(17);
  out << "u,v";
  for (int i = 0; i < P.at(0, 0).rows(); ++i)
    for (int j = 0; j < P.at(0, 0).cols(); ++j) out << ",re_" << i << j << ",im_" << i << j;
  out << "\n";
  for (int i = 0; i < P.nu; ++i)
    for (int j = 0; j < P.nv; ++j) {
      out << P.u(i) << "," << P.v(j);
      const ch::Matrix& m = P.at(i, j);
      for (int a = 0; a < m.rows(); ++a)
        for (int b = 0; b < m.cols(); ++b) out << "," << m(a, b).real() << "," << m(a, b).imag();
      out << "\n";
    }
  std::printf("wrote %s (%d x %d)\n", path, P.nu, P.nv);
}

int main() {
  using std::numbers::pi;
  write("bott_field.csv", ch::sample(ch::Chart::Sphere, 50, 100, [](double th, double ph) {
          return ch::Matrix(ch::Matrix::Identity(2, 2) + ch::bott_matrix(th, ph));
        }));
  write("frame_field.csv", ch::sample(ch::Chart::Torus, 48, 48, [](double x1, double x2) {
          const double theta = 0.7 * std::sin(2 * pi * x1) + 0.4 * std::cos(2 * pi * x2);
          ch::Matrix U = ch::Matrix::Zero(2, 2), D = ch::Matrix::Zero(2, 2);
          // exp(i theta sigma_2) is a real rotation
          U << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
          D(0, 0) = 1;
          D(1, 1) = 2;
          return ch::Matrix(U * D * U.adjoint());
        }));
}
