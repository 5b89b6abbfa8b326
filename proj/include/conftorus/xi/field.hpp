#pragma once

#include <array>
#include <fstream>
#include <optional>
#include <string>

#include "conftorus/numerics/matrix_function.hpp"
#include "conftorus/xi/density.hpp"

namespace conftorus::xi {

/// H (diagonal-valued) and A on the torus, with the derivatives the density needs.
class FieldData {
 public:
  FieldData(num::MatrixFunction H, std::optional<std::array<num::MatrixFunction, 2>> A = std::nullopt)
      : H_(std::move(H)), A_(std::move(A)) {
    for (const auto& [k, c] : H_.coeffs())
      if (!c.isDiagonal(0.0)) throw InputError("curvature density needs a diagonal-valued H");
    for (int j = 0; j < 2; ++j) {
      dH_[j] = H_.delta(j + 1);
      for (int i = j; i < 2; ++i) hess_[sym::hess_slot(j + 1, i + 1)] = dH_[j].delta(i + 1);
    }
    if (A_)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) dA_[i][j] = (*A_)[i].delta(j + 1);
  }

  int n() const { return H_.n(); }

  PointData at(double x1, double x2) const {
    PointData d;
    const Matrix h = H_(x1, x2);
    for (int i = 0; i < n(); ++i) {
      if (h(i, i).real() <= 0.0) throw InputError("H is not positive");
      d.lambda.push_back(h(i, i).real());
    }
    for (int j = 0; j < 2; ++j) d.dh[j] = diagonal(dH_[j], x1, x2);
    for (int s = 0; s < 3; ++s) d.hess[s] = diagonal(hess_[s], x1, x2);
    for (int i = 0; i < 2; ++i) {
      d.A[i] = A_ ? (*A_)[i](x1, x2) : Matrix(Matrix::Zero(n(), n()));
      for (int j = 0; j < 2; ++j) d.dA[i][j] = A_ ? dA_[i][j](x1, x2) : Matrix(Matrix::Zero(n(), n()));
    }
    return d;
  }

 private:
  static std::vector<cd> diagonal(const num::MatrixFunction& f, double x1, double x2) {
    const Matrix m = f(x1, x2);
    return std::vector<cd>(m.diagonal().begin(), m.diagonal().end());
  }

  num::MatrixFunction H_;
  std::optional<std::array<num::MatrixFunction, 2>> A_;
  std::array<num::MatrixFunction, 2> dH_;
  std::array<num::MatrixFunction, 3> hess_;
  std::array<std::array<num::MatrixFunction, 2>, 2> dA_;
};

/// Riemann sum of Tr(f R) over an M x M grid (spectrally accurate for smooth periodic data).
inline double torus_integral(const CurvatureDensity& R, const FieldData& F, int M = 256,
                             const num::MatrixFunction* f = nullptr) {
  double acc = 0.0;
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b) {
      const double x1 = double(a) / M, x2 = double(b) / M;
      const Matrix r = evaluate(R, F.at(x1, x2));
      acc += (f ? ((*f)(x1, x2) * r).trace() : r.trace()).real();
    }
  return acc / (double(M) * M);
}

/// CSV: x1, x2, then Re/Im of the row-major entries of R(x).
inline void write_density_csv(const std::string& path, const CurvatureDensity& R, const FieldData& F, int M) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << "x1,x2";
  for (int i = 0; i < F.n(); ++i)
    for (int j = 0; j < F.n(); ++j) out << ",re_" << i << j << ",im_" << i << j;
  out << "\n";
  out.precision(17);
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b) {
      const double x1 = double(a) / M, x2 = double(b) / M;
      const Matrix r = evaluate(R, F.at(x1, x2));
      out << x1 << "," << x2;
      for (int i = 0; i < F.n(); ++i)
        for (int j = 0; j < F.n(); ++j) out << "," << r(i, j).real() << "," << r(i, j).imag();
      out << "\n";
    }
}

}  // namespace conftorus::xi
