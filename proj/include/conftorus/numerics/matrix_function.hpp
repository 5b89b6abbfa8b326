#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <utility>

#include "conftorus/error.hpp"

namespace conftorus::num {

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Mode = std::pair<int, int>;

/// A band-limited n x n matrix-valued function on R^2/Z^2,
///   f(x) = sum_k c_k e^{2 pi i k.x}.
class MatrixFunction {
 public:
  MatrixFunction() = default;
  explicit MatrixFunction(int n) : n_(n) {}

  static MatrixFunction constant(const Matrix& m) {
    MatrixFunction f(static_cast<int>(m.rows()));
    f.add_mode(0, 0, m);
    return f;
  }
  static MatrixFunction identity(int n) { return constant(Matrix::Identity(n, n)); }

  /// Fourier coefficients from samples on an M x M grid, dropping entries
  /// below tol (relative to the largest coefficient). Aliasing is negligible
  /// for the analytic profiles used here once M is a few times the band.
  static MatrixFunction from_samples(int n, const std::function<Matrix(double, double)>& fn, int M = 64,
                                     double tol = 1e-14) {
    std::vector<Matrix> samples(static_cast<std::size_t>(M) * M);
    for (int a = 0; a < M; ++a)
      for (int b = 0; b < M; ++b) samples[a * M + b] = fn(double(a) / M, double(b) / M);
    MatrixFunction f(n);
    std::map<Mode, Matrix> raw;
    double biggest = 0.0;
    const int half = M / 2 - 1;
    // Separable DFT: first along x2, then x1.
    std::vector<Matrix> stage(static_cast<std::size_t>(M) * (2 * half + 1), Matrix::Zero(n, n));
    for (int a = 0; a < M; ++a)
      for (int k2 = -half; k2 <= half; ++k2) {
        Matrix acc = Matrix::Zero(n, n);
        for (int b = 0; b < M; ++b) acc += samples[a * M + b] * std::polar(1.0, -2 * std::numbers::pi * k2 * b / M);
        stage[a * (2 * half + 1) + (k2 + half)] = acc / double(M);
      }
    for (int k1 = -half; k1 <= half; ++k1)
      for (int k2 = -half; k2 <= half; ++k2) {
        Matrix acc = Matrix::Zero(n, n);
        for (int a = 0; a < M; ++a)
          acc += stage[a * (2 * half + 1) + (k2 + half)] * std::polar(1.0, -2 * std::numbers::pi * k1 * a / M);
        acc /= double(M);
        biggest = std::max(biggest, acc.cwiseAbs().maxCoeff());
        raw.emplace(Mode{k1, k2}, std::move(acc));
      }
    for (auto& [k, c] : raw)
      if (c.cwiseAbs().maxCoeff() > tol * biggest) f.add_mode(k.first, k.second, c);
    if (f.band_limit() >= half - 1)
      throw InputError("profile is not resolved by the sampling grid; increase the sample count");
    return f;
  }

  void add_mode(int k1, int k2, const Matrix& c) {
    if (n_ == 0) n_ = static_cast<int>(c.rows());
    if (c.rows() != n_ || c.cols() != n_) throw InputError("MatrixFunction: coefficient has wrong size");
    auto [it, inserted] = coeffs_.try_emplace(Mode{k1, k2}, c);
    if (!inserted) it->second += c;
  }

  int n() const { return n_; }
  const std::map<Mode, Matrix>& coeffs() const { return coeffs_; }

  int band_limit() const {
    int k = 0;
    for (const auto& [m, c] : coeffs_) k = std::max({k, std::abs(m.first), std::abs(m.second)});
    return k;
  }

  Matrix coeff(int k1, int k2) const {
    auto it = coeffs_.find({k1, k2});
    return it == coeffs_.end() ? Matrix::Zero(n_, n_) : it->second;
  }

  Matrix operator()(double x1, double x2) const {
    Matrix out = Matrix::Zero(n_, n_);
    for (const auto& [k, c] : coeffs_) out += c * std::polar(1.0, 2 * std::numbers::pi * (k.first * x1 + k.second * x2));
    return out;
  }

  /// delta_j f = -i d_j f, the derivative used throughout the symbol calculus.
  MatrixFunction delta(int j) const {
    MatrixFunction out(n_);
    for (const auto& [k, c] : coeffs_) {
      const int kj = j == 1 ? k.first : k.second;
      if (kj != 0) out.add_mode(k.first, k.second, c * (2 * std::numbers::pi * kj));
    }
    return out;
  }

  MatrixFunction adjoint() const {
    MatrixFunction out(n_);
    for (const auto& [k, c] : coeffs_) out.add_mode(-k.first, -k.second, c.adjoint());
    return out;
  }

  /// Pointwise Hermitian iff c_{-k} = c_k^*.
  bool is_hermitian(double tol = 1e-12) const {
    for (const auto& [k, c] : coeffs_)
      if ((coeff(-k.first, -k.second) - c.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    return true;
  }

  /// Smallest eigenvalue of the (Hermitian) value over a sampling grid.
  double min_eigenvalue(int grid = 48) const {
    double m = INFINITY;
    for (int a = 0; a < grid; ++a)
      for (int b = 0; b < grid; ++b) {
        Eigen::SelfAdjointEigenSolver<Matrix> es((*this)(double(a) / grid, double(b) / grid));
        m = std::min(m, es.eigenvalues().minCoeff());
      }
    return m;
  }

  MatrixFunction& operator+=(const MatrixFunction& o) {
    for (const auto& [k, c] : o.coeffs_) add_mode(k.first, k.second, c);
    return *this;
  }
  friend MatrixFunction operator+(MatrixFunction a, const MatrixFunction& b) { return a += b; }
  friend MatrixFunction operator*(MatrixFunction a, cd s) {
    for (auto& [k, c] : a.coeffs_) c *= s;
    return a;
  }

  /// Pointwise product (exact convolution of coefficients).
  friend MatrixFunction operator*(const MatrixFunction& a, const MatrixFunction& b) {
    MatrixFunction out(a.n_);
    for (const auto& [ka, ca] : a.coeffs_)
      for (const auto& [kb, cb] : b.coeffs_) out.add_mode(ka.first + kb.first, ka.second + kb.second, ca * cb);
    out.prune();
    return out;
  }

  void prune(double tol = 1e-300) {
    std::erase_if(coeffs_, [tol](const auto& kv) { return kv.second.cwiseAbs().maxCoeff() <= tol; });
  }

 private:
  int n_{0};
  std::map<Mode, Matrix> coeffs_;
};

}  // namespace conftorus::num
