#pragma once

#include <lapacke.h>

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "conftorus/numerics/matrix_function.hpp"

namespace conftorus::num {

/// Plane-wave basis e^{2 pi i k.x} (x) spinor (x) C^n with |k_1|, |k_2| <= N.
struct Basis {
  int N;
  int n;
  int side() const { return 2 * N + 1; }
  int modes() const { return side() * side(); }
  int dim() const { return 2 * n * modes(); }
  int mode_index(int k1, int k2) const { return (k1 + N) * side() + (k2 + N); }
  int index(int k1, int k2, int spin, int a) const { return (mode_index(k1, k2) * 2 + spin) * n + a; }
};

struct TruncatedOperator {
  Basis basis;
  Matrix mat;
  double compression_error{0.0};  // relative Frobenius distance to the exact compression

  double hermiticity_defect() const {
    const double nrm = mat.norm();
    return nrm == 0.0 ? 0.0 : (mat - mat.adjoint()).norm() / nrm;
  }
};

inline const std::array<Eigen::Matrix2cd, 2>& pauli() {
  static const std::array<Eigen::Matrix2cd, 2> s = [] {
    Eigen::Matrix2cd s1, s2;
    s1 << 0, 1, 1, 0;
    s2 << 0, cd(0, -1), cd(0, 1), 0;
    return std::array<Eigen::Matrix2cd, 2>{s1, s2};
  }();
  return s;
}

/// D = sigma^1 delta_1 + sigma^2 delta_2, block diagonal in k.
inline TruncatedOperator build_dirac(int N, int n) {
  if (N < 1) throw InputError("cutoff N must be at least 1");
  Basis b{N, n};
  Matrix m = Matrix::Zero(b.dim(), b.dim());
  const auto& s = pauli();
  for (int k1 = -N; k1 <= N; ++k1)
    for (int k2 = -N; k2 <= N; ++k2) {
      const Eigen::Matrix2cd blk = s[0] * (2 * std::numbers::pi * k1) + s[1] * (2 * std::numbers::pi * k2);
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          for (int a = 0; a < n; ++a) m(b.index(k1, k2, p, a), b.index(k1, k2, q, a)) = blk(p, q);
    }
  return {b, std::move(m)};
}

/// Eigenvalues of the truncated D, from its 2x2 blocks: +-2 pi |k|, each n times.
inline std::vector<double> dirac_spectrum(int N, int n) {
  std::vector<double> ev;
  for (int k1 = -N; k1 <= N; ++k1)
    for (int k2 = -N; k2 <= N; ++k2) {
      const double r = 2 * std::numbers::pi * std::hypot(double(k1), double(k2));
      for (int a = 0; a < n; ++a) {
        ev.push_back(-r);
        ev.push_back(r);
      }
    }
  std::sort(ev.begin(), ev.end());
  return ev;
}

namespace detail {

// Adds spin (x) T_f into m, where T_f(k, k') = weight(k, k') f^(k - k').
template <class Weight>
void add_toeplitz(Matrix& m, const Basis& b, const Eigen::Matrix2cd& spin, const MatrixFunction& f, Weight weight) {
  const int N = b.N;
  const int n = b.n;
  for (const auto& [d, c] : f.coeffs())
    for (int k1 = -N; k1 <= N; ++k1)
      for (int k2 = -N; k2 <= N; ++k2) {
        const int q1 = k1 - d.first;
        const int q2 = k2 - d.second;
        if (std::abs(q1) > N || std::abs(q2) > N) continue;
        const cd w = weight(k1, k2, q1, q2);
        if (w == cd(0)) continue;
        for (int p = 0; p < 2; ++p)
          for (int q = 0; q < 2; ++q) {
            if (spin(p, q) == cd(0)) continue;
            const cd sw = spin(p, q) * w;
            for (int a = 0; a < n; ++a)
              for (int e = 0; e < n; ++e) m(b.index(k1, k2, p, a), b.index(q1, q2, q, e)) += sw * c(a, e);
          }
      }
}

inline void require_positive(const MatrixFunction& h, const char* what) {
  if (!h.is_hermitian()) throw InputError(std::string(what) + " is not Hermitian-valued");
  if (h.min_eigenvalue() <= 0.0) throw InputError(std::string(what) + " is not positive definite on the sampling grid");
}

}  // namespace detail

/// P_N M_f P_N, i.e. blocks f^(k - k') (x) 1_spinor.
inline TruncatedOperator build_mult(const MatrixFunction& f, int N) {
  if (f.band_limit() > 2 * N) throw InputError("band limit of the multiplier exceeds 2N");
  Basis b{N, f.n()};
  Matrix m = Matrix::Zero(b.dim(), b.dim());
  detail::add_toeplitz(m, b, Eigen::Matrix2cd::Identity(), f, [](int, int, int, int) { return cd(1); });
  return {b, std::move(m)};
}

/// Exact Galerkin compression of M_h (D + sigma.A) M_h onto the cutoff-N box,
/// using M_h delta_j M_h = pi (k + k')_j T_{h^2} + 1/2 T_{[h, delta_j h]}.
/// This equals the truncated product computed on any cutoff N + guard with
/// guard >= band limit of h.
inline TruncatedOperator assemble_exact(const MatrixFunction& h, const std::array<MatrixFunction, 2>* A, int N) {
  Basis b{N, h.n()};
  Matrix m = Matrix::Zero(b.dim(), b.dim());
  const auto& s = pauli();
  const MatrixFunction h2 = h * h;
  for (int j = 0; j < 2; ++j) {
    detail::add_toeplitz(m, b, s[j], h2, [j](int k1, int k2, int q1, int q2) {
      return cd(std::numbers::pi * (j == 0 ? k1 + q1 : k2 + q2));
    });
    const MatrixFunction dh = h.delta(j + 1);
    MatrixFunction comm = h * dh + (dh * h) * cd(-1);
    comm.prune(1e-300);
    detail::add_toeplitz(m, b, s[j], comm * cd(0.5), [](int, int, int, int) { return cd(1); });
    if (A != nullptr) detail::add_toeplitz(m, b, s[j], h * (*A)[j] * h, [](int, int, int, int) { return cd(1); });
  }
  return {b, std::move(m)};
}

/// The truncated product P_N M_h P_{N+g} (D + sigma.A) P_{N+g} M_h P_N.
inline Matrix assemble_guarded(const MatrixFunction& h, const std::array<MatrixFunction, 2>* A, int N, int guard) {
  const int n = h.n();
  Basis small{N, n};
  Basis big{N + guard, n};
  // M: rows small box, cols big box; entries h^(k - q) (x) 1_spinor.
  Matrix M = Matrix::Zero(small.dim(), big.dim());
  for (int k1 = -N; k1 <= N; ++k1)
    for (int k2 = -N; k2 <= N; ++k2)
      for (const auto& [d, c] : h.coeffs()) {
        const int q1 = k1 - d.first;
        const int q2 = k2 - d.second;
        if (std::abs(q1) > big.N || std::abs(q2) > big.N) continue;
        for (int p = 0; p < 2; ++p)
          for (int a = 0; a < n; ++a)
            for (int e = 0; e < n; ++e) M(small.index(k1, k2, p, a), big.index(q1, q2, p, e)) += c(a, e);
      }
  Matrix mid = build_dirac(big.N, n).mat;
  if (A != nullptr) {
    const auto& s = pauli();
    for (int j = 0; j < 2; ++j)
      detail::add_toeplitz(mid, big, s[j], (*A)[j], [](int, int, int, int) { return cd(1); });
  }
  // M_h is self-adjoint on the full space, so the right factor is M^dagger.
  return M * mid * M.adjoint();
}

/// D_h = h D h on cutoff N. guard < 0 selects the band limit of h.
inline TruncatedOperator assemble_rescaled(const MatrixFunction& h, int N, int guard = -1) {
  detail::require_positive(h, "h");
  const int K = h.band_limit();
  if (guard < 0 || guard >= K) return assemble_exact(h, nullptr, N);
  TruncatedOperator exact = assemble_exact(h, nullptr, N);
  Matrix g = assemble_guarded(h, nullptr, N, guard);
  const double err = (g - exact.mat).norm() / exact.mat.norm();
  return {exact.basis, std::move(g), err};
}

/// D_{A,H} = H (D + sigma^1 A_1 + sigma^2 A_2) H.
inline TruncatedOperator assemble_HDA(const MatrixFunction& H, const std::array<MatrixFunction, 2>& A, int N,
                                      int guard = -1) {
  detail::require_positive(H, "H");
  for (const auto& a : A)
    if (!a.is_hermitian()) throw InputError("A must be Hermitian-valued");
  const int K = H.band_limit();
  if (guard < 0 || guard >= K) return assemble_exact(H, &A, N);
  TruncatedOperator exact = assemble_exact(H, &A, N);
  Matrix g = assemble_guarded(H, &A, N, guard);
  const double err = (g - exact.mat).norm() / exact.mat.norm();
  return {exact.basis, std::move(g), err};
}

/// Eigenvalues (ascending) of a Hermitian matrix via LAPACK zheevd.
inline std::vector<double> eigenvalues(Matrix a) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  std::vector<double> w(n);
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n, reinterpret_cast<lapack_complex_double*>(a.data()), n, w.data());
  if (info != 0) throw NumericalError("zheevd failed with info " + std::to_string(info));
  return w;
}

/// Eigenvalues and eigenvectors (columns of the returned matrix). Uses zheevr:
/// the divide-and-conquer vector path of some OpenBLAS builds returns
/// non-orthogonal vectors for n above a few hundred.
inline std::pair<std::vector<double>, Matrix> eigensystem(Matrix a) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  std::vector<double> w(n);
  Matrix z(n, n);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'A', 'L', n, reinterpret_cast<lapack_complex_double*>(a.data()), n,
                                         0.0, 0.0, 0, 0, 0.0, &found, w.data(), reinterpret_cast<lapack_complex_double*>(z.data()), n,
                                         support.data());
  if (info != 0 || found != n) throw NumericalError("zheevr failed with info " + std::to_string(info));
  return {std::move(w), std::move(z)};
}

}  // namespace conftorus::num
