#pragma once

#include <Eigen/Dense>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "conftorus/numerics/operators.hpp"

namespace conftorus::num {

/// Small-t fit policy. The window is t in [c_lo / (2 pi N)^2, c_hi].
struct FitOptions {
  double c_lo{40.0};
  double c_hi{0.02};
  int points{25};
  bool linear{true};     // include c_1 t
  bool quadratic{true};  // include c_2 t^2
  double kernel_tol{1e-8};  // relative to the largest |eigenvalue|
  int trim{3};              // points dropped at each end for the sensitivity bracket
};

struct HeatTraceFit {
  std::vector<double> t;
  std::vector<double> trace;
  std::optional<double> weyl;  // pinned c_{-1}
  double cm1{0}, c0{0}, c1{0}, c2{0};
  double kernel{0};     // kernel dimension (or its weight for a localized trace)
  int kernel_dim{0};
  int gray_zone{0};     // eigenvalues within 10x of the kernel threshold
  double zeta0{0};
  double lo{0}, hi{0};  // envelope over leave-one-out, endpoint trims and one lower model order
  double rms{0};
  double condition{0};
  double width() const { return hi - lo; }
};

inline std::vector<double> log_grid(double a, double b, int n) {
  std::vector<double> t(n);
  for (int q = 0; q < n; ++q) t[q] = a * std::pow(b / a, n == 1 ? 0.0 : double(q) / (n - 1));
  return t;
}

namespace detail {

struct LsqOut {
  Eigen::VectorXd c;
  double rms;
  double cond;
};

// Least squares y ~ sum c_p phi_p(t) on the rows in `use`.
inline LsqOut lsq(const std::vector<double>& t, const std::vector<double>& y, const std::vector<int>& use,
                  bool free_weyl, const FitOptions& o) {
  std::vector<std::function<double(double)>> basis;
  if (free_weyl) basis.push_back([](double s) { return 1.0 / s; });
  basis.push_back([](double) { return 1.0; });
  if (o.linear) basis.push_back([](double s) { return s; });
  if (o.quadratic) basis.push_back([](double s) { return s * s; });
  Eigen::MatrixXd M(use.size(), basis.size());
  Eigen::VectorXd rhs(use.size());
  for (std::size_t r = 0; r < use.size(); ++r) {
    for (std::size_t p = 0; p < basis.size(); ++p) M(r, p) = basis[p](t[use[r]]);
    rhs(r) = y[use[r]];
  }
  // column scaling keeps the conditioning report meaningful
  Eigen::VectorXd scale = M.colwise().norm().transpose();
  for (Eigen::Index p = 0; p < M.cols(); ++p) M.col(p) /= scale(p);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd c = svd.solve(rhs);
  const double rms = std::sqrt((M * c - rhs).squaredNorm() / use.size());
  const auto& sv = svd.singularValues();
  for (Eigen::Index p = 0; p < M.cols(); ++p) c(p) /= scale(p);
  return {c, rms, sv(0) / sv(sv.size() - 1)};
}

}  // namespace detail

/// Fits a sampled heat trace sum_m w_m e^{-t lambda_m^2}. The weights are 1
/// for the plain trace and <v_m, f v_m> for a localized one.
inline HeatTraceFit fit_heat_trace(const std::vector<double>& eig, const std::vector<double>& weights, int N,
                                   std::optional<double> weyl, const FitOptions& o = {}) {
  if (o.points < 6) throw InputError("heat-trace fit needs at least 6 points");
  HeatTraceFit f;
  f.weyl = weyl;
  double lmax = 0.0;
  for (double l : eig) lmax = std::max(lmax, std::abs(l));
  const double thr = o.kernel_tol * std::max(lmax, 1.0);
  for (std::size_t m = 0; m < eig.size(); ++m) {
    const double a = std::abs(eig[m]);
    if (a <= thr) {
      ++f.kernel_dim;
      f.kernel += weights.empty() ? 1.0 : weights[m];
    } else if (a <= 10 * thr) {
      ++f.gray_zone;
    }
  }
  const double t_lo = o.c_lo / std::pow(2 * std::numbers::pi * N, 2);
  if (!(t_lo < o.c_hi)) throw InputError("empty t-window: raise N or c_hi");
  f.t = log_grid(t_lo, o.c_hi, o.points);
  for (double t : f.t) {
    double s = 0.0;
    for (std::size_t m = 0; m < eig.size(); ++m) s += (weights.empty() ? 1.0 : weights[m]) * std::exp(-t * eig[m] * eig[m]);
    f.trace.push_back(s);
  }
  std::vector<double> y = f.trace;
  if (weyl)
    for (std::size_t q = 0; q < y.size(); ++q) y[q] -= *weyl / f.t[q];

  auto zeta_from = [&](const Eigen::VectorXd& c) { return c(weyl ? 0 : 1) - f.kernel; };
  std::vector<int> all(f.t.size());
  std::iota(all.begin(), all.end(), 0);
  const detail::LsqOut full = detail::lsq(f.t, y, all, !weyl, o);
  int p = 0;
  f.cm1 = weyl ? *weyl : full.c(p++);
  f.c0 = full.c(p++);
  if (o.linear) f.c1 = full.c(p++);
  if (o.quadratic) f.c2 = full.c(p++);
  f.zeta0 = zeta_from(full.c);
  f.rms = full.rms;
  f.condition = full.cond;

  f.lo = f.hi = f.zeta0;
  auto widen = [&](const std::vector<int>& use) {
    const double z = zeta_from(detail::lsq(f.t, y, use, !weyl, o).c);
    f.lo = std::min(f.lo, z);
    f.hi = std::max(f.hi, z);
  };
  for (std::size_t drop = 0; drop < all.size(); ++drop) {
    std::vector<int> use;
    for (int q : all)
      if (q != static_cast<int>(drop)) use.push_back(q);
    widen(use);
  }
  widen(std::vector<int>(all.begin() + o.trim, all.end()));
  widen(std::vector<int>(all.begin(), all.end() - o.trim));
  // model order: refit without the highest power of t
  if (o.quadratic || o.linear) {
    FitOptions lower = o;
    (o.quadratic ? lower.quadratic : lower.linear) = false;
    const double z = zeta_from(detail::lsq(f.t, y, all, !weyl, lower).c);
    f.lo = std::min(f.lo, z);
    f.hi = std::max(f.hi, z);
  }
  return f;
}

/// Weyl coefficient (2 / 4 pi) int Tr h^-4 for the square of h D h (or H(D+A)H),
/// optionally weighted by a multiplier f: (2 / 4 pi) int Tr f h^-4.
inline double weyl_coefficient(const MatrixFunction& h, const MatrixFunction* f = nullptr, int grid = 64) {
  double acc = 0.0;
  for (int a = 0; a < grid; ++a)
    for (int b = 0; b < grid; ++b) {
      const double x1 = double(a) / grid, x2 = double(b) / grid;
      Eigen::SelfAdjointEigenSolver<Matrix> es(h(x1, x2));
      const Eigen::VectorXd l = es.eigenvalues();
      Matrix inv4 = es.eigenvectors() * l.array().pow(-4).matrix().cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
      acc += (f ? ((*f)(x1, x2) * inv4).trace().real() : inv4.trace().real());
    }
  return 2.0 / (4 * std::numbers::pi) * acc / (grid * grid);
}

/// zeta(0) of an operator from its spectrum.
inline HeatTraceFit zeta_at_zero(const std::vector<double>& eig, int N, std::optional<double> weyl,
                                 const FitOptions& o = {}) {
  return fit_heat_trace(eig, {}, N, weyl, o);
}

inline HeatTraceFit zeta_at_zero(const TruncatedOperator& op, std::optional<double> weyl, const FitOptions& o = {}) {
  if (op.hermiticity_defect() > 1e-12) throw NumericalError("operator is not Hermitian");
  return zeta_at_zero(eigenvalues(op.mat), op.basis.N, weyl, o);
}

/// Heat trace of M_f e^{-t op^2}; c0 estimates the local constant term int Tr(f R) (times the normalization).
inline HeatTraceFit localized_trace(const TruncatedOperator& op, const MatrixFunction& f, std::optional<double> weyl,
                                    const FitOptions& o = {}) {
  const TruncatedOperator mf = build_mult(f, op.basis.N);
  auto [w, V] = eigensystem(op.mat);
  std::vector<double> weights(w.size());
  for (std::size_t m = 0; m < w.size(); ++m) weights[m] = (V.col(m).adjoint() * mf.mat * V.col(m))(0, 0).real();
  return fit_heat_trace(w, weights, op.basis.N, weyl, o);
}

/// Epstein zeta Z(s) = sum_{k != 0} |k|^{-2s} over Z^2, continued to all s != 1 by
/// splitting the Mellin integral of the theta function at t = 1:
///   pi^{-s} Gamma(s) Z(s) = -1/s - 1/(1-s) + int_1^inf (t^{s-1} + t^{-s}) (theta(t) - 1) dt.
inline double epstein_zeta(double s) {
  auto theta1 = [](double t) {
    double acc = 1.0;
    for (int m = 1; m < 50; ++m) {
      const double term = 2 * std::exp(-std::numbers::pi * t * m * m);
      acc += term;
      if (term < 1e-300) break;
    }
    return acc;
  };
  auto integrand = [&](double u) {
    const double t = 1.0 + u;
    const double th = theta1(t);
    return (std::pow(t, s - 1) + std::pow(t, -s)) * (th * th - 1.0);
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  const double I = integrator.integrate(integrand, 1e-14);
  // Z(s) = pi^s (s lambda(s)) / Gamma(1 + s), regular at s = 0
  const double s_lambda = -1.0 - s / (1.0 - s) + s * I;
  return std::pow(std::numbers::pi, s) * s_lambda / std::tgamma(1.0 + s);
}

/// Least-squares extrapolation z(N) = z_inf + c / N^2.
inline double richardson(const std::vector<int>& N, const std::vector<double>& z) {
  if (N.size() != z.size() || N.empty()) throw InputError("richardson: size mismatch");
  if (N.size() == 1) return z[0];
  Eigen::MatrixXd M(N.size(), 2);
  Eigen::VectorXd y(N.size());
  for (std::size_t q = 0; q < N.size(); ++q) {
    M(q, 0) = 1.0;
    M(q, 1) = 1.0 / (double(N[q]) * N[q]);
    y(q) = z[q];
  }
  return M.colPivHouseholderQr().solve(y)(0);
}

}  // namespace conftorus::num
