#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "conftorus/error.hpp"

namespace conftorus::specfun {

/// Spectral functions of the modular operator s = Delta.
///
///   G   linear terms in A
///   F   closed form with F(s) = Q(s, 1)
///   Fd  the function multiplying delta(A) terms
///   Q   two-variable function of the quadratic terms
enum class Fn { G, F, Fd, Q };

inline std::string name(Fn f) {
  switch (f) {
    case Fn::G: return "G";
    case Fn::F: return "F";
    case Fn::Fd: return "Fd";
    case Fn::Q: return "Q";
  }
  return "?";
}

inline Fn parse_fn(const std::string& s) {
  if (s == "G") return Fn::G;
  if (s == "F") return Fn::F;
  if (s == "Fd") return Fn::Fd;
  if (s == "Q") return Fn::Q;
  throw InputError("unknown spectral function '" + s + "'");
}

inline int arity(Fn f) { return f == Fn::Q ? 2 : 1; }

/// Switch to the Taylor branch inside |s - 1| < kSeriesRadius (and |s - t| for Q).
inline constexpr double kSeriesRadius = 1e-3;

namespace detail {

inline void require_positive(double s, const char* what) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError(std::string(what) + " needs a positive argument");
}

// atanh(w) - w without cancellation.
inline double atanh_minus_id(double w) {
  if (std::abs(w) > 0.2) return std::atanh(w) - w;
  const double w2 = w * w;
  double term = w * w2;
  double sum = 0.0;
  for (int m = 1; m < 60; ++m) {
    const double add = term / (2 * m + 1);
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    term *= w2;
  }
  return sum;
}

// atanh(w) / w, equal to 1 at w = 0.
inline double atanh_ratio(double w) { return w == 0.0 ? 1.0 : 1.0 + atanh_minus_id(w) / w; }

inline double horner(const double* c, int n, double d) {
  double r = 0.0;
  for (int k = n - 1; k >= 0; --k) r = r * d + c[k];
  return r;
}

// Taylor coefficients about s = 1 in powers of d = s - 1.
inline constexpr double kG[7] = {1.0 / 3, -1.0 / 12, 7.0 / 240, -1.0 / 96, 13.0 / 5376, 5.0 / 3584, -2141.0 / 645120};
inline constexpr double kF[7] = {0.0, 1.0 / 6, -1.0 / 6, 3.0 / 20, -2.0 / 15, 5.0 / 42, -3.0 / 28};
inline constexpr double kFd[7] = {0.0,           1.0 / 12,        -1.0 / 16,         23.0 / 480,
                                  -49.0 / 1280, 1699.0 / 53760, -5753.0 / 215040};

}  // namespace detail

/// ln(x) / (x - 1), equal to 1 at x = 1.
inline double log_ratio(double x) {
  detail::require_positive(x, "log_ratio");
  const double w = (x - 1.0) / (x + 1.0);
  return 2.0 * detail::atanh_ratio(w) / (x + 1.0);
}

/// n-th derivative of log_ratio.
inline double log_ratio_derivative(int n, double x) {
  if (n == 0) return log_ratio(x);
  const double d = x - 1.0;
  if (std::abs(d) < 0.5) {
    // ln(x)/(x-1) = sum_m (-1)^m d^m / (m+1)
    double sum = 0.0;
    for (int m = n; m < 400; ++m) {
      double c = (m % 2 == 0 ? 1.0 : -1.0) / (m + 1);
      for (int j = m - n + 1; j <= m; ++j) c *= j;
      const double add = c * std::pow(d, m - n);
      sum += add;
      if (m > n + 4 && std::abs(add) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
  }
  // (x-1) L^(n) + n L^(n-1) = (-1)^(n-1) (n-1)! / x^n
  double prev = log_ratio(x);
  double fact = 1.0;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) fact *= (k - 1);
    const double rhs = (k % 2 == 1 ? 1.0 : -1.0) * fact / std::pow(x, k);
    prev = (rhs - k * prev) / d;
  }
  return prev;
}

inline double eval_G(double s) {
  detail::require_positive(s, "G");
  const double d = s - 1.0;
  if (std::abs(d) < kSeriesRadius) return detail::horner(detail::kG, 7, d);
  const double r = std::sqrt(s);
  const double w = d / (s + 1.0);
  return (1.0 + r) * r * 2.0 * (s + 1.0) * detail::atanh_minus_id(w) / (d * d * d);
}

inline double eval_F(double s) {
  detail::require_positive(s, "F");
  const double d = s - 1.0;
  if (std::abs(d) < kSeriesRadius) return detail::horner(detail::kF, 7, d);
  const double w = d / (s + 1.0);
  return 2.0 * (s + 1.0) * detail::atanh_minus_id(w) / (d * d);
}

inline double eval_Fd(double s) {
  detail::require_positive(s, "Fd");
  const double d = s - 1.0;
  if (std::abs(d) < kSeriesRadius) return detail::horner(detail::kFd, 7, d);
  // With r = sqrt(s), v = (r-1)/(r+1):
  //   Fd = (v^2 atanh v - (atanh v - v)) / (v (r - 1)).
  const double r = std::sqrt(s);
  const double v = (r - 1.0) / (r + 1.0);
  const double t = detail::atanh_minus_id(v);
  return (v * v * (v + t) - t) / (v * (r - 1.0));
}

/// Q(s,t) = [g(s) - g(t)] / (s - t) with g(x) = (x + sqrt t) ln(x)/(x - 1).
/// Equivalently (s + sqrt t) ln s / ((s-1)(s-t)) - sqrt t ln t / ((sqrt t - 1)(s-t)).
inline double eval_Q(double s, double t) {
  detail::require_positive(s, "Q");
  detail::require_positive(t, "Q");
  const double u = std::sqrt(t);
  const double e = s - t;
  if (std::abs(e) < kSeriesRadius * std::max(1.0, t)) {
    // divided difference as a Taylor series about s = t
    double sum = 0.0;
    double fact = 1.0;
    double pw = 1.0;
    for (int n = 1; n <= 7; ++n) {
      fact *= n;
      const double gn = (t + u) * log_ratio_derivative(n, t) + n * log_ratio_derivative(n - 1, t);
      sum += gn / fact * pw;
      pw *= e;
    }
    return sum;
  }
  return ((s + u) * log_ratio(s) - (t + u) * log_ratio(t)) / e;
}

inline double eval(Fn f, double s, double t = 1.0) {
  switch (f) {
    case Fn::G: return eval_G(s);
    case Fn::F: return eval_F(s);
    case Fn::Fd: return eval_Fd(s);
    case Fn::Q: return eval_Q(s, t);
  }
  return 0.0;
}

/// Delta = conjugation by H^4 for H = diag(lambda): Delta(X)_ij = s_ij X_ij.
struct DeltaAction {
  std::vector<double> lambdas;

  explicit DeltaAction(std::vector<double> l) : lambdas(std::move(l)) {
    for (double x : lambdas)
      if (!(x > 0.0)) throw DomainError("eigenvalues of H must be positive");
  }
  std::size_t size() const { return lambdas.size(); }
  double s(std::size_t i, std::size_t j) const { return std::pow(lambdas[j] / lambdas[i], 4); }
};

using Matrix = Eigen::MatrixXcd;

/// fn(Delta)(X) for a one-variable function.
inline Matrix apply(Fn fn, const DeltaAction& act, const Matrix& X) {
  const auto n = static_cast<Eigen::Index>(act.size());
  if (X.rows() != n || X.cols() != n) throw InputError("apply: dimension mismatch");
  if (arity(fn) != 1) throw InputError("apply: " + name(fn) + " takes two Delta slots");
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = eval(fn, act.s(i, j)) * X(i, j);
  return out;
}

/// Q(Delta1, Delta2)(X1 . X2): out_ij = sum_k Q(s_ik, s_ij) X1_ik X2_kj.
inline Matrix apply(Fn fn, const DeltaAction& act, const Matrix& X1, const Matrix& X2) {
  const auto n = static_cast<Eigen::Index>(act.size());
  if (X1.rows() != n || X1.cols() != n || X2.rows() != n || X2.cols() != n)
    throw InputError("apply: dimension mismatch");
  if (arity(fn) != 2) throw InputError("apply: " + name(fn) + " takes one Delta slot");
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k) out(i, j) += eval(fn, act.s(i, k), act.s(i, j)) * X1(i, k) * X2(k, j);
  return out;
}

}  // namespace conftorus::specfun
