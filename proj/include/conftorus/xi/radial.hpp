#pragma once

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "conftorus/error.hpp"
#include "conftorus/symcalc/symbol_poly.hpp"

namespace conftorus::xi {

using sym::Rational;

class DivergenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

inline Rational factorial(int n) {
  Rational r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

/// Euler Beta function on positive integers.
inline Rational beta(int a, int b) { return factorial(a - 1) * factorial(b - 1) / factorial(a + b - 1); }

/// int_0^inf r^{2k+1} (1 + a^2 r^2)^{-m} dr = B(k+1, m-k-1) / (2 a^{2(k+1)}), for rational a > 0.
inline Rational radial_integral(int k, int m, const Rational& a = 1) {
  if (k < 0) throw DomainError("radial_integral: k must be nonnegative");
  if (m <= k + 1) throw DivergenceError("radial_integral diverges for m <= k + 1");
  Rational a2k = 1;
  for (int i = 0; i < k + 1; ++i) a2k *= a * a;
  return beta(k + 1, m - k - 1) / (2 * a2k);
}

/// One factor (1 + a u)^{-m} of a radial integrand in u = |xi|^2.
struct RadialFactor {
  double a;
  int m;
};

/// int_0^inf u^k prod (1 + a_p u)^{-m_p} du by double-exponential quadrature.
/// Converges iff sum m_p >= k + 2.
inline double radial_quadrature(int k, const std::vector<RadialFactor>& factors, double tol = 1e-14) {
  int total = 0;
  for (const auto& f : factors) total += f.m;
  if (total < k + 2) throw DivergenceError("radial integrand is not integrable at infinity");
  // in log form: the power and the denominators overflow separately for large u
  auto f = [&](double u) {
    if (u == 0.0) return k == 0 ? 1.0 : 0.0;
    double lg = k * std::log(u);
    for (const auto& fac : factors)
      if (fac.m != 0) lg -= fac.m * std::log1p(fac.a * u);
    return std::exp(lg);
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  double err = 0.0;
  return integrator.integrate(f, tol, &err);
}

}  // namespace conftorus::xi
