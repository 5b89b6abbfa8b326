#pragma once

#include "conftorus/symcalc/symbol_poly.hpp"

namespace conftorus::xi {

using sym::Rational;
using sym::SymbolPoly;

inline Rational double_factorial(int n) {
  Rational r = 1;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

/// Average over the unit circle: xi_1^a xi_2^b -> <cos^a sin^b> (xi^2)^{(a+b)/2},
/// with <cos^a sin^b> = (a-1)!!(b-1)!!/(a+b)!! for a, b even and 0 otherwise.
/// The 2 pi of the angular integral is carried by the radial step.
inline SymbolPoly angular_average(const SymbolPoly& s) {
  SymbolPoly out;
  for (const auto& [k, c] : s.terms()) {
    const int a = k.xi[0];
    const int b = k.xi[1];
    if (a % 2 != 0 || b % 2 != 0) continue;
    sym::Key n = k;
    n.xi = {0, 0};
    n.xisq += (a + b) / 2;
    out.add(n, c * double_factorial(a - 1) * double_factorial(b - 1) / double_factorial(a + b));
  }
  return out;
}

/// Half the Clifford trace followed by the angular average: the per-spinor
/// density integrated over the xi-plane.
inline SymbolPoly traced_average(const SymbolPoly& s) {
  return angular_average(sym::clifford_trace(s)) * Rational(1, 2);
}

}  // namespace conftorus::xi
