#pragma once

#include <string>
#include <vector>

#include "conftorus/symcalc/normal_form.hpp"
#include "conftorus/symcalc/symbol_poly.hpp"

namespace conftorus::sym {

struct ASymbols {
  SymbolPoly a2, a1, a0;
  SymbolPoly total() const { return a2 + a1 + a0; }
};

struct BSymbols {
  SymbolPoly b0, b1, b2;
  SymbolPoly total() const { return b0 + b1 + b2; }
};

inline SymbolPoly xi_symbol(int k) {
  Key key;
  key.xi[k - 1] = 1;
  return SymbolPoly::term(1, key);
}

inline SymbolPoly h_symbol(int m) { return SymbolPoly::from_generators(1, Cliff::One, {}, 0, {Generator::hpow(m)}); }

inline SymbolPoly b0_symbol() { return SymbolPoly::from_generators(1, Cliff::One, {}, 0, {Generator::b0pow(1)}); }

/// The formal parameter standing for the "+1" of a_2 + 1, graded as order 2.
inline SymbolPoly unit_parameter() {
  Key k;
  k.lam = 1;
  return SymbolPoly::term(1, k);
}

/// Symbol of D + A = sum_k sigma^k (xi_k + A_k).
inline SymbolPoly dirac_symbol(bool include_A) {
  SymbolPoly s;
  for (int k = 1; k <= 2; ++k) {
    s += SymbolPoly::from_generators(1, sigma(k), {k == 1 ? 1 : 0, k == 2 ? 1 : 0}, 0, {});
    if (include_A) s += SymbolPoly::from_generators(1, sigma(k), {}, 0, {Generator::gauge(k)});
  }
  return s;
}

/// Graded symbols of H(D+A)H^2(D+A)H, obtained by exact composition.
inline ASymbols build_a_symbols(bool include_A) {
  const SymbolPoly d = dirac_symbol(include_A);
  const SymbolPoly full = compose(h_symbol(1), compose(d, compose(h_symbol(2), compose(d, h_symbol(1)))));
  return {full.homogeneous(2), full.homogeneous(1), full.homogeneous(0)};
}

/// The parametrix recursion, with plain (pointwise) products:
///   b0 = (a2+1)^{-1}
///   b1 = -(b0 a1 + d_k(b0) delta_k(a2)) b0
///   b2 = -(b1 a1 + b0 a0 + d_k(b0) delta_k(a1) + d_k(b1) delta_k(a2)
///          + 1/2 d_k d_j(b0) delta_k delta_j(a2)) b0
inline BSymbols build_b_symbols(const ASymbols& a) {
  BSymbols b;
  b.b0 = b0_symbol();
  SymbolPoly t1 = b.b0 * a.a1;
  for (int k = 1; k <= 2; ++k) t1 += b.b0.dxi(k) * a.a2.dx(k);
  b.b1 = -(t1 * b.b0);

  SymbolPoly t2 = b.b1 * a.a1 + b.b0 * a.a0;
  for (int k = 1; k <= 2; ++k) {
    t2 += b.b0.dxi(k) * a.a1.dx(k);
    t2 += b.b1.dxi(k) * a.a2.dx(k);
    for (int j = 1; j <= 2; ++j) t2 += (b.b0.dxi(k).dxi(j) * a.a2.dx(k).dx(j)) * Rational(1, 2);
  }
  b.b2 = -(t2 * b.b0);
  return b;
}

/// Residual of the parametrix identity sigma(D^2 + 1) o (b0 + b1 + b2) - 1 at
/// orders 0, -1, -2, in denominator-free normal form. All three must vanish.
struct ParametrixCheck {
  std::array<SymbolPoly, 3> residual;  // raw residual by order 0, -1, -2
  std::array<bool, 3> vanishes{};
  bool ok() const { return vanishes[0] && vanishes[1] && vanishes[2]; }
};

inline ParametrixCheck check_parametrix(const ASymbols& a, const BSymbols& b) {
  const SymbolPoly lhs = compose(a.a2 + unit_parameter() + a.a1 + a.a0, b.total(), -2);
  ParametrixCheck out;
  for (int o = 0; o < 3; ++o) {
    SymbolPoly r = lhs.homogeneous(-o);
    if (o == 0) r -= SymbolPoly::one();
    out.vanishes[o] = NormalForm(r).is_zero();
    out.residual[o] = std::move(r);
  }
  return out;
}

/// b2 split by its content in A and delta(A).
struct ASplit {
  SymbolPoly deg0, linA, linDA, quadA;
  SymbolPoly total() const { return deg0 + linA + linDA + quadA; }
};

inline ASplit split_by_A_degree(const SymbolPoly& b2) {
  ASplit out;
  for (const auto& [k, c] : b2.terms()) {
    const int a = k.word.a_degree();
    const int da = k.word.da_degree();
    SymbolPoly* dst = nullptr;
    if (a == 0 && da == 0) dst = &out.deg0;
    else if (a == 1 && da == 0) dst = &out.linA;
    else if (a == 0 && da == 1) dst = &out.linDA;
    else if (a == 2 && da == 0) dst = &out.quadA;
    if (dst == nullptr) throw VerificationError("b2 term outside the four A-degree classes");
    dst->add(k, c);
  }
  return out;
}

}  // namespace conftorus::sym
