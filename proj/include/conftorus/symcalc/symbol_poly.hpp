#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <climits>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conftorus/symcalc/clifford.hpp"
#include "conftorus/symcalc/generator.hpp"

namespace conftorus::sym {

using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Everything of a monomial except its coefficient.
///
/// xi holds the powers of xi_1 and xi_2, xisq the power of the scalar xi^2
/// (produced by angular averaging) and lam the power of the formal spectral
/// parameter that stands for the "+1" in b_0 = (a_2 + 1)^{-1}. The parameter is
/// graded like xi^2 so that the parametrix identity can be checked order by
/// order; it is set to one everywhere else.
struct Key {
  Cliff cl{Cliff::One};
  std::array<int, 2> xi{};
  int xisq{0};
  int lam{0};
  Word word;

  /// xi-order with b_0^k counting as -2k.
  int order() const { return xi[0] + xi[1] + 2 * xisq + 2 * lam - 2 * word.total_b0(); }

  auto operator<=>(const Key&) const = default;
};

/// Product of two keys; returns the Clifford sign separately.
inline std::pair<int, Key> multiply(const Key& a, const Key& b) {
  auto [sign, cl] = cliff_mul(a.cl, b.cl);
  Key k;
  k.cl = cl;
  k.xi = {a.xi[0] + b.xi[0], a.xi[1] + b.xi[1]};
  k.xisq = a.xisq + b.xisq;
  k.lam = a.lam + b.lam;
  k.word = a.word * b.word;
  return {sign, std::move(k)};
}

/// Graded noncommutative polynomial in xi with Clifford- and matrix-valued
/// coefficients. Terms are kept collapsed and zero-free in a sorted map, so two
/// polynomials are equal iff their term maps are equal.
class SymbolPoly {
 public:
  using Terms = std::map<Key, Rational>;
  static constexpr int kNoCutoff = INT_MIN / 4;

  SymbolPoly() = default;

  static SymbolPoly constant(const Rational& c) {
    SymbolPoly p;
    p.add(Key{}, c);
    return p;
  }
  static SymbolPoly one() { return constant(1); }

  static SymbolPoly term(const Rational& c, Key k) {
    SymbolPoly p;
    p.add(k, c);
    return p;
  }

  /// Canonicalises a flat product of generators. LapH is expanded into
  /// HessH(1,1) + HessH(2,2), so the result may have two terms.
  static SymbolPoly from_generators(const Rational& coeff, Cliff cl, std::array<int, 2> xi, int xisq,
                                    const std::vector<Generator>& gens) {
    std::vector<Key> keys(1);
    keys[0].cl = cl;
    keys[0].xi = xi;
    keys[0].xisq = xisq;
    for (const auto& g : gens) {
      if (g.kind == GenKind::LapH) {
        std::vector<Key> next;
        for (const auto& k : keys)
          for (int i = 1; i <= 2; ++i) {
            Key c = k;
            c.word.blocks.back().hess[hess_slot(i, i)] += 1;
            next.push_back(std::move(c));
          }
        keys = std::move(next);
        continue;
      }
      for (auto& k : keys) {
        Block& blk = k.word.blocks.back();
        switch (g.kind) {
          case GenKind::Hpow: blk.h += g.a; break;
          case GenKind::DeltaH: blk.dh[g.a - 1] += 1; break;
          case GenKind::HessH: blk.hess[hess_slot(g.a, g.b)] += 1; break;
          case GenKind::B0pow: blk.b0 += g.a; break;
          case GenKind::A:
            k.word.letters.push_back(Letter{false, g.a, 0});
            k.word.blocks.emplace_back();
            break;
          case GenKind::DeltaA:
            k.word.letters.push_back(Letter{true, g.a, g.b});
            k.word.blocks.emplace_back();
            break;
          case GenKind::LapH: break;
        }
      }
    }
    SymbolPoly p;
    for (auto& k : keys) p.add(k, coeff);
    return p;
  }

  void add(const Key& k, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  std::optional<int> max_order() const {
    std::optional<int> m;
    for (const auto& [k, c] : terms_) m = m ? std::max(*m, k.order()) : k.order();
    return m;
  }
  std::optional<int> min_order() const {
    std::optional<int> m;
    for (const auto& [k, c] : terms_) m = m ? std::min(*m, k.order()) : k.order();
    return m;
  }

  /// The homogeneous component of the given xi-order.
  SymbolPoly homogeneous(int order) const {
    return filter([order](const Key& k) { return k.order() == order; });
  }
  /// Drops every term of order below cutoff.
  SymbolPoly truncated(int cutoff) const {
    return filter([cutoff](const Key& k) { return k.order() >= cutoff; });
  }

  template <class Pred>
  SymbolPoly filter(Pred pred) const {
    SymbolPoly out;
    for (const auto& [k, c] : terms_)
      if (pred(k)) out.terms_.emplace(k, c);
    return out;
  }

  SymbolPoly& operator+=(const SymbolPoly& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  SymbolPoly& operator-=(const SymbolPoly& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  SymbolPoly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  friend SymbolPoly operator+(SymbolPoly a, const SymbolPoly& b) { return a += b; }
  friend SymbolPoly operator-(SymbolPoly a, const SymbolPoly& b) { return a -= b; }
  friend SymbolPoly operator-(SymbolPoly a) { return a *= Rational(-1); }
  friend SymbolPoly operator*(SymbolPoly a, const Rational& s) { return a *= s; }
  friend SymbolPoly operator*(const Rational& s, SymbolPoly a) { return a *= s; }

  /// Product keeping only terms of order >= cutoff.
  static SymbolPoly multiply(const SymbolPoly& a, const SymbolPoly& b, int cutoff = kNoCutoff) {
    SymbolPoly out;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        if (ka.order() + kb.order() < cutoff) continue;
        auto [sign, k] = sym::multiply(ka, kb);
        Rational prod = ca * cb;
        if (sign < 0) prod = -prod;
        out.add(k, prod);
      }
    return out;
  }
  friend SymbolPoly operator*(const SymbolPoly& a, const SymbolPoly& b) { return multiply(a, b); }

  /// delta_k in x, applied through the Leibniz rule.
  SymbolPoly dx(int k) const {
    SymbolPoly out;
    for (const auto& [key, c] : terms_) differentiate_x(key, c, k, out);
    return out;
  }

  /// partial derivative in xi_k.
  SymbolPoly dxi(int k) const {
    SymbolPoly out;
    for (const auto& [key, c] : terms_) differentiate_xi(key, c, k, out);
    return out;
  }

  bool operator==(const SymbolPoly& o) const { return terms_ == o.terms_; }

 private:
  static void differentiate_x(const Key& key, const Rational& c, int k, SymbolPoly& out) {
    const int ki = k - 1;
    const auto& word = key.word;
    for (std::size_t p = 0; p < word.blocks.size(); ++p) {
      const Block& blk = word.blocks[p];
      if (blk.hess != std::array<int, 3>{})
        throw DerivativeRuleError("no derivative rule for second derivatives of H");
      if (blk.h != 0) {
        Key n = key;
        Block& nb = n.word.blocks[p];
        nb.h -= 1;
        nb.dh[ki] += 1;
        out.add(n, c * blk.h);
      }
      for (int i = 0; i < 2; ++i) {
        if (blk.dh[i] == 0) continue;
        Key n = key;
        Block& nb = n.word.blocks[p];
        nb.dh[i] -= 1;
        nb.hess[hess_slot(i + 1, k)] += 1;
        out.add(n, c * blk.dh[i]);
      }
      if (blk.b0 != 0) {
        // delta_k(b0^m) = -m b0^{m+1} delta_k(H^4) xi^2, delta_k(H^4) = 4 H^3 delta_k(H)
        for (int j = 0; j < 2; ++j) {
          Key n = key;
          Block& nb = n.word.blocks[p];
          nb.b0 += 1;
          nb.h += 3;
          nb.dh[ki] += 1;
          n.xi[j] += 2;
          out.add(n, c * (-4 * blk.b0));
        }
      }
    }
    for (std::size_t p = 0; p < word.letters.size(); ++p) {
      const Letter& l = word.letters[p];
      if (l.derivative) throw DerivativeRuleError("no derivative rule for delta(A)");
      Key n = key;
      n.word.letters[p] = Letter{true, l.comp, k};
      out.add(n, c);
    }
  }

  static void differentiate_xi(const Key& key, const Rational& c, int k, SymbolPoly& out) {
    const int ki = k - 1;
    if (key.xi[ki] != 0) {
      Key n = key;
      n.xi[ki] -= 1;
      out.add(n, c * key.xi[ki]);
    }
    if (key.xisq != 0) {
      Key n = key;
      n.xisq -= 1;
      n.xi[ki] += 1;
      out.add(n, c * 2 * key.xisq);
    }
    for (std::size_t p = 0; p < key.word.blocks.size(); ++p) {
      const int m = key.word.blocks[p].b0;
      if (m == 0) continue;
      // d/dxi_k (b0^m) = -m b0^{m+1} 2 xi_k H^4
      Key n = key;
      Block& nb = n.word.blocks[p];
      nb.b0 += 1;
      nb.h += 4;
      n.xi[ki] += 1;
      out.add(n, c * (-2 * m));
    }
  }

  Terms terms_;
};

/// Symbol of the composition of two operators,
///   sum_alpha (1/alpha!) d_xi^alpha(a) delta_x^alpha(b),
/// keeping only terms of order >= cutoff. Terms of b that cannot reach the
/// cutoff are dropped before differentiation, so b may contain generators
/// without a derivative rule as long as they are never differentiated.
inline SymbolPoly compose(const SymbolPoly& a, const SymbolPoly& b, int cutoff = SymbolPoly::kNoCutoff) {
  SymbolPoly out;
  if (a.empty() || b.empty()) return out;
  SymbolPoly da1 = a;
  Rational fact1 = 1;
  for (int a1 = 0; !da1.empty(); ++a1) {
    if (a1 > 0) {
      da1 = da1.dxi(1);
      fact1 *= a1;
    }
    SymbolPoly da = da1;
    Rational fact = fact1;
    for (int a2 = 0; !da.empty(); ++a2) {
      if (a2 > 0) {
        da = da.dxi(2);
        fact *= a2;
        if (da.empty()) break;
      }
      const int need = cutoff - *da.max_order();
      SymbolPoly db = b.filter([need](const Key& k) { return k.order() >= need; });
      for (int i = 0; i < a1 && !db.empty(); ++i) db = db.dx(1);
      for (int i = 0; i < a2 && !db.empty(); ++i) db = db.dx(2);
      if (db.empty()) continue;
      out += SymbolPoly::multiply(da, db, cutoff) * (Rational(1) / fact);
    }
  }
  return out;
}

/// Replaces every Clifford factor by its 2x2 trace.
inline SymbolPoly clifford_trace(const SymbolPoly& s) {
  SymbolPoly out;
  for (const auto& [k, c] : s.terms()) {
    const int t = cliff_trace(k.cl);
    if (t == 0) continue;
    Key n = k;
    n.cl = Cliff::One;
    out.add(n, c * t);
  }
  return out;
}

}  // namespace conftorus::sym
