#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "conftorus/symcalc/symbol_poly.hpp"

namespace conftorus::sym {

/// Denominator-free normal form of a symbol.
///
/// Working entrywise in an eigenbasis of H, block p of a word becomes a scalar
/// lambda_p^h (1 + lambda_p^4 xi^2)^{-m} times its derivative factors. Within
/// a class of terms that share Clifford factor, letters and per-block
/// derivative content, multiplying by prod_p (1 + lambda_p^4 xi^2)^{M_p}
/// (M_p the largest b_0 power of block p in the class) leaves a Laurent
/// polynomial in (xi_1, xi_2, lambda_p). Two symbols denote the same function
/// iff their normal forms agree. The formal parameter lam is set to one.
class NormalForm {
 public:
  struct ClassKey {
    Cliff cl;
    std::vector<Letter> letters;
    std::vector<std::pair<std::array<int, 2>, std::array<int, 3>>> derivs;
    auto operator<=>(const ClassKey&) const = default;
  };
  struct MonoKey {
    std::array<int, 2> xi;
    std::vector<int> lambda;
    auto operator<=>(const MonoKey&) const = default;
  };
  using Poly = std::map<MonoKey, Rational>;

  explicit NormalForm(const SymbolPoly& s) {
    std::map<ClassKey, std::vector<int>> denom;
    for (const auto& [k, c] : s.terms()) {
      auto& d = denom.try_emplace(class_of(k), std::vector<int>(k.word.blocks.size(), 0)).first->second;
      for (std::size_t p = 0; p < d.size(); ++p) d[p] = std::max(d[p], k.word.blocks[p].b0);
    }
    for (const auto& [k, c] : s.terms()) {
      const ClassKey ck = class_of(k);
      const auto& d = denom.at(ck);
      Poly term;
      MonoKey m{k.xi, {}};
      for (const auto& b : k.word.blocks) m.lambda.push_back(b.h);
      term[m] = c;
      // xi^2 -> xi_1^2 + xi_2^2
      for (int e = 0; e < k.xisq; ++e) term = times_xisq(term);
      for (std::size_t p = 0; p < d.size(); ++p)
        for (int e = k.word.blocks[p].b0; e < d[p]; ++e) term = times_factor(term, p);
      Poly& target = classes_[ck];
      for (const auto& [mk, mc] : term) {
        auto [it, ins] = target.try_emplace(mk, mc);
        if (!ins) {
          it->second += mc;
          if (it->second == 0) target.erase(it);
        }
      }
      if (target.empty()) classes_.erase(ck);
    }
  }

  bool is_zero() const { return classes_.empty(); }
  const std::map<ClassKey, Poly>& classes() const { return classes_; }

 private:
  static ClassKey class_of(const Key& k) {
    ClassKey ck{k.cl, k.word.letters, {}};
    for (const auto& b : k.word.blocks) ck.derivs.emplace_back(b.dh, b.hess);
    return ck;
  }

  static Poly times_xisq(const Poly& in) {
    Poly out;
    for (const auto& [m, c] : in)
      for (int j = 0; j < 2; ++j) {
        MonoKey n = m;
        n.xi[j] += 2;
        out[n] += c;
      }
    return out;
  }

  // Multiply by (1 + lambda_p^4 (xi_1^2 + xi_2^2)).
  static Poly times_factor(const Poly& in, std::size_t p) {
    Poly out;
    for (const auto& [m, c] : in) {
      out[m] += c;
      for (int j = 0; j < 2; ++j) {
        MonoKey n = m;
        n.xi[j] += 2;
        n.lambda[p] += 4;
        out[n] += c;
      }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
  }

  std::map<ClassKey, Poly> classes_;
};

/// True iff a and b agree as functions once b_0 = (1 + H^4 xi^2)^{-1} is used.
inline bool equivalent(const SymbolPoly& a, const SymbolPoly& b) { return NormalForm(a - b).is_zero(); }

}  // namespace conftorus::sym
