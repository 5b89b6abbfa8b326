#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "conftorus/error.hpp"

namespace conftorus::sym {

/// Thrown when a derivative is requested of a generator that has no rule
/// (third derivatives of H, derivatives of delta(A), of LapH).
class DerivativeRuleError : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

enum class GenKind : std::uint8_t { Hpow, DeltaH, HessH, LapH, A, DeltaA, B0pow };

/// One n x n matrix-valued formal factor.
///
///   Hpow(m)         H^m, m may be negative
///   DeltaH(i)       delta_i(H)
///   HessH(i,j)      delta_i delta_j(H), stored with i <= j
///   LapH            delta_1 delta_1 H + delta_2 delta_2 H
///   A(i)            A_i
///   DeltaA(i,j)     delta_j(A_i)
///   B0pow(k)        b_0^k, k >= 1, with b_0 = (1 + H^4 xi^2)^{-1}
///
/// Everything except A and DeltaA is diagonal and therefore mutually commuting.
struct Generator {
  GenKind kind{GenKind::Hpow};
  int a{0};
  int b{0};

  static Generator hpow(int m) { return {GenKind::Hpow, m, 0}; }
  static Generator dh(int i) { return {GenKind::DeltaH, i, 0}; }
  static Generator hess(int i, int j) {
    return i <= j ? Generator{GenKind::HessH, i, j} : Generator{GenKind::HessH, j, i};
  }
  static Generator lap() { return {GenKind::LapH, 0, 0}; }
  static Generator gauge(int i) { return {GenKind::A, i, 0}; }
  static Generator dgauge(int comp, int dir) { return {GenKind::DeltaA, comp, dir}; }
  static Generator b0pow(int k) { return {GenKind::B0pow, k, 0}; }

  bool commuting() const { return kind != GenKind::A && kind != GenKind::DeltaA; }

  std::string tag() const {
    switch (kind) {
      case GenKind::Hpow: return "H^" + std::to_string(a);
      case GenKind::DeltaH: return "dH" + std::to_string(a);
      case GenKind::HessH: return "ddH" + std::to_string(a) + std::to_string(b);
      case GenKind::LapH: return "LapH";
      case GenKind::A: return "A" + std::to_string(a);
      case GenKind::DeltaA: return "dA" + std::to_string(a) + "_" + std::to_string(b);
      case GenKind::B0pow: return "b0^" + std::to_string(a);
    }
    return "?";
  }

  auto operator<=>(const Generator&) const = default;
};

inline int hess_slot(int i, int j) {
  if (i > j) std::swap(i, j);
  return i == 1 ? (j == 1 ? 0 : 1) : 2;
}

inline std::pair<int, int> hess_indices(int slot) {
  static constexpr std::array<std::pair<int, int>, 3> kIdx{{{1, 1}, {1, 2}, {2, 2}}};
  return kIdx[slot];
}

/// A product of mutually commuting (diagonal) generators, kept as exponents.
/// Exponent storage is its own canonical form: equal blocks compare equal
/// regardless of the order in which factors were multiplied in.
struct Block {
  int h{0};
  int b0{0};
  std::array<int, 2> dh{};
  std::array<int, 3> hess{};

  bool is_unit() const { return h == 0 && b0 == 0 && dh == std::array<int, 2>{} && hess == std::array<int, 3>{}; }
  bool has_derivatives() const { return dh != std::array<int, 2>{} || hess != std::array<int, 3>{}; }

  Block& operator*=(const Block& o) {
    h += o.h;
    b0 += o.b0;
    for (int i = 0; i < 2; ++i) dh[i] += o.dh[i];
    for (int i = 0; i < 3; ++i) hess[i] += o.hess[i];
    return *this;
  }

  /// Flattened canonical listing: b0 power, H power, then derivatives by
  /// kind then index.
  std::vector<Generator> generators() const {
    std::vector<Generator> out;
    if (b0 != 0) out.push_back(Generator::b0pow(b0));
    if (h != 0) out.push_back(Generator::hpow(h));
    for (int i = 0; i < 2; ++i)
      for (int e = 0; e < dh[i]; ++e) out.push_back(Generator::dh(i + 1));
    for (int s = 0; s < 3; ++s)
      for (int e = 0; e < hess[s]; ++e) {
        auto [i, j] = hess_indices(s);
        out.push_back(Generator::hess(i, j));
      }
    return out;
  }

  auto operator<=>(const Block&) const = default;
};

/// A non-commuting letter: A_comp, or delta_dir(A_comp) when derivative is set.
struct Letter {
  bool derivative{false};
  int comp{1};
  int dir{0};

  Generator generator() const {
    return derivative ? Generator::dgauge(comp, dir) : Generator::gauge(comp);
  }
  auto operator<=>(const Letter&) const = default;
};

/// Word C_0 X_1 C_1 ... X_r C_r: commuting blocks separated by A-type letters.
/// Invariant: blocks.size() == letters.size() + 1.
struct Word {
  std::vector<Block> blocks{Block{}};
  std::vector<Letter> letters;

  int a_degree() const {
    int d = 0;
    for (const auto& l : letters) d += l.derivative ? 0 : 1;
    return d;
  }
  int da_degree() const {
    int d = 0;
    for (const auto& l : letters) d += l.derivative ? 1 : 0;
    return d;
  }
  int total_b0() const {
    int t = 0;
    for (const auto& b : blocks) t += b.b0;
    return t;
  }

  Word& operator*=(const Word& o) {
    blocks.back() *= o.blocks.front();
    letters.insert(letters.end(), o.letters.begin(), o.letters.end());
    blocks.insert(blocks.end(), o.blocks.begin() + 1, o.blocks.end());
    return *this;
  }

  std::vector<Generator> generators() const {
    std::vector<Generator> out;
    for (std::size_t p = 0; p < blocks.size(); ++p) {
      auto g = blocks[p].generators();
      out.insert(out.end(), g.begin(), g.end());
      if (p < letters.size()) out.push_back(letters[p].generator());
    }
    return out;
  }

  auto operator<=>(const Word&) const = default;
};

inline Word operator*(Word a, const Word& b) {
  a *= b;
  return a;
}

}  // namespace conftorus::sym
