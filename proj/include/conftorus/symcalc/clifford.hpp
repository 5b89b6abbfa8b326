#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace conftorus::sym {

/// Basis of the real Clifford algebra generated by sigma^1, sigma^2.
///
/// The product sigma^1 sigma^2 equals i sigma^3, so {1, s1, s2, i s3} is closed
/// under multiplication with signs in {+1,-1}. All symbols of D^2_{A,H} have
/// real rational coefficients in this basis; a bare sigma^3 never occurs.
enum class Cliff : std::uint8_t { One = 0, S1 = 1, S2 = 2, IS3 = 3 };

struct CliffProduct {
  int sign;
  Cliff element;
};

namespace detail {
// Row = left factor, column = right factor.
inline constexpr std::array<std::array<CliffProduct, 4>, 4> kCliffTable{{
    {{{1, Cliff::One}, {1, Cliff::S1}, {1, Cliff::S2}, {1, Cliff::IS3}}},
    {{{1, Cliff::S1}, {1, Cliff::One}, {1, Cliff::IS3}, {1, Cliff::S2}}},
    {{{1, Cliff::S2}, {-1, Cliff::IS3}, {1, Cliff::One}, {-1, Cliff::S1}}},
    {{{1, Cliff::IS3}, {-1, Cliff::S2}, {1, Cliff::S1}, {-1, Cliff::One}}},
}};
}  // namespace detail

constexpr CliffProduct cliff_mul(Cliff a, Cliff b) {
  return detail::kCliffTable[static_cast<int>(a)][static_cast<int>(b)];
}

/// Matrix trace over the 2-dimensional spinor space.
constexpr int cliff_trace(Cliff c) { return c == Cliff::One ? 2 : 0; }

/// sigma^k for k in {1,2}.
constexpr Cliff sigma(int k) { return k == 1 ? Cliff::S1 : Cliff::S2; }

constexpr std::string_view cliff_tag(Cliff c) {
  switch (c) {
    case Cliff::One: return "1";
    case Cliff::S1: return "s1";
    case Cliff::S2: return "s2";
    case Cliff::IS3: return "is3";
  }
  return "?";
}

constexpr std::string_view cliff_latex(Cliff c) {
  switch (c) {
    case Cliff::One: return "";
    case Cliff::S1: return "\\sigma^1";
    case Cliff::S2: return "\\sigma^2";
    case Cliff::IS3: return "i\\sigma^3";
  }
  return "?";
}

}  // namespace conftorus::sym
