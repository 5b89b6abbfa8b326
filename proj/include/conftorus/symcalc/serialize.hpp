#pragma once

#include "json.hpp"
#include <sstream>
#include <string>

#include "conftorus/symcalc/symbol_poly.hpp"

namespace conftorus::sym {

/// Generator tags of a key in word order, including the xi and Clifford parts.
inline std::vector<std::string> key_tags(const Key& k) {
  std::vector<std::string> out;
  if (k.cl != Cliff::One) out.emplace_back(cliff_tag(k.cl));
  for (int j = 0; j < 2; ++j)
    if (k.xi[j] != 0) out.push_back("xi" + std::to_string(j + 1) + "^" + std::to_string(k.xi[j]));
  if (k.xisq != 0) out.push_back("xisq^" + std::to_string(k.xisq));
  if (k.lam != 0) out.push_back("lam^" + std::to_string(k.lam));
  for (const auto& g : k.word.generators()) out.push_back(g.tag());
  return out;
}

inline std::string key_string(const Key& k) {
  std::string s;
  for (const auto& t : key_tags(k)) {
    if (!s.empty()) s += ' ';
    s += t;
  }
  return s.empty() ? "1" : s;
}

inline std::string poly_string(const SymbolPoly& p) {
  std::ostringstream os;
  for (const auto& [k, c] : p.terms()) os << to_string(c) << "  " << key_string(k) << '\n';
  return os.str();
}

/// Deterministic JSON: the term map is already sorted by key.
inline nlohmann::json to_json(const SymbolPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, c] : p.terms()) {
    nlohmann::json t;
    t["coeff"] = to_string(c);
    t["clifford"] = std::string(cliff_tag(k.cl));
    t["xi"] = {k.xi[0], k.xi[1]};
    t["xisq"] = k.xisq;
    if (k.lam != 0) t["lam"] = k.lam;
    nlohmann::json word = nlohmann::json::array();
    for (const auto& g : k.word.generators()) word.push_back(g.tag());
    t["word"] = std::move(word);
    terms.push_back(std::move(t));
  }
  return terms;
}

inline std::string generator_latex(const Generator& g) {
  auto idx = [](int i) { return std::to_string(i); };
  switch (g.kind) {
    case GenKind::Hpow: return g.a == 1 ? "H" : "H^{" + idx(g.a) + "}";
    case GenKind::DeltaH: return "\\delta_" + idx(g.a) + "(H)";
    case GenKind::HessH: return "\\delta_" + idx(g.a) + "\\delta_" + idx(g.b) + "(H)";
    case GenKind::LapH: return "\\Delta(H)";
    case GenKind::A: return "A_" + idx(g.a);
    case GenKind::DeltaA: return "\\delta_" + idx(g.b) + "(A_" + idx(g.a) + ")";
    case GenKind::B0pow: return g.a == 1 ? "b_0" : "b_0^{" + idx(g.a) + "}";
  }
  return "?";
}

inline std::string to_latex(const SymbolPoly& p) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : p.terms()) {
    const bool neg = c < 0;
    const Rational a = neg ? Rational(-c) : c;
    os << (neg ? " - " : (first ? "" : " + "));
    first = false;
    if (denominator(a) != 1) os << "\\frac{" << numerator(a) << "}{" << denominator(a) << "} ";
    else if (a != 1) os << numerator(a) << ' ';
    os << cliff_latex(k.cl);
    for (int j = 0; j < 2; ++j)
      if (k.xi[j] != 0) os << "\\xi_" << j + 1 << (k.xi[j] > 1 ? "^{" + std::to_string(k.xi[j]) + "}" : "") << ' ';
    if (k.xisq != 0) os << "(\\xi^2)" << (k.xisq > 1 ? "^{" + std::to_string(k.xisq) + "}" : "") << ' ';
    for (const auto& g : k.word.generators()) os << generator_latex(g) << ' ';
  }
  return first ? "0" : os.str();
}

}  // namespace conftorus::sym
