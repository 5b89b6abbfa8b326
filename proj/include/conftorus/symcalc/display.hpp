#pragma once

#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "conftorus/symcalc/normal_form.hpp"
#include "conftorus/symcalc/serialize.hpp"
#include "conftorus/symcalc/symbol_poly.hpp"

namespace conftorus::sym {

/// Parses one reference term into a symbol, summing repeated index letters over
/// {1, 2}. Grammar (space separated factors, optional leading rational):
///
///   H  h  H^m  b0  b0^k  dH(i)  ddH(i,j)  LapH  A(i)  dA(i,j)  xi(i)  xisq  xisq^k
///   eps(i,j)  S1  S2  IS3  sigma(i)
///
/// dA(i,j) is delta_j(A_i). Indices are letters (summed) or the digits 1, 2.
inline SymbolPoly parse_term(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  if (tokens.empty()) throw InputError("empty display term");

  Rational coeff = 1;
  std::size_t start = 0;
  static const std::regex number(R"(^([+-]?)(\d+)(?:/(\d+))?$)");
  std::smatch m;
  if (tokens[0] == "-" || tokens[0] == "+") {
    if (tokens[0] == "-") coeff = -1;
    start = 1;
  }
  if (start < tokens.size() && std::regex_match(tokens[start], m, number)) {
    Rational v(boost::multiprecision::cpp_int(m[2].str()));
    if (m[3].matched) v /= Rational(boost::multiprecision::cpp_int(m[3].str()));
    if (m[1].str() == "-") v = -v;
    coeff *= v;
    ++start;
  }

  struct Factor {
    std::string head;
    std::vector<std::string> args;
    int power{1};
  };
  static const std::regex factor(R"(^([A-Za-z]+[0-9]?)(?:\(([^)]*)\))?(?:\^(-?\d+))?$)");
  std::vector<Factor> factors;
  std::set<char> letters;
  for (std::size_t q = start; q < tokens.size(); ++q) {
    if (!std::regex_match(tokens[q], m, factor)) throw InputError("cannot parse factor '" + tokens[q] + "'");
    Factor f{m[1].str(), {}, m[3].matched ? std::stoi(m[3].str()) : 1};
    if (m[2].matched) {
      std::stringstream args(m[2].str());
      for (std::string a; std::getline(args, a, ',');) {
        if (a.size() != 1) throw InputError("bad index '" + a + "'");
        if (std::isalpha(static_cast<unsigned char>(a[0]))) letters.insert(a[0]);
        f.args.push_back(a);
      }
    }
    factors.push_back(std::move(f));
  }

  const std::vector<char> idx(letters.begin(), letters.end());
  SymbolPoly out;
  const int combos = 1 << idx.size();
  for (int mask = 0; mask < combos; ++mask) {
    std::map<char, int> val;
    for (std::size_t q = 0; q < idx.size(); ++q) val[idx[q]] = ((mask >> q) & 1) + 1;
    auto ix = [&](const std::string& a) { return std::isdigit(static_cast<unsigned char>(a[0])) ? a[0] - '0' : val.at(a[0]); };

    Rational c = coeff;
    Cliff cl = Cliff::One;
    std::array<int, 2> xi{};
    int xisq = 0;
    std::vector<Generator> gens;
    auto cliff = [&](Cliff e) {
      auto [sgn, r] = cliff_mul(cl, e);
      cl = r;
      if (sgn < 0) c = -c;
    };
    for (const auto& f : factors) {
      const std::string& h = f.head;
      if (h == "H" || h == "h") gens.push_back(Generator::hpow(f.power));
      else if (h == "b0") gens.push_back(Generator::b0pow(f.power));
      else if (h == "dH") gens.push_back(Generator::dh(ix(f.args.at(0))));
      else if (h == "ddH") gens.push_back(Generator::hess(ix(f.args.at(0)), ix(f.args.at(1))));
      else if (h == "LapH") gens.push_back(Generator::lap());
      else if (h == "A") gens.push_back(Generator::gauge(ix(f.args.at(0))));
      else if (h == "dA") gens.push_back(Generator::dgauge(ix(f.args.at(0)), ix(f.args.at(1))));
      else if (h == "xi") xi[ix(f.args.at(0)) - 1] += f.power;
      else if (h == "xisq") xisq += f.power;
      else if (h == "eps") {
        const int a = ix(f.args.at(0));
        const int b = ix(f.args.at(1));
        c *= a == b ? 0 : (a == 1 ? 1 : -1);
      } else if (h == "S1") cliff(Cliff::S1);
      else if (h == "S2") cliff(Cliff::S2);
      else if (h == "IS3") cliff(Cliff::IS3);
      else if (h == "sigma") cliff(sigma(ix(f.args.at(0))));
      else throw InputError("unknown factor '" + h + "'");
      if (h != "H" && h != "h" && h != "b0" && h != "xi" && h != "xisq" && f.power != 1)
        for (int e = 1; e < f.power; ++e) {
          if (h == "dH") gens.push_back(Generator::dh(ix(f.args.at(0))));
          else throw InputError("powers only allowed on H, b0, xi, xisq and dH");
        }
    }
    if (c != 0) out += SymbolPoly::from_generators(c, cl, xi, xisq, gens);
  }
  return out;
}

/// A reference formula as a list of terms, plus the computed symbol it should equal.
struct Display {
  std::string name;
  std::vector<std::string> terms;
};

struct TermStatus {
  std::string term;
  bool match;
};

struct DisplayReport {
  std::string name;
  std::vector<TermStatus> terms;
  std::vector<std::string> unmatched_computed;  // computed terms absent from the display
  bool exact{false};                           // display equals computed term for term
  bool equivalent{false};                      // equal as functions of xi
  int matched() const {
    int k = 0;
    for (const auto& t : terms) k += t.match ? 1 : 0;
    return k;
  }
};

inline DisplayReport compare_display(const Display& d, const SymbolPoly& computed) {
  DisplayReport r;
  r.name = d.name;
  std::vector<SymbolPoly> parsed;
  SymbolPoly total;
  for (const auto& t : d.terms) {
    parsed.push_back(parse_term(t));
    total += parsed.back();
  }
  for (std::size_t q = 0; q < d.terms.size(); ++q) {
    bool ok = !parsed[q].empty();
    for (const auto& [k, c] : parsed[q].terms()) {
      auto it = computed.terms().find(k);
      auto jt = total.terms().find(k);
      if (it == computed.terms().end() || jt == total.terms().end() || it->second != jt->second) ok = false;
    }
    r.terms.push_back({d.terms[q], ok});
  }
  for (const auto& [k, c] : computed.terms()) {
    auto it = total.terms().find(k);
    if (it == total.terms().end() || it->second != c) r.unmatched_computed.push_back(to_string(c) + " " + key_string(k));
  }
  r.exact = total == computed;
  r.equivalent = NormalForm(total - computed).is_zero();
  return r;
}

/// Reference formulas, term by term.
namespace displays {

inline Display a1() {
  return {"a1",
          {"2 eps(i,j) IS3 H^3 dH(i) xi(j)", "4 H^3 dH(i) xi(i)", "-1 eps(i,j) IS3 H^3 A(i) H xi(j)",
           "H^3 A(i) H xi(i)", "eps(i,j) IS3 H A(i) H^3 xi(j)", "H A(i) H^3 xi(i)"}};
}

inline Display a0() {
  return {"a0",
          {"H^4 LapH", "H^3 A(j) dH(i)", "-1 H^3 IS3 eps(i,j) A(i) dH(j)", "H^3 dA(i,i) H",
           "IS3 H^3 eps(i,j) dA(i,j) H", "2 H^2 dH(i) dH(i)", "2 H^2 dH(i) A(i) H", "2 H A(i) H^2 dH(i)",
           "2 IS3 H^2 eps(i,j) dH(i) A(j) H", "IS3 eps(i,j) H A(i) H^2 dH(i)", "IS3 eps(i,j) H A(i) H^2 A(j)",
           "H A(i) H^2 A(i) H"}};
}

inline Display b2_pure() {
  return {"b2 (A-independent)",
          {"96 b0^5 dH(i) dH(i) H^14 xisq^3", "-136 b0^4 dH(i) dH(i) H^10 xisq^2", "46 b0^3 dH(i) dH(i) H^6 xisq",
           "-2 b0^2 dH(i) dH(i) H^2", "-8 b0^4 LapH H^11 xisq^2", "8 b0^3 LapH H^7 xisq", "-1 b0^2 LapH H^3"}};
}

inline Display b2_linear() {
  return {"b2 (linear in A)",
          {"-1 b0 h A(i) b0 dH(i) H^2", "5 b0 h A(i) b0^2 dH(i) H^6 xisq", "-4 b0 h A(i) b0^3 dH(i) H^10 xisq^2",
           "-1 b0 H^3 A(i) b0 dH(i)", "7 b0 H^3 A(i) b0^2 dH(i) H^4 xisq", "-4 b0 H^3 A(i) b0^3 dH(i) H^8 xisq^2",
           "3 b0^2 H^5 A(i) b0 dH(i) H^2 xisq", "-4 b0^2 H^5 A(i) b0^2 dH(i) H^6 xisq^2",
           "b0^2 H^7 A(i) b0 dH(i) xisq", "-4 b0^2 H^7 A(i) b0^2 dH(i) H^4 xisq^2",
           // second reference form
           "-2 b0 dH(i) H^2 A(i) b0 H", "2 b0^2 dH(i) H^4 A(i) b0 H^3 xisq", "6 b0^2 dH(i) H^6 A(i) b0 H xisq",
           "-4 b0^3 dH(i) H^8 A(i) b0 H^3 xisq^2", "-4 b0^3 dH(i) H^10 A(i) b0 H xisq^2"}};
}

inline Display b2_delta() {
  return {"b2 (delta A)",
          {"-1 b0 H^3 dA(i,i) b0 H", "b0^2 H^5 dA(i,i) b0 H^3 xisq", "b0^2 H^7 dA(i,i) b0 H xisq"}};
}

inline Display b2_quadratic() {
  return {"b2 (quadratic in A)",
          {"-1 b0 H A(i) H^2 A(i) b0 H", "b0 H A(i) b0 H^6 A(i) b0 H xisq", "b0 H^3 A(i) b0 H^2 A(i) b0 H^3 xisq"}};
}

}  // namespace displays

}  // namespace conftorus::sym
