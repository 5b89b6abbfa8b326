#include <gtest/gtest.h>

#include <random>

#include "conftorus/symcalc/display.hpp"
#include "conftorus/symcalc/parametrix.hpp"
#include "conftorus/verify/symbolic.hpp"

using namespace conftorus::sym;

TEST(Clifford, TableIsAssociativeAndTraced) {
  const Cliff all[] = {Cliff::One, Cliff::S1, Cliff::S2, Cliff::IS3};
  for (Cliff a : all)
    for (Cliff b : all)
      for (Cliff c : all) {
        const auto ab = cliff_mul(a, b), abc = cliff_mul(ab.element, c);
        const auto bc = cliff_mul(b, c), a_bc = cliff_mul(a, bc.element);
        EXPECT_EQ(abc.element, a_bc.element);
        EXPECT_EQ(ab.sign * abc.sign, bc.sign * a_bc.sign);
      }
  EXPECT_EQ(cliff_trace(Cliff::One), 2);
  EXPECT_EQ(cliff_trace(Cliff::S1), 0);
  EXPECT_EQ(cliff_trace(Cliff::IS3), 0);
  // s1 s2 = i s3, (i s3)^2 = -1
  EXPECT_EQ(cliff_mul(Cliff::S1, Cliff::S2).element, Cliff::IS3);
  EXPECT_EQ(cliff_mul(Cliff::IS3, Cliff::IS3).sign, -1);
}

TEST(Clifford, TraceDropsSigmaTerms) {
  const SymbolPoly m = parse_term("H^2 dH(1)");
  EXPECT_TRUE(clifford_trace(SymbolPoly::from_generators(1, Cliff::IS3, {}, 0, {Generator::hpow(2)})).empty());
  EXPECT_EQ(clifford_trace(m), m * Rational(2));
}

TEST(Symbols, CommutationDiscipline) {
  // H-blocks commute among themselves ...
  const auto a = SymbolPoly::from_generators(1, Cliff::One, {}, 0, {Generator::hpow(1), Generator::dh(1), Generator::hpow(-1)});
  const auto b = SymbolPoly::from_generators(1, Cliff::One, {}, 0, {Generator::dh(1)});
  EXPECT_EQ(a, b);
  // ... but not across a gauge letter
  const auto c = SymbolPoly::from_generators(1, Cliff::One, {}, 0, {Generator::hpow(1), Generator::gauge(1), Generator::hpow(-1)});
  const auto d = SymbolPoly::from_generators(1, Cliff::One, {}, 0, {Generator::gauge(1)});
  EXPECT_NE(c, d);
  // and two gauge letters keep their order
  const auto e = SymbolPoly::from_generators(1, Cliff::One, {}, 0, {Generator::gauge(1), Generator::hpow(2), Generator::gauge(2)});
  const auto f = SymbolPoly::from_generators(1, Cliff::One, {}, 0, {Generator::gauge(2), Generator::hpow(2), Generator::gauge(1)});
  EXPECT_NE(e, f);
}

TEST(Symbols, LaplacianExpands) {
  EXPECT_EQ(parse_term("LapH").size(), 2u);
  EXPECT_EQ(parse_term("LapH"), parse_term("ddH(1,1)") + parse_term("ddH(2,2)"));
}

TEST(Symbols, DerivativeIsLeibniz) {
  std::mt19937 rng(7);
  const char* terms[] = {"H^3 dH(1)", "H^-2 dH(2) dH(2)", "H A(1) H^2", "b0^2 H^4 xisq"};
  for (const char* p : terms)
    for (const char* q : terms) {
      const SymbolPoly P = parse_term(p), Q = parse_term(q);
      for (int k = 1; k <= 2; ++k) EXPECT_EQ((P * Q).dx(k), P.dx(k) * Q + P * Q.dx(k)) << p << " * " << q;
    }
}

TEST(Parametrix, VanishesThroughOrderMinusTwo) {
  for (bool withA : {false, true}) {
    const ASymbols a = build_a_symbols(withA);
    const BSymbols b = build_b_symbols(a);
    const ParametrixCheck pc = check_parametrix(a, b);
    EXPECT_TRUE(pc.ok()) << "with A: " << withA;
  }
}

TEST(Parametrix, PrincipalSymbol) {
  const ASymbols a = build_a_symbols(false);
  EXPECT_EQ(a.a2, parse_term("H^4 xi(i) xi(i)"));
  EXPECT_TRUE(equivalent(a.a2, parse_term("H^4 xisq")));
}

TEST(Parametrix, SplitPartitionsB2) {
  const BSymbols b = build_b_symbols(build_a_symbols(true));
  const ASplit s = split_by_A_degree(b.b2);
  EXPECT_EQ(s.total(), b.b2);
  EXPECT_EQ(s.deg0, build_b_symbols(build_a_symbols(false)).b2);
}

TEST(Displays, PureB2MatchesSevenTerms) {
  const BSymbols b = build_b_symbols(build_a_symbols(false));
  const SymbolPoly traced = conftorus::xi::traced_average(b.b2);
  const DisplayReport r = compare_display(displays::b2_pure(), traced);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.matched(), 7);
}

TEST(Displays, GaugeDependentParts) {
  const BSymbols b = build_b_symbols(build_a_symbols(true));
  const ASplit s = split_by_A_degree(b.b2);
  EXPECT_TRUE(compare_display(displays::b2_linear(), conftorus::xi::traced_average(s.linA)).exact);
  EXPECT_TRUE(compare_display(displays::b2_delta(), conftorus::xi::traced_average(s.linDA)).exact);
  EXPECT_TRUE(compare_display(displays::b2_quadratic(), conftorus::xi::traced_average(s.quadA)).exact);
}

TEST(Displays, FirstOrderSymbol) {
  const ASymbols a = build_a_symbols(true);
  EXPECT_TRUE(compare_display(displays::a1(), a.a1).exact);
}

TEST(Displays, ParserRejectsGarbage) {
  EXPECT_THROW(parse_term("H^ dH(1"), conftorus::InputError);
  EXPECT_THROW(parse_term(""), conftorus::InputError);
}

TEST(NegativeControl, SampledPerturbationsAreDetected) {
  // the full sweep over every term runs in the acceptance suite
  std::mt19937 rng(11);
  for (const char* s : {"a2", "a1", "a0", "b0", "b1", "b2"}) {
    const int n = conftorus::verify::term_count(s);
    ASSERT_GT(n, 0);
    const int term = std::uniform_int_distribution<int>(0, n - 1)(rng);
    const auto rep = conftorus::verify::symbols_verify(conftorus::verify::Perturbation{s, term});
    EXPECT_FALSE(rep.identities_hold()) << s << ":" << term;
  }
}

TEST(NegativeControl, CleanRunHolds) { EXPECT_TRUE(conftorus::verify::symbols_verify().identities_hold()); }
