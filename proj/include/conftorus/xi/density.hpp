#pragma once

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "conftorus/specfun/spectral.hpp"
#include "conftorus/symcalc/parametrix.hpp"
#include "conftorus/xi/angular.hpp"
#include "conftorus/xi/radial.hpp"
#include "json.hpp"

namespace conftorus::xi {

using Matrix = Eigen::MatrixXcd;
using cd = std::complex<double>;
using specfun::Fn;

/// Raised when a b2 term does not fit the H^a Phi(Delta)(X) H^b grammar.
class NonFactorableError : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

/// A commuting monomial H^h prod delta_i(H) prod delta_i delta_j(H).
struct PureHKey {
  int hpow{0};
  std::array<int, 2> dh{};
  std::array<int, 3> hess{};
  auto operator<=>(const PureHKey&) const = default;
};

/// Coefficients are rational multiples of pi.
using PureH = std::map<PureHKey, Rational>;

enum class Slot { A, DeltaA, AA };
enum class Mult { None, DHLeft, DHRight };

inline std::string slot_name(Slot s) {
  switch (s) {
    case Slot::A: return "A_i";
    case Slot::DeltaA: return "delta_i(A_i)";
    case Slot::AA: return "A_i.A_i";
  }
  return "?";
}
inline std::string mult_name(Mult m) {
  switch (m) {
    case Mult::None: return "none";
    case Mult::DHLeft: return "left";
    case Mult::DHRight: return "right";
  }
  return "?";
}

/// coeff * pi * sum_i H^alpha [dH_i] Phi(Delta)(X_i) [dH_i] H^beta,
/// with the delta_i(H) factor on the side given by mult. For the two-slot
/// case X_i = A_i H^mid . A_i and Phi acts as Q(Delta1, Delta2).
struct SandwichTerm {
  Rational coeff;
  int alpha{0};
  Mult mult{Mult::None};
  Fn fn{Fn::G};
  Slot slot{Slot::A};
  int mid{0};
  int beta{0};
  double fit_residual{0.0};
};

struct CurvatureDensity {
  PureH pureH;
  std::vector<SandwichTerm> sandwich;

  CurvatureDensity& operator+=(const CurvatureDensity& o) {
    for (const auto& [k, c] : o.pureH) {
      pureH[k] += c;
      if (pureH[k] == 0) pureH.erase(k);
    }
    sandwich.insert(sandwich.end(), o.sandwich.begin(), o.sandwich.end());
    return *this;
  }
};

/// Pointwise data in an eigenbasis of H: H = diag(lambda), dh[j] = diag of
/// delta_j(H), hess[slot] = diag of delta_i delta_j(H), A[i] = A_i and
/// dA[i][j] = delta_j(A_i).
struct PointData {
  std::vector<double> lambda;
  std::array<std::vector<cd>, 2> dh;
  std::array<std::vector<cd>, 3> hess;
  std::array<Matrix, 2> A;
  std::array<std::array<Matrix, 2>, 2> dA;

  std::size_t n() const { return lambda.size(); }
};

// ---------------------------------------------------------------------------
// pure-H part

/// Exact xi-integration of the traced, averaged A-independent b2:
/// int d^2xi b0^m H^p (xi^2)^k = pi B(k+1, m-k-1) H^{p - 4(k+1)}.
inline CurvatureDensity integrate_pureH(const sym::SymbolPoly& deg0) {
  CurvatureDensity out;
  for (const auto& [k, c] : deg0.terms()) {
    if (!k.word.letters.empty()) throw NonFactorableError("pure-H integration got a term containing A");
    if (k.cl != sym::Cliff::One || k.xi != std::array<int, 2>{}) throw NonFactorableError("input is not traced and averaged");
    const sym::Block& b = k.word.blocks.front();
    const int m = b.b0;
    PureHKey key{b.h - 4 * (k.xisq + 1), b.dh, b.hess};
    out.pureH[key] += c * beta(k.xisq + 1, m - k.xisq - 1);
  }
  std::erase_if(out.pureH, [](const auto& kv) { return kv.second == 0; });
  return out;
}

// ---------------------------------------------------------------------------
// entrywise quadrature oracle

/// Evaluates int d^2xi of a traced, averaged symbol at a point, entry by entry
/// in the eigenbasis, with numerical radial quadrature. Independent of the
/// closed-form spectral functions.
inline Matrix oracle_evaluate(const sym::SymbolPoly& part, const PointData& d) {
  const int n = static_cast<int>(d.n());
  Matrix out = Matrix::Zero(n, n);
  for (const auto& [key, c] : part.terms()) {
    if (key.cl != sym::Cliff::One || key.xi != std::array<int, 2>{}) throw NonFactorableError("oracle needs traced, averaged input");
    const auto& blocks = key.word.blocks;
    const auto& letters = key.word.letters;
    const int r = static_cast<int>(letters.size());
    std::vector<int> idx(r + 1, 0);
    const double coeff = c.convert_to<double>();
    // enumerate slot indices i_0 .. i_r
    for (;;) {
      cd value = coeff * std::numbers::pi;
      std::vector<RadialFactor> factors;
      for (int p = 0; p <= r; ++p) {
        const sym::Block& b = blocks[p];
        const int i = idx[p];
        value *= std::pow(d.lambda[i], b.h);
        for (int j = 0; j < 2; ++j) value *= std::pow(d.dh[j][i], b.dh[j]);
        for (int s = 0; s < 3; ++s) value *= std::pow(d.hess[s][i], b.hess[s]);
        factors.push_back({std::pow(d.lambda[i], 4), b.b0});
        if (p < r) {
          const sym::Letter& l = letters[p];
          const Matrix& X = l.derivative ? d.dA[l.comp - 1][l.dir - 1] : d.A[l.comp - 1];
          value *= X(i, idx[p + 1]);
        }
      }
      if (value != cd(0)) value *= radial_quadrature(key.xisq, factors);
      out(idx.front(), idx.back()) += value;
      int p = r;
      while (p >= 0 && ++idx[p] == n) idx[p--] = 0;
      if (p < 0) break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// sandwich factoring

namespace detail {

struct Shape {
  Slot slot;
  Mult mult;
};

// Classifies a term and returns its direction index i, or throws.
inline std::pair<Shape, int> classify(const sym::Key& k) {
  const auto& L = k.word.letters;
  const auto& B = k.word.blocks;
  for (const auto& b : B)
    if (b.hess != std::array<int, 3>{}) throw NonFactorableError("second derivatives of H next to A");
  if (L.size() == 1 && !L[0].derivative) {
    const int i = L[0].comp;
    const int left = B[0].dh[0] + B[0].dh[1];
    const int right = B[1].dh[0] + B[1].dh[1];
    if (left + right != 1) throw NonFactorableError("linear A term without a single delta(H)");
    const sym::Block& carrier = left == 1 ? B[0] : B[1];
    if (carrier.dh[i - 1] != 1) throw NonFactorableError("uncontracted index in linear A term");
    return {{Slot::A, left == 1 ? Mult::DHLeft : Mult::DHRight}, i};
  }
  if (L.size() == 1 && L[0].derivative) {
    if (L[0].comp != L[0].dir) throw NonFactorableError("uncontracted delta(A) term");
    for (const auto& b : B)
      if (b.has_derivatives()) throw NonFactorableError("delta(A) term with delta(H)");
    return {{Slot::DeltaA, Mult::None}, L[0].comp};
  }
  if (L.size() == 2 && !L[0].derivative && !L[1].derivative) {
    if (L[0].comp != L[1].comp) throw NonFactorableError("uncontracted quadratic term");
    for (const auto& b : B)
      if (b.has_derivatives()) throw NonFactorableError("quadratic term with delta(H)");
    return {{Slot::AA, Mult::None}, L[0].comp};
  }
  throw NonFactorableError("term outside the sandwich grammar");
}

// lambda-degree of a term after integration, not counting delta(H).
inline int degree(const sym::Key& k) {
  int d = -4 * (k.xisq + 1);
  for (const auto& b : k.word.blocks) d += b.h;
  return d;
}

inline std::optional<Rational> recognise(double x) {
  for (int den : {1, 2, 3, 4, 6, 12}) {
    const double num = std::round(x * den);
    if (std::abs(num / den - x) < 1e-9) return Rational(static_cast<long long>(num), den);
  }
  return std::nullopt;
}

}  // namespace detail

/// Integrates one A-dependent part and factors it. The two directions i = 1, 2
/// must carry identical coefficients; each shape's entrywise function is
/// evaluated by quadrature at sample points and matched against the candidate
/// spectral functions of the right arity.
inline CurvatureDensity integrate_sandwich(const sym::SymbolPoly& part) {
  using detail::Shape;
  struct Bucket {
    Shape shape;
    sym::SymbolPoly terms[2];
  };
  std::vector<Bucket> buckets;
  auto bucket_of = [&](Shape s) -> Bucket& {
    for (auto& b : buckets)
      if (b.shape.slot == s.slot && b.shape.mult == s.mult) return b;
    buckets.push_back({s, {}});
    return buckets.back();
  };
  for (const auto& [k, c] : part.terms()) {
    if (k.cl != sym::Cliff::One || k.xi != std::array<int, 2>{}) throw NonFactorableError("input is not traced and averaged");
    auto [shape, i] = detail::classify(k);
    bucket_of(shape).terms[i - 1].add(k, c);
  }

  // Direction symmetry: swapping 1 <-> 2 maps one family onto the other.
  auto swap_dir = [](const sym::SymbolPoly& p) {
    sym::SymbolPoly out;
    for (const auto& [k, c] : p.terms()) {
      sym::Key n = k;
      for (auto& l : n.word.letters) {
        l.comp = 3 - l.comp;
        if (l.derivative) l.dir = 3 - l.dir;
      }
      for (auto& b : n.word.blocks) std::swap(b.dh[0], b.dh[1]);
      out.add(n, c);
    }
    return out;
  };

  CurvatureDensity out;
  for (const auto& b : buckets) {
    if (!(swap_dir(b.terms[0]) == b.terms[1])) throw NonFactorableError("directions 1 and 2 differ in " + slot_name(b.shape.slot));
    const sym::SymbolPoly& P = b.terms[0];
    std::optional<int> deg;
    for (const auto& [k, c] : P.terms()) {
      const int d = detail::degree(k);
      if (deg && *deg != d) throw NonFactorableError("inhomogeneous H-degree");
      deg = d;
    }
    SandwichTerm st;
    st.slot = b.shape.slot;
    st.mult = b.shape.mult;
    st.beta = (st.mult == Mult::DHRight) ? 0 : 1;
    st.mid = (st.slot == Slot::AA) ? 2 : 0;
    st.alpha = *deg - st.beta - st.mid;

    // Sample Phi on a set of eigenvalue configurations with lambda_i = 1.
    std::vector<std::pair<double, double>> pts;
    std::vector<double> phi;
    const std::vector<double> grid{0.05, 0.3, 0.7, 1.6, 2.5, 7.0, 40.0};
    for (double s : grid) {
      if (st.slot != Slot::AA) {
        PointData d;
        d.lambda = {1.0, std::pow(s, 0.25)};
        d.dh[0] = {1.0, 1.0};
        d.dh[1] = {0.0, 0.0};
        d.hess = {std::vector<cd>{0, 0}, std::vector<cd>{0, 0}, std::vector<cd>{0, 0}};
        Matrix X = Matrix::Zero(2, 2);
        X(0, 1) = 1.0;
        d.A = {X, Matrix::Zero(2, 2)};
        d.dA = {{{X, Matrix::Zero(2, 2)}, {Matrix::Zero(2, 2), Matrix::Zero(2, 2)}}};
        const cd v = oracle_evaluate(P, d)(0, 1);
        pts.emplace_back(s, 1.0);
        phi.push_back(v.real() / std::pow(d.lambda[1], st.beta));
      } else {
        for (double t : {0.4, 1.0, 3.0}) {
          PointData d;
          d.lambda = {1.0, std::pow(s, 0.25), std::pow(t, 0.25)};
          d.dh = {std::vector<cd>(3, 0.0), std::vector<cd>(3, 0.0)};
          d.hess = {std::vector<cd>(3, 0.0), std::vector<cd>(3, 0.0), std::vector<cd>(3, 0.0)};
          Matrix X = Matrix::Zero(3, 3);
          X(0, 1) = 1.0;
          X(1, 2) = 1.0;
          d.A = {X, Matrix::Zero(3, 3)};
          d.dA = {{{Matrix::Zero(3, 3), Matrix::Zero(3, 3)}, {Matrix::Zero(3, 3), Matrix::Zero(3, 3)}}};
          const cd v = oracle_evaluate(P, d)(0, 2);
          pts.emplace_back(s, t);
          phi.push_back(v.real() / (std::pow(d.lambda[1], st.mid) * std::pow(d.lambda[2], st.beta)));
        }
      }
    }

    double best = INFINITY;
    for (Fn f : {Fn::G, Fn::F, Fn::Fd, Fn::Q}) {
      if ((specfun::arity(f) == 2) != (st.slot == Slot::AA)) continue;
      double num = 0, den = 0, scale = 0;
      std::vector<double> fv;
      for (auto [s, t] : pts) fv.push_back(specfun::eval(f, s, t));
      for (std::size_t q = 0; q < fv.size(); ++q) {
        num += phi[q] * fv[q];
        den += fv[q] * fv[q];
        scale = std::max(scale, std::abs(phi[q]));
      }
      const double c = num / den;
      double res = 0;
      for (std::size_t q = 0; q < fv.size(); ++q) res = std::max(res, std::abs(phi[q] - c * fv[q]));
      res /= scale;
      if (res < best) {
        best = res;
        st.fn = f;
        const auto r = detail::recognise(c / std::numbers::pi);
        st.coeff = r ? *r : Rational(0);
      }
    }
    st.fit_residual = best;
    if (best > 1e-9 || st.coeff == 0)
      throw NonFactorableError("no spectral function matches the " + slot_name(st.slot) + " part");
    out.sandwich.push_back(st);
  }
  return out;
}

// ---------------------------------------------------------------------------
// evaluation

inline Matrix diag(const std::vector<cd>& v) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) m(i, i) = v[i];
  return m;
}
inline Matrix hpow(const std::vector<double>& l, int p) {
  std::vector<cd> v;
  for (double x : l) v.emplace_back(std::pow(x, p));
  return diag(v);
}

/// Evaluates a density at a point (pi included, no further normalization).
inline Matrix evaluate(const CurvatureDensity& R, const PointData& d) {
  const auto n = static_cast<Eigen::Index>(d.n());
  Matrix out = Matrix::Zero(n, n);
  for (const auto& [k, c] : R.pureH) {
    std::vector<cd> v(d.n());
    for (std::size_t i = 0; i < d.n(); ++i) {
      cd x = std::pow(d.lambda[i], k.hpow);
      for (int j = 0; j < 2; ++j) x *= std::pow(d.dh[j][i], k.dh[j]);
      for (int s = 0; s < 3; ++s) x *= std::pow(d.hess[s][i], k.hess[s]);
      v[i] = x;
    }
    out += diag(v) * (c.convert_to<double>() * std::numbers::pi);
  }
  const specfun::DeltaAction act(d.lambda);
  for (const auto& st : R.sandwich) {
    const double c = st.coeff.convert_to<double>() * std::numbers::pi;
    for (int i = 0; i < 2; ++i) {
      Matrix core;
      switch (st.slot) {
        case Slot::A: core = specfun::apply(st.fn, act, d.A[i]); break;
        case Slot::DeltaA: core = specfun::apply(st.fn, act, d.dA[i][i]); break;
        case Slot::AA: core = specfun::apply(st.fn, act, d.A[i] * hpow(d.lambda, st.mid), d.A[i]); break;
      }
      Matrix left = hpow(d.lambda, st.alpha);
      Matrix right = hpow(d.lambda, st.beta);
      if (st.mult == Mult::DHLeft) left = left * diag(d.dh[i]);
      if (st.mult == Mult::DHRight) right = diag(d.dh[i]) * right;
      out += c * left * core * right;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// pipeline

struct DensityParts {
  sym::ASplit traced;  // half Clifford trace, angularly averaged
  CurvatureDensity pureH, linA, linDA, quadA;
  CurvatureDensity total() const {
    CurvatureDensity t = pureH;
    t += linA;
    t += linDA;
    t += quadA;
    return t;
  }
};

/// From b2 (with A) to all four densities.
inline DensityParts curvature_from_b2(const sym::SymbolPoly& b2) {
  const sym::ASplit split = sym::split_by_A_degree(b2);
  DensityParts out;
  out.traced = {traced_average(split.deg0), traced_average(split.linA), traced_average(split.linDA),
                traced_average(split.quadA)};
  out.pureH = integrate_pureH(out.traced.deg0);
  out.linA = integrate_sandwich(out.traced.linA);
  out.linDA = integrate_sandwich(out.traced.linDA);
  out.quadA = integrate_sandwich(out.traced.quadA);
  return out;
}

inline DensityParts curvature_pipeline() {
  return curvature_from_b2(sym::build_b_symbols(sym::build_a_symbols(true)).b2);
}

// ---------------------------------------------------------------------------
// serialization

inline std::string pureH_tag(const PureHKey& k) {
  std::string s = "H^" + std::to_string(k.hpow);
  for (int j = 0; j < 2; ++j)
    for (int e = 0; e < k.dh[j]; ++e) s += " dH" + std::to_string(j + 1);
  for (int q = 0; q < 3; ++q)
    for (int e = 0; e < k.hess[q]; ++e) {
      auto [a, b] = sym::hess_indices(q);
      s += " ddH" + std::to_string(a) + std::to_string(b);
    }
  return s;
}

inline nlohmann::json to_json(const CurvatureDensity& R) {
  nlohmann::json j;
  j["pureH"] = nlohmann::json::array();
  for (const auto& [k, c] : R.pureH) j["pureH"].push_back({{"term", pureH_tag(k)}, {"coeff_of_pi", sym::to_string(c)}});
  j["sandwich"] = nlohmann::json::array();
  for (const auto& s : R.sandwich)
    j["sandwich"].push_back({{"coeff_of_pi", sym::to_string(s.coeff)},
                             {"alpha", s.alpha},
                             {"dH", mult_name(s.mult)},
                             {"function", specfun::name(s.fn)},
                             {"argument", slot_name(s.slot)},
                             {"mid", s.mid},
                             {"beta", s.beta},
                             {"fit_residual", s.fit_residual}});
  return j;
}

inline std::string describe(const SandwichTerm& s) {
  auto H = [](int p) { return p == 0 ? std::string() : "H^" + std::to_string(p) + " "; };
  std::string out = sym::to_string(s.coeff) + " pi sum_i " + H(s.alpha);
  if (s.mult == Mult::DHLeft) out += "dH_i ";
  out += specfun::name(s.fn) + "(Delta)(";
  out += s.slot == Slot::AA ? "A_i " + H(s.mid) + ". A_i" : slot_name(s.slot);
  out += ") ";
  if (s.mult == Mult::DHRight) out += "dH_i ";
  out += H(s.beta);
  return out;
}

}  // namespace conftorus::xi
