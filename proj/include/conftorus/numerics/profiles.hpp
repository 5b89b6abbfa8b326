#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "conftorus/numerics/matrix_function.hpp"
#include "conftorus/numerics/zeta.hpp"

namespace conftorus::num {

/// A conformal profile h = U H U^*, or H with an explicit gauge field A.
struct Profile {
  std::string name;
  int n{1};
  MatrixFunction H;
  MatrixFunction h;                                  // U H U^*
  std::optional<std::array<MatrixFunction, 2>> A;  // when set, the operator is H (D + sigma.A) H
  std::optional<std::array<MatrixFunction, 2>> gauge;  // U^* delta_j U, when U is nonconstant
};

namespace detail {

inline Eigen::Matrix2cd sx() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}
inline Eigen::Matrix2cd sy() {
  Eigen::Matrix2cd m;
  m << 0, cd(0, -1), cd(0, 1), 0;
  return m;
}
// exp(i a S) for an involution S
inline Matrix expi(double a, const Eigen::Matrix2cd& S) {
  return Matrix(Eigen::Matrix2cd::Identity() * std::cos(a) + S * cd(0, std::sin(a)));
}
inline Matrix Hdiag(double x1, double x2) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::exp(0.3 * std::cos(2 * std::numbers::pi * x1));
  m(1, 1) = std::exp(0.2 * std::sin(2 * std::numbers::pi * x2));
  return m;
}

}  // namespace detail

/// Shipped profiles P1..P4. P3 and P4 need n = 2.
inline Profile make_profile(const std::string& name, int n) {
  using std::numbers::pi;
  if (n < 1) throw InputError("n must be positive");
  Profile p;
  p.name = name;
  p.n = n;
  if (name == "P1") {
    p.H = p.h = MatrixFunction::identity(n);
  } else if (name == "P2") {
    p.H = MatrixFunction::from_samples(n, [n](double x1, double) {
      return Matrix(Matrix::Identity(n, n) * std::exp(0.3 * std::cos(2 * pi * x1)));
    });
    p.h = p.H;
  } else if (name == "P3" || name == "P4") {
    if (n != 2) throw InputError("profile " + name + " is defined for n = 2");
    p.H = MatrixFunction::from_samples(2, detail::Hdiag);
    if (name == "P3") {
      // U = exp(i pi cos(2 pi x2) sx / 4); U^* delta_2 U = -2 pi^2 sin(2 pi x2) sx / 4
      p.h = MatrixFunction::from_samples(2, [](double x1, double x2) {
        const Matrix U = detail::expi(pi * std::cos(2 * pi * x2) / 4, detail::sx());
        return Matrix(U * detail::Hdiag(x1, x2) * U.adjoint());
      });
      p.gauge = std::array<MatrixFunction, 2>{
          MatrixFunction(2), MatrixFunction::from_samples(2, [](double, double x2) {
            return Matrix(detail::sx() * (-2 * pi * pi * std::sin(2 * pi * x2) / 4));
          })};
    } else {
      // A_1 = V^* delta_1 V for V = exp(i pi sin(2 pi x1) sy / 4); U = Id.
      p.h = p.H;
      p.A = std::array<MatrixFunction, 2>{MatrixFunction::from_samples(2, [](double x1, double) {
                                            return Matrix(detail::sy() * (2 * pi * pi * std::cos(2 * pi * x1) / 4));
                                          }),
                                          MatrixFunction(2)};
    }
  } else {
    throw InputError("unknown profile '" + name + "' (expected P1, P2, P3, P4)");
  }
  return p;
}

// ---------------------------------------------------------------------------
// key-value profile files
//
//   name = custom
//   n = 2
//   H 0 0 = 1 0 0 1            # row-major entries of the (k1, k2) coefficient
//   H 1 0 = 0.1 0 0 0.1        # complex entries as re:im, e.g. 0.5:-0.2
//   U 0 1 = ...                # optional; h = U H U^*
//   A1 1 0 = ...               # optional; operator H (D + sigma.A) H

inline cd parse_complex(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) return {std::stod(s), 0.0};
  return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
}

inline Profile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open profile file '" + path + "'");
  std::map<std::string, MatrixFunction> fields;
  std::string name = "custom";
  int n = 0;
  static const std::regex coeff(R"(^\s*(H|U|A1|A2)\s+(-?\d+)\s+(-?\d+)\s*=\s*(.*)$)");
  static const std::regex kv(R"(^\s*(\w+)\s*=\s*(\S+)\s*$)");
  std::string line;
  int lineno = 0;
  std::vector<std::tuple<std::string, int, int, std::vector<cd>>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::smatch m;
    if (std::regex_match(line, m, coeff)) {
      std::istringstream vals(m[4].str());
      std::vector<cd> v;
      for (std::string t; vals >> t;) v.push_back(parse_complex(t));
      rows.emplace_back(m[1].str(), std::stoi(m[2].str()), std::stoi(m[3].str()), std::move(v));
    } else if (std::regex_match(line, m, kv)) {
      if (m[1] == "name") name = m[2].str();
      else if (m[1] == "n") n = std::stoi(m[2].str());
      else throw InputError(path + ":" + std::to_string(lineno) + ": unknown key '" + m[1].str() + "'");
    } else {
      throw InputError(path + ":" + std::to_string(lineno) + ": cannot parse line");
    }
  }
  if (n <= 0) throw InputError(path + ": missing or invalid 'n'");
  for (auto& [f, k1, k2, v] : rows) {
    if (static_cast<int>(v.size()) != n * n) throw InputError(path + ": coefficient of " + f + " needs n*n entries");
    Matrix c(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) c(i, j) = v[i * n + j];
    auto [it, ins] = fields.try_emplace(f, n);
    it->second.add_mode(k1, k2, c);
  }
  if (!fields.count("H")) throw InputError(path + ": no H coefficients");
  Profile p;
  p.name = name;
  p.n = n;
  p.H = fields.at("H");
  if (!p.H.is_hermitian()) throw InputError(path + ": H is not Hermitian-valued");
  p.h = p.H;
  if (fields.count("U")) {
    const MatrixFunction& U = fields.at("U");
    p.h = U * p.H * U.adjoint();
  }
  if (fields.count("A1") || fields.count("A2"))
    p.A = std::array<MatrixFunction, 2>{fields.count("A1") ? fields.at("A1") : MatrixFunction(n),
                                        fields.count("A2") ? fields.at("A2") : MatrixFunction(n)};
  return p;
}

// ---------------------------------------------------------------------------
// Gauss-Bonnet runs

/// The operator a profile defines: h D h, or H (D + sigma.A) H.
inline TruncatedOperator profile_operator(const Profile& p, int N, int guard = -1) {
  return p.A ? assemble_HDA(p.H, *p.A, N, guard) : assemble_rescaled(p.h, N, guard);
}

inline double profile_weyl(const Profile& p) { return weyl_coefficient(p.A ? p.H : p.h); }

struct GBRow {
  int N;
  int dim;
  HeatTraceFit fit_D;
  HeatTraceFit fit_Dh;
  double compression_error;
  double runtime;  // seconds
};

struct GBReport {
  std::string profile;
  int n;
  std::vector<GBRow> rows;
  double zeta_D{0}, zeta_Dh{0};  // extrapolated
  double lo{0}, hi{0};           // extrapolated bracket of zeta(D_h) - zeta(D)
  double tolerance{0.05};
  double difference() const { return zeta_Dh - zeta_D; }
  bool pass() const { return std::abs(difference()) <= tolerance; }
};

inline GBRow gauss_bonnet_row(const Profile& p, int N, int guard, const FitOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  GBRow r;
  r.N = N;
  r.fit_D = zeta_at_zero(dirac_spectrum(N, p.n), N, 2.0 * p.n / (4 * std::numbers::pi), o);
  const TruncatedOperator op = profile_operator(p, N, guard);
  r.dim = op.basis.dim();
  r.compression_error = op.compression_error;
  r.fit_Dh = zeta_at_zero(op, profile_weyl(p), o);
  r.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline GBReport gauss_bonnet_summary(const Profile& p, std::vector<GBRow> rows, double tol) {
  GBReport rep;
  rep.profile = p.name;
  rep.n = p.n;
  rep.tolerance = tol;
  rep.rows = std::move(rows);
  std::vector<int> Ns;
  std::vector<double> zd, zh, dlo, dhi;
  for (const auto& r : rep.rows) {
    Ns.push_back(r.N);
    zd.push_back(r.fit_D.zeta0);
    zh.push_back(r.fit_Dh.zeta0);
    dlo.push_back(r.fit_Dh.lo - r.fit_D.hi);
    dhi.push_back(r.fit_Dh.hi - r.fit_D.lo);
  }
  rep.zeta_D = richardson(Ns, zd);
  rep.zeta_Dh = richardson(Ns, zh);
  const double a = richardson(Ns, dlo), b = richardson(Ns, dhi);
  rep.lo = std::min({a, b, rep.difference()});
  rep.hi = std::max({a, b, rep.difference()});
  return rep;
}

inline GBReport gauss_bonnet_report(const Profile& p, const std::vector<int>& Ns, int guard, const FitOptions& o,
                                    double tol = 0.05) {
  std::vector<GBRow> rows;
  for (int N : Ns) rows.push_back(gauss_bonnet_row(p, N, guard, o));
  return gauss_bonnet_summary(p, std::move(rows), tol);
}

/// Largest distance between the `count` smallest-magnitude eigenvalues of h D h
/// and of H (D + U^* [D, U]) H. The two truncations differ near the cutoff, so
/// only the low spectrum is compared.
inline double gauge_spectral_distance(const Profile& p, int N, int count = 40) {
  if (!p.gauge) throw InputError("profile " + p.name + " has no gauge field");
  auto low = [count](std::vector<double> ev) {
    std::sort(ev.begin(), ev.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
    ev.resize(std::min<std::size_t>(ev.size(), count));
    std::sort(ev.begin(), ev.end());
    return ev;
  };
  const std::vector<double> a = low(eigenvalues(assemble_rescaled(p.h, N).mat));
  const std::vector<double> b = low(eigenvalues(assemble_HDA(p.H, *p.gauge, N).mat));
  double d = 0.0;
  for (std::size_t q = 0; q < a.size(); ++q) d = std::max(d, std::abs(a[q] - b[q]));
  return d;
}

}  // namespace conftorus::num
