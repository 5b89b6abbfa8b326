#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "conftorus/error.hpp"

namespace conftorus::chern {

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Chart of a sampled field. Sphere: u = theta at midpoints (i + 1/2) pi / nu,
/// v = phi = 2 pi j / nv. Torus: u = i / nu, v = j / nv, both periodic.
enum class Chart { Sphere, Torus };

struct ProjectionField {
  Chart chart{Chart::Torus};
  int nu{0}, nv{0};
  std::vector<Matrix> values;  // row-major in (i, j)
  int orientation{+1};         // +1 if du ^ dv is positive on the surface

  const Matrix& at(int i, int j) const { return values[static_cast<std::size_t>(i) * nv + j]; }
  double u(int i) const { return chart == Chart::Sphere ? (i + 0.5) * std::numbers::pi / nu : double(i) / nu; }
  double v(int j) const { return chart == Chart::Sphere ? 2 * std::numbers::pi * j / nv : double(j) / nv; }
  double du() const { return chart == Chart::Sphere ? std::numbers::pi / nu : 1.0 / nu; }
  double dv() const { return chart == Chart::Sphere ? 2 * std::numbers::pi / nv : 1.0 / nv; }
};

struct ProjectionResiduals {
  double idempotency{0}, hermiticity{0};
  int rank_min{0}, rank_max{0};
  bool ok(double tol = 1e-10) const { return idempotency <= tol && hermiticity <= tol && rank_min == rank_max; }
};

inline ProjectionResiduals validate(const ProjectionField& P) {
  ProjectionResiduals r;
  r.rank_min = 1 << 30;
  for (const auto& p : P.values) {
    r.idempotency = std::max(r.idempotency, (p * p - p).cwiseAbs().maxCoeff());
    r.hermiticity = std::max(r.hermiticity, (p.adjoint() - p).cwiseAbs().maxCoeff());
    const int rank = static_cast<int>(std::lround(p.trace().real()));
    r.rank_min = std::min(r.rank_min, rank);
    r.rank_max = std::max(r.rank_max, rank);
  }
  return r;
}

inline ProjectionField sample(Chart chart, int nu, int nv, const std::function<Matrix(double, double)>& fn) {
  if (nu < 4 || nv < 4) throw InputError("grid must be at least 4 x 4");
  if (chart == Chart::Sphere && nv % 2) throw InputError("sphere grids need an even number of longitudes");
  ProjectionField P{chart, nu, nv, {}, +1};
  P.values.reserve(static_cast<std::size_t>(nu) * nv);
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) P.values.push_back(fn(P.u(i), P.v(j)));
  return P;
}

/// p = (1 + x.sigma) / 2 at the point of S^2 with polar angle theta, azimuth phi.
inline Matrix bott_matrix(double theta, double phi) {
  const double x1 = std::sin(theta) * std::cos(phi), x2 = std::sin(theta) * std::sin(phi), x3 = std::cos(theta);
  Matrix p(2, 2);
  p << 1 + x3, cd(x1, x2), cd(x1, -x2), 1 - x3;
  return p / 2.0;
}

inline ProjectionField bott_projection(int ntheta, int nphi) { return sample(Chart::Sphere, ntheta, nphi, bott_matrix); }

// ---------------------------------------------------------------------------
// bump triples

/// f, g, h on (0, 1) with g h = 0 and f^2 + g^2 + h^2 = f.
struct BumpTriple {
  std::function<double(double)> f, g, h;
  double eps{0.1};
};

inline double smoothstep5(double x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  return x * x * x * (10 - 15 * x + 6 * x * x);
}

/// f = sin^2(pi S / 2) and g (resp. h) = sin(pi S / 2) cos(pi S / 2), i.e.
/// sqrt(f (1 - f)), with S a quintic smoothstep rising on [eps + m, 1/2 - m]
/// and falling on [1/2 + m, 1 - eps - m].
inline BumpTriple shipped_bumps(double eps = 0.1) {
  const double m = 0.05;
  const double a0 = eps + m, a1 = 0.5 - m, b0 = 0.5 + m, b1 = 1 - eps - m;
  auto S = [=](double t) {
    if (t < 0.5) return smoothstep5((t - a0) / (a1 - a0));
    return 1 - smoothstep5((t - b0) / (b1 - b0));
  };
  BumpTriple b;
  b.eps = eps;
  b.f = [S](double t) { return std::pow(std::sin(std::numbers::pi * S(t) / 2), 2); };
  b.g = [S](double t) { return t < 0.5 ? std::sin(std::numbers::pi * S(t) / 2) * std::cos(std::numbers::pi * S(t) / 2) : 0.0; };
  b.h = [S](double t) { return t < 0.5 ? 0.0 : std::sin(std::numbers::pi * S(t) / 2) * std::cos(std::numbers::pi * S(t) / 2); };
  return b;
}

struct BumpCheck {
  double gh{0}, quadratic{0}, boundary{0};
  bool ok(double tol = 1e-12) const { return gh <= tol && quadratic <= tol && boundary <= tol; }
};

inline BumpCheck check_bumps(const BumpTriple& b, int samples = 4001) {
  BumpCheck c;
  for (int q = 1; q < samples; ++q) {
    const double t = double(q) / samples;
    const double f = b.f(t), g = b.g(t), h = b.h(t);
    c.gh = std::max(c.gh, std::abs(g * h));
    c.quadratic = std::max(c.quadratic, std::abs(f * f + g * g + h * h - f));
    if (t < b.eps || t > 1 - b.eps) c.boundary = std::max({c.boundary, std::abs(f), std::abs(g), std::abs(h)});
  }
  return c;
}

inline Matrix torus_matrix(const BumpTriple& b, double t, double s) {
  const cd e = std::polar(1.0, 2 * std::numbers::pi * s);
  const double f = b.f(t), g = b.g(t), h = b.h(t);
  Matrix p(2, 2);
  p << f, h + g * e, h + g * std::conj(e), 1 - f;
  return p;
}

/// Samples the projection on the (t, s) grid of S^1 x (0, 1), oriented as a
/// product (ds ^ dt). Throws if the triple violates its constraints or the
/// sampled field is not a projection.
inline ProjectionField make_torus_projection(const BumpTriple& b, int nt, int ns) {
  const BumpCheck c = check_bumps(b);
  if (!c.ok())
    throw VerificationError("bump triple violates its constraints (max |g h| = " + std::to_string(c.gh) +
                            ", max |f^2 + g^2 + h^2 - f| = " + std::to_string(c.quadratic) + ")");
  ProjectionField P = sample(Chart::Torus, nt, ns, [&b](double t, double s) { return torus_matrix(b, t, s); });
  P.orientation = -1;
  const ProjectionResiduals r = validate(P);
  if (!r.ok()) throw VerificationError("sampled torus field is not a projection");
  return P;
}

/// The closed-form density 4 g g' f - 4 g^2 f' - 2 g g' on supp g. It is the
/// coefficient of ds ^ dt (minus that of dt ^ ds).
inline double reference_torus_density(const BumpTriple& b, double t, double dt = 1e-5) {
  const double g = b.g(t), f = b.f(t);
  const double gp = (b.g(t + dt) - b.g(t - dt)) / (2 * dt), fp = (b.f(t + dt) - b.f(t - dt)) / (2 * dt);
  return 4 * g * gp * f - 4 * g * g * fp - 2 * g * gp;
}

// ---------------------------------------------------------------------------
// Chern density

/// Fourth-order central difference along u (with pole reflection on the sphere) and v.
inline Matrix d_u(const ProjectionField& P, int i, int j) {
  auto val = [&](int ii) -> const Matrix& {
    int jj = j;
    if (P.chart == Chart::Sphere) {
      // theta reflected through a pole lands on the opposite meridian
      if (ii < 0) {
        ii = -ii - 1;
        jj = (j + P.nv / 2) % P.nv;
      } else if (ii >= P.nu) {
        ii = 2 * P.nu - ii - 1;
        jj = (j + P.nv / 2) % P.nv;
      }
    } else {
      ii = ((ii % P.nu) + P.nu) % P.nu;
    }
    return P.at(ii, jj);
  };
  // p(-theta, phi) = p(theta, phi + pi) continues the meridian smoothly through the pole
  return (val(i - 2) - 8.0 * val(i - 1) + 8.0 * val(i + 1) - val(i + 2)) / (12 * P.du());
}

inline Matrix d_v(const ProjectionField& P, int i, int j) {
  auto val = [&](int jj) -> const Matrix& { return P.at(i, ((jj % P.nv) + P.nv) % P.nv); };
  return (val(j - 2) - 8.0 * val(j - 1) + 8.0 * val(j + 1) - val(j + 2)) / (12 * P.dv());
}

/// (1 / 2 pi i) Tr(p [d_u p, d_v p]), the coefficient of du ^ dv.
inline std::vector<double> chern_density(const ProjectionField& P) {
  std::vector<double> out;
  out.reserve(P.values.size());
  for (int i = 0; i < P.nu; ++i)
    for (int j = 0; j < P.nv; ++j) {
      const Matrix pu = d_u(P, i, j), pv = d_v(P, i, j);
      const cd c = (P.at(i, j) * (pu * pv - pv * pu)).trace() / cd(0, 2 * std::numbers::pi);
      out.push_back(c.real());
    }
  return out;
}

/// Integral of the density over the oriented surface (midpoint rule in u, periodic in v).
inline double chern_number_density(const ProjectionField& P) {
  const std::vector<double> d = chern_density(P);
  double s = 0.0;
  for (double x : d) s += x;
  return P.orientation * s * P.du() * P.dv();
}

}  // namespace conftorus::chern
