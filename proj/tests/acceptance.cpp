// Acceptance suite: one PASS/FAIL line per criterion. Failures listed in
// kDocumented are known, explained in the README, and do not fail the run.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "conftorus/chern/mesh.hpp"
#include "conftorus/numerics/profiles.hpp"
#include "conftorus/verify/symbolic.hpp"

using namespace conftorus;

namespace {

struct Outcome {
  bool pass{false};
  std::string detail;
};

const std::set<int> kDocumented = {4};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const verify::Check* find(const verify::Report& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

Outcome parametrix() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (bool withA : {false, true}) {
    const sym::ASymbols a = sym::build_a_symbols(withA);
    ok = ok && sym::check_parametrix(a, sym::build_b_symbols(a)).ok();
  }
  const double t = seconds_since(t0);
  return {ok && t < 10, fmt("orders 0, -1, -2 vanish with and without A: %s; %.2f s", ok ? "yes" : "no", t)};
}

Outcome display() {
  const sym::SymbolPoly b2 = sym::build_b_symbols(sym::build_a_symbols(false)).b2;
  const sym::DisplayReport r = sym::compare_display(sym::displays::b2_pure(), xi::traced_average(b2));
  return {r.exact, fmt("%d/%zu terms matched, no extra computed terms: %s", r.matched(), r.terms.size(),
                       r.unmatched_computed.empty() ? "yes" : "no")};
}

Outcome curvature(const verify::Report& rep) {
  const verify::Check* c = find(rep, "R(H) coefficients");
  const verify::Check* d = find(rep, "R(H) is a total derivative");
  const bool ok = c && c->pass && d && d->pass;
  return {ok, c ? c->detail + (d && d->pass ? "; total derivative" : "") : "check missing"};
}

Outcome spectral_functions() {
  const auto t0 = std::chrono::steady_clock::now();
  const double g1 = specfun::eval_G(1.0), f1 = specfun::eval_F(1.0);
  double anti = 0.0, qf = 0.0, refl = 0.0;
  for (double s : num::log_grid(1e-3, 1e3, 50)) {
    anti = std::max(anti, std::abs(specfun::eval_F(1 / s) + specfun::eval_F(s)));
    qf = std::max(qf, std::abs(specfun::eval_Q(s, 1.0) - specfun::eval_F(s)));
    refl = std::max(refl, std::abs(specfun::eval_F(1 / s) + s * specfun::eval_F(s)) / std::max(1.0, s));
  }
  const bool g_ok = std::abs(g1 - 2.0 / 3) <= 1e-12, f_ok = std::abs(f1) <= 1e-12, a_ok = anti <= 1e-12, q_ok = qf <= 1e-12;
  const double t = seconds_since(t0);
  return {g_ok && f_ok && a_ok && q_ok && t < 1,
          fmt("G(1) = %.12f (%s); F(1) = %g (%s); max|F(1/s)+F(s)| = %.3g (%s); max|Q(s,1)-F(s)| = %.2g (%s); "
              "max|F(1/s)+sF(s)|/max(1,s) = %.2g; %.3f s",
              g1, g_ok ? "ok" : "FAIL", f1, f_ok ? "ok" : "FAIL", anti, a_ok ? "ok" : "FAIL", qf, q_ok ? "ok" : "FAIL",
              refl, t)};
}

Outcome oracle(const xi::DensityParts& parts) {
  const auto r = verify::oracle_sweep(parts, 20, 20240611);
  return {r.worst <= 1e-8, fmt("%d instances (n = 2, 3), worst relative error %.2e", r.instances, r.worst)};
}

Outcome cancellations(const xi::DensityParts& parts) {
  const auto r = verify::trace_cancellations(parts, 100, 20240612);
  const double worst = std::max({r.linear, r.delta, r.quadratic});
  return {worst <= 1e-10, fmt("100 instances: linear %.1e, delta(A) %.1e, quadratic %.1e", r.linear, r.delta, r.quadratic)};
}

Outcome flat_torus() {
  const double oracle = num::epstein_zeta(0.0);  // per spinor-flavour pair of modes
  std::ostringstream os;
  bool ok = true;
  // the dense solver reproduces the block spectrum
  {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> dense = num::eigenvalues(num::build_dirac(16, 1).mat), exact = num::dirac_spectrum(16, 1);
    double dev = 0.0;
    for (std::size_t q = 0; q < dense.size(); ++q) dev = std::max(dev, std::abs(dense[q] - exact[q]));
    ok = ok && dev < 1e-9;
    os << fmt("dense N=16 spectrum deviation %.1e (%.1f s); ", dev, seconds_since(t0));
  }
  for (int n : {1, 2}) {
    const num::HeatTraceFit f = num::zeta_at_zero(num::dirac_spectrum(16, n), 16, 2.0 * n / (4 * std::numbers::pi));
    const double target = 2 * n * oracle;
    const bool in = f.lo <= target && target <= f.hi && f.width() <= 0.05;
    ok = ok && in;
    os << fmt("n=%d: zeta(0) = %.6f, bracket [%.6f, %.6f], oracle %.6f; ", n, f.zeta0, f.lo, f.hi, target);
  }
  return {ok, os.str()};
}

Outcome gauss_bonnet() {
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream os;
  bool ok = true;
  for (const char* name : {"P2", "P3", "P4"}) {
    const num::Profile p = num::make_profile(name, 2);
    const num::GBReport r = num::gauss_bonnet_report(p, {8, 12, 16}, -1, {});
    ok = ok && r.pass();
    os << fmt("%s: %+.4f [%+.4f, %+.4f]; ", name, r.difference(), r.lo, r.hi);
  }
  const double t = seconds_since(t0);
  os << fmt("%.0f s", t);
  return {ok && t <= 1800, os.str()};
}

Outcome chern_numbers() {
  namespace ch = chern;
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream os;
  bool ok = true;
  auto near = [&](double v, double want) {
    const bool b = std::abs(v - want) <= 1e-3;
    ok = ok && b;
    return v;
  };
  const ch::ProjectionField bott = ch::bott_projection(100, 200);
  os << fmt("Bott %.6f / %.6f; ", near(ch::chern_number_density(bott), -1), near(ch::plaquette_chern(ch::mesh_for(bott), bott.values), -1));
  const ch::ProjectionField torus = ch::make_torus_projection(ch::shipped_bumps(), 400, 64);
  os << fmt("torus %.6f / %.6f; ", near(ch::chern_number_density(torus), -1),
            near(ch::plaquette_chern(ch::mesh_for(torus), torus.values), -1));
  const ch::ProjectionField tube = ch::make_torus_projection(ch::shipped_bumps(), 64, 32);
  const ch::SurfaceMesh S = ch::genus_mesh(2, 128, 32);
  os << fmt("genus 2 %.6f; ", near(ch::plaquette_chern(S.mesh.reversed(), ch::embed_in_surface(tube, S, 0)), -1));
  {
    const ch::ProjectionField H = ch::sample(ch::Chart::Sphere, 100, 200, [](double t, double p) {
      return ch::Matrix(ch::Matrix::Identity(2, 2) + ch::bott_matrix(t, p));
    });
    const ch::ChernReport r = ch::diagonalizability_verdict(ch::mesh_for(H), H.values);
    const bool b = r.bands.size() == 2 && r.bands[0].chern_int == 1 && r.bands[1].chern_int == -1 && !r.diagonalizable;
    ok = ok && b;
    os << fmt("1+p bands (%+.3f, %+.3f) %s; ", r.bands[0].chern, r.bands[1].chern, r.diagonalizable ? "diagonalizable" : "not diagonalizable");
  }
  {
    const ch::ProjectionField H = ch::sample(ch::Chart::Torus, 48, 48, [](double x1, double x2) {
      const double th = 0.7 * std::sin(2 * std::numbers::pi * x1) + 0.4 * std::cos(2 * std::numbers::pi * x2);
      ch::Matrix U(2, 2), D = ch::Matrix::Zero(2, 2);
      U << std::cos(th), std::sin(th), -std::sin(th), std::cos(th);
      D(0, 0) = 1;
      D(1, 1) = 2;
      return ch::Matrix(U * D * U.adjoint());
    });
    const ch::ChernReport r = ch::diagonalizability_verdict(ch::mesh_for(H), H.values);
    bool zeros = true;
    for (const auto& b : r.bands) zeros = zeros && b.chern_int == 0;
    ok = ok && zeros && r.diagonalizable;
    os << fmt("global frame bands (%+.3f, %+.3f) %s; ", r.bands[0].chern, r.bands[1].chern, r.diagonalizable ? "diagonalizable" : "not diagonalizable");
  }
  const double t = seconds_since(t0);
  os << fmt("%.1f s", t);
  return {ok && t <= 60, os.str()};
}

Outcome negative_controls() {
  int total = 0, caught = 0;
  std::string missed;
  for (const char* s : {"a2", "a1", "a0", "b0", "b1", "b2"}) {
    const int n = verify::term_count(s);
    for (int q = 0; q < n; ++q) {
      ++total;
      const verify::Report r = verify::symbols_verify(verify::Perturbation{s, q});
      // criterion 1 (parametrix) or criterion 2 (b2 display) must notice
      const verify::Check* p0 = find(r, "parametrix (A = 0)");
      const verify::Check* p1 = find(r, "parametrix (with A)");
      const verify::Check* d = find(r, "b2 (A-independent) display");
      const bool seen = !r.identities_hold() && ((p0 && !p0->pass) || (p1 && !p1->pass) || (d && !d->pass));
      if (seen) ++caught;
      else missed += std::string(" ") + s + ":" + std::to_string(q);
    }
  }
  chern::BumpTriple broken = chern::shipped_bumps();
  broken.h = [](double t) { return t > 0.2 && t < 0.8 ? 0.1 : 0.0; };
  bool rejected = false;
  try {
    chern::make_torus_projection(broken, 64, 16);
  } catch (const VerificationError&) {
    rejected = true;
  }
  return {caught == total && rejected,
          fmt("%d/%d single-term perturbations detected%s; overlapping g, h rejected: %s", caught, total,
              missed.empty() ? "" : (" (missed" + missed + ")").c_str(), rejected ? "yes" : "no")};
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const verify::Report rep = verify::symbols_verify();
  const xi::DensityParts parts = xi::curvature_pipeline();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"parametrix identity", parametrix},
      {"b2 display reproduction", display},
      {"curvature R(H)", [&] { return curvature(rep); }},
      {"spectral-function identities", spectral_functions},
      {"oracle equivalence", [&] { return oracle(parts); }},
      {"trace cancellations", [&] { return cancellations(parts); }},
      {"flat-torus zeta(0)", flat_torus},
      {"Gauss-Bonnet at desk scale", gauss_bonnet},
      {"Chern numbers", chern_numbers},
      {"negative controls", negative_controls},
  };
  int unexpected = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const bool documented = !o.pass && kDocumented.count(id);
    if (!o.pass && !documented) ++unexpected;
    std::printf("criterion %2d %-30s %s  %s\n", id, criteria[k].first, o.pass ? "PASS" : (documented ? "FAIL (documented)" : "FAIL"),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("total %.0f s; %d undocumented failure(s)\n", seconds_since(t0), unexpected);
  return unexpected == 0 ? 0 : 1;
}
