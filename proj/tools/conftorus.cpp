// Command-line entry point. Exit codes: 0 pass, 2 verification failure,
// 3 numerical-quality failure, 4 input error.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <regex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "conftorus/chern/mesh.hpp"
#include "conftorus/numerics/profiles.hpp"
#include "conftorus/specfun/spectral.hpp"
#include "conftorus/verify/symbolic.hpp"
#include "conftorus/version.hpp"
#include "conftorus/xi/field.hpp"
#include "json.hpp"

using nlohmann::json;
namespace ct = conftorus;

namespace {

enum Exit { kPass = 0, kVerification = 2, kNumerical = 3, kInput = 4 };

// Every report carries the resolved configuration of its run.
json envelope(const std::string& command, const json& config) {
  return {{"tool", "conftorus"}, {"version", ct::kVersion}, {"command", command}, {"config", config}};
}

void emit(const json& report, const std::string& out, const CLI::App& app) {
  if (out.empty()) return;
  if (out == "-") {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw ct::InputError("cannot write '" + out + "'");
  f << report.dump(2) << "\n";
  // A config file that reproduces this run (read back with --config).
  std::ofstream c(out + ".config.toml");
  c << app.config_to_str(true, false);
}

int workers() {
  if (const char* w = std::getenv("CONFTORUS_WORKERS")) {
    try {
      return std::max(1, std::stoi(w));
    } catch (const std::exception&) {
      throw ct::InputError("CONFTORUS_WORKERS must be an integer");
    }
  }
  return 1;
}

// Runs jobs[0..n) on a bounded pool; results land in their own slots.
template <class Job>
void parallel_for(int n, Job job) {
  const int w = std::min(workers(), n);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex m;
  auto run = [&] {
    for (int q; (q = next++) < n;) {
      try {
        job(q);
      } catch (...) {
        std::lock_guard lock(m);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < w; ++t) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw ct::InputError("not an integer list: '" + s + "'");
    }
  }
  if (out.empty()) throw ct::InputError("empty integer list");
  return out;
}

std::pair<int, int> parse_grid(const std::string& s) {
  std::smatch m;
  if (!std::regex_match(s, m, std::regex(R"((\d+)[xX](\d+))"))) throw ct::InputError("grid must look like 200x100");
  return {std::stoi(m[1].str()), std::stoi(m[2].str())};
}

// ---------------------------------------------------------------------------
// symbols-verify

struct SymbolsArgs {
  std::string perturb;
  unsigned seed{20240611};
  int instances{100};
  std::string out;
};

int cmd_symbols_verify(const SymbolsArgs& a, const CLI::App& app) {
  std::optional<ct::verify::Perturbation> pert;
  if (!a.perturb.empty()) {
    const auto colon = a.perturb.find(':');
    if (colon == std::string::npos) throw ct::InputError("--perturb expects symbol:index, e.g. b2:17");
    pert = ct::verify::Perturbation{a.perturb.substr(0, colon), std::stoi(a.perturb.substr(colon + 1))};
  }
  ct::verify::Report rep = ct::verify::symbols_verify(pert);
  if (!pert && rep.identities_hold()) {
    // pointwise checks of the assembled densities
    const ct::xi::DensityParts parts = ct::xi::curvature_pipeline();
    const auto sweep = ct::verify::oracle_sweep(parts, 20, a.seed);
    ct::verify::Check o{"oracle equivalence (xi-quadrature)", sweep.worst <= 1e-8, true};
    o.detail = "worst relative error " + std::to_string(sweep.worst) + " over " + std::to_string(sweep.instances) + " instances";
    rep.checks.push_back(o);
    const auto tc = ct::verify::trace_cancellations(parts, a.instances, a.seed);
    ct::verify::Check t{"trace cancellations", std::max({tc.linear, tc.delta, tc.quadratic}) <= 1e-10, true};
    std::ostringstream os;
    os << "max |Tr| linear " << tc.linear << ", delta(A) " << tc.delta << ", quadratic " << tc.quadratic;
    t.detail = os.str();
    rep.checks.push_back(t);
  }
  for (const auto& c : rep.checks) {
    const char* status = c.pass ? "MATCH" : (c.identity ? "FAIL" : "MISMATCH");
    std::printf("%-40s %-9s %s\n", c.name.c_str(), status, c.detail.c_str());
  }
  json report = envelope("symbols-verify", {{"perturb", a.perturb}, {"seed", a.seed}, {"instances", a.instances}});
  report["checks"] = rep.to_json();
  report["identities_hold"] = rep.identities_hold();
  emit(report, a.out, app);
  return rep.identities_hold() ? kPass : kVerification;
}

// ---------------------------------------------------------------------------
// curvature

struct ProfileArgs {
  std::string profile{"P2"};
  std::string profile_file;
  int n{2};
};

ct::num::Profile resolve_profile(const ProfileArgs& p) {
  return p.profile_file.empty() ? ct::num::make_profile(p.profile, p.n) : ct::num::load_profile(p.profile_file);
}

json profile_config(const ProfileArgs& p) {
  return p.profile_file.empty() ? json{{"profile", p.profile}, {"n", p.n}} : json{{"profile_file", p.profile_file}};
}

struct CurvatureArgs {
  ProfileArgs prof;
  int grid{128};
  std::string csv, out;
};

int cmd_curvature(const CurvatureArgs& a, const CLI::App& app) {
  const ct::num::Profile p = resolve_profile(a.prof);
  if (a.grid < 4) throw ct::InputError("--grid must be at least 4");
  // h = U H U^* is handled through its gauge field when U is nonconstant.
  std::optional<std::array<ct::num::MatrixFunction, 2>> A = p.A ? p.A : p.gauge;
  ct::num::MatrixFunction diff = p.h + p.H * ct::num::cd(-1);
  diff.prune(1e-12);
  if (!A && !diff.coeffs().empty())
    throw ct::InputError("profile has a nonconstant U without a gauge field; list A1/A2 explicitly");
  const ct::xi::DensityParts parts = ct::xi::curvature_pipeline();
  const ct::xi::CurvatureDensity R = parts.total();
  const ct::xi::FieldData F(p.H, A);
  const double integral = ct::xi::torus_integral(R, F, a.grid);
  std::printf("density: %zu pure-H terms, %zu sandwich terms\n", R.pureH.size(), R.sandwich.size());
  std::printf("int Tr R over the torus (%dx%d grid): %.3e\n", a.grid, a.grid, integral);
  if (!a.csv.empty()) ct::xi::write_density_csv(a.csv, R, F, a.grid);
  json cfg = profile_config(a.prof);
  cfg["grid"] = a.grid;
  json report = envelope("curvature", cfg);
  report["density"] = ct::xi::to_json(R);
  report["parts"] = {{"pureH", ct::xi::to_json(parts.pureH)},
                     {"linear", ct::xi::to_json(parts.linA)},
                     {"delta_A", ct::xi::to_json(parts.linDA)},
                     {"quadratic", ct::xi::to_json(parts.quadA)}};
  report["integral_trace"] = integral;
  emit(report, a.out, app);
  return kPass;
}

// ---------------------------------------------------------------------------
// specfun

struct SpecfunArgs {
  std::string fn{"G"};
  double s{1.0}, t{1.0};
  double from{1e-3}, to{1e3};
  int points{50};
  std::string csv;
};

int cmd_specfun_eval(const SpecfunArgs& a) {
  const ct::specfun::Fn f = ct::specfun::parse_fn(a.fn);
  std::printf("%.15g\n", ct::specfun::eval(f, a.s, a.t));
  return kPass;
}

int cmd_specfun_table(const SpecfunArgs& a) {
  const ct::specfun::Fn f = ct::specfun::parse_fn(a.fn);
  if (a.from <= 0 || a.to <= a.from || a.points < 2) throw ct::InputError("need 0 < from < to and points >= 2");
  std::ofstream file;
  if (!a.csv.empty()) {
    file.open(a.csv);
    if (!file) throw ct::InputError("cannot write '" + a.csv + "'");
  }
  std::ostream& out = a.csv.empty() ? std::cout : file;
  out.precision(17);
  out << "s" << (ct::specfun::arity(f) == 2 ? ",t" : "") << "," << ct::specfun::name(f) << "\n";
  for (const double s : ct::num::log_grid(a.from, a.to, a.points)) {
    out << s;
    if (ct::specfun::arity(f) == 2) out << "," << a.t;
    out << "," << ct::specfun::eval(f, s, a.t) << "\n";
  }
  return kPass;
}

// ---------------------------------------------------------------------------
// zeta / gb-check

struct ZetaArgs {
  ProfileArgs prof;
  std::string Ns{"8,12,16"};
  std::string guard{"auto"};
  double c_lo{40}, c_hi{0.02};
  int points{25};
  bool no_linear{false};
  double tol{0.05};
  std::string trace_csv, out;
};

json fit_json(const ct::num::HeatTraceFit& f) {
  return {{"zeta0", f.zeta0}, {"bracket", {f.lo, f.hi}}, {"c_minus1", f.cm1}, {"c1", f.c1}, {"c2", f.c2},
          {"kernel_dim", f.kernel_dim}, {"gray_zone", f.gray_zone}, {"rms", f.rms}};
}

ct::num::GBReport run_zeta(const ZetaArgs& a, json& cfg) {
  const ct::num::Profile p = resolve_profile(a.prof);
  const std::vector<int> Ns = parse_int_list(a.Ns);
  int guard = -1;
  if (a.guard != "auto") {
    try {
      guard = std::stoi(a.guard);
    } catch (const std::exception&) {
      throw ct::InputError("--guard must be 'auto' or an integer");
    }
  }
  ct::num::FitOptions o;
  o.c_lo = a.c_lo;
  o.c_hi = a.c_hi;
  o.points = a.points;
  o.linear = !a.no_linear;
  cfg = profile_config(a.prof);
  cfg.update({{"N", Ns}, {"guard", a.guard}, {"c_lo", o.c_lo}, {"c_hi", o.c_hi}, {"points", o.points},
              {"linear", o.linear}, {"tolerance", a.tol}, {"workers", workers()}});
  std::vector<ct::num::GBRow> rows(Ns.size());
  parallel_for(static_cast<int>(Ns.size()), [&](int q) { rows[q] = ct::num::gauss_bonnet_row(p, Ns[q], guard, o); });
  if (!a.trace_csv.empty()) {
    std::ofstream f(a.trace_csv);
    if (!f) throw ct::InputError("cannot write '" + a.trace_csv + "'");
    f.precision(17);
    f << "N,operator,t,trace\n";
    for (const auto& r : rows)
      for (std::size_t k = 0; k < r.fit_Dh.t.size(); ++k) {
        f << r.N << ",D," << r.fit_D.t[k] << "," << r.fit_D.trace[k] << "\n";
        f << r.N << ",D_h," << r.fit_Dh.t[k] << "," << r.fit_Dh.trace[k] << "\n";
      }
  }
  return ct::num::gauss_bonnet_summary(p, std::move(rows), a.tol);
}

json gb_json(const ct::num::GBReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"N", row.N},
                    {"dim", row.dim},
                    {"zeta0_D", row.fit_D.zeta0},
                    {"zeta0_Dh", row.fit_Dh.zeta0},
                    {"bracket", {row.fit_Dh.lo - row.fit_D.hi, row.fit_Dh.hi - row.fit_D.lo}},
                    {"fit_D", fit_json(row.fit_D)},
                    {"fit_Dh", fit_json(row.fit_Dh)},
                    {"compression_error", row.compression_error},
                    {"runtime", row.runtime}});
  return {{"rows", rows},
          {"extrapolated", {{"zeta0_D", r.zeta_D}, {"zeta0_Dh", r.zeta_Dh}, {"difference", r.difference()},
                            {"bracket", {r.lo, r.hi}}, {"tolerance", r.tolerance}}},
          {"pass", r.pass()}};
}

void print_rows(const ct::num::GBReport& r) {
  std::printf("%4s %7s %12s %12s %10s %9s\n", "N", "dim", "zeta0(D)", "zeta0(D_h)", "width", "runtime");
  for (const auto& row : r.rows)
    std::printf("%4d %7d %12.6f %12.6f %10.2e %8.1fs\n", row.N, row.dim, row.fit_D.zeta0, row.fit_Dh.zeta0,
                row.fit_Dh.width(), row.runtime);
  std::printf("extrapolated: zeta0(D) = %.6f, zeta0(D_h) = %.6f, difference %.2e in [%.2e, %.2e]\n", r.zeta_D,
              r.zeta_Dh, r.difference(), r.lo, r.hi);
}

int cmd_zeta(const ZetaArgs& a, const CLI::App& app) {
  json cfg;
  const ct::num::GBReport r = run_zeta(a, cfg);
  print_rows(r);
  json report = envelope("zeta", cfg);
  report.update(gb_json(r));
  emit(report, a.out, app);
  for (const auto& row : r.rows)
    if (!std::isfinite(row.fit_Dh.zeta0) || !std::isfinite(row.fit_D.zeta0)) return kNumerical;
  return kPass;
}

int cmd_gb_check(const ZetaArgs& a, const CLI::App& app) {
  json cfg;
  const ct::num::GBReport r = run_zeta(a, cfg);
  print_rows(r);
  std::printf("%s  |zeta0(D_h) - zeta0(D)| = %.2e (tolerance %.2g)\n", r.pass() ? "PASS" : "FAIL",
              std::abs(r.difference()), r.tolerance);
  json report = envelope("gb-check", cfg);
  report.update(gb_json(r));
  emit(report, a.out, app);
  return r.pass() ? kPass : kVerification;
}

// ---------------------------------------------------------------------------
// chern / diag-check

struct ChernArgs {
  std::string which{"bott"};
  int genus{2};
  std::string grid;
  std::string out;
};

int cmd_chern(const ChernArgs& a, const CLI::App& app) {
  namespace ch = ct::chern;
  json cfg = {{"case", a.which}, {"genus", a.genus}};
  double density = NAN, plaquette = NAN;
  json extra = json::object();
  if (a.which == "bott") {
    const auto [nu, nv] = parse_grid(a.grid.empty() ? "100x200" : a.grid);
    cfg["grid"] = std::to_string(nu) + "x" + std::to_string(nv);
    const ch::ProjectionField P = ch::bott_projection(nu, nv);
    density = ch::chern_number_density(P);
    plaquette = ch::plaquette_chern(ch::mesh_for(P), P.values);
  } else if (a.which == "torus" || a.which == "embed") {
    const auto [nt, ns] = parse_grid(a.grid.empty() ? "400x64" : a.grid);
    cfg["grid"] = std::to_string(nt) + "x" + std::to_string(ns);
    const ch::BumpTriple b = ch::shipped_bumps();
    const ch::ProjectionField P = ch::make_torus_projection(b, nt, ns);
    const ch::BumpCheck bc = ch::check_bumps(b);
    extra["bump_check"] = {{"max_gh", bc.gh}, {"max_quadratic", bc.quadratic}};
    if (a.which == "torus") {
      density = ch::chern_number_density(P);
      plaquette = ch::plaquette_chern(ch::mesh_for(P), P.values);
      // the closed-form density, integrated over supp g only
      double closed = 0.0;
      for (int i = 0; i < nt; ++i) closed += ch::reference_torus_density(b, P.u(i));
      extra["closed_form_supp_g"] = closed / nt;
    } else {
      if (a.genus < 1) throw ct::InputError("--genus must be at least 1");
      // the tube fills the first half of torus 0; the next handle is glued in the second
      const ch::SurfaceMesh S = ch::genus_mesh(a.genus, 2 * nt, ns);
      const std::vector<ch::Matrix> f = ch::embed_in_surface(P, S, 0);
      plaquette = ch::plaquette_chern(P.orientation > 0 ? S.mesh : S.mesh.reversed(), f);
      extra["mesh"] = {{"vertices", S.mesh.vertices}, {"faces", S.mesh.faces.size()}, {"euler", S.mesh.euler()},
                       {"genus", S.mesh.genus()}, {"oriented", S.mesh.oriented_closed()}};
    }
  } else {
    throw ct::InputError("--case must be bott, torus or embed");
  }
  const double value = std::isnan(density) ? plaquette : density;
  const bool integral = std::abs(plaquette - std::lround(plaquette)) <= 1e-3 &&
                        (std::isnan(density) || std::abs(density - plaquette) <= 1e-3);
  if (!std::isnan(density)) std::printf("density   %.8f\n", density);
  std::printf("plaquette %.8f\n", plaquette);
  std::printf("chern number %ld%s\n", std::lround(value), integral ? "" : "  (NOT INTEGRAL)");
  json report = envelope("chern", cfg);
  report["density"] = std::isnan(density) ? json(nullptr) : json(density);
  report["plaquette"] = plaquette;
  report["chern"] = std::lround(value);
  report["integral"] = integral;
  report.update(extra);
  emit(report, a.out, app);
  return integral ? kPass : kNumerical;
}

struct DiagArgs {
  std::string input;
  std::string chart{"torus"};
  double gap{1e-3};
  std::string out;
};

int cmd_diag_check(const DiagArgs& a, const CLI::App& app) {
  namespace ch = ct::chern;
  int nu = 0, nv = 0;
  const std::vector<ch::Matrix> field = ch::read_field_csv(a.input, nu, nv);
  ch::Mesh m;
  if (a.chart == "torus") m = ch::torus_mesh(nu, nv);
  else if (a.chart == "sphere") m = ch::sphere_mesh(nu, nv);
  else throw ct::InputError("--chart must be torus or sphere");
  const ch::ChernReport r = ch::diagonalizability_verdict(m, field, a.gap);
  json bands = json::array();
  bool integral = true;
  for (const auto& b : r.bands) {
    std::printf("band %d  eigenvalues [%.4g, %.4g]  chern %+.6f\n", b.index, b.lambda_min, b.lambda_max, b.chern);
    bands.push_back({{"index", b.index}, {"lambda", {b.lambda_min, b.lambda_max}}, {"chern", b.chern}, {"chern_int", b.chern_int}});
    integral = integral && std::abs(b.chern - b.chern_int) <= 1e-3;
  }
  std::printf("verdict: %s\n", r.diagonalizable ? "diagonalizable" : "not diagonalizable");
  json report = envelope("diag-check", {{"input", a.input}, {"chart", a.chart}, {"gap", a.gap}, {"grid", {nu, nv}}});
  report["bands"] = bands;
  report["min_relative_gap"] = r.min_gap;
  report["band_sum"] = r.band_sum;
  report["diagonalizable"] = r.diagonalizable;
  emit(report, a.out, app);
  return integral ? kPass : kNumerical;
}

void add_profile_options(CLI::App* c, ProfileArgs& p) {
  c->add_option("--profile", p.profile, "shipped profile P1, P2, P3 or P4")->capture_default_str();
  c->add_option("--profile-file", p.profile_file, "key-value profile file (overrides --profile)");
  c->add_option("--n", p.n, "matrix size for shipped profiles")->capture_default_str();
}

void add_zeta_options(CLI::App* c, ZetaArgs& z) {
  add_profile_options(c, z.prof);
  c->add_option("--N", z.Ns, "comma-separated cutoffs")->capture_default_str();
  c->add_option("--guard", z.guard, "'auto' (exact compression) or a guard width")->capture_default_str();
  c->add_option("--c-lo", z.c_lo, "small-t window constant: t >= c_lo / (2 pi N)^2")->capture_default_str();
  c->add_option("--c-hi", z.c_hi, "large-t window end")->capture_default_str();
  c->add_option("--points", z.points, "t-grid points")->capture_default_str();
  c->add_flag("--no-linear", z.no_linear, "drop the c1 t term from the fit");
  c->add_option("--tol", z.tol, "Gauss-Bonnet tolerance")->capture_default_str();
  c->add_option("--trace-csv", z.trace_csv, "write (t, trace) pairs");
  c->add_option("--out", z.out, "report JSON ('-' for stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral geometry toolkit for conformally rescaled Dirac operators on the torus"};
  app.set_version_flag("--version", std::string(ct::kVersion));
  app.set_config("--config", "", "TOML file with option overrides");
  app.require_subcommand(1);

  SymbolsArgs sa;
  auto* sv = app.add_subcommand("symbols-verify", "run the symbolic pipeline and compare with the reference displays");
  sv->add_option("--perturb", sa.perturb, "negative control: add 1 to one term, e.g. b2:17");
  sv->add_option("--seed", sa.seed, "seed for the pointwise checks")->capture_default_str();
  sv->add_option("--instances", sa.instances, "instances for the trace cancellation check")->capture_default_str();
  sv->add_option("--out", sa.out, "report JSON ('-' for stdout)");

  CurvatureArgs ca;
  auto* cu = app.add_subcommand("curvature", "evaluate the curvature density for a profile");
  add_profile_options(cu, ca.prof);
  cu->add_option("--grid", ca.grid, "torus grid size for integrals and CSV")->capture_default_str();
  cu->add_option("--csv", ca.csv, "write the density on the grid");
  cu->add_option("--out", ca.out, "report JSON ('-' for stdout)");

  SpecfunArgs fa;
  auto* sf = app.add_subcommand("specfun", "spectral functions G, F, Fd, Q");
  sf->require_subcommand(1);
  auto* se = sf->add_subcommand("eval", "evaluate at one point");
  se->add_option("--fn", fa.fn, "G, F, Fd or Q")->capture_default_str();
  se->add_option("--s", fa.s, "argument s")->capture_default_str();
  se->add_option("--t", fa.t, "second argument of Q")->capture_default_str();
  auto* st = sf->add_subcommand("table", "CSV over a log grid");
  st->add_option("--fn", fa.fn, "G, F, Fd or Q")->capture_default_str();
  st->add_option("--from", fa.from)->capture_default_str();
  st->add_option("--to", fa.to)->capture_default_str();
  st->add_option("--points", fa.points)->capture_default_str();
  st->add_option("--t", fa.t, "second argument of Q")->capture_default_str();
  st->add_option("--csv", fa.csv, "output path (stdout if omitted)");

  ZetaArgs za, ga;
  auto* ze = app.add_subcommand("zeta", "zeta(0) of D and of the rescaled operator at each cutoff");
  add_zeta_options(ze, za);
  auto* gb = app.add_subcommand("gb-check", "Gauss-Bonnet check: extrapolated zeta(0) difference");
  add_zeta_options(gb, ga);

  ChernArgs cha;
  auto* ch = app.add_subcommand("chern", "Chern numbers of the shipped projections");
  ch->add_option("--case", cha.which, "bott, torus or embed")->capture_default_str();
  ch->add_option("--genus", cha.genus, "genus of the surface for --case embed")->capture_default_str();
  ch->add_option("--grid", cha.grid, "AxB sampling grid");
  ch->add_option("--out", cha.out, "report JSON ('-' for stdout)");

  DiagArgs da;
  auto* dc = app.add_subcommand("diag-check", "band Chern numbers and continuous diagonalizability of a sampled field");
  dc->add_option("--input", da.input, "CSV: u,v,re_00,im_00,...")->required();
  dc->add_option("--chart", da.chart, "torus or sphere")->capture_default_str();
  dc->add_option("--gap", da.gap, "minimum relative spectral gap")->capture_default_str();
  dc->add_option("--out", da.out, "report JSON ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kInput;
  }

  try {
    if (*sv) return cmd_symbols_verify(sa, app);
    if (*cu) return cmd_curvature(ca, app);
    if (*se) return cmd_specfun_eval(fa);
    if (*st) return cmd_specfun_table(fa);
    if (*ze) return cmd_zeta(za, app);
    if (*gb) return cmd_gb_check(ga, app);
    if (*ch) return cmd_chern(cha, app);
    if (*dc) return cmd_diag_check(da, app);
  } catch (const ct::InputError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kInput;
  } catch (const ct::DomainError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kInput;
  } catch (const ct::VerificationError& e) {
    std::fprintf(stderr, "verification failure: %s\n", e.what());
    return kVerification;
  } catch (const ct::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kInput;
  }
  return kInput;
}
