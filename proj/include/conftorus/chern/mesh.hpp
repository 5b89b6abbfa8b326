#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "conftorus/chern/projection.hpp"

namespace conftorus::chern {

/// A closed oriented polygonal surface. Faces list vertex indices counterclockwise
/// as seen from outside.
struct Mesh {
  int vertices{0};
  std::vector<std::vector<int>> faces;

  int edges() const {
    std::set<std::pair<int, int>> e;
    for (const auto& f : faces)
      for (std::size_t q = 0; q < f.size(); ++q) {
        int a = f[q], b = f[(q + 1) % f.size()];
        e.insert({std::min(a, b), std::max(a, b)});
      }
    return static_cast<int>(e.size());
  }
  Mesh reversed() const {
    Mesh m = *this;
    for (auto& f : m.faces) std::reverse(f.begin(), f.end());
    return m;
  }
  int euler() const { return vertices - edges() + static_cast<int>(faces.size()); }
  int genus() const { return (2 - euler()) / 2; }

  /// Closed and consistently oriented: every directed edge appears exactly once
  /// and its reverse exactly once.
  bool oriented_closed() const {
    std::map<std::pair<int, int>, int> count;
    for (const auto& f : faces)
      for (std::size_t q = 0; q < f.size(); ++q) ++count[{f[q], f[(q + 1) % f.size()]}];
    for (const auto& [e, c] : count) {
      if (c != 1) return false;
      auto it = count.find({e.second, e.first});
      if (it == count.end() || it->second != 1) return false;
    }
    return true;
  }
};

/// Vertex (i, j) of an nu x nv grid is i * nv + j.
inline Mesh torus_mesh(int nu, int nv) {
  Mesh m{nu * nv, {}};
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      const int i1 = (i + 1) % nu, j1 = (j + 1) % nv;
      m.faces.push_back({i * nv + j, i1 * nv + j, i1 * nv + j1, i * nv + j1});
    }
  return m;
}

/// Rings of a sphere field (theta midpoints) plus one polygonal cap at each pole.
/// Vertex (i, j) is i * nv + j, matching ProjectionField.
inline Mesh sphere_mesh(int nu, int nv) {
  Mesh m{nu * nv, {}};
  // (theta, phi) is positively oriented for the outward normal
  for (int i = 0; i + 1 < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      const int j1 = (j + 1) % nv;
      m.faces.push_back({i * nv + j, (i + 1) * nv + j, (i + 1) * nv + j1, i * nv + j1});
    }
  std::vector<int> north, south;
  for (int j = 0; j < nv; ++j) north.push_back(j);
  for (int j = nv - 1; j >= 0; --j) south.push_back((nu - 1) * nv + j);
  m.faces.push_back(north);
  m.faces.push_back(south);
  return m;
}

/// Connected sum of g grid tori: one face is removed from each of two tori and
/// their boundaries are identified, in a chain. Torus 0 keeps vertex indices
/// 0 .. nu*nv - 1 so a field defined on a torus grid carries over.
struct SurfaceMesh {
  Mesh mesh;
  int genus{1}, nu{0}, nv{0};
  std::vector<int> torus_of_vertex;
  std::vector<std::pair<int, int>> grid_of_vertex;  // (i, j) in its torus
};

inline SurfaceMesh genus_mesh(int genus, int nu, int nv) {
  if (genus < 1) throw InputError("genus must be at least 1");
  if (nu < 8 || nv < 4) throw InputError("grid too small for a genus mesh");
  SurfaceMesh out;
  out.genus = genus;
  out.nu = nu;
  out.nv = nv;
  const int per = nu * nv;
  // hole faces: torus k loses the face at rows hole_row, columns 0..1; torus k > 0
  // also loses one at rows hole_row2 for the next link of the chain.
  const int hole_a = 0, hole_b = nu / 2;  // face rows
  std::vector<int> remap(static_cast<std::size_t>(genus) * per, -1);
  int next = 0;
  auto vid = [&](int k, int i, int j) { return k * per + ((i % nu + nu) % nu) * nv + ((j % nv + nv) % nv); };
  // identification: the hole of torus k at row hole_b (k < genus-1) is glued to
  // the hole of torus k+1 at row hole_a with reversed orientation.
  std::map<int, int> glue;  // vertex of torus k+1 -> vertex of torus k
  for (int k = 0; k + 1 < genus; ++k) {
    const int a[4] = {vid(k, hole_b, 0), vid(k, hole_b + 1, 0), vid(k, hole_b + 1, 1), vid(k, hole_b, 1)};
    const int b[4] = {vid(k + 1, hole_a, 0), vid(k + 1, hole_a + 1, 0), vid(k + 1, hole_a + 1, 1), vid(k + 1, hole_a, 1)};
    // boundary a0 a1 a2 a3 is glued to b0 b3 b2 b1 (orientation reversing)
    glue[b[0]] = a[0];
    glue[b[3]] = a[1];
    glue[b[2]] = a[2];
    glue[b[1]] = a[3];
  }
  for (int k = 0; k < genus; ++k)
    for (int i = 0; i < nu; ++i)
      for (int j = 0; j < nv; ++j) {
        const int v = vid(k, i, j);
        if (glue.count(v)) continue;
        remap[v] = next++;
        out.torus_of_vertex.push_back(k);
        out.grid_of_vertex.push_back({i, j});
      }
  for (const auto& [from, to] : glue) remap[from] = remap[to];
  out.mesh.vertices = next;
  for (int k = 0; k < genus; ++k)
    for (int i = 0; i < nu; ++i)
      for (int j = 0; j < nv; ++j) {
        if ((k + 1 < genus && i == hole_b && j == 0) || (k > 0 && i == hole_a && j == 0)) continue;
        out.mesh.faces.push_back({remap[vid(k, i, j)], remap[vid(k, i + 1, j)], remap[vid(k, i + 1, j + 1)],
                                  remap[vid(k, i, j + 1)]});
      }
  if (out.mesh.genus() != genus || !out.mesh.oriented_closed())
    throw VerificationError("genus mesh construction failed its Euler/orientation check");
  return out;
}

/// The mesh a sampled field lives on, oriented like the field's surface.
inline Mesh mesh_for(const ProjectionField& P) {
  const Mesh m = P.chart == Chart::Sphere ? sphere_mesh(P.nu, P.nv) : torus_mesh(P.nu, P.nv);
  return P.orientation > 0 ? m : m.reversed();
}

// ---------------------------------------------------------------------------
// plaquette Chern numbers

/// Sum over faces of arg Tr(p_1 p_2 ... p_k) / 2 pi for a rank-one projection
/// field on the vertices. Equals the integral of (1 / 2 pi i) Tr(p dp dp).
inline double plaquette_chern(const Mesh& m, const std::vector<Matrix>& p) {
  if (static_cast<int>(p.size()) != m.vertices) throw InputError("field size does not match the mesh");
  double total = 0.0;
  for (const auto& f : m.faces) {
    Matrix prod = p[f[0]];
    for (std::size_t q = 1; q < f.size(); ++q) prod = prod * p[f[q]];
    const cd w = prod.trace();
    if (std::abs(w) < 1e-12) throw NumericalError("plaquette with vanishing overlap; refine the grid");
    total += std::arg(w);
  }
  return total / (2 * std::numbers::pi);
}

/// Extends a projection on the torus-0 chart of a surface by its constant value
/// elsewhere. The tube occupies rows [row0, row0 + tube.nu) of torus 0.
inline std::vector<Matrix> embed_in_surface(const ProjectionField& tube, const SurfaceMesh& s, int row0) {
  if (tube.nv != s.nv) throw InputError("tube and surface grids have different column counts");
  if (row0 < 0 || row0 + tube.nu > s.nu) throw InputError("tube does not fit in the first torus");
  // the handle of the next torus is glued at rows nu/2, nu/2 + 1
  if (s.genus > 1 && row0 + tube.nu > s.nu / 2 && row0 <= s.nu / 2 + 1)
    throw InputError("tube overlaps the gluing region of the surface");
  const Matrix c = tube.at(0, 0);
  for (int j = 0; j < tube.nv; ++j)
    if ((tube.at(0, j) - c).cwiseAbs().maxCoeff() > 1e-12 || (tube.at(tube.nu - 1, j) - c).cwiseAbs().maxCoeff() > 1e-12)
      throw VerificationError("tube projection is not constant at its boundary");
  std::vector<Matrix> out;
  for (std::size_t v = 0; v < s.torus_of_vertex.size(); ++v) {
    const auto [i, j] = s.grid_of_vertex[v];
    const int r = i - row0;
    if (s.torus_of_vertex[v] == 0 && r >= 0 && r < tube.nu && j < tube.nv) out.push_back(tube.at(r, j));
    else out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// diagonalizability

struct Band {
  int index;
  double lambda_min, lambda_max;
  double chern;  // plaquette value
  int chern_int;
};

struct ChernReport {
  std::vector<Band> bands;
  double min_gap{0};
  double band_sum{0};
  bool diagonalizable{false};
};

/// Per-band Chern numbers of a sampled Hermitian field with simple spectrum.
/// Bands are ordered by increasing eigenvalue.
inline ChernReport diagonalizability_verdict(const Mesh& m, const std::vector<Matrix>& field, double gap_threshold = 1e-3) {
  if (static_cast<int>(field.size()) != m.vertices) throw InputError("field size does not match the mesh");
  const int n = static_cast<int>(field.front().rows());
  std::vector<std::vector<Matrix>> proj(n);
  ChernReport r;
  r.min_gap = INFINITY;
  std::vector<double> lo(n, INFINITY), hi(n, -INFINITY);
  for (const auto& H : field) {
    if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw InputError("field is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(H);
    const auto& l = es.eigenvalues();
    if (l(0) <= 0) throw InputError("field is not positive definite");
    for (int b = 0; b + 1 < n; ++b) r.min_gap = std::min(r.min_gap, (l(b + 1) - l(b)) / std::abs(l(n - 1)));
    for (int b = 0; b < n; ++b) {
      lo[b] = std::min(lo[b], l(b));
      hi[b] = std::max(hi[b], l(b));
      proj[b].push_back(es.eigenvectors().col(b) * es.eigenvectors().col(b).adjoint());
    }
  }
  if (n > 1 && r.min_gap < gap_threshold)
    throw NumericalError("spectral gap closes (relative gap " + std::to_string(r.min_gap) + "): spectrum is not simple");
  r.diagonalizable = true;
  for (int b = 0; b < n; ++b) {
    const double c = plaquette_chern(m, proj[b]);
    const int ci = static_cast<int>(std::lround(c));
    r.bands.push_back({b, lo[b], hi[b], c, ci});
    r.band_sum += c;
    if (ci != 0) r.diagonalizable = false;
  }
  return r;
}

/// Field CSV: header line, then rows u,v,re_00,im_00,re_01,... on a regular
/// nu x nv grid listed row by row (u slowest). Sphere grids use theta midpoints.
inline std::vector<Matrix> read_field_csv(const std::string& path, int& nu, int& nv) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw InputError(path + ": empty file");
  std::vector<std::pair<double, double>> coords;
  std::vector<Matrix> values;
  int n = -1;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> x;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) {
      try {
        x.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw InputError(path + ":" + std::to_string(lineno) + ": not a number: '" + cell + "'");
      }
    }
    const int entries = static_cast<int>(x.size()) - 2;
    const int k = static_cast<int>(std::lround(std::sqrt(entries / 2.0)));
    if (entries <= 0 || 2 * k * k != entries) throw InputError(path + ":" + std::to_string(lineno) + ": bad column count");
    if (n < 0) n = k;
    if (k != n) throw InputError(path + ": inconsistent matrix size");
    Matrix M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = cd(x[2 + 2 * (i * n + j)], x[3 + 2 * (i * n + j)]);
    coords.push_back({x[0], x[1]});
    values.push_back(M);
  }
  if (values.empty()) throw InputError(path + ": no data rows");
  nv = 0;
  while (nv < static_cast<int>(coords.size()) && coords[nv].first == coords[0].first) ++nv;
  if (coords.size() % nv) throw InputError(path + ": rows do not form a regular grid");
  nu = static_cast<int>(coords.size()) / nv;
  return values;
}

}  // namespace conftorus::chern
