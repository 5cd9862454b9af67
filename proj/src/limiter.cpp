#include "egmcl/limiter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace egmcl {

SchemeMode parse_scheme_mode(std::string_view name) {
  if (name == "lo") return SchemeMode::kLowOrder;
  if (name == "ho") return SchemeMode::kHighOrder;
  if (name == "bp") return SchemeMode::kBoundPreserving;
  if (name == "bp-es") return SchemeMode::kEntropyStable;
  throw std::invalid_argument("unknown scheme mode: " + std::string(name));
}

std::string_view scheme_mode_name(SchemeMode mode) {
  switch (mode) {
    case SchemeMode::kLowOrder: return "lo";
    case SchemeMode::kHighOrder: return "ho";
    case SchemeMode::kBoundPreserving: return "bp";
    case SchemeMode::kEntropyStable: return "bp-es";
  }
  throw std::logic_error("invalid scheme mode");
}

Bounds cell_local_bounds(const Problem& problem, const Mesh& mesh,
                         const EGState& state) {
  const int nc = mesh.num_cells();
  Bounds b;
  b.lo.assign(nc, 0.0);
  b.hi.assign(nc, 0.0);
  for (int e = 0; e < nc; ++e) {
    double lo = state.U[e];
    double hi = state.U[e];
    for (int i : mesh.cell_vertices(e)) {
      lo = std::min(lo, state.u[i]);
      hi = std::max(hi, state.u[i]);
      for (int ep : mesh.vertex_cells(i)) {
        lo = std::min(lo, state.U[ep]);
        hi = std::max(hi, state.U[ep]);
      }
    }
    for (const Mesh::CellFace& cf : mesh.cell_faces(e)) {
      const Face& f = mesh.faces()[cf.face];
      if (!f.boundary) continue;
      if (!problem.is_inflow(mesh.face_point(f, 0.5), f.normal)) continue;
      for (const FaceQP& qp : face_gauss3()) {
        const double w = problem.inflow_datum(mesh.face_point(f, qp.s), state.t);
        lo = std::min(lo, w);
        hi = std::max(hi, w);
      }
    }
    b.lo[e] = lo;
    b.hi[e] = hi;
  }
  return b;
}

Bounds nodal_local_bounds(const Mesh& mesh, const EGState& state,
                          const Rhs& rhs) {
  const double eps = kDegenerateEps * state_scale(state);
  Bounds b;
  b.lo = state.u;
  b.hi = state.u;
  for (int e = 0; e < mesh.num_cells(); ++e) {
    const auto gv = mesh.cell_vertices(e);
    for (int k = 0; k < 4; ++k) {
      if (rhs.gamma[e][k] >= eps) {
        b.lo[gv[k]] = std::min(b.lo[gv[k]], rhs.bar_u_elem[e][k]);
        b.hi[gv[k]] = std::max(b.hi[gv[k]], rhs.bar_u_elem[e][k]);
      }
      for (int j = 0; j < 4; ++j) {
        b.lo[gv[k]] = std::min(b.lo[gv[k]], state.u[gv[j]]);
        b.hi[gv[k]] = std::max(b.hi[gv[k]], state.u[gv[j]]);
      }
    }
  }
  return b;
}

double mcl_flux_limit(const Face& f, const FaceData& fd, double F,
                      const Bounds& cell_bounds, double eps) {
  if (fd.lambda < eps) return 0.0;
  const double cap = f.area * fd.lambda;
  const double bar = fd.bar_U;
  const int e = f.in;
  if (F > 0.0) {
    double room = cell_bounds.hi[e] - bar;
    if (!f.boundary) room = std::min(room, bar - cell_bounds.lo[f.out]);
    return std::min(F, cap * room);
  }
  double room = cell_bounds.lo[e] - bar;
  if (!f.boundary) room = std::max(room, bar - cell_bounds.hi[f.out]);
  return std::max(F, cap * room);
}

namespace {

struct FaceEntropy {
  double dv;  // v(U_out) - v(U_in)
  double Q;
};

FaceEntropy face_entropy_terms(const Problem& problem, const Face& f,
                               double U_in, const FaceData& fd) {
  const double v_in = problem.entropy_variable(U_in);
  const double v_out = problem.entropy_variable(fd.u_out);
  const double dv = v_out - v_in;
  const double q_plus = f.area * dv * 0.5 * fd.lambda * (fd.u_out - U_in);
  const Vec2 dpsi =
      problem.entropy_potential(fd.u_out) - problem.entropy_potential(U_in);
  const Vec2 favg = (problem.flux(fd.u_out) + problem.flux(U_in)) * 0.5;
  const double q_minus = f.area * (dpsi - dv * favg).dot(f.normal);
  return {dv, q_plus + std::min(0.0, q_minus)};
}

}  // namespace

double entropy_fix_factor(const Problem& problem, const Face& f, double u_in,
                          const FaceData& fd, double F_bp) {
  const FaceEntropy fe = face_entropy_terms(problem, f, u_in, fd);
  const double P = fe.dv * F_bp;
  if (P > fe.Q) return std::clamp(fe.Q / P, 0.0, 1.0);
  return 1.0;
}

LimitedFluxes apply_scheme_mode(SchemeMode mode, const Problem& problem,
                                const Mesh& mesh, const EGState& state,
                                const Rhs& rhs) {
  LimitedFluxes out;
  const std::size_t nf = rhs.face.size();
  const int nc = mesh.num_cells();
  if (mode == SchemeMode::kLowOrder) {
    out.F_star.assign(nf, 0.0);
    out.f_star.assign(nc, {});
    return out;
  }
  if (mode == SchemeMode::kHighOrder) {
    out.F_star.resize(nf);
    for (std::size_t i = 0; i < nf; ++i) out.F_star[i] = rhs.face[i].F;
    out.f_star = rhs.f_elem;
    return out;
  }

  const double eps = kDegenerateEps * state_scale(state);
  const bool entropy = mode == SchemeMode::kEntropyStable;
  const Bounds cb = cell_local_bounds(problem, mesh, state);
  const Bounds nb = nodal_local_bounds(mesh, state, rhs);

  out.F_star.assign(nf, 0.0);
  for (std::size_t fi = 0; fi < nf; ++fi) {
    const Face& f = mesh.faces()[fi];
    const FaceData& fd = rhs.face[fi];
    double F = mcl_flux_limit(f, fd, fd.F, cb, eps);
    if (entropy && fd.lambda >= eps)
      F *= entropy_fix_factor(problem, f, state.U[f.in], fd, F);
    out.F_star[fi] = F;
  }

  out.f_star.assign(nc, {});
  for (int e = 0; e < nc; ++e) {
    bool has_inflow_face = false;
    for (const Mesh::CellFace& cf : mesh.cell_faces(e)) {
      const Face& f = mesh.faces()[cf.face];
      if (f.boundary && problem.is_inflow(mesh.face_point(f, 0.5), f.normal))
        has_inflow_face = true;
    }
    out.f_star[e] = clip_and_scale(problem, mesh, state, rhs, nb, e,
                                   has_inflow_face, entropy, eps);
  }
  return out;
}

// Dissipation budget Q_i^e of the element entropy condition for vertex i of
// cell e: the full pair dissipation d^e_ij (v_j - v_i)(u_j - u_i) plus the
// nonpositive part of the potential/flux imbalance along c^e_ij.
static double element_entropy_budget(const Rhs& rhs, const LocalMatrices& lm, int e,
                              int i, const std::array<double, 4>& uloc,
                              const std::array<double, 4>& v,
                              const std::array<Vec2, 4>& floc,
                              const std::array<Vec2, 4>& psi) {
  static const double mu = std::getenv("EGMCL_ES_MU") ? std::atof(std::getenv("EGMCL_ES_MU")) : 1.0;
  double Q = 0.0;
  for (int j = 0; j < 4; ++j) {
    if (j == i) continue;
    const double dv = v[j] - v[i];
    Q += mu * dv * rhs.d[e][4 * i + j] * (uloc[j] - uloc[i]);
    const double q_minus =
        (psi[j] - psi[i] - dv * 0.5 * (floc[j] + floc[i])).dot(lm.c[i][j]);
    Q += std::min(0.0, q_minus);
  }
  return Q;
}

std::array<double, 4> clip_and_scale(const Problem& problem, const Mesh& mesh,
                                     const EGState& state, const Rhs& rhs,
                                     const Bounds& nodal_bounds, int e,
                                     bool inflow_cell, bool entropy_prelimit,
                                     double eps) {
  const LocalMatrices lm = local_matrices(mesh);
  const auto gv = mesh.cell_vertices(e);
  std::array<double, 4> uloc, v;
  std::array<Vec2, 4> floc, psi;
  for (int k = 0; k < 4; ++k) {
    uloc[k] = state.u[gv[k]];
    v[k] = problem.entropy_variable(uloc[k]);
    floc[k] = problem.flux(uloc[k]);
    psi[k] = problem.entropy_potential(uloc[k]);
  }

  std::array<double, 4> ft{};
  std::array<bool, 4> active{};
  for (int i = 0; i < 4; ++i) {
    const double g = rhs.gamma[e][i];
    if (g < eps) continue;  // ft stays 0 and is excluded from scaling
    active[i] = true;
    const double f = rhs.f_elem[e][i];
    const double bar = rhs.bar_u_elem[e][i];
    const double hi = inflow_cell ? problem.g_max : nodal_bounds.hi[gv[i]];
    const double lo = inflow_cell ? problem.g_min : nodal_bounds.lo[gv[i]];
    if (f > 0.0)
      ft[i] = std::min(f, g * (hi - bar));
    else
      ft[i] = std::max(f, g * (lo - bar));
  }

  // Entropy correction factors are applied to the clipped values: clipping
  // only shrinks magnitudes, so enforcing P <= Q afterwards needs smaller
  // cuts, and shrinking a clipped value keeps it inside the bound caps.
  if (entropy_prelimit) {
    const double v_bar = 0.25 * (v[0] + v[1] + v[2] + v[3]);
    for (int i = 0; i < 4; ++i) {
      if (!active[i]) continue;
      const double P = (v[i] - v_bar) * ft[i];
      const double Q = element_entropy_budget(rhs, lm, e, i, uloc, v, floc, psi);
      if (P > Q) ft[i] *= std::clamp(Q / P, 0.0, 1.0);
    }
  }

  // Restore the zero sum by scaling the dominating side down.
  double fp = 0.0, fm = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (!active[i]) continue;
    fp += std::max(0.0, ft[i]);
    fm += std::min(0.0, ft[i]);
  }
  const double s = fp + fm;
  if (s > 0.0) {
    const double scale = -fm / fp;
    for (int i = 0; i < 4; ++i)
      if (active[i] && ft[i] > 0.0) ft[i] *= scale;
  } else if (s < 0.0) {
    const double scale = -fp / fm;
    for (int i = 0; i < 4; ++i)
      if (active[i] && ft[i] < 0.0) ft[i] *= scale;
  }

  return ft;
}

int count_element_entropy_violations(const Problem& problem, const Mesh& mesh,
                                     const EGState& state, const Rhs& rhs,
                                     const LimitedFluxes& fluxes, double tol) {
  const LocalMatrices lm = local_matrices(mesh);
  int count = 0;
  for (int e = 0; e < mesh.num_cells(); ++e) {
    const auto gv = mesh.cell_vertices(e);
    std::array<double, 4> uloc, v;
    std::array<Vec2, 4> floc, psi;
    for (int k = 0; k < 4; ++k) {
      uloc[k] = state.u[gv[k]];
      v[k] = problem.entropy_variable(uloc[k]);
      floc[k] = problem.flux(uloc[k]);
      psi[k] = problem.entropy_potential(uloc[k]);
    }
    const double v_bar = 0.25 * (v[0] + v[1] + v[2] + v[3]);
    for (int i = 0; i < 4; ++i) {
      const double P = (v[i] - v_bar) * fluxes.f_star[e][i];
      const double Q = element_entropy_budget(rhs, lm, e, i, uloc, v, floc, psi);
      if (P > Q + tol) ++count;
    }
  }
  return count;
}

int count_face_entropy_violations(const Problem& problem, const Mesh& mesh,
                                  const EGState& state, const Rhs& rhs,
                                  const LimitedFluxes& fluxes, double tol) {
  int count = 0;
  for (std::size_t fi = 0; fi < rhs.face.size(); ++fi) {
    const Face& f = mesh.faces()[fi];
    const FaceData& fd = rhs.face[fi];
    const FaceEntropy fe = face_entropy_terms(problem, f, state.U[f.in], fd);
    if (fe.dv * fluxes.F_star[fi] > fe.Q + tol) ++count;
  }
  return count;
}

}  // namespace egmcl
