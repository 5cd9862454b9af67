#include "egmcl/semidiscrete.hpp"

#include <cmath>

namespace egmcl {

namespace {

// CG trace on a face, linear in the face parameter s.
struct FaceTrace {
  double v0, v1;
  double at(double s) const { return (1.0 - s) * v0 + s * v1; }
};

FaceTrace cg_trace(const Mesh& mesh, const std::vector<double>& u,
                   const Face& f) {
  const auto lv = mesh.face_local_vertices(f);
  const auto gv = mesh.cell_vertices(f.in);
  return {u[gv[lv[0]]], u[gv[lv[1]]]};
}

std::vector<double> dg_components(const Mesh& mesh, const EGState& state) {
  std::vector<double> delta(mesh.num_cells());
  for (int e = 0; e < mesh.num_cells(); ++e)
    delta[e] = state.U[e] - cell_average_cg(mesh, state.u, e);
  return delta;
}

// Low-order pair (lambda, bar state, LLF value) and the high-order
// face-averaged flux for one face, oriented in -> out.
FaceData compute_face(const Problem& problem, const Mesh& mesh,
                      const EGState& state, const std::vector<double>& delta,
                      const Face& f, double eps) {
  const Vec2 n = f.normal;
  const double u_in = state.U[f.in];
  const FaceTrace tr = cg_trace(mesh, state.u, f);

  FaceData fd{};
  if (!f.boundary) {
    fd.u_out = state.U[f.out];
    fd.lambda = problem.wave_speed_bound(u_in, fd.u_out, n);
    fd.h_q0 = 0.5 * (problem.flux(fd.u_out) + problem.flux(u_in)).dot(n) -
              0.5 * fd.lambda * (fd.u_out - u_in);
    double hq1 = 0.0;
    for (const FaceQP& qp : face_gauss3()) {
      const double u_l = tr.at(qp.s) + delta[f.in];
      const double u_r = tr.at(qp.s) + delta[f.out];
      hq1 += qp.w * problem.llf_flux(u_l, u_r, n);
    }
    fd.h_q1 = hq1;
  } else if (problem.is_inflow(mesh.face_point(f, 0.5), n)) {
    // Finite-volume external state = face-quadrature mean of the inflow
    // datum, so the bar-state identity for qL stays exact.
    double u_hat = 0.0;
    for (const FaceQP& qp : face_gauss3())
      u_hat += qp.w * problem.inflow_datum(mesh.face_point(f, qp.s), state.t);
    fd.u_out = u_hat;
    fd.lambda = problem.wave_speed_bound(u_in, u_hat, n);
    fd.h_q0 = 0.5 * (problem.flux(u_hat) + problem.flux(u_in)).dot(n) -
              0.5 * fd.lambda * (u_hat - u_in);
    double hq1 = 0.0;
    for (const FaceQP& qp : face_gauss3()) {
      const double u_l = tr.at(qp.s) + delta[f.in];
      const double u_r = problem.inflow_datum(mesh.face_point(f, qp.s), state.t);
      hq1 += qp.w * problem.llf_flux(u_l, u_r, n);
    }
    fd.h_q1 = hq1;
  } else {
    // Outflow: the external state is the interior one, the numerical flux
    // reduces to the physical normal flux.
    fd.u_out = u_in;
    fd.lambda = problem.wave_speed_bound(u_in, u_in, n);
    fd.h_q0 = problem.flux(u_in).dot(n);
    double hq1 = 0.0;
    for (const FaceQP& qp : face_gauss3())
      hq1 += qp.w * problem.flux(tr.at(qp.s) + delta[f.in]).dot(n);
    fd.h_q1 = hq1;
  }

  if (fd.lambda >= eps) {
    fd.bar_U = 0.5 * (fd.u_out + u_in) -
               (problem.flux(fd.u_out) - problem.flux(u_in)).dot(n) /
                   (2.0 * fd.lambda);
  } else {
    fd.bar_U = 0.5 * (fd.u_out + u_in);
  }
  fd.F = f.area * (fd.h_q0 - fd.h_q1);
  return fd;
}

// hat_u_{i,ee'}: the lumped external trace at a boundary face, for local
// face vertex `which` (0 or 1 along the face parameterization). On inflow
// faces this is the phi_i-weighted face average of the prescribed data. On
// outflow faces the external trace equals the interior one, so the lumped
// value is the nodal value itself; this makes the weak penalty
// F(u_i, u_hat; n) - f(u_i).n vanish identically, as it does for the exact
// integral with equal traces. (Using a face mean instead would leave an
// O(h) residual that the wave-speed bound turns into a spurious boundary
// flux on faces where the true normal flux is small.)
double boundary_hat_u(const Problem& problem, const Mesh& mesh, const Face& f,
                      const FaceTrace& tr, bool inflow, double t, int which) {
  if (!inflow) return (which == 0) ? tr.v0 : tr.v1;
  double u_hat = 0.0;
  for (const FaceQP& qp : face_gauss3()) {
    const double phi = (which == 0) ? 1.0 - qp.s : qp.s;
    const double u_plus = problem.inflow_datum(mesh.face_point(f, qp.s), t);
    // normalization: int_S phi_i ds = |S|/2, quadrature weights sum to 1
    u_hat += 2.0 * qp.w * phi * u_plus;
  }
  return u_hat;
}

}  // namespace

std::vector<double> reconstruct_nodal_time_derivative(
    const Mesh& mesh, const std::vector<double>& q_high) {
  std::vector<double> udot(mesh.num_vertices());
  for (int i = 0; i < mesh.num_vertices(); ++i) {
    double acc = 0.0;
    for (int e : mesh.vertex_cells(i)) acc += q_high[e];
    udot[i] = acc / mesh.vertex_patch_measure(i);
  }
  return udot;
}

Rhs assemble_rhs(const Problem& problem, const Mesh& mesh,
                 const EGState& state) {
  const int nc = mesh.num_cells();
  const int nv = mesh.num_vertices();
  const double eps = kDegenerateEps * state_scale(state);
  const std::vector<double> delta = dg_components(mesh, state);
  const LocalMatrices lm = local_matrices(mesh);

  Rhs rhs;
  rhs.face.resize(mesh.faces().size());
  for (std::size_t fi = 0; fi < mesh.faces().size(); ++fi)
    rhs.face[fi] =
        compute_face(problem, mesh, state, delta, mesh.faces()[fi], eps);

  // Cell-average subproblem: both RHS levels plus the CFL coefficient.
  rhs.qL.assign(nc, 0.0);
  rhs.qH.assign(nc, 0.0);
  rhs.A.assign(nc, 0.0);
  for (int e = 0; e < nc; ++e) {
    for (const Mesh::CellFace& cf : mesh.cell_faces(e)) {
      const Face& f = mesh.faces()[cf.face];
      const FaceData& fd = rhs.face[cf.face];
      rhs.qL[e] -= cf.orientation * f.area * fd.h_q0;
      rhs.qH[e] -= cf.orientation * f.area * fd.h_q1;
      rhs.A[e] += f.area * fd.lambda;
    }
    rhs.A[e] /= mesh.cell_area();
  }

  rhs.udot = reconstruct_nodal_time_derivative(mesh, rhs.qH);

  // CG nodal subproblem; gL is accumulated in bar-state form so that the
  // identity gL_i = sum_e gamma_i^e (ubar_i^e - u_i) holds exactly.
  rhs.gL.assign(nv, 0.0);
  rhs.a.assign(nv, 0.0);
  rhs.f_elem.assign(nc, {});
  rhs.gamma.assign(nc, {});
  rhs.bar_u_elem.assign(nc, {});
  rhs.d.assign(nc, {});
  rhs.bar_u_pair.assign(nc, {});

  for (int e = 0; e < nc; ++e) {
    const auto gv = mesh.cell_vertices(e);
    std::array<double, 4> uloc, vol;
    std::array<Vec2, 4> floc;
    for (int k = 0; k < 4; ++k) {
      uloc[k] = state.u[gv[k]];
      floc[k] = problem.flux(uloc[k]);
    }
    vol = nonlinear_volume_integrals(problem, mesh, state.u, e);

    auto& d = rhs.d[e];
    auto& bar_uv = rhs.bar_u_pair[e];
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        const double nij = lm.c[i][j].norm();
        const double nji = lm.c[j][i].norm();
        const double lij =
            nij > 0.0
                ? problem.wave_speed_bound(uloc[i], uloc[j], lm.c[i][j] / nij)
                : 0.0;
        const double lji =
            nji > 0.0
                ? problem.wave_speed_bound(uloc[j], uloc[i], lm.c[j][i] / nji)
                : 0.0;
        const double dij = std::max(lij * nij, lji * nji);
        d[4 * i + j] = dij;
        d[4 * j + i] = dij;
      }
    }
    for (int i = 0; i < 4; ++i) {
      double row = 0.0;
      for (int j = 0; j < 4; ++j)
        if (j != i) row += d[4 * i + j];
      d[4 * i + i] = -row;
    }
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (j == i) {
          bar_uv[4 * i + j] = uloc[i];
          continue;
        }
        const double dij = d[4 * i + j];
        double bar = 0.5 * (uloc[i] + uloc[j]);
        if (dij >= eps)
          bar -= (floc[j] - floc[i]).dot(lm.c[i][j]) / (2.0 * dij);
        bar_uv[4 * i + j] = bar;
      }
    }

    auto& gamma = rhs.gamma[e];
    std::array<double, 4> bar_num{};
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (j == i) continue;
        const double w = 2.0 * d[4 * i + j];
        gamma[i] += w;
        bar_num[i] += w * bar_uv[4 * i + j];
        rhs.gL[gv[i]] += w * (bar_uv[4 * i + j] - uloc[i]);
      }
    }

    // Boundary faces contribute weak LLF penalties to both the low-order
    // RHS and the convex-combination weights.
    for (const Mesh::CellFace& cf : mesh.cell_faces(e)) {
      const Face& f = mesh.faces()[cf.face];
      if (!f.boundary) continue;
      const bool inflow = problem.is_inflow(mesh.face_point(f, 0.5), f.normal);
      const auto lv = mesh.face_local_vertices(f);
      const FaceTrace tr{uloc[lv[0]], uloc[lv[1]]};
      const double sigma = boundary_trace_weight(f);
      for (int which = 0; which < 2; ++which) {
        const int k = lv[which];
        const double u_hat =
            boundary_hat_u(problem, mesh, f, tr, inflow, state.t, which);
        const double lam =
            problem.wave_speed_bound(uloc[k], u_hat, f.normal);
        if (lam < eps) continue;
        const double bar =
            0.5 * (u_hat + uloc[k]) -
            (problem.flux(u_hat) - floc[k]).dot(f.normal) / (2.0 * lam);
        rhs.gL[gv[k]] += sigma * lam * (bar - uloc[k]);
        gamma[k] += sigma * lam;
        bar_num[k] += sigma * lam * bar;
      }
    }

    for (int i = 0; i < 4; ++i) {
      rhs.bar_u_elem[e][i] = gamma[i] >= eps ? bar_num[i] / gamma[i] : uloc[i];
      rhs.a[gv[i]] += gamma[i];
    }

    // Raw antidiffusive element contributions (volume part of gH - gL).
    for (int i = 0; i < 4; ++i) {
      double acc = delta[e] * vol[i];
      for (int j = 0; j < 4; ++j) {
        acc += lm.m[i][j] * (rhs.udot[gv[i]] - rhs.udot[gv[j]]) +
               d[4 * i + j] * (uloc[i] - uloc[j]);
      }
      rhs.f_elem[e][i] = acc;
    }
  }

  for (int i = 0; i < nv; ++i)
    rhs.a[i] /= 0.25 * mesh.vertex_patch_measure(i);
  return rhs;
}

std::vector<double> assemble_high_order_nodal_rhs(const Problem& problem,
                                                  const Mesh& mesh,
                                                  const EGState& state) {
  const int nc = mesh.num_cells();
  const double eps = kDegenerateEps * state_scale(state);
  const std::vector<double> delta = dg_components(mesh, state);
  const LocalMatrices lm = local_matrices(mesh);

  std::vector<double> q_high(nc, 0.0);
  for (int e = 0; e < nc; ++e) {
    for (const Mesh::CellFace& cf : mesh.cell_faces(e)) {
      const Face& f = mesh.faces()[cf.face];
      const FaceData fd = compute_face(problem, mesh, state, delta, f, eps);
      q_high[e] -= cf.orientation * f.area * fd.h_q1;
    }
  }
  const std::vector<double> udot =
      reconstruct_nodal_time_derivative(mesh, q_high);

  std::vector<double> gH(mesh.num_vertices(), 0.0);
  for (int e = 0; e < nc; ++e) {
    const auto gv = mesh.cell_vertices(e);
    std::array<double, 4> uloc;
    std::array<Vec2, 4> floc;
    for (int k = 0; k < 4; ++k) {
      uloc[k] = state.u[gv[k]];
      floc[k] = problem.flux(uloc[k]);
    }
    const std::array<double, 4> vol =
        nonlinear_volume_integrals(problem, mesh, state.u, e);
    for (int i = 0; i < 4; ++i) {
      double acc = delta[e] * vol[i];
      for (int j = 0; j < 4; ++j) {
        acc += lm.m[i][j] * (udot[gv[i]] - udot[gv[j]]) -
               lm.c[i][j].dot(floc[j]);
      }
      gH[gv[i]] += acc;
    }
    for (const Mesh::CellFace& cf : mesh.cell_faces(e)) {
      const Face& f = mesh.faces()[cf.face];
      if (!f.boundary) continue;
      const bool inflow = problem.is_inflow(mesh.face_point(f, 0.5), f.normal);
      const auto lv = mesh.face_local_vertices(f);
      const FaceTrace tr{uloc[lv[0]], uloc[lv[1]]};
      const double sigma = boundary_trace_weight(f);
      for (int which = 0; which < 2; ++which) {
        const int k = lv[which];
        const double u_hat =
            boundary_hat_u(problem, mesh, f, tr, inflow, state.t, which);
        const double lam =
            problem.wave_speed_bound(uloc[k], u_hat, f.normal);
        if (lam < eps) continue;
        const double llf =
            0.5 * (problem.flux(u_hat) + floc[k]).dot(f.normal) -
            0.5 * lam * (u_hat - uloc[k]);
        gH[gv[k]] -= sigma * (llf - floc[k].dot(f.normal));
      }
    }
  }
  return gH;
}

}  // namespace egmcl
