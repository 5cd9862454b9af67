#include "egmcl/time_integrator.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace egmcl {

namespace {

void record_bound_violations(const Problem& problem, const EGState& s,
                             double tol, StageStats* stats) {
  if (!stats) return;
  auto check = [&](double w) {
    const double excess = std::max(problem.g_min - w, w - problem.g_max);
    if (excess > tol) {
      ++stats->bound_violations;
      stats->max_bound_violation = std::max(stats->max_bound_violation, excess);
    }
  };
  for (double w : s.U) check(w);
  for (double w : s.u) check(w);
}

}  // namespace

CflReport cfl_check(const Rhs& rhs, double dt) {
  CflReport r{0.0, 0.0, -1, -1, true};
  for (std::size_t e = 0; e < rhs.A.size(); ++e) {
    if (dt * rhs.A[e] > r.max_cell_cfl) {
      r.max_cell_cfl = dt * rhs.A[e];
      r.worst_cell = static_cast<int>(e);
    }
  }
  for (std::size_t i = 0; i < rhs.a.size(); ++i) {
    if (dt * rhs.a[i] > r.max_nodal_cfl) {
      r.max_nodal_cfl = dt * rhs.a[i];
      r.worst_vertex = static_cast<int>(i);
    }
  }
  r.pass = std::max(r.max_cell_cfl, r.max_nodal_cfl) <= 1.0 + 1e-12;
  return r;
}

EGState forward_euler_stage(const Problem& problem, const Mesh& mesh,
                            const EGState& state, double dt, SchemeMode mode,
                            CflPolicy policy, StageStats* stats) {
  const Rhs rhs = assemble_rhs(problem, mesh, state);
  const LimitedFluxes fluxes = apply_scheme_mode(mode, problem, mesh, state, rhs);
  const double scale = state_scale(state);
  const double eps = kDegenerateEps * scale;

  const CflReport cfl = cfl_check(rhs, dt);
  if (stats) {
    stats->max_cell_cfl = std::max(stats->max_cell_cfl, cfl.max_cell_cfl);
    stats->max_nodal_cfl = std::max(stats->max_nodal_cfl, cfl.max_nodal_cfl);
  }
  if (!cfl.pass) {
    const bool cell = cfl.max_cell_cfl >= cfl.max_nodal_cfl;
    const double worst = cell ? cfl.max_cell_cfl : cfl.max_nodal_cfl;
    const int index = cell ? cfl.worst_cell : cfl.worst_vertex;
    if (policy == CflPolicy::kAssert) {
      throw std::runtime_error(
          std::string("CFL condition violated at ") +
          (cell ? "cell " : "vertex ") + std::to_string(index) +
          ": dt*A = " + std::to_string(worst));
    }
    if (stats && stats->cfl_warnings++ == 0)
      std::fprintf(stderr, "warning: CFL condition violated (dt*A = %g)\n",
                   worst);
  }

  EGState next;
  next.t = state.t + dt;
  next.U = state.U;
  next.u = state.u;
  const double inv_area = 1.0 / mesh.cell_area();

  if (mode == SchemeMode::kHighOrder) {
    for (int e = 0; e < mesh.num_cells(); ++e)
      next.U[e] += dt * inv_area * rhs.qH[e];
    std::vector<double> g = rhs.gL;
    for (int e = 0; e < mesh.num_cells(); ++e) {
      const auto gv = mesh.cell_vertices(e);
      for (int k = 0; k < 4; ++k) g[gv[k]] += rhs.f_elem[e][k];
    }
    for (int i = 0; i < mesh.num_vertices(); ++i)
      next.u[i] += dt * g[i] / (0.25 * mesh.vertex_patch_measure(i));
  } else {
    // Bar-state form: the update is a convex combination of the old value
    // and the (limited) bar states whenever the CFL conditions hold.
    for (int e = 0; e < mesh.num_cells(); ++e) {
      double acc = 0.0;
      for (const Mesh::CellFace& cf : mesh.cell_faces(e)) {
        const Face& f = mesh.faces()[cf.face];
        const FaceData& fd = rhs.face[cf.face];
        if (fd.lambda < eps) continue;
        acc += f.area * fd.lambda * (fd.bar_U - state.U[e]) +
               cf.orientation * fluxes.F_star[cf.face];
      }
      next.U[e] += dt * inv_area * acc;
    }
    std::vector<double> acc_u(mesh.num_vertices(), 0.0);
    for (int e = 0; e < mesh.num_cells(); ++e) {
      const auto gv = mesh.cell_vertices(e);
      for (int k = 0; k < 4; ++k) {
        if (rhs.gamma[e][k] < eps) continue;
        acc_u[gv[k]] +=
            rhs.gamma[e][k] * (rhs.bar_u_elem[e][k] - state.u[gv[k]]) +
            fluxes.f_star[e][k];
      }
    }
    for (int i = 0; i < mesh.num_vertices(); ++i)
      next.u[i] += dt * acc_u[i] / (0.25 * mesh.vertex_patch_measure(i));
  }

  if (stats) {
    record_bound_violations(problem, next, 1e-12 * scale, stats);
    stats->entropy_violations += count_face_entropy_violations(
        problem, mesh, state, rhs, fluxes, 1e-12 * scale);
  }
  return next;
}

EGState heun_step(const Problem& problem, const Mesh& mesh,
                  const EGState& state, double dt, SchemeMode mode,
                  CflPolicy policy, StageStats* stats) {
  const EGState s1 =
      forward_euler_stage(problem, mesh, state, dt, mode, policy, stats);
  const EGState s2 =
      forward_euler_stage(problem, mesh, s1, dt, mode, policy, stats);
  EGState next;
  next.t = state.t + dt;
  next.U.resize(state.U.size());
  next.u.resize(state.u.size());
  for (std::size_t e = 0; e < state.U.size(); ++e)
    next.U[e] = 0.5 * (state.U[e] + s2.U[e]);
  for (std::size_t i = 0; i < state.u.size(); ++i)
    next.u[i] = 0.5 * (state.u[i] + s2.u[i]);
  return next;
}

EGState run_transient(
    const Problem& problem, const Mesh& mesh, const EGState& initial,
    const TimeLoopConfig& config, StageStats* stats,
    const std::function<void(int, const EGState&)>& observer) {
  EGState state = initial;
  if (observer) observer(0, state);
  for (int n = 1; n <= config.num_steps; ++n) {
    state = heun_step(problem, mesh, state, config.dt, config.mode,
                      config.cfl_policy, stats);
    for (double w : state.U)
      if (!std::isfinite(w))
        throw std::runtime_error("non-finite cell average at step " +
                                 std::to_string(n));
    for (double w : state.u)
      if (!std::isfinite(w))
        throw std::runtime_error("non-finite nodal value at step " +
                                 std::to_string(n));
    if (observer) observer(n, state);
  }
  return state;
}

}  // namespace egmcl
