#include "egmcl/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace egmcl {

namespace {

// y = M x with the consistent CG mass matrix, matrix-free.
void mass_matvec(const Mesh& mesh, const LocalMatrices& lm,
                 const std::vector<double>& x, std::vector<double>& y) {
  std::fill(y.begin(), y.end(), 0.0);
  for (int e = 0; e < mesh.num_cells(); ++e) {
    const auto gv = mesh.cell_vertices(e);
    for (int i = 0; i < 4; ++i) {
      double acc = 0.0;
      for (int j = 0; j < 4; ++j) acc += lm.m[i][j] * x[gv[j]];
      y[gv[i]] += acc;
    }
  }
}

}  // namespace

std::vector<double> l2_projection(const Mesh& mesh, const EGState& state) {
  const int n = mesh.num_vertices();
  const LocalMatrices lm = local_matrices(mesh);

  // b_i = int phi_i u_h^EG = sum_e (sum_j m_ij u_j + m_i delta_e)
  std::vector<double> b(n, 0.0);
  for (int e = 0; e < mesh.num_cells(); ++e) {
    const auto gv = mesh.cell_vertices(e);
    const double delta = state.U[e] - cell_average_cg(mesh, state.u, e);
    for (int i = 0; i < 4; ++i) {
      double acc = lm.mi[i] * delta;
      for (int j = 0; j < 4; ++j) acc += lm.m[i][j] * state.u[gv[j]];
      b[gv[i]] += acc;
    }
  }

  std::vector<double> diag(n, 0.0);
  for (int e = 0; e < mesh.num_cells(); ++e)
    for (int i : mesh.cell_vertices(e)) diag[i] += lm.m[0][0];

  double b_norm = 0.0;
  for (double w : b) b_norm += w * w;
  b_norm = std::sqrt(b_norm);
  if (b_norm == 0.0) return std::vector<double>(n, 0.0);

  // Jacobi-preconditioned CG, warm-started from the nodal values.
  std::vector<double> x = state.u, r(n), z(n), p(n), q(n);
  mass_matvec(mesh, lm, x, q);
  for (int i = 0; i < n; ++i) r[i] = b[i] - q[i];
  for (int i = 0; i < n; ++i) z[i] = r[i] / diag[i];
  p = z;
  double rz = 0.0;
  for (int i = 0; i < n; ++i) rz += r[i] * z[i];

  const double tol = 1e-12 * b_norm;
  const int max_iters = 10 * n;
  for (int it = 0; it < max_iters; ++it) {
    double r_norm = 0.0;
    for (double w : r) r_norm += w * w;
    if (std::sqrt(r_norm) <= tol) return x;

    mass_matvec(mesh, lm, p, q);
    double pq = 0.0;
    for (int i = 0; i < n; ++i) pq += p[i] * q[i];
    const double alpha = rz / pq;
    for (int i = 0; i < n; ++i) x[i] += alpha * p[i];
    for (int i = 0; i < n; ++i) r[i] -= alpha * q[i];
    for (int i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    double rz_new = 0.0;
    for (int i = 0; i < n; ++i) rz_new += r[i] * z[i];
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  double r_norm = 0.0;
  for (double w : r) r_norm += w * w;
  if (std::sqrt(r_norm) <= tol) return x;
  throw std::runtime_error("L2 projection CG failed to converge, residual " +
                           std::to_string(std::sqrt(r_norm) / b_norm));
}

FcrResult fcr_project(const Mesh& mesh, const EGState& state,
                      const std::vector<double>& u_l2) {
  const int n = mesh.num_vertices();
  const int nc = mesh.num_cells();
  const LocalMatrices lm = local_matrices(mesh);

  FcrResult out;
  out.u_low.assign(n, 0.0);
  out.alpha.assign(nc, 1.0);
  out.lo.assign(n, std::numeric_limits<double>::infinity());
  out.hi.assign(n, -std::numeric_limits<double>::infinity());

  // Lumped projection and bounds over cell averages and nodal neighbors.
  std::vector<double> m(n, 0.0);
  for (int e = 0; e < nc; ++e) {
    const auto gv = mesh.cell_vertices(e);
    for (int i = 0; i < 4; ++i) {
      m[gv[i]] += lm.mi[i];
      out.u_low[gv[i]] += lm.mi[i] * state.U[e];
      out.lo[gv[i]] = std::min(out.lo[gv[i]], state.U[e]);
      out.hi[gv[i]] = std::max(out.hi[gv[i]], state.U[e]);
      for (int j = 0; j < 4; ++j) {
        out.lo[gv[i]] = std::min(out.lo[gv[i]], state.u[gv[j]]);
        out.hi[gv[i]] = std::max(out.hi[gv[i]], state.u[gv[j]]);
      }
    }
  }
  for (int i = 0; i < n; ++i) out.u_low[i] /= m[i];

  // Element contributions f_i^e = int phi_i (u^H_i - u^H + u^EG - U_e) and
  // correction factors keeping every nodal result inside the bounds.
  std::vector<std::array<double, 4>> f(nc);
  for (int e = 0; e < nc; ++e) {
    const auto gv = mesh.cell_vertices(e);
    const double ubar = cell_average_cg(mesh, state.u, e);
    double alpha = 1.0;
    for (int i = 0; i < 4; ++i) {
      double acc = lm.mi[i] * (u_l2[gv[i]] - ubar);
      for (int j = 0; j < 4; ++j)
        acc += lm.m[i][j] * (state.u[gv[j]] - u_l2[gv[j]]);
      f[e][i] = acc;
      if (acc > 0.0)
        alpha = std::min(alpha, lm.mi[i] * (out.hi[gv[i]] - out.u_low[gv[i]]) / acc);
      else if (acc < 0.0)
        alpha = std::min(alpha, lm.mi[i] * (out.lo[gv[i]] - out.u_low[gv[i]]) / acc);
    }
    out.alpha[e] = std::clamp(alpha, 0.0, 1.0);
  }

  out.u_fcr = out.u_low;
  for (int e = 0; e < nc; ++e) {
    const auto gv = mesh.cell_vertices(e);
    for (int i = 0; i < 4; ++i)
      out.u_fcr[gv[i]] += out.alpha[e] * f[e][i] / m[gv[i]];
  }
  return out;
}

double TimeNormAccumulator::l2_h1() const { return std::sqrt(sum_h1_sq); }

ErrorNorms error_norms(const Problem& problem, const Mesh& mesh,
                       const EGState& state) {
  if (!problem.exact)
    throw std::runtime_error("no exact solution for problem " + problem.name);
  if (state.t > problem.exact_t_max)
    throw std::runtime_error("exact solution invalid at t = " +
                             std::to_string(state.t));
  const bool has_grad = static_cast<bool>(problem.exact_gradient);
  const double area = mesh.cell_area();

  // When the exact solution is constant in y the per-column values repeat
  // across rows of the tensor mesh; cache one row of quadrature evaluations.
  const bool cache_columns = !problem.exact_depends_on_y;
  std::vector<double> col_u, col_gx;
  if (cache_columns) {
    col_u.resize(9 * mesh.nx());
    if (has_grad) col_gx.resize(9 * mesh.nx());
    for (int ex = 0; ex < mesh.nx(); ++ex) {
      int q = 0;
      for (const CellQP& qp : cell_gauss3()) {
        const Vec2 x = mesh.map_to_physical(ex, qp.p);
        col_u[9 * ex + q] = problem.exact(x, state.t);
        if (has_grad) col_gx[9 * ex + q] = problem.exact_gradient(x, state.t).x;
        ++q;
      }
    }
  }

  ErrorNorms n;
  for (int e = 0; e < mesh.num_cells(); ++e) {
    const int ex = e % mesh.nx();
    int q = 0;
    for (const CellQP& qp : cell_gauss3()) {
      const EGValue v = evaluate_eg(mesh, state, e, qp.p);
      double u_ex, gx_ex = 0.0, gy_ex = 0.0;
      if (cache_columns) {
        u_ex = col_u[9 * ex + q];
        if (has_grad) gx_ex = col_gx[9 * ex + q];
      } else {
        const Vec2 x = mesh.map_to_physical(e, qp.p);
        u_ex = problem.exact(x, state.t);
        if (has_grad) {
          const Vec2 g = problem.exact_gradient(x, state.t);
          gx_ex = g.x;
          gy_ex = g.y;
        }
      }
      const double diff = v.u_eg - u_ex;
      const double w = qp.w * area;
      n.l1 += w * std::abs(diff);
      n.l2 += w * diff * diff;
      if (has_grad) {
        const double dgx = v.grad.x - gx_ex;
        const double dgy = v.grad.y - gy_ex;
        n.h1_semi += w * (dgx * dgx + dgy * dgy);
      }
      ++q;
    }
  }
  n.l2 = std::sqrt(n.l2);
  n.h1_semi = std::sqrt(n.h1_semi);
  return n;
}

double evaluate_eg_at(const Mesh& mesh, const EGState& state, Vec2 x) {
  const Rect& d = mesh.domain();
  const double rx =
      std::clamp((x.x - d.x_min) / mesh.hx(), 0.0, mesh.nx() - 1e-12);
  const double ry =
      std::clamp((x.y - d.y_min) / mesh.hy(), 0.0, mesh.ny() - 1e-12);
  const int ex = std::min(static_cast<int>(rx), mesh.nx() - 1);
  const int ey = std::min(static_cast<int>(ry), mesh.ny() - 1);
  const int e = ey * mesh.nx() + ex;
  return evaluate_eg(mesh, state, e, {rx - ex, ry - ey}).u_eg;
}

DiffNorms eg_difference_norms(const Mesh& fine_mesh, const EGState& fine,
                              const Mesh& coarse_mesh, const EGState& coarse) {
  DiffNorms n{0.0, 0.0};
  const double area = fine_mesh.cell_area();
  for (int e = 0; e < fine_mesh.num_cells(); ++e) {
    for (const CellQP& qp : cell_gauss3()) {
      const double uf = evaluate_eg(fine_mesh, fine, e, qp.p).u_eg;
      const double uc =
          evaluate_eg_at(coarse_mesh, coarse, fine_mesh.map_to_physical(e, qp.p));
      const double diff = uf - uc;
      n.l1 += qp.w * area * std::abs(diff);
      n.l2 += qp.w * area * diff * diff;
    }
  }
  n.l2 = std::sqrt(n.l2);
  return n;
}

ThreeLevelEoc three_level_eoc(const Mesh& mesh_h, const EGState& s_h,
                              const Mesh& mesh_2h, const EGState& s_2h,
                              const Mesh& mesh_4h, const EGState& s_4h) {
  const DiffNorms coarse = eg_difference_norms(mesh_2h, s_2h, mesh_4h, s_4h);
  const DiffNorms fine = eg_difference_norms(mesh_h, s_h, mesh_2h, s_2h);
  if (fine.l1 == 0.0 || fine.l2 == 0.0)
    throw std::runtime_error("degenerate refinement: zero fine-pair difference");
  return {std::log2(coarse.l1 / fine.l1), std::log2(coarse.l2 / fine.l2)};
}

Diagnostics compute_diagnostics(const Problem& problem, const Mesh& mesh,
                                const EGState& state) {
  Diagnostics d{};
  d.mass = 0.0;
  d.entropy = 0.0;
  d.U_min = state.U[0];
  d.U_max = state.U[0];
  for (double w : state.U) {
    d.mass += mesh.cell_area() * w;
    d.entropy += mesh.cell_area() * problem.entropy(w);
    d.U_min = std::min(d.U_min, w);
    d.U_max = std::max(d.U_max, w);
  }
  d.u_min = state.u[0];
  d.u_max = state.u[0];
  for (double w : state.u) {
    d.u_min = std::min(d.u_min, w);
    d.u_max = std::max(d.u_max, w);
  }
  return d;
}

std::vector<double> sample_nodal_profile(const Mesh& mesh,
                                         const std::vector<double>& u, Vec2 a,
                                         Vec2 b, int n) {
  std::vector<double> out(n);
  const Rect& d = mesh.domain();
  for (int k = 0; k < n; ++k) {
    const double s = n > 1 ? static_cast<double>(k) / (n - 1) : 0.0;
    const Vec2 x = a + (b - a) * s;
    const double rx =
        std::clamp((x.x - d.x_min) / mesh.hx(), 0.0, mesh.nx() - 1e-12);
    const double ry =
        std::clamp((x.y - d.y_min) / mesh.hy(), 0.0, mesh.ny() - 1e-12);
    const int ex = std::min(static_cast<int>(rx), mesh.nx() - 1);
    const int ey = std::min(static_cast<int>(ry), mesh.ny() - 1);
    const auto gv = mesh.cell_vertices(ey * mesh.nx() + ex);
    const Vec2 ref{rx - ex, ry - ey};
    double val = 0.0;
    for (int kk = 0; kk < 4; ++kk) val += basis_value(kk, ref) * u[gv[kk]];
    out[k] = val;
  }
  return out;
}

int count_monotonicity_switches(const std::vector<double>& values, double tol) {
  int switches = 0;
  int last_sign = 0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    const double diff = values[k] - values[k - 1];
    if (std::abs(diff) < tol) continue;
    const int sign = diff > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++switches;
    last_sign = sign;
  }
  return switches;
}

int count_level_crossings(const std::vector<double>& values, double level,
                          double tol) {
  int crossings = 0;
  int last_sign = 0;
  for (double v : values) {
    if (std::abs(v - level) < tol) continue;
    const int sign = v > level ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++crossings;
    last_sign = sign;
  }
  return crossings;
}

}  // namespace egmcl
