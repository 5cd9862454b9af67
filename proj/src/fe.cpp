#include "egmcl/fe.hpp"

#include <algorithm>
#include <cmath>

namespace egmcl {

double state_scale(const EGState& s) {
  double m = 1.0;
  for (double v : s.u) m = std::max(m, std::abs(v));
  for (double v : s.U) m = std::max(m, std::abs(v));
  return m;
}

LocalMatrices local_matrices(const Mesh& mesh) {
  const double hx = mesh.hx();
  const double hy = mesh.hy();
  LocalMatrices lm;
  // 1D factors on an edge of length h: int l_a l_b = h/3 (a==b) or h/6,
  // int l_a l_b' = +-1/2 with the sign of b.
  auto mass1d = [](int a, int b) { return a == b ? 1.0 / 3.0 : 1.0 / 6.0; };
  auto grad1d = [](int b) { return b == 1 ? 0.5 : -0.5; };
  for (int i = 0; i < 4; ++i) {
    const int ax = i & 1, ay = i >> 1;
    lm.mi[i] = 0.25 * hx * hy;
    for (int j = 0; j < 4; ++j) {
      const int bx = j & 1, by = j >> 1;
      lm.m[i][j] = hx * hy * mass1d(ax, bx) * mass1d(ay, by);
      lm.c[i][j] = {grad1d(bx) * hy * mass1d(ay, by),
                    grad1d(by) * hx * mass1d(ax, bx)};
    }
  }
  return lm;
}

const std::array<CellQP, 4>& cell_gauss2() {
  static const std::array<CellQP, 4> q = [] {
    const double a = 0.5 - 0.5 / std::sqrt(3.0);
    const double b = 0.5 + 0.5 / std::sqrt(3.0);
    return std::array<CellQP, 4>{CellQP{{a, a}, 0.25}, CellQP{{b, a}, 0.25},
                                 CellQP{{a, b}, 0.25}, CellQP{{b, b}, 0.25}};
  }();
  return q;
}

namespace {
std::array<FaceQP, 3> gauss3_1d() {
  const double c = 0.5 * std::sqrt(3.0 / 5.0);
  return {FaceQP{0.5 - c, 5.0 / 18.0}, FaceQP{0.5, 8.0 / 18.0},
          FaceQP{0.5 + c, 5.0 / 18.0}};
}
}  // namespace

const std::array<FaceQP, 3>& face_gauss3() {
  static const std::array<FaceQP, 3> q = gauss3_1d();
  return q;
}

const std::array<CellQP, 9>& cell_gauss3() {
  static const std::array<CellQP, 9> q = [] {
    const auto g = gauss3_1d();
    std::array<CellQP, 9> out;
    int k = 0;
    for (const auto& gy : g)
      for (const auto& gx : g) out[k++] = {{gx.s, gy.s}, gx.w * gy.w};
    return out;
  }();
  return q;
}

const std::array<FaceQP, 7>& face_gauss7() {
  // 7-point Gauss-Legendre on [-1,1], mapped to [0,1].
  static const std::array<FaceQP, 7> q = [] {
    const double x[7] = {-0.9491079123427585, -0.7415311855993945,
                         -0.4058451513773972, 0.0,
                         0.4058451513773972,  0.7415311855993945,
                         0.9491079123427585};
    const double w[7] = {0.1294849661688697, 0.2797053914892766,
                         0.3818300505051189, 0.4179591836734694,
                         0.3818300505051189, 0.2797053914892766,
                         0.1294849661688697};
    std::array<FaceQP, 7> out;
    for (int k = 0; k < 7; ++k) out[k] = {0.5 * (x[k] + 1.0), 0.5 * w[k]};
    return out;
  }();
  return q;
}

double basis_value(int k, Vec2 ref) {
  const double vx = (k & 1) ? ref.x : 1.0 - ref.x;
  const double vy = (k >> 1) ? ref.y : 1.0 - ref.y;
  return vx * vy;
}

Vec2 basis_gradient(int k, Vec2 ref, double hx, double hy) {
  const double vx = (k & 1) ? ref.x : 1.0 - ref.x;
  const double vy = (k >> 1) ? ref.y : 1.0 - ref.y;
  const double dx = ((k & 1) ? 1.0 : -1.0) / hx;
  const double dy = ((k >> 1) ? 1.0 : -1.0) / hy;
  return {dx * vy, vx * dy};
}

double cell_average_cg(const Mesh& mesh, const std::vector<double>& u, int e) {
  const auto verts = mesh.cell_vertices(e);
  return 0.25 * (u[verts[0]] + u[verts[1]] + u[verts[2]] + u[verts[3]]);
}

EGValue evaluate_eg(const Mesh& mesh, const EGState& state, int e, Vec2 ref) {
  const auto verts = mesh.cell_vertices(e);
  double val = 0.0;
  Vec2 grad{};
  for (int k = 0; k < 4; ++k) {
    val += state.u[verts[k]] * basis_value(k, ref);
    grad = grad + state.u[verts[k]] * basis_gradient(k, ref, mesh.hx(), mesh.hy());
  }
  const double delta = state.U[e] - cell_average_cg(mesh, state.u, e);
  return {val, val + delta, grad};
}

std::array<double, 4> nonlinear_volume_integrals(const Problem& problem,
                                                 const Mesh& mesh,
                                                 const std::vector<double>& u,
                                                 int e) {
  const auto verts = mesh.cell_vertices(e);
  const double area = mesh.cell_area();
  std::array<double, 4> out{};
  for (const auto& qp : cell_gauss2()) {
    double uh = 0.0;
    for (int k = 0; k < 4; ++k) uh += u[verts[k]] * basis_value(k, qp.p);
    const Vec2 fp = problem.flux_jacobian(uh);
    for (int k = 0; k < 4; ++k) {
      out[k] += qp.w * area *
                basis_gradient(k, qp.p, mesh.hx(), mesh.hy()).dot(fp);
    }
  }
  return out;
}

double nonlinear_volume_integral(const Problem& problem, const Mesh& mesh,
                                 const std::vector<double>& u, int e,
                                 int local_i) {
  return nonlinear_volume_integrals(problem, mesh, u, e)[local_i];
}

EGState initial_state(const Problem& problem, const Mesh& mesh) {
  EGState s;
  s.u.resize(mesh.num_vertices());
  for (int i = 0; i < mesh.num_vertices(); ++i) {
    s.u[i] = problem.initial_datum(mesh.vertex_coord(i));
  }
  s.U.resize(mesh.num_cells());
  for (int e = 0; e < mesh.num_cells(); ++e) {
    double avg = 0.0;
    for (const auto& qp : cell_gauss2()) {
      avg += qp.w * problem.initial_datum(mesh.map_to_physical(e, qp.p));
    }
    s.U[e] = avg;
  }
  return s;
}

}  // namespace egmcl
