#ifndef EGMCL_FE_HPP
#define EGMCL_FE_HPP

#include <array>
#include <vector>

#include "egmcl/core.hpp"
#include "egmcl/mesh.hpp"
#include "egmcl/problem.hpp"

namespace egmcl {

/// EG degrees of freedom: cell averages U of u_h^EG and CG nodal values u.
/// The enrichment is derived, never stored: delta_u_e = U_e - mean(u|K_e).
struct EGState {
  std::vector<double> U;
  std::vector<double> u;
  double t = 0.0;
};

/// max(1, max|u|, max|U|): the scale for relative tolerances.
double state_scale(const EGState& s);

/// Local Q1 matrices on one cell of a uniform rectangular mesh (identical
/// for all cells): consistent mass m_ij, lumped masses m_i, and discrete
/// gradient vectors c_ij = int phi_i grad(phi_j).
struct LocalMatrices {
  std::array<std::array<double, 4>, 4> m;
  std::array<double, 4> mi;
  std::array<std::array<Vec2, 4>, 4> c;
};
LocalMatrices local_matrices(const Mesh& mesh);

/// sigma_{i,ee'} = int_{S} phi_i ds = |S|/2 for each of the two face
/// vertices of a Q1 trace.
inline double boundary_trace_weight(const Face& f) { return 0.5 * f.area; }

// Reference-cell quadrature. Points live on [0,1]^2 (cells) or [0,1]
// (faces); weights sum to 1 and are scaled by the physical measure at the
// call site.
struct CellQP {
  Vec2 p;
  double w;
};
struct FaceQP {
  double s;
  double w;
};
const std::array<CellQP, 4>& cell_gauss2();
const std::array<CellQP, 9>& cell_gauss3();
const std::array<FaceQP, 3>& face_gauss3();
const std::array<FaceQP, 7>& face_gauss7();

/// Q1 tensor basis on the reference cell, node order (0,0),(1,0),(0,1),(1,1).
double basis_value(int k, Vec2 ref);
/// Physical gradient of basis k at a reference point, for cell size hx,hy.
Vec2 basis_gradient(int k, Vec2 ref, double hx, double hy);

/// ubar_e: exact cell average of the CG component (= corner mean on
/// rectangles).
double cell_average_cg(const Mesh& mesh, const std::vector<double>& u, int e);

struct EGValue {
  double u_cg;
  double u_eg;
  Vec2 grad;  // gradient of the CG component (the DG part is constant)
};
EGValue evaluate_eg(const Mesh& mesh, const EGState& state, int e, Vec2 ref);

/// 2x2 Gauss approximation of int_{K_e} grad(phi_i) . f'(u_h) dx.
double nonlinear_volume_integral(const Problem& problem, const Mesh& mesh,
                                 const std::vector<double>& u, int e,
                                 int local_i);
/// Same integral for all four vertices of a cell in one sweep.
std::array<double, 4> nonlinear_volume_integrals(const Problem& problem,
                                                 const Mesh& mesh,
                                                 const std::vector<double>& u,
                                                 int e);

/// Initial EG state: vertex interpolation of u_0 for u, exact (2x2 Gauss)
/// cell averaging of u_0 for U.
EGState initial_state(const Problem& problem, const Mesh& mesh);

}  // namespace egmcl

#endif
