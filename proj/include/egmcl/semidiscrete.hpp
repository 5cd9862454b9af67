#ifndef EGMCL_SEMIDISCRETE_HPP
#define EGMCL_SEMIDISCRETE_HPP

#include <array>
#include <vector>

#include "egmcl/fe.hpp"
#include "egmcl/mesh.hpp"
#include "egmcl/problem.hpp"

namespace egmcl {

/// Per-face quantities of the cell-average subproblem, oriented from the
/// face's `in` cell to its `out` side. Stored once per face so that
/// antisymmetry of fluxes holds exactly.
struct FaceData {
  double lambda;  // wave-speed bound for the low-order state pair
  double u_out;   // external low-order state (neighbor average, inflow
                  // trace mean, or own average on outflow)
  double bar_U;   // low-order bar state
  double h_q0;    // low-order LLF flux value
  double h_q1;    // high-order face-averaged flux
  double F;       // raw antidiffusive flux |S| (h_q0 - h_q1)
};

/// Low-order/high-order splitting of the coupled right-hand sides, with
/// all bar states and convex-combination coefficients. Produced fresh per
/// RK stage; read-only afterwards.
struct Rhs {
  std::vector<FaceData> face;

  // cell-average subproblem
  std::vector<double> qL;  // low-order RHS per cell
  std::vector<double> qH;  // high-order RHS per cell
  std::vector<double> A;   // A_e = (1/|K_e|) sum |S| lambda

  // CG nodal subproblem
  std::vector<double> gL;    // low-order RHS per vertex
  std::vector<double> udot;  // reconstructed nodal time derivatives
  std::vector<double> a;     // a_i = (sum_e gamma_i^e) / m_i

  // element-local data, indexed [cell][local vertex]
  std::vector<std::array<double, 4>> f_elem;      // raw contributions f_i^e
  std::vector<std::array<double, 4>> gamma;       // gamma_i^e
  std::vector<std::array<double, 4>> bar_u_elem;  // ubar_i^e
  // pairwise data, indexed [cell][4*i + j]
  std::vector<std::array<double, 16>> d;           // graph viscosities
  std::vector<std::array<double, 16>> bar_u_pair;  // ubar^e_ij
};

/// Assembles the full decomposition for one state.
Rhs assemble_rhs(const Problem& problem, const Mesh& mesh,
                 const EGState& state);

/// u_dot_i = (1/|Omega_i|) sum_{e in E_i} qH_e.
std::vector<double> reconstruct_nodal_time_derivative(
    const Mesh& mesh, const std::vector<double>& q_high);

/// High-order nodal right-hand side g^H assembled directly from the
/// lumped-GFE form (used to verify the splitting g^L + sum f = g^H).
std::vector<double> assemble_high_order_nodal_rhs(const Problem& problem,
                                                  const Mesh& mesh,
                                                  const EGState& state);

}  // namespace egmcl

#endif
