#ifndef EGMCL_POSTPROCESS_HPP
#define EGMCL_POSTPROCESS_HPP

#include <vector>

#include "egmcl/fe.hpp"

namespace egmcl {

/// Nodal L2 projection of the EG function onto the CG space, solved
/// matrix-free with Jacobi-preconditioned conjugate gradients to a relative
/// residual of 1e-12. Throws if CG fails to converge.
std::vector<double> l2_projection(const Mesh& mesh, const EGState& state);

struct FcrResult {
  std::vector<double> u_fcr;   // constrained nodal output field
  std::vector<double> u_low;   // lumped low-order projection
  std::vector<double> alpha;   // per-cell correction factors in [0, 1]
  std::vector<double> lo, hi;  // per-vertex FCR bounds
};

/// Flux-corrected remap of the EG function onto nodal values: the L2
/// projection is split into the lumped projection plus element
/// contributions, which are scaled per cell so every nodal result stays
/// within the local bounds spanned by cell averages and nodal values.
FcrResult fcr_project(const Mesh& mesh, const EGState& state,
                      const std::vector<double>& u_l2);

struct ErrorNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  double h1_semi = 0.0;  // broken H1 seminorm of the CG component error
};

/// Norms of u_h^EG - u_exact at the state's time, 3x3 Gauss per cell.
ErrorNorms error_norms(const Problem& problem, const Mesh& mesh,
                       const EGState& state);

/// Accumulates l_inf(L1) and l2(H1) over the time steps of a run.
struct TimeNormAccumulator {
  double linf_l1 = 0.0;
  double sum_h1_sq = 0.0;

  void add(const ErrorNorms& n, double dt) {
    linf_l1 = linf_l1 > n.l1 ? linf_l1 : n.l1;
    sum_h1_sq += dt * (n.l2 * n.l2 + n.h1_semi * n.h1_semi);
  }
  double l2_h1() const;
};

/// Evaluates the EG function at an arbitrary physical point (clamped to the
/// domain).
double evaluate_eg_at(const Mesh& mesh, const EGState& state, Vec2 x);

/// L1 and L2 norms of the difference between two EG functions on nested
/// meshes, integrated with 3x3 Gauss on the finer mesh.
struct DiffNorms {
  double l1;
  double l2;
};
DiffNorms eg_difference_norms(const Mesh& fine_mesh, const EGState& fine,
                              const Mesh& coarse_mesh, const EGState& coarse);

/// Three-level EOC log2(||u_4h - u_2h|| / ||u_2h - u_h||) for L1 and L2.
struct ThreeLevelEoc {
  double l1;
  double l2;
};
ThreeLevelEoc three_level_eoc(const Mesh& mesh_h, const EGState& s_h,
                              const Mesh& mesh_2h, const EGState& s_2h,
                              const Mesh& mesh_4h, const EGState& s_4h);

struct Diagnostics {
  double mass;     // integral of u_h^EG
  double entropy;  // integral of eta(u_h^EG), 3x3 Gauss
  double u_min, u_max;  // nodal range
  double U_min, U_max;  // cell-average range
};
Diagnostics compute_diagnostics(const Problem& problem, const Mesh& mesh,
                                const EGState& state);

/// Samples a nodal (CG) field along the segment from a to b at n evenly
/// spaced points (endpoints included).
std::vector<double> sample_nodal_profile(const Mesh& mesh,
                                         const std::vector<double>& u, Vec2 a,
                                         Vec2 b, int n);

/// Number of strict sign changes in the sequence of consecutive differences
/// (monotonicity transitions), ignoring differences below tol.
int count_monotonicity_switches(const std::vector<double>& values, double tol);

/// Number of sign changes of (values[k] - level), ignoring |v - level| < tol.
int count_level_crossings(const std::vector<double>& values, double level,
                          double tol);

}  // namespace egmcl

#endif
