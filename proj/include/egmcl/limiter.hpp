#ifndef EGMCL_LIMITER_HPP
#define EGMCL_LIMITER_HPP

#include <string_view>
#include <vector>

#include "egmcl/semidiscrete.hpp"

namespace egmcl {

/// lo   - first-order bar-state scheme (no antidiffusion)
/// ho   - unlimited high-order target
/// bp   - bound-preserving limiting only
/// bp-es - bound-preserving limiting plus entropy fixes
enum class SchemeMode { kLowOrder, kHighOrder, kBoundPreserving, kEntropyStable };

SchemeMode parse_scheme_mode(std::string_view name);
std::string_view scheme_mode_name(SchemeMode mode);

struct Bounds {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// Per-cell bounds U_e^min/max over the low-order stencil: neighbor averages
/// and nodal values reachable through the cell's vertices, plus inflow trace
/// values at the quadrature points of the cell's inflow faces.
Bounds cell_local_bounds(const Problem& problem, const Mesh& mesh,
                         const EGState& state);

/// Per-vertex bounds u_i^min/max over {u_i} and the element bar states
/// ubar_i^e of adjacent cells (cells with degenerate gamma_i^e skipped).
Bounds nodal_local_bounds(const Mesh& mesh, const EGState& state,
                          const Rhs& rhs);

/// Limited antidiffusive corrections. F_star is oriented like Rhs::face
/// (from the face's `in` cell outwards); f_star is indexed like f_elem.
struct LimitedFluxes {
  std::vector<double> F_star;
  std::vector<std::array<double, 4>> f_star;
};

/// Monolithic convex limiting of one face flux against the bar state and
/// the target cells' bounds (one-sided on boundary faces).
double mcl_flux_limit(const Face& f, const FaceData& fd, double F,
                      const Bounds& cell_bounds, double eps);

/// Entropy correction factor for one face flux (second stage of the
/// flux limiter): scales F_bp so the Tadmor-type entropy inequality holds.
/// u_in is the average of the face's `in` cell.
double entropy_fix_factor(const Problem& problem, const Face& f, double u_in,
                          const FaceData& fd, double F_bp);

/// Clip-and-scale limiting of the element contributions f_i^e of one cell.
/// `entropy_prelimit` enables the entropy correction factors; without it the
/// result is only bound-preserving. Cells with an inflow boundary face
/// (`inflow_cell`) clip against the invariant-domain bounds [g_min, g_max]
/// instead of the local stencil bounds, which are polluted there by the
/// lumped inflow traces.
std::array<double, 4> clip_and_scale(const Problem& problem, const Mesh& mesh,
                                     const EGState& state, const Rhs& rhs,
                                     const Bounds& nodal_bounds, int e,
                                     bool inflow_cell, bool entropy_prelimit,
                                     double eps);

/// Applies the full limiting strategy of `mode` to the raw decomposition:
/// lo -> zero fluxes, ho -> raw fluxes, bp / bp-es -> limited fluxes.
LimitedFluxes apply_scheme_mode(SchemeMode mode, const Problem& problem,
                                const Mesh& mesh, const EGState& state,
                                const Rhs& rhs);

/// Number of faces where the limited flux violates the semidiscrete cell
/// entropy condition by more than tol (diagnostic for entropy-stable runs).
int count_face_entropy_violations(const Problem& problem, const Mesh& mesh,
                                  const EGState& state, const Rhs& rhs,
                                  const LimitedFluxes& fluxes, double tol);

/// Number of (cell, vertex) pairs where the limited element contribution
/// violates the element entropy condition (v_i - vbar_e) f* <= Q_i^e by more
/// than tol. Uses the same dissipation budget enforced by the limiter.
int count_element_entropy_violations(const Problem& problem, const Mesh& mesh,
                                     const EGState& state, const Rhs& rhs,
                                     const LimitedFluxes& fluxes, double tol);

}  // namespace egmcl

#endif
