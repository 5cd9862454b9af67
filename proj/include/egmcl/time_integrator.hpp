#ifndef EGMCL_TIME_INTEGRATOR_HPP
#define EGMCL_TIME_INTEGRATOR_HPP

#include <functional>

#include "egmcl/limiter.hpp"

namespace egmcl {

enum class CflPolicy { kWarn, kAssert };

/// Per-stage diagnostics accumulated across a run.
struct StageStats {
  double max_cell_cfl = 0.0;    // max over stages of dt * A_e
  double max_nodal_cfl = 0.0;   // max over stages of dt * a_i
  long bound_violations = 0;    // stage results outside [g_min, g_max]
  double max_bound_violation = 0.0;
  long entropy_violations = 0;  // face entropy condition failures
  int cfl_warnings = 0;
};

/// CFL report for one candidate step size: dt*A_e <= 1 and dt*a_i <= 1.
struct CflReport {
  double max_cell_cfl;
  double max_nodal_cfl;
  int worst_cell;    // argmax of dt * A_e
  int worst_vertex;  // argmax of dt * a_i
  bool pass;         // both maxima <= 1 + 1e-12
};
CflReport cfl_check(const Rhs& rhs, double dt);

/// One forward Euler stage of the coupled system under the given scheme
/// mode. Low-order and limited modes update through the bar-state form so
/// the result is a convex combination under the CFL conditions; the
/// unlimited high-order mode applies the raw right-hand sides.
EGState forward_euler_stage(const Problem& problem, const Mesh& mesh,
                            const EGState& state, double dt, SchemeMode mode,
                            CflPolicy policy, StageStats* stats);

/// Heun's method: two forward Euler stages, then the average of the first
/// stage's input and the second stage's output.
EGState heun_step(const Problem& problem, const Mesh& mesh,
                  const EGState& state, double dt, SchemeMode mode,
                  CflPolicy policy, StageStats* stats);

struct TimeLoopConfig {
  double dt;
  int num_steps;         // num_steps * dt must equal the final time
  SchemeMode mode;
  CflPolicy cfl_policy = CflPolicy::kWarn;
};

/// Runs num_steps Heun steps from `initial`. The observer (if set) is
/// invoked with (step index, state) at step 0 and after every step.
/// Throws if the state becomes non-finite.
EGState run_transient(
    const Problem& problem, const Mesh& mesh, const EGState& initial,
    const TimeLoopConfig& config, StageStats* stats,
    const std::function<void(int, const EGState&)>& observer = {});

}  // namespace egmcl

#endif
