#ifndef EGMCL_RUNNER_HPP
#define EGMCL_RUNNER_HPP

#include "egmcl/config.hpp"
#include "egmcl/postprocess.hpp"
#include "egmcl/time_integrator.hpp"

namespace egmcl {

struct RunReport {
  RunConfig config;
  double dt = 0.0;
  int steps = 0;
  double wall_seconds = 0.0;
  StageStats stats;
  Diagnostics final_diagnostics{};
  bool has_errors = false;  // exact solution available over the whole run
  ErrorNorms final_errors{};
  double linf_l1 = 0.0;
  double l2_h1 = 0.0;
};

/// Executes one transient run and writes artifacts into config.out_dir:
/// VTK snapshots (u_fcr point data, U cell data), diagnostics.csv, a final
/// profile.csv for the problems with a published profile line, and
/// report.json.
RunReport run_single(const RunConfig& config);

struct LevelResult {
  int level;
  double h;
  double dt;
  int steps;
  ErrorNorms final_errors{};
  double linf_l1 = 0.0;
  double l2_h1 = 0.0;
  double rate_linf_l1 = 0.0;  // log2(E_2h / E_h) vs previous level
  double rate_l2_h1 = 0.0;
  double eoc3_l1 = 0.0;  // three-level EOC ending at this level
  double eoc3_l2 = 0.0;
};

struct ConvergenceReport {
  std::vector<LevelResult> levels;
  bool has_exact = false;
  bool has_three_level = false;
};

/// Runs the refinement sweep of config.levels and writes convergence.csv.
/// Needs >= 2 strictly increasing levels (>= 3 for three-level EOCs).
ConvergenceReport run_convergence(const RunConfig& config);

}  // namespace egmcl

#endif
