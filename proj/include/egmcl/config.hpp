#ifndef EGMCL_CONFIG_HPP
#define EGMCL_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "egmcl/core.hpp"
#include "egmcl/limiter.hpp"

namespace egmcl {

/// One run or convergence sweep. Exactly one of dt / dt_over_h must be set;
/// a sweep interprets `levels` as exponents k with h = 2^-k and derives the
/// mesh size from the problem domain.
struct RunConfig {
  std::string problem = "advection";
  std::string scheme = "bp-es";
  int nx = 0;
  int ny = 0;
  std::optional<double> dt;
  std::optional<double> dt_over_h;
  double t_final = 1.0;
  std::string out_dir = "out";
  int snapshot_every = 0;  // steps between VTK snapshots; 0 = first/last only
  bool reproducible = false;
  std::vector<int> levels;
};

/// Benchmark presets: "example1".."example4" (paper-scale) and
/// "example1-small".."example4-small" (reduced refinement for quick runs).
RunConfig preset(const std::string& name);

/// Flat key=value file mirroring the CLI flags ('#' comments allowed).
RunConfig parse_config_file(const std::string& path);

/// Throws std::invalid_argument naming the offending field.
void validate(const RunConfig& config);

/// Computational domain of a builtin problem.
Rect problem_domain(const std::string& problem);

/// Mesh resolution for refinement level k (h = 2^-k) on the problem domain.
void level_resolution(const std::string& problem, int level, int* nx, int* ny);

/// Derived step count / step size with num_steps * dt = t_final exactly:
/// an explicit dt must divide t_final; a dt/h ratio is rounded up to the
/// nearest integer step count.
struct TimeStepping {
  double dt;
  int num_steps;
};
TimeStepping resolve_time_stepping(const RunConfig& config, double h);

}  // namespace egmcl

#endif
