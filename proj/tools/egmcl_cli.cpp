#include <cstdio>
#include <sstream>

#include "CLI11.hpp"

#include "egmcl/runner.hpp"

namespace {

void add_common_flags(CLI::App* cmd, egmcl::RunConfig* config,
                      std::string* config_file) {
  cmd->add_option("--config", *config_file, "flat key=value config file");
  cmd->add_option("--problem", config->problem,
                  "advection | burgers | kpp-smooth | kpp-rotational");
  cmd->add_option("--scheme", config->scheme, "lo | ho | bp | bp-es");
  cmd->add_option("--nx", config->nx, "cells in x");
  cmd->add_option("--ny", config->ny, "cells in y");
  cmd->add_option(
      "--dt",
      [config](const std::vector<std::string>& v) {
        config->dt = std::stod(v.back());
        return true;
      },
      "time step (must divide t-final)");
  cmd->add_option(
      "--dt-over-h",
      [config](const std::vector<std::string>& v) {
        config->dt_over_h = std::stod(v.back());
        return true;
      },
      "time step as a ratio of h");
  cmd->add_option("--t-final", config->t_final, "final time");
  cmd->add_option("--out", config->out_dir, "output directory");
  cmd->add_option("--snapshot-every", config->snapshot_every,
                  "steps between VTK snapshots (0 = first/last only)");
  cmd->add_flag("--reproducible", config->reproducible,
                "byte-stable reports (suppresses wall-clock)");
}

// Config file as base, explicitly passed flags on top.
egmcl::RunConfig merge_config(CLI::App* cmd, const egmcl::RunConfig& flags,
                              const std::string& config_file) {
  if (config_file.empty()) return flags;
  egmcl::RunConfig c = egmcl::parse_config_file(config_file);
  if (cmd->count("--problem")) c.problem = flags.problem;
  if (cmd->count("--scheme")) c.scheme = flags.scheme;
  if (cmd->count("--nx")) c.nx = flags.nx;
  if (cmd->count("--ny")) c.ny = flags.ny;
  if (cmd->count("--dt")) {
    c.dt = flags.dt;
    c.dt_over_h.reset();
  }
  if (cmd->count("--dt-over-h")) {
    c.dt_over_h = flags.dt_over_h;
    c.dt.reset();
  }
  if (cmd->count("--t-final")) c.t_final = flags.t_final;
  if (cmd->count("--out")) c.out_dir = flags.out_dir;
  if (cmd->count("--snapshot-every")) c.snapshot_every = flags.snapshot_every;
  if (cmd->count("--reproducible")) c.reproducible = flags.reproducible;
  return c;
}

std::vector<int> parse_levels(const std::string& list) {
  std::vector<int> levels;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) levels.push_back(std::stoi(item));
  return levels;
}

void print_run_summary(const egmcl::RunReport& r) {
  std::printf("%s %s %dx%d: %d steps, dt=%g, wall=%.2fs\n",
              r.config.problem.c_str(), r.config.scheme.c_str(), r.config.nx,
              r.config.ny, r.steps, r.dt, r.wall_seconds);
  std::printf("  U in [%.6g, %.6g], u in [%.6g, %.6g], mass=%.12g\n",
              r.final_diagnostics.U_min, r.final_diagnostics.U_max,
              r.final_diagnostics.u_min, r.final_diagnostics.u_max,
              r.final_diagnostics.mass);
  std::printf(
      "  bound violations: %ld, entropy violations: %ld, max CFL: "
      "%.3f/%.3f\n",
      r.stats.bound_violations, r.stats.entropy_violations,
      r.stats.max_cell_cfl, r.stats.max_nodal_cfl);
  if (r.has_errors)
    std::printf("  linf(L1)=%.6e  l2(H1)=%.6e\n", r.linf_l1, r.l2_h1);
}

void print_convergence_summary(const egmcl::ConvergenceReport& r) {
  std::printf("%10s %12s %12s %8s %8s %8s %8s %8s\n", "h", "linfL1", "l2H1",
              "rateL1", "rateH1", "eoc3L1", "eoc3L2", "steps");
  for (const egmcl::LevelResult& lv : r.levels)
    std::printf("%10.6f %12.4e %12.4e %8.3f %8.3f %8.3f %8.3f %8d\n", lv.h,
                lv.linf_l1, lv.l2_h1, lv.rate_linf_l1, lv.rate_l2_h1,
                lv.eoc3_l1, lv.eoc3_l2, lv.steps);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "bound-preserving enriched Galerkin solver for scalar conservation "
      "laws"};
  app.require_subcommand(1);

  egmcl::RunConfig run_config, conv_config;
  std::string run_file, conv_file, level_list;

  CLI::App* run = app.add_subcommand("run", "single transient run");
  add_common_flags(run, &run_config, &run_file);

  CLI::App* conv =
      app.add_subcommand("convergence", "refinement sweep with EOC table");
  add_common_flags(conv, &conv_config, &conv_file);
  conv->add_option("--levels", level_list,
                   "comma-separated refinement exponents k (h = 2^-k)");

  std::string bench_name, bench_scheme, bench_out;
  CLI::App* bench = app.add_subcommand(
      "bench", "benchmark preset (example1..example4, -small variants)");
  bench->add_option("name", bench_name, "preset name")->required();
  bench->add_option("--scheme", bench_scheme, "lo | ho | bp | bp-es");
  bench->add_option("--out", bench_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      print_run_summary(
          egmcl::run_single(merge_config(run, run_config, run_file)));
    } else if (conv->parsed()) {
      egmcl::RunConfig c = merge_config(conv, conv_config, conv_file);
      if (!level_list.empty()) c.levels = parse_levels(level_list);
      // a sweep needs a nominal resolution for validate(); the per-level
      // resolutions are derived from the levels
      if (c.nx == 0 && !c.levels.empty())
        egmcl::level_resolution(c.problem, c.levels.back(), &c.nx, &c.ny);
      print_convergence_summary(egmcl::run_convergence(c));
    } else if (bench->parsed()) {
      egmcl::RunConfig c = egmcl::preset(bench_name);
      if (!bench_scheme.empty()) c.scheme = bench_scheme;
      if (!bench_out.empty()) c.out_dir = bench_out;
      if (c.levels.size() >= 2)
        print_convergence_summary(egmcl::run_convergence(c));
      else
        print_run_summary(egmcl::run_single(c));
    }
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
  return 0;
}
