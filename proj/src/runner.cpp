#include "egmcl/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <memory>

#include "json.hpp"

#include "egmcl/io.hpp"

namespace egmcl {

namespace {

std::string snapshot_path(const std::string& dir, int step) {
  char name[32];
  std::snprintf(name, sizeof(name), "snapshot_%06d.vtk", step);
  return dir + "/" + name;
}

void write_snapshot(const std::string& path, const Mesh& mesh,
                    const EGState& state) {
  const FcrResult fcr = fcr_project(mesh, state, l2_projection(mesh, state));
  write_vtk(path, mesh, {{"u_fcr", fcr.u_fcr}}, {{"U", state.U}});
}

// Published profile line for a problem, if any: Burgers uses the midline
// y = 0.5, the rotating-wave benchmark the top-left-to-bottom-right
// diagonal.
bool profile_line(const std::string& problem, const Rect& d, Vec2* a, Vec2* b) {
  if (problem == "burgers") {
    *a = {d.x_min, 0.5};
    *b = {d.x_max, 0.5};
    return true;
  }
  if (problem == "kpp-rotational") {
    *a = {d.x_min, d.y_max};
    *b = {d.x_max, d.y_min};
    return true;
  }
  return false;
}

nlohmann::json report_json(const RunReport& r) {
  nlohmann::json j;
  j["config"] = {
      {"problem", r.config.problem},
      {"scheme", r.config.scheme},
      {"nx", r.config.nx},
      {"ny", r.config.ny},
      {"t_final", r.config.t_final},
      {"reproducible", r.config.reproducible},
  };
  j["dt"] = r.dt;
  j["steps"] = r.steps;
  // Suppressed in reproducible mode so reports are byte-for-byte identical.
  j["wall_seconds"] = r.config.reproducible ? 0.0 : r.wall_seconds;
  j["max_cell_cfl"] = r.stats.max_cell_cfl;
  j["max_nodal_cfl"] = r.stats.max_nodal_cfl;
  j["bound_violations"] = r.stats.bound_violations;
  j["max_bound_violation"] = r.stats.max_bound_violation;
  j["entropy_violations"] = r.stats.entropy_violations;
  j["cfl_warnings"] = r.stats.cfl_warnings;
  j["diagnostics"] = {
      {"mass", r.final_diagnostics.mass},
      {"entropy", r.final_diagnostics.entropy},
      {"U_min", r.final_diagnostics.U_min},
      {"U_max", r.final_diagnostics.U_max},
      {"u_min", r.final_diagnostics.u_min},
      {"u_max", r.final_diagnostics.u_max},
  };
  if (r.has_errors) {
    j["errors"] = {
        {"final_l1", r.final_errors.l1},   {"final_l2", r.final_errors.l2},
        {"final_h1", r.final_errors.h1_semi}, {"linf_l1", r.linf_l1},
        {"l2_h1", r.l2_h1},
    };
  }
  return j;
}

RunReport execute_run(const RunConfig& config, const Mesh& mesh,
                      bool write_files) {
  const Problem problem = make_problem(config.problem);
  const SchemeMode mode = parse_scheme_mode(config.scheme);
  const TimeStepping ts = resolve_time_stepping(config, mesh.hx());

  RunReport report;
  report.config = config;
  report.dt = ts.dt;
  report.steps = ts.num_steps;
  report.has_errors =
      problem.exact && config.t_final <= problem.exact_t_max;

  if (write_files) std::filesystem::create_directories(config.out_dir);

  std::unique_ptr<CsvWriter> diag_csv;
  if (write_files) {
    diag_csv = std::make_unique<CsvWriter>(
        config.out_dir + "/diagnostics.csv",
        std::vector<std::string>{"step", "t", "mass", "entropy", "U_min",
                                 "U_max", "u_min", "u_max", "l1", "l2", "h1"});
  }

  const EGState initial = initial_state(problem, mesh);
  TimeNormAccumulator norms;
  ErrorNorms last_errors{};
  const auto t0 = std::chrono::steady_clock::now();

  auto observer = [&](int step, const EGState& s) {
    const Diagnostics d = compute_diagnostics(problem, mesh, s);
    ErrorNorms en{};
    if (report.has_errors) {
      en = error_norms(problem, mesh, s);
      norms.add(en, step == 0 ? 0.0 : ts.dt);
      // l_inf(L1) includes the initial step; the time-integral weight of
      // step 0 is zero.
      norms.linf_l1 = std::max(norms.linf_l1, en.l1);
      last_errors = en;
    }
    if (diag_csv) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      diag_csv->row({static_cast<double>(step), s.t, d.mass, d.entropy,
                     d.U_min, d.U_max, d.u_min, d.u_max,
                     report.has_errors ? en.l1 : nan,
                     report.has_errors ? en.l2 : nan,
                     report.has_errors ? en.h1_semi : nan});
    }
    if (write_files) {
      const bool cadence =
          config.snapshot_every > 0 && step % config.snapshot_every == 0;
      if (step == 0 || step == ts.num_steps || cadence)
        write_snapshot(snapshot_path(config.out_dir, step), mesh, s);
    }
  };

  TimeLoopConfig loop{ts.dt, ts.num_steps, mode, CflPolicy::kWarn};
  const EGState final_state =
      run_transient(problem, mesh, initial, loop, &report.stats, observer);

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  report.final_diagnostics = compute_diagnostics(problem, mesh, final_state);
  if (report.has_errors) {
    report.final_errors = last_errors;
    report.linf_l1 = norms.linf_l1;
    report.l2_h1 = norms.l2_h1();
  }

  if (write_files) {
    Vec2 a, b;
    if (profile_line(config.problem, mesh.domain(), &a, &b)) {
      const FcrResult fcr =
          fcr_project(mesh, final_state, l2_projection(mesh, final_state));
      const int n = 2 * std::max(mesh.nx(), mesh.ny()) + 1;
      const std::vector<double> p =
          sample_nodal_profile(mesh, fcr.u_fcr, a, b, n);
      CsvWriter csv(config.out_dir + "/profile.csv",
                    {"s", "x", "y", "u_fcr"});
      for (int k = 0; k < n; ++k) {
        const double s = n > 1 ? static_cast<double>(k) / (n - 1) : 0.0;
        const Vec2 x = a + (b - a) * s;
        csv.row({s, x.x, x.y, p[k]});
      }
    }
    std::ofstream out(config.out_dir + "/report.json");
    out << report_json(report).dump(2) << "\n";
  }
  return report;
}

}  // namespace

RunReport run_single(const RunConfig& config) {
  validate(config);
  const Mesh mesh(problem_domain(config.problem), config.nx, config.ny);
  return execute_run(config, mesh, true);
}

ConvergenceReport run_convergence(const RunConfig& config) {
  if (config.levels.size() < 2)
    throw std::invalid_argument("levels: need at least 2 refinement levels");
  for (std::size_t k = 1; k < config.levels.size(); ++k)
    if (config.levels[k] <= config.levels[k - 1])
      throw std::invalid_argument("levels: must be strictly increasing");

  ConvergenceReport report;
  std::vector<Mesh> meshes;
  std::vector<EGState> finals;
  const Problem problem = make_problem(config.problem);
  report.has_exact =
      problem.exact && config.t_final <= problem.exact_t_max;
  report.has_three_level = config.levels.size() >= 3;

  std::filesystem::create_directories(config.out_dir);
  for (std::size_t k = 0; k < config.levels.size(); ++k) {
    RunConfig level_config = config;
    level_resolution(config.problem, config.levels[k], &level_config.nx,
                     &level_config.ny);
    validate(level_config);
    Mesh mesh(problem_domain(config.problem), level_config.nx,
              level_config.ny);

    // Per-level transient without per-level artifact files.
    const SchemeMode mode = parse_scheme_mode(config.scheme);
    const TimeStepping ts = resolve_time_stepping(level_config, mesh.hx());
    const EGState initial = initial_state(problem, mesh);
    TimeNormAccumulator norms;
    ErrorNorms last_errors{};
    auto observer = [&](int step, const EGState& s) {
      if (!report.has_exact) return;
      const ErrorNorms en = error_norms(problem, mesh, s);
      norms.add(en, step == 0 ? 0.0 : ts.dt);
      norms.linf_l1 = std::max(norms.linf_l1, en.l1);
      last_errors = en;
    };
    TimeLoopConfig loop{ts.dt, ts.num_steps, mode, CflPolicy::kWarn};
    StageStats stats;
    EGState final_state =
        run_transient(problem, mesh, initial, loop, &stats, observer);

    LevelResult r;
    r.level = config.levels[k];
    r.h = mesh.hx();
    r.dt = ts.dt;
    r.steps = ts.num_steps;
    if (report.has_exact) {
      r.final_errors = last_errors;
      r.linf_l1 = norms.linf_l1;
      r.l2_h1 = norms.l2_h1();
      if (k > 0) {
        const LevelResult& prev = report.levels[k - 1];
        r.rate_linf_l1 = std::log2(prev.linf_l1 / r.linf_l1);
        r.rate_l2_h1 = std::log2(prev.l2_h1 / r.l2_h1);
      }
    }
    meshes.push_back(std::move(mesh));
    finals.push_back(std::move(final_state));
    if (k >= 2) {
      const ThreeLevelEoc eoc =
          three_level_eoc(meshes[k], finals[k], meshes[k - 1], finals[k - 1],
                          meshes[k - 2], finals[k - 2]);
      r.eoc3_l1 = eoc.l1;
      r.eoc3_l2 = eoc.l2;
    }
    report.levels.push_back(r);
  }

  CsvWriter csv(config.out_dir + "/convergence.csv",
                {"h", "dt", "scheme", "L1", "L2", "H1", "linfL1", "l2H1",
                 "rate_linfL1", "rate_l2H1", "eoc3_L1", "eoc3_L2"});
  for (const LevelResult& r : report.levels) {
    csv.row(std::vector<std::string>{
        std::to_string(r.h), std::to_string(r.dt), config.scheme,
        std::to_string(r.final_errors.l1), std::to_string(r.final_errors.l2),
        std::to_string(r.final_errors.h1_semi), std::to_string(r.linf_l1),
        std::to_string(r.l2_h1), std::to_string(r.rate_linf_l1),
        std::to_string(r.rate_l2_h1), std::to_string(r.eoc3_l1),
        std::to_string(r.eoc3_l2)});
  }
  return report;
}

}  // namespace egmcl
