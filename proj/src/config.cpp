#include "egmcl/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace egmcl {

Rect problem_domain(const std::string& problem) {
  if (problem == "advection" || problem == "burgers")
    return {0.0, 1.0, 0.0, 1.0};
  if (problem == "kpp-smooth" || problem == "kpp-rotational")
    return {-2.0, 2.0, -2.5, 1.5};
  throw std::invalid_argument("problem: unknown name '" + problem + "'");
}

void level_resolution(const std::string& problem, int level, int* nx,
                      int* ny) {
  if (level < 0 || level > 20)
    throw std::invalid_argument("levels: refinement level " +
                                std::to_string(level) + " out of range");
  const Rect d = problem_domain(problem);
  const double h = std::ldexp(1.0, -level);
  *nx = static_cast<int>(std::lround(d.width() / h));
  *ny = static_cast<int>(std::lround(d.height() / h));
}

RunConfig preset(const std::string& name) {
  RunConfig c;
  c.out_dir = "out/" + name;
  if (name == "example1" || name == "example1-small") {
    c.problem = "advection";
    c.t_final = 0.5;
    c.dt_over_h = 0.1;
    c.levels = name == "example1" ? std::vector<int>{2, 3, 4, 5, 6, 7, 8}
                                  : std::vector<int>{2, 3, 4, 5, 6};
    level_resolution(c.problem, c.levels.back(), &c.nx, &c.ny);
    return c;
  }
  if (name == "example2" || name == "example2-small") {
    c.problem = "burgers";
    c.t_final = 0.1;
    c.dt_over_h = 0.002;
    c.levels = name == "example2" ? std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8}
                                  : std::vector<int>{1, 2, 3, 4, 5, 6};
    level_resolution(c.problem, c.levels.back(), &c.nx, &c.ny);
    return c;
  }
  if (name == "example2-shock") {
    c.problem = "burgers";
    c.t_final = 1.0;
    c.dt = 0.001;
    level_resolution(c.problem, 6, &c.nx, &c.ny);
    return c;
  }
  if (name == "example3" || name == "example3-small") {
    c.problem = "kpp-smooth";
    c.t_final = 1.0;
    c.dt_over_h = 0.256;
    c.levels = name == "example3" ? std::vector<int>{4, 5, 6, 7}
                                  : std::vector<int>{4, 5, 6};
    level_resolution(c.problem, c.levels.back(), &c.nx, &c.ny);
    return c;
  }
  if (name == "example4") {
    c.problem = "kpp-rotational";
    c.t_final = 1.0;
    c.dt = 0.001;
    level_resolution(c.problem, 7, &c.nx, &c.ny);
    return c;
  }
  if (name == "example4-small") {
    c.problem = "kpp-rotational";
    c.t_final = 1.0;
    c.dt = 0.004;
    level_resolution(c.problem, 5, &c.nx, &c.ny);
    return c;
  }
  throw std::invalid_argument("preset: unknown name '" + name + "'");
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  RunConfig c;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string trimmed;
    for (char ch : line)
      if (!std::isspace(static_cast<unsigned char>(ch))) trimmed += ch;
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: missing '=' at " + path + ":" +
                                  std::to_string(line_no));
    const std::string key = trimmed.substr(0, eq);
    const std::string value = trimmed.substr(eq + 1);
    try {
      if (key == "problem") {
        c.problem = value;
      } else if (key == "scheme") {
        c.scheme = value;
      } else if (key == "nx") {
        c.nx = std::stoi(value);
      } else if (key == "ny") {
        c.ny = std::stoi(value);
      } else if (key == "dt") {
        c.dt = std::stod(value);
      } else if (key == "dt-over-h") {
        c.dt_over_h = std::stod(value);
      } else if (key == "t-final") {
        c.t_final = std::stod(value);
      } else if (key == "out") {
        c.out_dir = value;
      } else if (key == "snapshot-every") {
        c.snapshot_every = std::stoi(value);
      } else if (key == "reproducible") {
        c.reproducible = value == "1" || value == "true";
      } else if (key == "levels") {
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ','))
          c.levels.push_back(std::stoi(item));
      } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("config: bad value for '" + key + "' at " +
                                  path + ":" + std::to_string(line_no));
    }
  }
  return c;
}

void validate(const RunConfig& config) {
  problem_domain(config.problem);               // throws on unknown problem
  (void)parse_scheme_mode(config.scheme);       // throws on unknown scheme
  if (config.dt.has_value() == config.dt_over_h.has_value())
    throw std::invalid_argument("dt/dt-over-h: exactly one must be given");
  if (config.dt && *config.dt <= 0.0)
    throw std::invalid_argument("dt: must be positive");
  if (config.dt_over_h && *config.dt_over_h <= 0.0)
    throw std::invalid_argument("dt-over-h: must be positive");
  if (config.t_final < 0.0)
    throw std::invalid_argument("t-final: must be nonnegative");
  if (config.nx <= 0 || config.ny <= 0)
    throw std::invalid_argument("nx/ny: must be positive");
  if (config.snapshot_every < 0)
    throw std::invalid_argument("snapshot-every: must be nonnegative");
  for (int k : config.levels)
    if (k < 0 || k > 20)
      throw std::invalid_argument("levels: entry out of range");
}

TimeStepping resolve_time_stepping(const RunConfig& config, double h) {
  if (config.t_final == 0.0) return {0.0, 0};
  if (config.dt) {
    const double dt = *config.dt;
    const int n = static_cast<int>(std::lround(config.t_final / dt));
    if (n < 1 ||
        std::abs(n * dt - config.t_final) >
            1e-12 * std::max(1.0, config.t_final))
      throw std::invalid_argument("dt: does not divide t-final");
    return {dt, n};
  }
  const double target = *config.dt_over_h * h;
  const int n =
      std::max(1, static_cast<int>(std::ceil(config.t_final / target - 1e-9)));
  return {config.t_final / n, n};
}

}  // namespace egmcl
