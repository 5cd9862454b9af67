#ifndef EGMCL_PROBLEM_HPP
#define EGMCL_PROBLEM_HPP

#include <functional>
#include <limits>
#include <string>
#include <string_view>

#include "egmcl/core.hpp"

namespace egmcl {

/// Scalar hyperbolic problem descriptor: flux, entropy pair, wave-speed
/// bound, initial/inflow data and (where available) the exact solution.
/// Descriptors are immutable and all members are pure functions.
struct Problem {
  std::string name;

  std::function<Vec2(double)> flux;
  std::function<Vec2(double)> flux_jacobian;
  /// Upper bound for |f'(w).n| over w between u_L and u_R.
  std::function<double(double, double, const Vec2&)> wave_speed_bound;

  std::function<double(double)> entropy;           // eta(u)
  std::function<double(double)> entropy_variable;  // v(u) = eta'(u)
  std::function<Vec2(double)> entropy_flux;        // q(u)

  std::function<double(const Vec2&)> initial_datum;
  std::function<double(const Vec2&, double)> inflow_datum;
  /// Static boundary classification: (point on boundary, outward normal).
  std::function<bool(const Vec2&, const Vec2&)> is_inflow;

  /// Invariant interval G = [g_min, g_max] (global bounds of the data).
  double g_min;
  double g_max;

  /// Exact solution, if one exists; valid for t < exact_t_max.
  std::function<double(const Vec2&, double)> exact;
  std::function<Vec2(const Vec2&, double)> exact_gradient;  // optional
  double exact_t_max = std::numeric_limits<double>::infinity();
  /// True when the exact solution varies with y (lets error quadrature
  /// reuse per-column evaluations on tensor meshes when false).
  bool exact_depends_on_y = true;

  /// Entropy potential psi(u) = v(u) f(u) - q(u).
  Vec2 entropy_potential(double u) const {
    return entropy_variable(u) * flux(u) - entropy_flux(u);
  }

  /// Local Lax-Friedrichs flux ((f(uR)+f(uL))/2).n - (lambda/2)(uR-uL).
  double llf_flux(double u_l, double u_r, const Vec2& n) const {
    const double lambda = wave_speed_bound(u_l, u_r, n);
    return 0.5 * (flux(u_r) + flux(u_l)).dot(n) - 0.5 * lambda * (u_r - u_l);
  }
};

/// Builtin problems: "advection", "burgers", "kpp-smooth", "kpp-rotational".
Problem make_problem(std::string_view name);

/// Generic sampled wave-speed bound: max of |f'(w).n| over 65 uniformly
/// spaced convex combinations of u_L and u_R, times a 1.01 safety factor.
double sampled_wave_speed(const Problem& p, double u_l, double u_r,
                          const Vec2& n);

}  // namespace egmcl

#endif
