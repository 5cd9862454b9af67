#include "egmcl/problem.hpp"

#include <numbers>
#include <stdexcept>

namespace egmcl {

namespace {

constexpr double kPi = std::numbers::pi;

double burgers_u0_1d(double x) { return std::sin(2.0 * kPi * x); }

// Characteristic foot point for the Burgers exact solution: solve
// x0 = x - u0(x0) t by fixed-point iteration.
double burgers_exact(double x, double t) {
  constexpr double t_crit = 1.0 / (2.0 * kPi);
  if (t >= t_crit) {
    throw std::domain_error(
        "burgers exact solution: no classical solution for t >= 1/(2*pi)");
  }
  if (t == 0.0) return burgers_u0_1d(x);
  double x0 = x;
  for (int it = 0; it < 200; ++it) {
    const double next = x - burgers_u0_1d(x0) * t;
    const double dx = next - x0;
    x0 = next;
    if (std::abs(dx) < 1e-12) return burgers_u0_1d(x0);
  }
  throw std::runtime_error(
      "burgers exact solution: fixed point did not converge in 200 "
      "iterations");
}

Problem make_advection() {
  Problem p;
  p.name = "advection";
  const Vec2 vel{1.0, 0.0};
  p.flux = [vel](double u) { return u * vel; };
  p.flux_jacobian = [vel](double) { return vel; };
  // Global upper bound |v| >= |v.n|; the direction-independent value keeps
  // graph-viscosity couplings (and the entropy budgets built from them)
  // uniformly positive.
  p.wave_speed_bound = [vel](double, double, const Vec2&) {
    return std::hypot(vel.x, vel.y);
  };
  p.entropy = [](double u) { return 0.5 * u * u; };
  p.entropy_variable = [](double u) { return u; };
  p.entropy_flux = [](double u) { return Vec2{0.5 * u * u, 0.0}; };
  p.initial_datum = [](const Vec2& x) { return std::cos(kPi * x.x); };
  p.inflow_datum = [](const Vec2& x, double t) {
    return std::cos(kPi * (x.x - t));
  };
  p.is_inflow = [](const Vec2&, const Vec2& n) { return n.x < -0.5; };
  p.g_min = -1.0;
  p.g_max = 1.0;
  p.exact = [](const Vec2& x, double t) { return std::cos(kPi * (x.x - t)); };
  p.exact_gradient = [](const Vec2& x, double t) {
    return Vec2{-kPi * std::sin(kPi * (x.x - t)), 0.0};
  };
  p.exact_depends_on_y = false;
  return p;
}

Problem make_burgers() {
  Problem p;
  p.name = "burgers";
  const Vec2 vel{1.0, 0.0};
  p.flux = [vel](double u) { return (0.5 * u * u) * vel; };
  p.flux_jacobian = [vel](double u) { return u * vel; };
  p.wave_speed_bound = [vel](double u_l, double u_r, const Vec2& n) {
    return std::max(std::abs(u_l), std::abs(u_r)) * std::abs(vel.dot(n));
  };
  p.entropy = [](double u) { return 0.25 * u * u * u * u; };
  p.entropy_variable = [](double u) { return u * u * u; };
  p.entropy_flux = [](double u) {
    return Vec2{0.2 * u * u * u * u * u, 0.0};
  };
  p.initial_datum = [](const Vec2& x) { return burgers_u0_1d(x.x); };
  // u_0(0) = 0 and the x = 0 characteristic is stationary, so the inflow
  // trace stays zero for all times.
  p.inflow_datum = [](const Vec2&, double) { return 0.0; };
  p.is_inflow = [](const Vec2&, const Vec2& n) { return n.x < -0.5; };
  p.g_min = -1.0;
  p.g_max = 1.0;
  p.exact = [](const Vec2& x, double t) { return burgers_exact(x.x, t); };
  p.exact_t_max = 1.0 / (2.0 * kPi);
  p.exact_depends_on_y = false;
  return p;
}

Problem make_kpp(bool smooth) {
  Problem p;
  p.name = smooth ? "kpp-smooth" : "kpp-rotational";
  p.flux = [](double u) { return Vec2{std::sin(u), std::cos(u)}; };
  p.flux_jacobian = [](double u) { return Vec2{std::cos(u), -std::sin(u)}; };
  // Exact directional bound: n.f'(u) = |n| cos(u + atan2(n_y, n_x)), so the
  // maximum over the interval [min(u_l,u_r), max(u_l,u_r)] is |n| if the
  // shifted interval straddles a multiple of pi and the larger endpoint
  // value otherwise.
  p.wave_speed_bound = [](double u_l, double u_r, const Vec2& n) {
    const double r = std::hypot(n.x, n.y);
    if (r == 0.0) return 0.0;
    const double phi = std::atan2(n.y, n.x);
    const double a = std::min(u_l, u_r) + phi;
    const double b = std::max(u_l, u_r) + phi;
    if (std::floor(b / kPi) >= std::ceil(a / kPi)) return r;
    return r * std::max(std::abs(std::cos(a)), std::abs(std::cos(b)));
  };
  p.entropy = [](double u) { return 0.5 * u * u; };
  p.entropy_variable = [](double u) { return u; };
  p.entropy_flux = [](double u) {
    return Vec2{std::cos(u) + u * std::sin(u), -std::sin(u) + u * std::cos(u)};
  };
  if (smooth) {
    p.initial_datum = [](const Vec2& x) {
      const double r = std::hypot(x.x, x.y);
      if (r <= 1.0) {
        return 0.25 * kPi * (1.0 + (1.0 + std::cos(kPi * r)) / 20.0);
      }
      return 0.25 * kPi;
    };
    p.g_min = 0.25 * kPi;
    p.g_max = 0.25 * kPi * 1.1;
  } else {
    p.initial_datum = [](const Vec2& x) {
      return std::hypot(x.x, x.y) <= 1.0 ? 3.5 * kPi : 0.25 * kPi;
    };
    p.g_min = 0.25 * kPi;
    p.g_max = 3.5 * kPi;
  }
  // All boundaries treated as outflow: the data is constant pi/4 near the
  // boundary and the runs end before waves reach it.
  p.inflow_datum = [](const Vec2&, double) { return 0.25 * kPi; };
  p.is_inflow = [](const Vec2&, const Vec2&) { return false; };
  return p;
}

}  // namespace

Problem make_problem(std::string_view name) {
  if (name == "advection") return make_advection();
  if (name == "burgers") return make_burgers();
  if (name == "kpp-smooth") return make_kpp(true);
  if (name == "kpp-rotational") return make_kpp(false);
  throw std::invalid_argument("unknown problem: " + std::string(name));
}

double sampled_wave_speed(const Problem& p, double u_l, double u_r,
                          const Vec2& n) {
  double lambda = 0.0;
  for (int k = 0; k < 65; ++k) {
    const double w = static_cast<double>(k) / 64.0;
    const double u = w * u_r + (1.0 - w) * u_l;
    lambda = std::max(lambda, std::abs(p.flux_jacobian(u).dot(n)));
  }
  return 1.01 * lambda;
}

}  // namespace egmcl
