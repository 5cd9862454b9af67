#ifndef EGMCL_CORE_HPP
#define EGMCL_CORE_HPP

#include <cmath>

namespace egmcl {

struct Vec2 {
  double x{0.0};
  double y{0.0};

  constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

struct Rect {
  double x_min, x_max, y_min, y_max;
  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
};

// Single degeneracy threshold used across modules; multiplied by the
// state scale max(1, max|u|, max|U|) wherever a relative guard is needed.
inline constexpr double kDegenerateEps = 1e-14;

}  // namespace egmcl

#endif
