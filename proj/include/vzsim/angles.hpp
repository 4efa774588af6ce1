// Angle arithmetic helpers shared across the library.
#pragma once

#include <cmath>
#include <numbers>

namespace vzsim {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Wrap an angle to the half-open interval (-pi, pi].
inline double wrap_angle(double a) {
  double w = std::remainder(a, two_pi);
  if (w <= -pi) w += two_pi;
  return w;
}

// Wrap an angle to [0, 2*pi).
inline double wrap_angle_positive(double a) {
  double w = std::fmod(a, two_pi);
  if (w < 0.0) w += two_pi;
  if (w >= two_pi) w = 0.0;
  return w;
}

}  // namespace vzsim
