#include "vzsim/su2.hpp"

#include <cmath>
#include <stdexcept>

#include "vzsim/angles.hpp"

namespace vzsim {

namespace {
constexpr Complex kI{0.0, 1.0};
}

Mat2 z_rotation(double angle) {
  Mat2 m;
  m << std::exp(-kI * (angle / 2.0)), 0.0, 0.0, std::exp(kI * (angle / 2.0));
  return m;
}

Mat2 x_rotation(double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  Mat2 m;
  m << c, -kI * s, -kI * s, c;
  return m;
}

Mat2 axis_rotation(double theta, double gamma) {
  return z_rotation(gamma) * x_rotation(theta) * z_rotation(-gamma);
}

Mat2 u_from_zxz(const Su2Params& p) {
  const double c = std::cos(p.theta / 2.0);
  const double s = std::sin(p.theta / 2.0);
  Mat2 m;
  m << c, -kI * std::exp(kI * p.lambda) * s,
      -kI * std::exp(kI * p.phi) * s,
      std::exp(kI * (p.lambda + p.phi)) * c;
  return m;
}

double phase_gauged_distance(const Mat2& a, const Mat2& b) {
  // min over global phase of ||a - e^{i phi} b||_F; the optimum aligns the
  // phase of tr(a^dag b). Forming the difference matrix first keeps full
  // precision near zero, unlike expanding the square via the trace.
  const Complex overlap = (a.adjoint() * b).trace();
  const double mag = std::abs(overlap);
  const Complex phase = mag > 0.0 ? std::conj(overlap) / mag : Complex(1.0);
  return (a - phase * b).norm();
}

bool is_unitary(const Mat2& u, double tol) {
  const Mat2 residual = u.adjoint() * u - Mat2::Identity();
  return residual.norm() <= tol;
}

Su2Params canonicalize(const Su2Params& p) {
  double theta = wrap_angle(p.theta);
  double phi = p.phi;
  double lambda = p.lambda;
  if (theta < 0.0) {
    // x_rotation(-t) = z_rotation(pi) x_rotation(t) z_rotation(-pi), so the
    // sign of theta can always be absorbed into the flanking z stages.
    theta = -theta;
    phi += pi;
    lambda -= pi;
  }
  phi = wrap_angle(phi);
  lambda = wrap_angle(lambda);
  if (theta == 0.0) {
    const double sum = wrap_angle(phi + lambda);
    phi = sum / 2.0;
    lambda = sum / 2.0;
  } else if (theta == pi) {
    const double diff = wrap_angle(phi - lambda);
    phi = diff / 2.0;
    lambda = -diff / 2.0;
  }
  return {theta, phi, lambda};
}

Su2Params zxzxz_decompose(const Mat2& u) {
  const Mat2 residual = u.adjoint() * u - Mat2::Identity();
  if (residual.norm() > 1e-8) {
    throw std::invalid_argument("zxzxz_decompose: input is not unitary");
  }
  const Complex u00 = u(0, 0);
  const Complex u01 = u(0, 1);
  const Complex u10 = u(1, 0);
  const Complex u11 = u(1, 1);
  const double m00 = std::abs(u00);
  const double m10 = std::abs(u10);
  const double theta = 2.0 * std::atan2(m10, m00);
  if (m10 == 0.0) {
    // Diagonal: only the phase sum is defined.
    const double sum = std::arg(u11) - std::arg(u00);
    return canonicalize({0.0, sum, 0.0});
  }
  if (m00 == 0.0) {
    // Anti-diagonal: only the phase difference is defined.
    const double diff = std::arg(u10) - std::arg(u01);
    return canonicalize({pi, diff, 0.0});
  }
  const double ref = std::arg(u00);
  const double phi = std::arg(u10) - ref + pi / 2.0;
  const double lambda = std::arg(u01) - ref + pi / 2.0;
  return canonicalize({theta, phi, lambda});
}

FiveAngleSchedule five_angle_schedule(const Su2Params& p) {
  return {wrap_angle(p.lambda - pi / 2.0), wrap_angle(pi - p.theta),
          wrap_angle(p.phi - pi / 2.0)};
}

FiveAngleSchedule xtheta_expand(double theta) {
  return five_angle_schedule({theta, 0.0, 0.0});
}

Mat2 compose_five_angle(const FiveAngleSchedule& s) {
  return z_rotation(s.z_late) * x_rotation(pi / 2.0) * z_rotation(s.z_mid) *
         x_rotation(pi / 2.0) * z_rotation(s.z_early);
}

}  // namespace vzsim
