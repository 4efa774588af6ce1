// Single-qubit unitary algebra: rotation factories, the Z-X-Z parameterization
// with a canonical angle triple, and the five-stage Z-X90-Z-X90-Z expansion
// that a fixed-amplitude pulse set plays natively.
//
// Matrix conventions used throughout the library:
//   z_rotation(a) = exp(-i*a*sigma_z/2) = diag(e^{-ia/2}, e^{+ia/2})
//   x_rotation(t) = exp(-i*t*sigma_x/2)
//   u_from_zxz(theta, phi, lambda) = [[cos(t/2),            -i e^{i lambda} sin(t/2)],
//                                     [-i e^{i phi} sin(t/2), e^{i(lambda+phi)} cos(t/2)]]
// which equals e^{+i(phi+lambda)/2} * z_rotation(phi) * x_rotation(theta) *
// z_rotation(lambda); all gate comparisons are made modulo global phase.
#pragma once

#include <Eigen/Dense>
#include <complex>

namespace vzsim {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

// Angle triple of the Z-X-Z parameterization.
struct Su2Params {
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;
};

Mat2 z_rotation(double angle);
Mat2 x_rotation(double angle);

// Rotation by `theta` about the equatorial axis at azimuth `gamma`:
// z_rotation(gamma) * x_rotation(theta) * z_rotation(-gamma).
Mat2 axis_rotation(double theta, double gamma);

// Explicit unitary for an angle triple (see header comment for the form).
Mat2 u_from_zxz(const Su2Params& p);

// Frobenius distance minimized over a global phase:
// sqrt(|A|_F^2 + |B|_F^2 - 2*|tr(A^dag B)|).
double phase_gauged_distance(const Mat2& a, const Mat2& b);

// True when |U^dag U - I|_F <= tol.
bool is_unitary(const Mat2& u, double tol = 1e-8);

// Reduce an arbitrary triple to the canonical representative:
// theta in [0, pi]; phi, lambda in (-pi, pi]; at theta == 0 only phi+lambda
// is physical and the sum is split evenly; at theta == pi only phi-lambda is
// physical and the difference is split evenly with opposite signs.
Su2Params canonicalize(const Su2Params& p);

// Extract the canonical triple of a 2x2 unitary (any global phase).
// Throws std::invalid_argument when the unitarity residual exceeds 1e-8.
Su2Params zxzxz_decompose(const Mat2& u);

// Frame angles of the five-stage expansion
//   U ~ z_rotation(z_late) * x_rotation(pi/2) * z_rotation(z_mid)
//       * x_rotation(pi/2) * z_rotation(z_early)
// listed in temporal order (z_early acts first).
struct FiveAngleSchedule {
  double z_early = 0.0;
  double z_mid = 0.0;
  double z_late = 0.0;
};

FiveAngleSchedule five_angle_schedule(const Su2Params& p);

// Expansion of a bare x_rotation(theta): {-pi/2, pi - theta, -pi/2}.
FiveAngleSchedule xtheta_expand(double theta);

// Compose the five stages back into a matrix (global phase unconstrained).
Mat2 compose_five_angle(const FiveAngleSchedule& s);

}  // namespace vzsim
