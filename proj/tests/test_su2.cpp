#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "vzsim/angles.hpp"
#include "vzsim/su2.hpp"

using namespace vzsim;

namespace {

constexpr Complex kI{0.0, 1.0};

Mat2 m2(Complex a, Complex b, Complex c, Complex d) {
  Mat2 m;
  m << a, b, c, d;
  return m;
}

// Independent Haar-uniform unitary (with a random global phase) built from
// the standard three-angle parameterization of U(2).
Mat2 haar_unitary(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double psi = two_pi * unit(gen);
  const double chi = two_pi * unit(gen);
  const double delta = two_pi * unit(gen);
  const double phi = std::asin(std::sqrt(unit(gen)));
  const double c = std::cos(phi), s = std::sin(phi);
  return std::exp(kI * delta) * m2(std::exp(kI * psi) * c,
                                   std::exp(kI * chi) * s,
                                   -std::exp(-kI * chi) * s,
                                   std::exp(-kI * psi) * c);
}

void check_triple(const Su2Params& got, double theta, double phi, double lambda,
                  double tol = 1e-12) {
  CHECK(std::abs(got.theta - theta) <= tol);
  CHECK(std::abs(got.phi - phi) <= tol);
  CHECK(std::abs(got.lambda - lambda) <= tol);
}

void check_canonical_ranges(const Su2Params& p) {
  CHECK(p.theta >= 0.0);
  CHECK(p.theta <= pi);
  CHECK(p.phi > -pi);
  CHECK(p.phi <= pi);
  CHECK(p.lambda > -pi);
  CHECK(p.lambda <= pi);
}

}  // namespace

TEST_SUITE("su2") {

TEST_CASE("rotation factories match explicit matrix elements") {
  const Mat2 z = z_rotation(0.7);
  CHECK(std::abs(z(0, 0) - std::exp(-kI * 0.35)) < 1e-15);
  CHECK(std::abs(z(1, 1) - std::exp(kI * 0.35)) < 1e-15);
  CHECK(std::abs(z(0, 1)) == 0.0);

  const Mat2 x = x_rotation(0.7);
  CHECK(std::abs(x(0, 0) - std::cos(0.35)) < 1e-15);
  CHECK(std::abs(x(0, 1) + kI * std::sin(0.35)) < 1e-15);
  CHECK(std::abs(x(1, 0) + kI * std::sin(0.35)) < 1e-15);

  // axis_rotation(theta, pi/2) is a y rotation.
  const Mat2 y = axis_rotation(0.9, pi / 2.0);
  const Mat2 y_direct = m2(std::cos(0.45), -std::sin(0.45), std::sin(0.45),
                           std::cos(0.45));
  CHECK(phase_gauged_distance(y, y_direct) < 1e-14);
  CHECK((y - y_direct).norm() < 1e-14);  // equal including phase
}

TEST_CASE("named gates decompose to the expected canonical triples") {
  const double s2 = 1.0 / std::sqrt(2.0);
  const Mat2 id = Mat2::Identity();
  const Mat2 x_pi = m2(0, 1, 1, 0);
  const Mat2 y_pi = m2(0, -kI, kI, 0);
  const Mat2 z_pi = m2(1, 0, 0, -1);
  const Mat2 x_half = m2(s2, -kI * s2, -kI * s2, s2);
  const Mat2 y_half = m2(s2, -s2, s2, s2);
  const Mat2 s_gate = m2(1, 0, 0, kI);
  const Mat2 h_gate = m2(s2, s2, s2, -s2);
  const double c8 = std::cos(pi / 8.0), s8 = std::sin(pi / 8.0);
  const Mat2 x_quarter = m2(c8, -kI * s8, -kI * s8, c8);
  const Mat2 t_gate = m2(1, 0, 0, std::exp(kI * (pi / 4.0)));

  check_triple(zxzxz_decompose(id), 0.0, 0.0, 0.0);
  check_triple(zxzxz_decompose(x_pi), pi, 0.0, 0.0);
  check_triple(zxzxz_decompose(y_pi), pi, pi / 2.0, -pi / 2.0);
  check_triple(zxzxz_decompose(z_pi), 0.0, pi / 2.0, pi / 2.0);
  check_triple(zxzxz_decompose(x_half), pi / 2.0, 0.0, 0.0);
  check_triple(zxzxz_decompose(y_half), pi / 2.0, pi / 2.0, -pi / 2.0);
  check_triple(zxzxz_decompose(s_gate), 0.0, pi / 4.0, pi / 4.0);
  check_triple(zxzxz_decompose(h_gate), pi / 2.0, pi / 2.0, pi / 2.0);
  check_triple(zxzxz_decompose(x_quarter), pi / 4.0, 0.0, 0.0);
  check_triple(zxzxz_decompose(t_gate), 0.0, pi / 8.0, pi / 8.0);

  // And the reconstructions match the gates up to global phase.
  for (const Mat2& u : {id, x_pi, y_pi, z_pi, x_half, y_half, s_gate, h_gate,
                        x_quarter, t_gate}) {
    CHECK(phase_gauged_distance(u_from_zxz(zxzxz_decompose(u)), u) < 1e-12);
  }
}

TEST_CASE("u_from_zxz equals the z-x-z product with a known phase") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> ang(-pi, pi);
  for (int k = 0; k < 200; ++k) {
    const Su2Params p{std::abs(ang(gen)), ang(gen), ang(gen)};
    const Mat2 lhs = u_from_zxz(p);
    const Mat2 rhs = std::exp(kI * ((p.phi + p.lambda) / 2.0)) *
                     (z_rotation(p.phi) * x_rotation(p.theta) *
                      z_rotation(p.lambda));
    CHECK((lhs - rhs).norm() < 1e-13);
    CHECK(std::abs(std::abs(lhs.determinant()) - 1.0) < 1e-13);
  }
}

TEST_CASE("decompose/reconstruct round-trips Haar-random unitaries") {
  std::mt19937_64 gen(17);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Mat2 u = haar_unitary(gen);
    const Su2Params p = zxzxz_decompose(u);
    check_canonical_ranges(p);
    worst = std::max(worst, phase_gauged_distance(u_from_zxz(p), u));
    // Idempotence of the canonical triple.
    const Su2Params p2 = zxzxz_decompose(u_from_zxz(p));
    CHECK(std::abs(p2.theta - p.theta) < 1e-9);
    CHECK(std::abs(wrap_angle(p2.phi - p.phi)) < 1e-9);
    CHECK(std::abs(wrap_angle(p2.lambda - p.lambda)) < 1e-9);
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("canonicalize folds theta and splits the degenerate angles") {
  check_triple(canonicalize({0.0, 0.3, 0.5}), 0.0, 0.4, 0.4);
  check_triple(canonicalize({pi, 0.3, 0.5}), pi, -0.1, 0.1);
  // Sum wraps before splitting.
  check_triple(canonicalize({0.0, 3.0, 3.0}), 0.0,
               wrap_angle(6.0) / 2.0, wrap_angle(6.0) / 2.0);
  // Negative theta is absorbed by the flanking stages.
  const Su2Params folded = canonicalize({-pi / 2.0, 0.2, -0.4});
  check_triple(folded, pi / 2.0, wrap_angle(0.2 + pi), wrap_angle(-0.4 - pi));
  // Large theta wraps.
  check_triple(canonicalize({3.0 * pi, 0.0, 0.0}), pi, 0.0, 0.0);

  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> ang(-8.0, 8.0);
  for (int k = 0; k < 300; ++k) {
    const Su2Params raw{ang(gen), ang(gen), ang(gen)};
    const Su2Params c = canonicalize(raw);
    check_canonical_ranges(c);
    // Same gate modulo phase.
    CHECK(phase_gauged_distance(u_from_zxz(c), u_from_zxz(raw)) < 1e-12);
    // Idempotent.
    const Su2Params c2 = canonicalize(c);
    check_triple(c2, c.theta, c.phi, c.lambda, 1e-15);
  }
}

TEST_CASE("five-angle expansion composes back to the gate") {
  std::mt19937_64 gen(29);
  std::uniform_real_distribution<double> ang(-pi, pi);
  for (int k = 0; k < 200; ++k) {
    const Su2Params p = canonicalize({ang(gen), ang(gen), ang(gen)});
    const FiveAngleSchedule s = five_angle_schedule(p);
    CHECK(phase_gauged_distance(compose_five_angle(s), u_from_zxz(p)) < 1e-12);
  }
}

TEST_CASE("xtheta_expand plays a bare x rotation through two quarter turns") {
  for (double theta : {0.0, pi / 4.0, pi / 2.0, 1.234, pi, 2.9}) {
    const FiveAngleSchedule s = xtheta_expand(theta);
    CHECK(std::abs(wrap_angle(s.z_early + pi / 2.0)) < 1e-15);
    CHECK(std::abs(wrap_angle(s.z_mid - (pi - theta))) < 1e-15);
    CHECK(std::abs(wrap_angle(s.z_late + pi / 2.0)) < 1e-15);
    CHECK(phase_gauged_distance(compose_five_angle(s), x_rotation(theta)) <
          1e-12);
  }
}

TEST_CASE("non-unitary input is rejected") {
  Mat2 bad = Mat2::Identity();
  bad(0, 0) = 1.1;  // residual far above threshold
  CHECK_THROWS_AS(zxzxz_decompose(bad), std::invalid_argument);

  // A residual just below the threshold is accepted.
  Mat2 nearly = Mat2::Identity();
  nearly(0, 0) = 1.0 + 4e-10;
  CHECK_NOTHROW(zxzxz_decompose(nearly));
}

TEST_CASE("phase-gauged distance ignores exactly a global phase") {
  std::mt19937_64 gen(31);
  const Mat2 u = haar_unitary(gen);
  CHECK(phase_gauged_distance(u, std::exp(kI * 1.234) * u) < 1e-12);
  // Known value: distance(I, z_rotation(pi/2)) = sqrt(4 - 2*sqrt(2)).
  const double d = phase_gauged_distance(Mat2::Identity(), z_rotation(pi / 2.0));
  CHECK(std::abs(d - std::sqrt(4.0 - 2.0 * std::sqrt(2.0))) < 1e-12);
}

}  // TEST_SUITE("su2")
