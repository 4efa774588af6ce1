#include "vzsim/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "vzsim/angles.hpp"
#include "vzsim/experiment.hpp"
#include "vzsim/su2.hpp"

namespace vzsim {

namespace {

// Rotation by `angle` about the unit axis (cos(tilt), 0, sin(tilt)).
Mat2 tilted_axis_rotation(double angle, double tilt) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  const double nx = std::cos(tilt);
  const double nz = std::sin(tilt);
  Mat2 u;
  u << Complex(c, -s * nz), Complex(0.0, -s * nx),
      Complex(0.0, -s * nx), Complex(c, s * nz);
  return u;
}

// Projected rotation angle of the qubit block, insensitive to leakage
// normalization and to z-phase errors.
double projected_angle(const Mat2& u) {
  return 2.0 * std::atan2(std::abs(u(1, 0)), std::abs(u(0, 0)));
}

Mat2 projected_block(const PulseSpec& spec, const SignalChainParams& chain,
                     const DeviceParams& device) {
  return simulate_gate(spec, chain, device, x_rotation(pi / 2.0)).projected;
}

// Distance of the frame-corrected gate from the ideal quarter turn. The
// stored correction xi plays as z_rotation(-xi) U z_rotation(-xi).
double corrected_distance(const Mat2& u, double xi) {
  const Mat2 z = z_rotation(-xi);
  return phase_gauged_distance(z * u * z, x_rotation(pi / 2.0));
}

// Golden-section minimizer on [lo, hi] for a unimodal objective; fixed
// iteration budget keeps the call count deterministic.
double golden_minimize(const std::function<double(double)>& f, double lo,
                       double hi, int iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2.0;
}

// Best frame-correction phase for an already-simulated projected block:
// coarse scan plus golden-section refinement.
double best_vz_phase(const Mat2& u) {
  const double window = 0.8;
  const int coarse = 41;
  int best = 0;
  double best_value = corrected_distance(u, -window);
  for (int i = 1; i < coarse; ++i) {
    const double xi = -window + 2.0 * window * i / (coarse - 1);
    const double value = corrected_distance(u, xi);
    if (value < best_value) {
      best_value = value;
      best = i;
    }
  }
  const double step = 2.0 * window / (coarse - 1);
  const double center = -window + step * best;
  return golden_minimize([&](double xi) { return corrected_distance(u, xi); },
                         center - step, center + step, 60);
}

// Pulse area per unit amplitude by Simpson quadrature of the real envelope.
double area_per_amplitude(const PulseSpec& spec) {
  PulseSpec probe = spec;
  probe.amplitude = 1.0;
  const int n = 2000;  // even
  const double h = probe.duration / n;
  double sum = pulse_envelope(probe, 0.0) + pulse_envelope(probe, probe.duration);
  for (int i = 1; i < n; ++i) {
    sum += pulse_envelope(probe, i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

}  // namespace

OrrSolution orr_correct(double theta, double lambda) {
  if (!std::isfinite(theta) || !std::isfinite(lambda)) {
    throw std::invalid_argument("orr_correct: non-finite angle");
  }
  if (theta < 0.0 || theta > pi) {
    throw std::invalid_argument("orr_correct: target angle outside [0, pi]");
  }
  if (!(std::abs(lambda) < pi / 2.0)) {
    throw std::invalid_argument("orr_correct: axis tilt must satisfy |lambda| < pi/2");
  }
  OrrSolution solution;
  const double ratio = std::sin(theta / 2.0) / std::cos(lambda);
  if (ratio > 1.0) {
    return solution;  // target angle unreachable from this tilt
  }
  const double half = std::asin(ratio);  // principal branch, [0, pi/2]
  solution.rotation_angle = 2.0 * half;
  solution.z_correction =
      std::atan2(std::sin(lambda) * std::sin(half), std::cos(half));
  solution.feasible = true;
  return solution;
}

double verify_orr(double theta, double lambda, const OrrSolution& solution) {
  const Mat2 u = tilted_axis_rotation(solution.rotation_angle, lambda);
  const Mat2 z = z_rotation(-solution.z_correction);
  return phase_gauged_distance(z * u * z, x_rotation(theta));
}

double calibrate_amplitude(PulseSpec spec, const SignalChainParams& chain,
                           const DeviceParams& device) {
  spec.drive_phase = 0.0;
  const double area = area_per_amplitude(spec);
  if (!(area > 0.0)) {
    throw std::runtime_error("amplitude calibration: pulse has zero area");
  }
  const double guess = (pi / 2.0) / area;

  auto angle_error = [&](double amplitude) {
    PulseSpec probe = spec;
    probe.amplitude = amplitude;
    return projected_angle(projected_block(probe, chain, device)) - pi / 2.0;
  };

  double lo = 0.5 * guess;
  double hi = 1.5 * guess;
  double f_lo = angle_error(lo);
  double f_hi = angle_error(hi);
  for (int i = 0; i < 12 && f_lo > 0.0; ++i) {
    hi = lo;
    f_hi = f_lo;
    lo *= 0.5;
    f_lo = angle_error(lo);
  }
  for (int i = 0; i < 12 && f_hi < 0.0; ++i) {
    lo = hi;
    f_lo = f_hi;
    hi *= 1.5;
    f_hi = angle_error(hi);
  }
  if (!(f_lo <= 0.0 && f_hi >= 0.0)) {
    throw std::runtime_error(
        "amplitude calibration: failed to bracket the quarter-turn amplitude");
  }
  double mid = guess;
  for (int i = 0; i < 200; ++i) {
    mid = 0.5 * (lo + hi);
    const double f_mid = angle_error(mid);
    if (std::abs(f_mid) <= 1e-8) return mid;
    if (f_mid < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * guess) break;
  }
  return mid;
}

double calibrate_vz_phase(PulseSpec spec, const SignalChainParams& chain,
                          const DeviceParams& device) {
  spec.amplitude = calibrate_amplitude(spec, chain, device);
  spec.drive_phase = 0.0;
  return best_vz_phase(projected_block(spec, chain, device));
}

BetaCalibration calibrate_beta(PulseSpec spec, const SignalChainParams& chain,
                               const DeviceParams& device,
                               BetaObjective objective,
                               const BetaProxyConfig& proxy) {
  if (!uses_drag_quadrature(spec.family)) {
    throw std::invalid_argument(
        "calibrate_beta: pulse family has no derivative quadrature");
  }
  if (proxy.coarse_points < 3) {
    throw std::invalid_argument("calibrate_beta: need at least 3 scan points");
  }
  const double beta_max = 3.0 / std::abs(device.anharmonicity);
  const bool sandwich = uses_vz_sandwich(spec.family);

  auto evaluate = [&](double beta) {
    PulseSpec probe = spec;
    probe.drag_beta = beta;
    probe.drive_phase = 0.0;
    probe.amplitude = calibrate_amplitude(probe, chain, device);
    if (objective == BetaObjective::Fidelity) {
      const Mat2 u = projected_block(probe, chain, device);
      return corrected_distance(u, sandwich ? best_vz_phase(u) : 0.0);
    }
    if (sandwich) {
      probe.vz_correction = best_vz_phase(projected_block(probe, chain, device));
    }
    return leakage_proxy(probe, chain, device, RbBasis::XY, proxy.n_cliffords,
                         proxy.n_seeds, proxy.seed);
  };

  BetaCalibration result;
  const int n = proxy.coarse_points;
  result.scan_beta.reserve(static_cast<std::size_t>(n));
  result.scan_objective.reserve(static_cast<std::size_t>(n));
  int best = 0;
  for (int i = 0; i < n; ++i) {
    const double beta = -beta_max + 2.0 * beta_max * i / (n - 1);
    const double value = evaluate(beta);
    result.scan_beta.push_back(beta);
    result.scan_objective.push_back(value);
    if (value < result.scan_objective[static_cast<std::size_t>(best)]) {
      best = i;
    }
  }

  const double low = *std::min_element(result.scan_objective.begin(),
                                       result.scan_objective.end());
  const double high = *std::max_element(result.scan_objective.begin(),
                                        result.scan_objective.end());
  if (high - low < 0.05 * std::abs(high) || high - low < 1e-15) {
    result.flat_objective = true;
    result.beta = 0.0;
    return result;
  }

  const int left = std::max(0, best - 1);
  const int right = std::min(n - 1, best + 1);
  result.beta = golden_minimize(
      evaluate, result.scan_beta[static_cast<std::size_t>(left)],
      result.scan_beta[static_cast<std::size_t>(right)], 25);
  return result;
}

double coherence_limit_epg(double t1, double tphi, double gate_time) {
  if (!(t1 > 0.0) || !(tphi > 0.0) || gate_time < 0.0) {
    throw std::invalid_argument("coherence_limit_epg: invalid times");
  }
  const double t2_rate = 1.0 / (2.0 * t1) + 1.0 / tphi;
  return 1.0 -
         (3.0 + 2.0 * std::exp(-gate_time * t2_rate) +
          std::exp(-gate_time / t1)) /
             6.0;
}

}  // namespace vzsim
