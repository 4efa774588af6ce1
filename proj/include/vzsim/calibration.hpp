// Calibration routines: off-resonance rotation correction angles, drive
// amplitude trim, frame-correction phase trim, derivative-coefficient scans,
// and the closed-form coherence-limited error per gate.
#pragma once

#include <cstdint>
#include <vector>

#include "vzsim/device.hpp"
#include "vzsim/pulse.hpp"
#include "vzsim/signal_chain.hpp"

namespace vzsim {

// Correction for a rotation driven off the equator of the Bloch sphere: when
// the drive axis is tilted out of the x-y plane by `axis_tilt`, a target
// x-rotation by `angle` is recovered as Z(xi) * R(rotation_angle) * Z(xi)
// where R is the rotation about the tilted axis. Infeasible when the tilted
// axis cannot reach the target angle.
struct OrrSolution {
  double rotation_angle = 0.0;  // angle about the tilted axis
  double z_correction = 0.0;    // frame angle xi applied on both sides
  bool feasible = false;
};

// Solves the two-angle correction for target x-rotation `theta` with drive
// axis tilt `lambda` (radians, |lambda| < pi/2 required). The rotation angle
// is taken on the principal branch (0, pi].
OrrSolution orr_correct(double theta, double lambda);

// Phase-gauged distance between the corrected tilted-axis rotation and the
// ideal x-rotation by theta; ~1e-16 for feasible solutions.
double verify_orr(double theta, double lambda, const OrrSolution& solution);

// Finds the peak drive amplitude (rad/s) at which the rendered pulse rotates
// the qubit subspace by pi/2. Root-solve on the projected rotation angle of
// the closed-system propagator; converges to 1e-8 rad. Throws
// std::runtime_error if no bracket is found.
double calibrate_amplitude(PulseSpec spec, const SignalChainParams& chain,
                           const DeviceParams& device);

// Finds the stored frame-correction phase xi minimizing the distance between
// the frame-corrected projected propagator Z(-xi) U Z(-xi) and the ideal
// quarter turn. The amplitude is re-trimmed first; spec.amplitude must be
// positive (call calibrate_amplitude beforehand or rely on the re-trim).
double calibrate_vz_phase(PulseSpec spec, const SignalChainParams& chain,
                          const DeviceParams& device);

enum class BetaObjective { Fidelity, Leakage };

// Knobs for the coefficient scan. The leakage objective is sequence-level:
// the population of |2> after n_cliffords random Cliffords, averaged over
// n_seeds sequence draws. Reduce the counts for quick scans; the defaults
// follow the reference long-sequence protocol.
struct BetaProxyConfig {
  int n_cliffords = 2901;
  int n_seeds = 20;
  std::uint64_t seed = 1;
  int coarse_points = 61;  // coarse-scan resolution over [-3, 3]/|alpha|
};

struct BetaCalibration {
  double beta = 0.0;
  // Set when the scan range is effectively flat (objective contrast below
  // threshold), e.g. leakage pinned at the thermal floor; `beta` then holds
  // the scan midpoint and should not be trusted.
  bool flat_objective = false;
  std::vector<double> scan_beta;       // coarse-scan abscissae (seconds)
  std::vector<double> scan_objective;  // objective at each abscissa
};

// Scans the derivative coefficient over [-3, 3] / |anharmonicity| (61 coarse
// points) and refines the best point by golden-section search. The Fidelity
// objective is the phase-gauged distance of the frame-corrected projected
// gate from the ideal quarter turn (amplitude re-trimmed per point); the
// Leakage objective is the sequence-level |2> population proxy.
BetaCalibration calibrate_beta(PulseSpec spec, const SignalChainParams& chain,
                               const DeviceParams& device,
                               BetaObjective objective,
                               const BetaProxyConfig& proxy = {});

// Closed-form coherence-limited average error per gate of duration
// `gate_time` under relaxation t1 and pure dephasing tphi:
//   1 - (3 + 2 exp(-t/t2) + exp(-t/t1)) / 6,  1/t2 = 1/(2 t1) + 1/tphi.
double coherence_limit_epg(double t1, double tphi, double gate_time);

}  // namespace vzsim
