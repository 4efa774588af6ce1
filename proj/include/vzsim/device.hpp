#pragma once
// Open-system dynamics of a truncated driven anharmonic oscillator.
//
// All Hamiltonians live in the frame rotating at the drive frequency
// w_d = omega01 + drive_frequency_offset for every level:
//   H(t) = h(t) a^dag + h*(t) a - offset * n + (alpha/2)(n-1)n
// with h(t) the complex drive coupling produced by the signal chain.
// Dissipation: relaxation sqrt((1+nbar)/T1) a, heating sqrt(nbar/T1) a^dag,
// pure dephasing sqrt(2/Tphi) n (two-level coherence decays as e^{-t/Tphi}).
//
// Integration is fixed-step RK4 on the propagator / density matrix /
// superoperator; the step subdivides the waveform sample grid so spline
// interpolation of the drive never crosses a segment boundary. Density
// matrices vectorize by column stacking: vec(A X B) = (B^T kron A) vec(X).

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "vzsim/rng.hpp"
#include "vzsim/schedule.hpp"
#include "vzsim/signal_chain.hpp"
#include "vzsim/su2.hpp"

namespace vzsim {

using MatX = Eigen::MatrixXcd;
using MatXd = Eigen::MatrixXd;
using VecXd = Eigen::VectorXd;

struct DeviceParams {
  double omega01 = two_pi * 5.0353e9;            // rad/s
  double anharmonicity = two_pi * (-235.5e6);    // rad/s
  double t1 = 54e-6;                             // s
  double tphi = 135e-6;                          // s, pure dephasing
  double temperature = 0.046;                    // K
  int dims = 4;                                  // truncation, >= 2
  double drive_frequency_offset = 0.0;           // w_d - omega01, rad/s
  // Idealize the mixer when rendering drives for this device (single
  // drive tone; no image or carrier-leak tones).
  bool rwa_single_tone = false;
};

MatX number_operator(int dims);
MatX lowering_operator(int dims);

// Diagonal rotating-frame drift: -offset * n + (alpha/2)(n-1)n.
MatX drift_hamiltonian(const DeviceParams& device);

// Complex drive coupling h(t); the device Hamiltonian adds
// h a^dag + h* a on top of the drift.
using DriveFunction = std::function<Complex(double)>;

// h(t) from a rendered waveform: h = s*(t) e^{i w_ssb t} / 2 with s(t)
// interpolated by a Catmull-Rom spline between simulation samples.
DriveFunction drive_from_waveform(const Waveform& waveform);

// Analytic ideal-chain coupling h = E*(t) e^{i gamma} / 2 (exact at any t;
// used for integrator convergence measurements).
DriveFunction ideal_drive(const PulseSpec& spec);

MatX drive_hamiltonian(double t, const DriveFunction& drive,
                       const DeviceParams& device);

// Mean thermal photon number 1/(e^{hbar w01 / kB T} - 1); 0 at T = 0.
double thermal_occupation(const DeviceParams& device);

std::vector<MatX> lindblad_dissipators(const DeviceParams& device);

// Boltzmann populations over the anharmonic levels
// E_n = hbar(w01 n + (alpha/2)(n-1)n), normalized.
VecXd thermal_equilibrium(const DeviceParams& device);

// Closed-system propagator over [0, duration]. base_step is the outer grid
// (use the waveform sample period); the integrator subdivides it to keep
// RK4 comfortably inside its stability/accuracy region. step_scale < 1
// refines the step further (convergence measurements).
MatX evolve_unitary(const DriveFunction& drive, double duration,
                    const DeviceParams& device, double base_step,
                    double step_scale = 1.0);

// Density-matrix evolution, Schroedinger (open_system = false) or Lindblad.
// Throws std::runtime_error if trace preservation degrades beyond 1e-6.
MatX evolve_density(const MatX& rho0, const DriveFunction& drive,
                    double duration, const DeviceParams& device,
                    bool open_system, double base_step,
                    double step_scale = 1.0);

// Full process map for one gate window as a dims^2 x dims^2 matrix acting
// on column-stacked density matrices.
MatX gate_superoperator(const DriveFunction& drive, double duration,
                        const DeviceParams& device, bool open_system,
                        double base_step, double step_scale = 1.0);

// Constant no-drive Lindblad generator and its exact exponential.
MatX lindblad_generator(const DeviceParams& device);
MatX decay_superoperator(double duration, const DeviceParams& device);

MatX unitary_superoperator(const MatX& u);
MatX apply_superoperator(const MatX& superop, const MatX& rho);

struct GateReport {
  MatX propagator;        // dims x dims closed-system unitary
  Mat2 projected;         // top-left 2x2 block
  double target_distance; // phase-gauged distance of the block to target
};

// Render the spec through the chain and integrate the closed system.
GateReport simulate_gate(const PulseSpec& spec, const SignalChainParams& chain,
                         const DeviceParams& device, const Mat2& target);

struct ScheduleRunConfig {
  PulseSpec pulse;          // calibrated quarter-turn prototype
  SignalChainParams chain;
  DeviceParams device;
  bool open_system = true;
};

// Reference schedule executor: virtual-z ops advance the software frame in
// zero time; pulses render at their frame-shifted phase and evolve the
// state. Pulse angles other than pi/2 scale the prototype amplitude
// linearly.
MatX run_schedule(const GateSchedule& ops, const MatX& rho0,
                  const ScheduleRunConfig& config);

// Exact level populations (real diagonal).
std::vector<double> measure_populations(const MatX& rho);

// Row-stochastic confusion matrix C, C(i,j) = P(measure j | prepared i).
std::vector<double> apply_confusion(const std::vector<double>& populations,
                                    const MatXd& confusion);

// Left-inverse of apply_confusion; throws std::invalid_argument when the
// confusion matrix is singular.
std::vector<double> invert_povm(const std::vector<double>& measured,
                                const MatXd& confusion);

// Multinomial finite-shot sampling with the deterministic counter RNG.
std::vector<double> sample_shots(const std::vector<double>& populations,
                                 int shots, std::uint64_t key);

}  // namespace vzsim
