// Randomized-benchmarking experiments: sequence scheduling, open-system
// simulation with a cached per-pulse superoperator, population extraction,
// and decay fits reduced to per-Clifford / per-gate error figures.
#pragma once

#include <cstdint>
#include <vector>

#include "vzsim/device.hpp"
#include "vzsim/pulse.hpp"
#include "vzsim/rb_fit.hpp"
#include "vzsim/signal_chain.hpp"

namespace vzsim {

// Which decomposition feeds the scheduler: finite-duration X/Y pulses only,
// or X pulses plus zero-duration frame updates.
enum class RbBasis { XY, HZ };

// How a scheduled pulse is turned into a quantum channel. Simulated renders
// the calibrated pulse through the signal chain and integrates the device
// master equation; IdealPulses applies the exact target rotation followed by
// idle decay over the gate duration (useful for coherence-limit baselines).
enum class GateModel { Simulated, IdealPulses };

struct RbConfig {
  std::vector<int> lengths = {1, 2, 5, 10, 20, 50, 100, 200, 350, 500};
  int n_seeds = 5;
  std::uint64_t seed = 1;
  RbBasis basis = RbBasis::XY;
  // Clifford index interleaved after every random element; -1 disables.
  int interleaved_gate = -1;
  GateModel model = GateModel::Simulated;
  // When false the dissipators are dropped and evolution is unitary.
  bool open_system = true;
  // Calibrated quarter-turn prototype. Must rotate by pi/2; every scheduled
  // pulse is this prototype played at a different drive phase.
  PulseSpec pulse;
  SignalChainParams chain;
  DeviceParams device;
};

struct RbPoint {
  int length = 0;
  int seed_index = 0;
  double p0 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
};

struct RbResult {
  // One entry per (length, seed), ordered by length then seed index.
  std::vector<RbPoint> points;
  // Seed-averaged populations per sequence length.
  std::vector<double> mean_p0;
  std::vector<double> mean_p2;
  RbFitResult ground_fit;  // A r^m + B fit of mean ground population
  RbFitResult leak_fit;    // same model on mean |2> population
  double gates_per_clifford = 0.0;
  double epc = 0.0;
  double epc_stderr = 0.0;
  double epg = 0.0;
  double epg_stderr = 0.0;
  double lpg = 0.0;
  double lpg_stderr = 0.0;
};

// Runs the full experiment: samples sequences per (length, seed), schedules
// them in the configured basis, simulates, averages populations over seeds,
// and fits both decay curves. Work items are evaluated in parallel (capped
// by the VZSIM_THREADS environment variable) with bitwise-deterministic
// results independent of scheduling order.
RbResult run_rb_experiment(const RbConfig& config);

// Mean |2>-state population after n_cliffords random Cliffords (no recovery
// gate), averaged over seeds. This is the objective probed by the
// leakage-oriented derivative-coefficient calibration.
double leakage_proxy(const PulseSpec& pulse, const SignalChainParams& chain,
                     const DeviceParams& device, RbBasis basis,
                     int n_cliffords, int n_seeds, std::uint64_t seed);

// Number of worker threads used for `items` independent work items:
// hardware concurrency, capped by VZSIM_THREADS when set.
int worker_count(int items);

}  // namespace vzsim
