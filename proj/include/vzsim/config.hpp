// Experiment configuration: a flat dotted-key text format with SI-unit
// suffixes, parsed into the typed parameter structs, and a serializer whose
// output round-trips exactly (parse -> serialize -> parse is identity).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vzsim/calibration.hpp"
#include "vzsim/device.hpp"
#include "vzsim/experiment.hpp"
#include "vzsim/pulse.hpp"
#include "vzsim/signal_chain.hpp"

namespace vzsim {

enum class SweepAxis { None, Sideband, Length, Beta };

const char* sweep_axis_name(SweepAxis axis);

struct SweepConfig {
  SweepAxis axis = SweepAxis::None;
  // Raw SI values: Hz for the sideband axis, seconds for length and beta.
  double start = 0.0;
  double stop = 0.0;
  int points = 0;
};

struct ExperimentConfig {
  DeviceParams device;
  SignalChainParams chain;
  PulseSpec pulse;
  // True until the config supplies pulse.vz_correction explicitly; commands
  // then calibrate the correction for sandwich families instead.
  bool auto_vz = true;

  // Spans three decades so the exponential's curvature is resolved for
  // per-Clifford errors anywhere from ~1e-4 to ~1e-2.
  std::vector<int> rb_lengths = {2, 5, 12, 25, 50, 100, 200, 400, 1000, 2000};
  int rb_seeds = 5;
  std::vector<RbBasis> rb_bases = {RbBasis::XY};
  std::vector<PulseFamily> rb_families = {PulseFamily::Drag};
  int rb_interleave = -1;  // Clifford index; -1 disables
  GateModel rb_model = GateModel::Simulated;
  bool rb_open_system = true;

  SweepConfig sweep;
  BetaProxyConfig calibrate;  // proxy knobs for the beta scan
  std::string output_dir = "out";
  std::uint64_t seed = 1;
};

// Parses `key = value` lines. '#' starts a comment; blank lines are skipped.
// Numeric values accept the unit suffixes ns/us/ms/s, Hz/kHz/MHz/GHz, mK/K;
// frequency-type fields are given as ordinary frequencies and converted to
// angular internally. Unknown keys and malformed values throw
// std::invalid_argument naming the offending line.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config_file(const std::string& path);

// Emits every field with plain SI numbers (17 significant digits), in a
// fixed key order. parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const ExperimentConfig& config);

}  // namespace vzsim
