// Software drive-frame bookkeeping. Each drive channel carries an accumulated
// phase; a virtual Z advances that phase instantaneously and every later pulse
// on the channel is played at its nominal phase plus the accumulated offset.
#pragma once

#include <map>
#include <string>
#include <vector>

namespace vzsim {

struct FrameState {
  // Accumulated phase per channel, stored in [0, 2*pi).
  std::map<std::string, double> channel_phase;
};

FrameState make_frame(const std::vector<std::string>& channels);

// Advance the channel frame by phi (radians). Throws std::invalid_argument on
// an unknown channel.
void apply_virtual_z(FrameState& frame, const std::string& channel, double phi);

// Phase at which a pulse with nominal phase `gamma` is actually played:
// wrap(gamma + accumulated channel phase). Throws on an unknown channel.
double effective_drive_phase(const FrameState& frame, const std::string& channel,
                             double gamma);

// Frame-phase bookkeeping rules for two-qubit drives: a cross-resonance drive
// on a control channel is referenced to the target qubit's frame; a parametric
// exchange drive is referenced to the frame difference.
enum class TwoQubitDriveKind { CrossResonance, ParametricExchange };

double two_qubit_drive_phase(TwoQubitDriveKind kind, const FrameState& control,
                             const std::string& control_channel,
                             const FrameState& target,
                             const std::string& target_channel);

}  // namespace vzsim
