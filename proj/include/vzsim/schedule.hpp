// Gate schedules: the instruction stream a single-qubit compiler emits.
// Only two instruction kinds exist — a virtual Z (zero duration, advances the
// channel frame) and a finite-duration pulse with a rotation angle and a
// nominal drive phase. The text form is one instruction per line:
//
//   VZ <channel> <phase>
//   XP <channel> <theta> <gamma>
//
// with angles in radians printed to 17 significant digits.
#pragma once

#include <string>
#include <vector>

#include "vzsim/frame.hpp"
#include "vzsim/su2.hpp"

namespace vzsim {

enum class GateOpKind { VirtualZ, Pulse };

struct GateOp {
  GateOpKind kind = GateOpKind::VirtualZ;
  std::string channel = "d0";
  double phase = 0.0;  // VirtualZ: frame increment phi.
  double theta = 0.0;  // Pulse: rotation angle.
  double gamma = 0.0;  // Pulse: nominal drive phase.
};

using GateSchedule = std::vector<GateOp>;

GateOp make_virtual_z(const std::string& channel, double phi);
GateOp make_pulse(const std::string& channel, double theta, double gamma);

// Compile an arbitrary single-qubit gate into virtual Zs around two fixed
// pi/2 pulses. The emitted stream plays the canonical five-stage expansion;
// a gate z_rotation(delta) compiles to the single instruction VZ(-delta).
GateSchedule compile_su2(const Su2Params& p, const std::string& channel);
GateSchedule compile_z_gate(double delta, const std::string& channel);

std::string serialize_schedule(const GateSchedule& ops);
// Throws std::invalid_argument on malformed input.
GateSchedule parse_schedule(const std::string& text);

// Matrix oracle for idealized playback: pulses are instantaneous
// axis_rotation(theta, effective phase) factors and virtual Zs only move the
// frame. Returns the physical product; `frame` is advanced in place.
Mat2 ideal_played_unitary(const GateSchedule& ops, FrameState& frame);

// Physical product with the trailing frame folded back in:
// z_rotation(-phi_total) * played. This equals the intended logical gate.
// All ops must address a single channel; throws otherwise.
Mat2 ideal_logical_unitary(const GateSchedule& ops);

}  // namespace vzsim
