#include "vzsim/frame.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "vzsim/angles.hpp"
#include "vzsim/schedule.hpp"

namespace vzsim {

namespace {

double channel_phase_of(const FrameState& frame, const std::string& channel) {
  auto it = frame.channel_phase.find(channel);
  if (it == frame.channel_phase.end()) {
    throw std::invalid_argument("unknown drive channel: " + channel);
  }
  return it->second;
}

std::string format_angle(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

FrameState make_frame(const std::vector<std::string>& channels) {
  FrameState frame;
  for (const auto& ch : channels) frame.channel_phase[ch] = 0.0;
  return frame;
}

void apply_virtual_z(FrameState& frame, const std::string& channel, double phi) {
  auto it = frame.channel_phase.find(channel);
  if (it == frame.channel_phase.end()) {
    throw std::invalid_argument("unknown drive channel: " + channel);
  }
  it->second = wrap_angle_positive(it->second + phi);
}

double effective_drive_phase(const FrameState& frame, const std::string& channel,
                             double gamma) {
  return wrap_angle_positive(gamma + channel_phase_of(frame, channel));
}

double two_qubit_drive_phase(TwoQubitDriveKind kind, const FrameState& control,
                             const std::string& control_channel,
                             const FrameState& target,
                             const std::string& target_channel) {
  const double phi_control = channel_phase_of(control, control_channel);
  const double phi_target = channel_phase_of(target, target_channel);
  switch (kind) {
    case TwoQubitDriveKind::CrossResonance:
      return wrap_angle_positive(phi_target);
    case TwoQubitDriveKind::ParametricExchange:
      return wrap_angle_positive(phi_control - phi_target);
  }
  throw std::invalid_argument("two_qubit_drive_phase: unsupported drive kind");
}

GateOp make_virtual_z(const std::string& channel, double phi) {
  GateOp op;
  op.kind = GateOpKind::VirtualZ;
  op.channel = channel;
  op.phase = phi;
  return op;
}

GateOp make_pulse(const std::string& channel, double theta, double gamma) {
  GateOp op;
  op.kind = GateOpKind::Pulse;
  op.channel = channel;
  op.theta = theta;
  op.gamma = gamma;
  return op;
}

GateSchedule compile_su2(const Su2Params& p, const std::string& channel) {
  const Su2Params c = canonicalize(p);
  const FiveAngleSchedule s = five_angle_schedule(c);
  // Each z_rotation(delta) stage is realized as VZ(-delta).
  return {make_virtual_z(channel, -s.z_early), make_pulse(channel, pi / 2.0, 0.0),
          make_virtual_z(channel, -s.z_mid), make_pulse(channel, pi / 2.0, 0.0),
          make_virtual_z(channel, -s.z_late)};
}

GateSchedule compile_z_gate(double delta, const std::string& channel) {
  return {make_virtual_z(channel, -delta)};
}

std::string serialize_schedule(const GateSchedule& ops) {
  std::string out;
  for (const auto& op : ops) {
    if (op.kind == GateOpKind::VirtualZ) {
      out += "VZ " + op.channel + " " + format_angle(op.phase) + "\n";
    } else {
      out += "XP " + op.channel + " " + format_angle(op.theta) + " " +
             format_angle(op.gamma) + "\n";
    }
  }
  return out;
}

GateSchedule parse_schedule(const std::string& text) {
  GateSchedule ops;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;  // blank line
    const std::string where = " at line " + std::to_string(line_no);
    if (kind == "VZ") {
      std::string channel;
      double phase = 0.0;
      if (!(ls >> channel >> phase)) {
        throw std::invalid_argument("parse_schedule: malformed VZ" + where);
      }
      ops.push_back(make_virtual_z(channel, phase));
    } else if (kind == "XP") {
      std::string channel;
      double theta = 0.0, gamma = 0.0;
      if (!(ls >> channel >> theta >> gamma)) {
        throw std::invalid_argument("parse_schedule: malformed XP" + where);
      }
      ops.push_back(make_pulse(channel, theta, gamma));
    } else {
      throw std::invalid_argument("parse_schedule: unknown instruction '" +
                                  kind + "'" + where);
    }
    std::string trailing;
    if (ls >> trailing) {
      throw std::invalid_argument("parse_schedule: trailing token '" + trailing +
                                  "'" + where);
    }
  }
  return ops;
}

Mat2 ideal_played_unitary(const GateSchedule& ops, FrameState& frame) {
  Mat2 u = Mat2::Identity();
  for (const auto& op : ops) {
    if (op.kind == GateOpKind::VirtualZ) {
      apply_virtual_z(frame, op.channel, op.phase);
    } else {
      const double eff = effective_drive_phase(frame, op.channel, op.gamma);
      u = axis_rotation(op.theta, eff) * u;
    }
  }
  return u;
}

Mat2 ideal_logical_unitary(const GateSchedule& ops) {
  if (ops.empty()) return Mat2::Identity();
  const std::string& channel = ops.front().channel;
  for (const auto& op : ops) {
    if (op.channel != channel) {
      throw std::invalid_argument(
          "ideal_logical_unitary: schedule spans multiple channels");
    }
  }
  FrameState frame = make_frame({channel});
  const Mat2 played = ideal_played_unitary(ops, frame);
  return z_rotation(-frame.channel_phase.at(channel)) * played;
}

}  // namespace vzsim
