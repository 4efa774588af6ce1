#pragma once
// Symbolic pulse specifications and their analytic baseband envelopes.
//
// A pulse occupies t in [0, duration] followed by an idle buffer; the
// envelope is a lifted truncated Gaussian that is exactly zero at both
// edges and peaks at the midpoint. The complex envelope is
//   E(t) = envelope(t) + i * drag_beta * d(envelope)/dt
// for the derivative-corrected families and just the real envelope
// otherwise. The derivative quadrature therefore rides 90 degrees behind
// the drive phase.

#include <string>

#include "vzsim/angles.hpp"
#include "vzsim/su2.hpp"

namespace vzsim {

enum class PulseFamily {
  Gaussian,    // plain Gaussian envelope
  Drag,        // Gaussian + derivative quadrature
  GaussianZ,   // Gaussian + virtual-z correction sandwich
  DragZ,       // Drag + virtual-z correction sandwich
  FilteredZ,   // Gaussian + external low-pass filter + virtual-z sandwich
  Square,      // constant envelope (analytic calibration anchor)
};

const char* pulse_family_name(PulseFamily family);
// Accepts the names printed by pulse_family_name (case-insensitive).
// Throws std::invalid_argument for unknown names.
PulseFamily pulse_family_from_name(const std::string& name);

bool uses_drag_quadrature(PulseFamily family);
bool uses_external_filter(PulseFamily family);
bool uses_vz_sandwich(PulseFamily family);

// Hardware-derived default timing: one AWG sample is 1/1.2 GHz. The pulse
// spans 16 samples (13.33 ns) and the buffer 8 (6.67 ns), so the gate
// window is exactly 24 samples with no ragged edge.
inline constexpr double kAwgSamplePeriod = 1.0 / 1.2e9;             // s
inline constexpr double kDefaultDuration = 16.0 * kAwgSamplePeriod; // s
inline constexpr double kDefaultBuffer = 8.0 * kAwgSamplePeriod;    // s
inline constexpr double kDefaultSsbFrequency = -two_pi * 120.0e6;   // rad/s

struct PulseSpec {
  PulseFamily family = PulseFamily::Drag;
  double amplitude = 0.0;                        // peak envelope, rad/s
  double duration = kDefaultDuration;            // s
  double sigma = kDefaultDuration / 4.0;         // s
  double drag_beta = 0.0;                        // s
  double drive_phase = 0.0;                      // radians
  double ssb_frequency = kDefaultSsbFrequency;   // rad/s
  double buffer = kDefaultBuffer;                // s
  double vz_correction = 0.0;                    // radians, GZ/DRAGZ/FILTZ

  double gate_time() const { return duration + buffer; }
};

// Lifted truncated Gaussian on [0, duration]: zero at both edges, peak
// `amplitude` at duration/2. Returns 0 outside the support.
double gaussian_envelope(double t, double amplitude, double sigma,
                         double duration);

// Analytic time derivative of gaussian_envelope (no finite differences).
double gaussian_envelope_derivative(double t, double amplitude, double sigma,
                                    double duration);

// Real envelope of the spec at time t (family dispatch; buffer region is 0).
double pulse_envelope(const PulseSpec& spec, double t);

// Complex envelope E(t); the imaginary part is the derivative quadrature
// for the DRAG families and zero otherwise.
Complex complex_envelope(const PulseSpec& spec, double t);

}  // namespace vzsim
