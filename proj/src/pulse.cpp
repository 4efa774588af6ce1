#include "vzsim/pulse.hpp"

#include <cmath>
#include <stdexcept>

namespace vzsim {

const char* pulse_family_name(PulseFamily family) {
  switch (family) {
    case PulseFamily::Gaussian:  return "gaussian";
    case PulseFamily::Drag:      return "drag";
    case PulseFamily::GaussianZ: return "gz";
    case PulseFamily::DragZ:     return "dragz";
    case PulseFamily::FilteredZ: return "filtz";
    case PulseFamily::Square:    return "square";
  }
  return "unknown";
}

namespace {

std::string lowered(const std::string& name) {
  std::string out = name;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

PulseFamily pulse_family_from_name(const std::string& name) {
  const std::string key = lowered(name);
  if (key == "gaussian") return PulseFamily::Gaussian;
  if (key == "drag") return PulseFamily::Drag;
  if (key == "gz" || key == "gaussianz") return PulseFamily::GaussianZ;
  if (key == "dragz") return PulseFamily::DragZ;
  if (key == "filtz" || key == "filteredz") return PulseFamily::FilteredZ;
  if (key == "square") return PulseFamily::Square;
  throw std::invalid_argument("unknown pulse family: " + name);
}

bool uses_drag_quadrature(PulseFamily family) {
  return family == PulseFamily::Drag || family == PulseFamily::DragZ;
}

bool uses_external_filter(PulseFamily family) {
  return family == PulseFamily::FilteredZ;
}

bool uses_vz_sandwich(PulseFamily family) {
  return family == PulseFamily::GaussianZ || family == PulseFamily::DragZ ||
         family == PulseFamily::FilteredZ;
}

double gaussian_envelope(double t, double amplitude, double sigma,
                         double duration) {
  if (t < 0.0 || t > duration) return 0.0;
  const double half = duration / 2.0;
  const double x = (t - half) / sigma;
  const double edge = std::exp(-half * half / (2.0 * sigma * sigma));
  // Rescale so the lifted pulse still peaks at `amplitude`.
  return amplitude * (std::exp(-x * x / 2.0) - edge) / (1.0 - edge);
}

double gaussian_envelope_derivative(double t, double amplitude, double sigma,
                                    double duration) {
  if (t < 0.0 || t > duration) return 0.0;
  const double half = duration / 2.0;
  const double x = (t - half) / sigma;
  const double edge = std::exp(-half * half / (2.0 * sigma * sigma));
  return amplitude * (-x / sigma) * std::exp(-x * x / 2.0) / (1.0 - edge);
}

double pulse_envelope(const PulseSpec& spec, double t) {
  if (spec.family == PulseFamily::Square) {
    return (t >= 0.0 && t <= spec.duration) ? spec.amplitude : 0.0;
  }
  return gaussian_envelope(t, spec.amplitude, spec.sigma, spec.duration);
}

Complex complex_envelope(const PulseSpec& spec, double t) {
  const double primary = pulse_envelope(spec, t);
  double quadrature = 0.0;
  if (uses_drag_quadrature(spec.family)) {
    quadrature = spec.drag_beta * gaussian_envelope_derivative(
                                      t, spec.amplitude, spec.sigma,
                                      spec.duration);
  }
  return Complex(primary, quadrature);
}

}  // namespace vzsim
