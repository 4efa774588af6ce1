#pragma once
// Instrument model: AWG sampling and reconstruction, single-sideband
// modulation, IQ mixer impairments, and the optional external low-pass
// filter. Everything is carried as a complex baseband signal s(t); the
// physical RF voltage is Re[s(t) e^{i w_lo t}] and is never sampled at the
// carrier rate. The device couples to h(t) = s*(t) e^{i w_ssb t} / 2 in the
// frame rotating at the drive frequency w_d = w_lo + w_ssb.
//
// Chain order: envelope -> SSB modulate -> AWG (zero-order hold + Gaussian
// reconstruction filter) -> optional external filter (baseband I/Q lines)
// -> mixer (adds image tone and carrier leak).

#include <vector>

#include "vzsim/pulse.hpp"
#include "vzsim/su2.hpp"

namespace vzsim {

struct SignalChainParams {
  double awg_sample_period = kAwgSamplePeriod;  // s
  // -3 dB bandwidth of the AWG's Gaussian reconstruction filter, Hz.
  // Non-finite or <= 0 selects the ideal staircase.
  double awg_bandwidth = 300.0e6;
  double epsilon_q = 0.0;    // mixer amplitude imbalance, fraction
  double epsilon_phi = 0.0;  // mixer quadrature phase skew, radians
  // Carrier leak amplitude relative to the peak pulse envelope (-65 dBc).
  double epsilon_lo = 5.6234132519034908e-4;
  double external_filter_cutoff = 270.0e6;  // Hz, 3 dB point
  int external_filter_order = 5;            // Butterworth order
  int oversampling = 16;  // simulation samples per AWG sample
  // Bypass the instrument model entirely: the waveform is the analytic
  // complex baseband evaluated on the simulation grid.
  bool ideal = false;
};

struct Waveform {
  double sample_period = 0.0;  // s, simulation resolution
  double ssb_frequency = 0.0;  // rad/s, modulation carried by the samples
  std::vector<Complex> samples;  // s(t_k), t_k = k * sample_period

  double duration() const {
    return sample_period * static_cast<double>(samples.size());
  }
};

// Complex baseband at the mixer input: w(t) = E(t) e^{i(w_ssb t - gamma)},
// so V_I = Re w and V_Q = -Im w.
Complex ssb_modulate(Complex envelope, double drive_phase, double ssb_frequency,
                     double t);

// Sample-and-hold reconstruction: the ideal signal is sampled at the AWG
// period, each sample held over a centered window and smoothed by the
// Gaussian reconstruction filter (analytic erf kernel). `ideal_samples`
// holds one value per AWG sample; the result is on the oversampled grid
// with n_awg * oversampling points.
std::vector<Complex> awg_render(const std::vector<Complex>& ideal_samples,
                                const SignalChainParams& chain);

// IQ mixer in baseband-equivalent form. For mixer input w the output is
//   s = mu w + nu w* + lo_leak,   mu/nu = (1 +/- (1+eps_q) e^{i eps_phi})/2,
// i.e. the desired tone, an image tone, and a DC term (the carrier at
// w_lo). An ideal mixer has mu = 1, nu = 0.
std::vector<Complex> mixer_output(const std::vector<Complex>& w,
                                  const SignalChainParams& chain,
                                  double lo_leak_amplitude);

// Butterworth low-pass applied identically to both quadratures (on the
// complex signal), via FFT with generous zero padding. cutoff is the 3 dB
// frequency in Hz; non-finite or <= 0 is the identity.
std::vector<Complex> external_filter(const std::vector<Complex>& samples,
                                     double sample_period, double cutoff_hz,
                                     int order);

// Analytic transfer function of the same filter at frequency f (Hz).
Complex butterworth_response(double f_hz, double cutoff_hz, int order);

// Full chain for one pulse. When `rwa_single_tone` is set the mixer step is
// idealized (no image tone, no carrier leak): the device then sees a single
// drive tone, which is the rotating-wave approximation of this model.
Waveform render_pulse(const PulseSpec& spec, const SignalChainParams& chain,
                      bool rwa_single_tone = false);

// Power spectrum |S(f)|^2 with S the finite-signal Fourier transform
// (dt-scaled DFT), zero-padded >= 8x, frequencies in Hz sorted ascending.
// Satisfies Parseval: sum |s|^2 dt = sum power df.
struct Spectrum {
  std::vector<double> frequency;  // Hz
  std::vector<double> power;      // |S(f)|^2, units (signal^2) * s^2 * Hz^-0
};
Spectrum spectrum(const Waveform& waveform);

// Exact finite-signal Fourier amplitude at one frequency (Hz):
// S(f) = sum_k s_k e^{-2 pi i f t_k} dt. Sharper than reading one FFT bin.
Complex spectral_amplitude_at(const Waveform& waveform, double f_hz);

}  // namespace vzsim
