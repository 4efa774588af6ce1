#include "vzsim/signal_chain.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace vzsim {

namespace {

// FFTW plan creation/destruction is not thread safe; execution of a fresh
// plan on its own arrays is.
std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

std::vector<Complex> fft(const std::vector<Complex>& in, int sign) {
  std::vector<Complex> data = in;
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()),
                            reinterpret_cast<fftw_complex*>(data.data()),
                            reinterpret_cast<fftw_complex*>(data.data()), sign,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(plan);
  }
  return data;
}

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Signed bin frequency in Hz for an M-point DFT at sample spacing dt.
double bin_frequency(std::size_t j, std::size_t m, double dt) {
  const double fs = 1.0 / dt;
  const double f = static_cast<double>(j) * fs / static_cast<double>(m);
  return (j <= m / 2) ? f : f - fs;
}

int awg_sample_count(const PulseSpec& spec, const SignalChainParams& chain) {
  const double ratio = spec.gate_time() / chain.awg_sample_period;
  return static_cast<int>(std::ceil(ratio - 1e-9));
}

}  // namespace

Complex ssb_modulate(Complex envelope, double drive_phase,
                     double ssb_frequency, double t) {
  return envelope *
         std::exp(Complex(0.0, ssb_frequency * t - drive_phase));
}

std::vector<Complex> awg_render(const std::vector<Complex>& ideal_samples,
                                const SignalChainParams& chain) {
  const int n_awg = static_cast<int>(ideal_samples.size());
  const int os = chain.oversampling;
  if (os < 1) throw std::invalid_argument("oversampling must be >= 1");
  const double ta = chain.awg_sample_period;
  const double dt = ta / os;
  std::vector<Complex> out(static_cast<std::size_t>(n_awg) * os);

  const bool staircase =
      !(std::isfinite(chain.awg_bandwidth) && chain.awg_bandwidth > 0.0);
  if (staircase) {
    // Centered zero-order hold: sample n owns [(n-1/2) Ta, (n+1/2) Ta).
    for (std::size_t k = 0; k < out.size(); ++k) {
      const double t = static_cast<double>(k) * dt;
      int n = static_cast<int>(std::floor(t / ta + 0.5));
      n = std::clamp(n, 0, n_awg - 1);
      out[k] = ideal_samples[static_cast<std::size_t>(n)];
    }
    return out;
  }

  // Hold convolved with the Gaussian reconstruction filter: analytic erf
  // kernel per sample. tau makes |G(f)| = 1/sqrt(2) at the -3 dB bandwidth.
  const double tau = std::sqrt(std::log(2.0)) / (two_pi * chain.awg_bandwidth);
  const double denom = std::sqrt(2.0) * tau;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double t = static_cast<double>(k) * dt;
    Complex acc(0.0, 0.0);
    for (int n = 0; n < n_awg; ++n) {
      const double lead = t - (n - 0.5) * ta;
      const double lag = t - (n + 0.5) * ta;
      const double kernel =
          0.5 * (std::erf(lead / denom) - std::erf(lag / denom));
      acc += ideal_samples[static_cast<std::size_t>(n)] * kernel;
    }
    out[k] = acc;
  }
  return out;
}

std::vector<Complex> mixer_output(const std::vector<Complex>& w,
                                  const SignalChainParams& chain,
                                  double lo_leak_amplitude) {
  const Complex skew =
      (1.0 + chain.epsilon_q) * std::exp(Complex(0.0, chain.epsilon_phi));
  const Complex mu = 0.5 * (1.0 + skew);
  const Complex nu = 0.5 * (1.0 - skew);
  std::vector<Complex> out(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    out[k] = mu * w[k] + nu * std::conj(w[k]) + lo_leak_amplitude;
  }
  return out;
}

Complex butterworth_response(double f_hz, double cutoff_hz, int order) {
  if (!(std::isfinite(cutoff_hz) && cutoff_hz > 0.0)) return Complex(1.0);
  const Complex s(0.0, f_hz / cutoff_hz);
  Complex denom(1.0, 0.0);
  for (int k = 1; k <= order; ++k) {
    const double angle =
        pi * (2.0 * k + order - 1.0) / (2.0 * static_cast<double>(order));
    denom *= s - std::exp(Complex(0.0, angle));
  }
  return 1.0 / denom;
}

std::vector<Complex> external_filter(const std::vector<Complex>& samples,
                                     double sample_period, double cutoff_hz,
                                     int order) {
  if (!(std::isfinite(cutoff_hz) && cutoff_hz > 0.0)) return samples;
  if (samples.empty()) return samples;
  // Generous padding keeps the IIR tail clear of circular wrap-around.
  const std::size_t m = next_power_of_two(samples.size() * 4);
  std::vector<Complex> padded(m, Complex(0.0, 0.0));
  std::copy(samples.begin(), samples.end(), padded.begin());
  std::vector<Complex> freq = fft(padded, FFTW_FORWARD);
  for (std::size_t j = 0; j < m; ++j) {
    freq[j] *= butterworth_response(bin_frequency(j, m, sample_period),
                                    cutoff_hz, order);
  }
  std::vector<Complex> time = fft(freq, FFTW_BACKWARD);
  std::vector<Complex> out(samples.size());
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = time[k] * scale;
  return out;
}

Waveform render_pulse(const PulseSpec& spec, const SignalChainParams& chain,
                      bool rwa_single_tone) {
  if (spec.duration <= 0.0) throw std::invalid_argument("duration must be > 0");
  if (spec.buffer < 0.0) throw std::invalid_argument("buffer must be >= 0");
  const int os = chain.oversampling;
  const int n_awg = awg_sample_count(spec, chain);
  const double dt = chain.awg_sample_period / os;

  Waveform wf;
  wf.sample_period = dt;
  wf.ssb_frequency = spec.ssb_frequency;

  if (chain.ideal) {
    const std::size_t total = static_cast<std::size_t>(n_awg) * os;
    wf.samples.resize(total);
    for (std::size_t k = 0; k < total; ++k) {
      const double t = static_cast<double>(k) * dt;
      wf.samples[k] = ssb_modulate(complex_envelope(spec, t),
                                   spec.drive_phase, spec.ssb_frequency, t);
    }
    return wf;
  }

  std::vector<Complex> awg_in(static_cast<std::size_t>(n_awg));
  for (int n = 0; n < n_awg; ++n) {
    const double t = n * chain.awg_sample_period;
    awg_in[static_cast<std::size_t>(n)] = ssb_modulate(
        complex_envelope(spec, t), spec.drive_phase, spec.ssb_frequency, t);
  }
  std::vector<Complex> signal = awg_render(awg_in, chain);
  if (uses_external_filter(spec.family)) {
    signal = external_filter(signal, dt, chain.external_filter_cutoff,
                             chain.external_filter_order);
  }
  if (!rwa_single_tone) {
    signal = mixer_output(signal, chain, chain.epsilon_lo * spec.amplitude);
  }
  wf.samples = std::move(signal);
  return wf;
}

Spectrum spectrum(const Waveform& waveform) {
  const std::size_t n = waveform.samples.size();
  if (n == 0) return {};
  const std::size_t m = next_power_of_two(n * 8);
  std::vector<Complex> padded(m, Complex(0.0, 0.0));
  std::copy(waveform.samples.begin(), waveform.samples.end(), padded.begin());
  const std::vector<Complex> freq = fft(padded, FFTW_FORWARD);

  const double dt = waveform.sample_period;
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return bin_frequency(a, m, dt) < bin_frequency(b, m, dt);
  });

  Spectrum spec;
  spec.frequency.reserve(m);
  spec.power.reserve(m);
  for (std::size_t j : order) {
    spec.frequency.push_back(bin_frequency(j, m, dt));
    spec.power.push_back(std::norm(freq[j] * dt));
  }
  return spec;
}

Complex spectral_amplitude_at(const Waveform& waveform, double f_hz) {
  Complex acc(0.0, 0.0);
  const double dt = waveform.sample_period;
  for (std::size_t k = 0; k < waveform.samples.size(); ++k) {
    const double t = static_cast<double>(k) * dt;
    acc += waveform.samples[k] * std::exp(Complex(0.0, -two_pi * f_hz * t));
  }
  return acc * dt;
}

}  // namespace vzsim
