#include "vzsim/device.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <memory>
#include <stdexcept>

#include "vzsim/frame.hpp"

namespace vzsim {

namespace {

constexpr double kHbar = 1.054571817e-34;      // J s
constexpr double kBoltzmann = 1.380649e-23;    // J / K

// Keep RK4 well inside its accuracy region relative to the largest
// Hamiltonian scale; the waveform grid is subdivided accordingly.
constexpr double kStepsPerRadian = 40.0;

void check_device(const DeviceParams& device) {
  if (device.dims < 2) throw std::invalid_argument("dims must be >= 2");
  if (device.t1 <= 0.0 || device.tphi <= 0.0) {
    throw std::invalid_argument("T1 and Tphi must be positive");
  }
  if (device.temperature < 0.0) {
    throw std::invalid_argument("temperature must be >= 0");
  }
}

// Largest Hamiltonian norm scale over the window, for step selection.
double hamiltonian_scale(const DriveFunction& drive, double duration,
                         double base_step, const DeviceParams& device) {
  const int d = device.dims;
  double drift_max = 0.0;
  for (int n = 0; n < d; ++n) {
    const double level = -device.drive_frequency_offset * n +
                         0.5 * device.anharmonicity * (n - 1.0) * n;
    drift_max = std::max(drift_max, std::abs(level));
  }
  double h_max = 0.0;
  const int samples = std::max(1, static_cast<int>(duration / base_step));
  for (int j = 0; j <= samples; ++j) {
    const double t = duration * static_cast<double>(j) / samples;
    h_max = std::max(h_max, std::abs(drive(t)));
  }
  return drift_max + 2.0 * h_max * std::sqrt(static_cast<double>(d - 1));
}

int substep_count(const DriveFunction& drive, double duration,
                  double base_step, const DeviceParams& device,
                  double step_scale) {
  const double scale = hamiltonian_scale(drive, duration, base_step, device);
  const double dt_target =
      (scale > 0.0) ? 1.0 / (kStepsPerRadian * scale) : base_step;
  int n_sub = static_cast<int>(
      std::ceil(base_step / std::min(base_step, dt_target) - 1e-12));
  if (step_scale < 1.0) {
    n_sub = static_cast<int>(std::ceil(n_sub / step_scale - 1e-12));
  }
  return std::max(1, n_sub);
}

// Classic RK4 over [0, duration], stepping each base interval in n_sub
// pieces. The right-hand side f(t, y) must be linear in y.
template <typename State, typename Rhs>
State integrate_rk4(State y, const Rhs& f, double duration, double base_step,
                    int n_sub) {
  const int n_base = std::max(
      1, static_cast<int>(std::ceil(duration / base_step - 1e-9)));
  for (int j = 0; j < n_base; ++j) {
    const double t0 = j * base_step;
    const double t1 = std::min(duration, t0 + base_step);
    const double h = (t1 - t0) / n_sub;
    if (h <= 0.0) continue;
    for (int s = 0; s < n_sub; ++s) {
      const double t = t0 + s * h;
      const State k1 = f(t, y);
      const State k2 = f(t + 0.5 * h, y + (0.5 * h) * k1);
      const State k3 = f(t + 0.5 * h, y + (0.5 * h) * k2);
      const State k4 = f(t + h, y + h * k3);
      y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  return y;
}

}  // namespace

MatX number_operator(int dims) {
  MatX n = MatX::Zero(dims, dims);
  for (int k = 0; k < dims; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

MatX lowering_operator(int dims) {
  MatX a = MatX::Zero(dims, dims);
  for (int k = 1; k < dims; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

MatX drift_hamiltonian(const DeviceParams& device) {
  check_device(device);
  MatX h = MatX::Zero(device.dims, device.dims);
  for (int n = 0; n < device.dims; ++n) {
    h(n, n) = -device.drive_frequency_offset * n +
              0.5 * device.anharmonicity * (n - 1.0) * n;
  }
  return h;
}

DriveFunction drive_from_waveform(const Waveform& waveform) {
  auto samples = std::make_shared<std::vector<Complex>>(waveform.samples);
  const double dt = waveform.sample_period;
  const double ssb = waveform.ssb_frequency;
  return [samples, dt, ssb](double t) -> Complex {
    const auto& s = *samples;
    if (s.empty()) return Complex(0.0, 0.0);
    const auto at = [&s](long k) -> Complex {
      if (k < 0) k = 0;
      const long last = static_cast<long>(s.size()) - 1;
      if (k > last) k = last;
      return s[static_cast<std::size_t>(k)];
    };
    const double x = t / dt;
    const long k = static_cast<long>(std::floor(x));
    const double u = x - static_cast<double>(k);
    // Uniform Catmull-Rom segment through the four neighboring samples.
    const Complex p0 = at(k - 1), p1 = at(k), p2 = at(k + 1), p3 = at(k + 2);
    const Complex value =
        0.5 * (2.0 * p1 + (p2 - p0) * u +
               (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * (u * u) +
               (3.0 * p1 - p0 - 3.0 * p2 + p3) * (u * u * u));
    return 0.5 * std::conj(value) * std::exp(Complex(0.0, ssb * t));
  };
}

DriveFunction ideal_drive(const PulseSpec& spec) {
  const PulseSpec copy = spec;
  return [copy](double t) -> Complex {
    return 0.5 * std::conj(complex_envelope(copy, t)) *
           std::exp(Complex(0.0, copy.drive_phase));
  };
}

MatX drive_hamiltonian(double t, const DriveFunction& drive,
                       const DeviceParams& device) {
  const int d = device.dims;
  MatX h = drift_hamiltonian(device);
  const Complex amp = drive(t);
  for (int k = 1; k < d; ++k) {
    const double root = std::sqrt(static_cast<double>(k));
    h(k, k - 1) += amp * root;             // h a^dag
    h(k - 1, k) += std::conj(amp) * root;  // h* a
  }
  return h;
}

double thermal_occupation(const DeviceParams& device) {
  check_device(device);
  if (device.temperature <= 0.0) return 0.0;
  const double x =
      kHbar * device.omega01 / (kBoltzmann * device.temperature);
  return 1.0 / std::expm1(x);
}

std::vector<MatX> lindblad_dissipators(const DeviceParams& device) {
  const double nbar = thermal_occupation(device);
  const MatX a = lowering_operator(device.dims);
  std::vector<MatX> ops;
  ops.push_back(std::sqrt((1.0 + nbar) / device.t1) * a);
  if (nbar > 0.0) {
    ops.push_back(std::sqrt(nbar / device.t1) * a.adjoint());
  }
  ops.push_back(std::sqrt(2.0 / device.tphi) * number_operator(device.dims));
  return ops;
}

VecXd thermal_equilibrium(const DeviceParams& device) {
  check_device(device);
  const int d = device.dims;
  VecXd p = VecXd::Zero(d);
  if (device.temperature <= 0.0) {
    p(0) = 1.0;
    return p;
  }
  const double beta = kHbar / (kBoltzmann * device.temperature);
  for (int n = 0; n < d; ++n) {
    const double energy =
        device.omega01 * n + 0.5 * device.anharmonicity * (n - 1.0) * n;
    p(n) = std::exp(-beta * energy);
  }
  p /= p.sum();
  return p;
}

MatX evolve_unitary(const DriveFunction& drive, double duration,
                    const DeviceParams& device, double base_step,
                    double step_scale) {
  check_device(device);
  const int d = device.dims;
  const int n_sub = substep_count(drive, duration, base_step, device,
                                  step_scale);
  const auto rhs = [&](double t, const MatX& u) -> MatX {
    return Complex(0.0, -1.0) * (drive_hamiltonian(t, drive, device) * u);
  };
  return integrate_rk4(MatX(MatX::Identity(d, d)), rhs, duration, base_step,
                       n_sub);
}

MatX evolve_density(const MatX& rho0, const DriveFunction& drive,
                    double duration, const DeviceParams& device,
                    bool open_system, double base_step, double step_scale) {
  check_device(device);
  const int d = device.dims;
  if (rho0.rows() != d || rho0.cols() != d) {
    throw std::invalid_argument("state dimension mismatch");
  }
  std::vector<MatX> ls;
  std::vector<MatX> ldag_ls;
  if (open_system) {
    ls = lindblad_dissipators(device);
    for (const MatX& l : ls) ldag_ls.push_back(l.adjoint() * l);
  }
  const auto rhs = [&](double t, const MatX& rho) -> MatX {
    const MatX h = drive_hamiltonian(t, drive, device);
    MatX out = Complex(0.0, -1.0) * (h * rho - rho * h);
    for (std::size_t k = 0; k < ls.size(); ++k) {
      out += ls[k] * rho * ls[k].adjoint() -
             0.5 * (ldag_ls[k] * rho + rho * ldag_ls[k]);
    }
    return out;
  };
  const int n_sub = substep_count(drive, duration, base_step, device,
                                  step_scale);
  MatX rho = integrate_rk4(MatX(rho0), rhs, duration, base_step, n_sub);
  const double trace_drift = std::abs(rho.trace().real() - 1.0) +
                             std::abs(rho.trace().imag());
  if (trace_drift > 1e-6) {
    throw std::runtime_error(
        "integration step failure: density-matrix trace drifted by " +
        std::to_string(trace_drift));
  }
  return rho;
}

namespace {

MatX dissipator_superoperator(const DeviceParams& device) {
  const int d = device.dims;
  const MatX eye = MatX::Identity(d, d);
  MatX out = MatX::Zero(d * d, d * d);
  for (const MatX& l : lindblad_dissipators(device)) {
    const MatX ldag_l = l.adjoint() * l;
    out += Eigen::kroneckerProduct(l.conjugate(), l).eval();
    out -= 0.5 * Eigen::kroneckerProduct(eye, ldag_l).eval();
    out -= 0.5 * Eigen::kroneckerProduct(ldag_l.transpose(), eye).eval();
  }
  return out;
}

MatX hamiltonian_superoperator(const MatX& h) {
  const int d = static_cast<int>(h.rows());
  const MatX eye = MatX::Identity(d, d);
  return Complex(0.0, -1.0) *
         (Eigen::kroneckerProduct(eye, h).eval() -
          Eigen::kroneckerProduct(h.transpose(), eye).eval());
}

}  // namespace

MatX gate_superoperator(const DriveFunction& drive, double duration,
                        const DeviceParams& device, bool open_system,
                        double base_step, double step_scale) {
  check_device(device);
  if (!open_system) {
    return unitary_superoperator(
        evolve_unitary(drive, duration, device, base_step, step_scale));
  }
  const int d = device.dims;
  const MatX dissipator = dissipator_superoperator(device);
  const auto rhs = [&](double t, const MatX& s) -> MatX {
    const MatX h = drive_hamiltonian(t, drive, device);
    return (hamiltonian_superoperator(h) + dissipator) * s;
  };
  const int n_sub = substep_count(drive, duration, base_step, device,
                                  step_scale);
  return integrate_rk4(MatX(MatX::Identity(d * d, d * d)), rhs, duration,
                       base_step, n_sub);
}

MatX lindblad_generator(const DeviceParams& device) {
  check_device(device);
  return hamiltonian_superoperator(drift_hamiltonian(device)) +
         dissipator_superoperator(device);
}

MatX decay_superoperator(double duration, const DeviceParams& device) {
  return (lindblad_generator(device) * duration).exp();
}

MatX unitary_superoperator(const MatX& u) {
  return Eigen::kroneckerProduct(u.conjugate(), u).eval();
}

MatX apply_superoperator(const MatX& superop, const MatX& rho) {
  const int d = static_cast<int>(rho.rows());
  const Eigen::Map<const Eigen::VectorXcd> vec(rho.data(), d * d);
  const Eigen::VectorXcd out = superop * vec;
  return Eigen::Map<const MatX>(out.data(), d, d);
}

GateReport simulate_gate(const PulseSpec& spec, const SignalChainParams& chain,
                         const DeviceParams& device, const Mat2& target) {
  const Waveform wf = render_pulse(spec, chain, device.rwa_single_tone);
  const DriveFunction drive = drive_from_waveform(wf);
  GateReport report;
  report.propagator = evolve_unitary(drive, wf.duration(), device,
                                     wf.sample_period);
  report.projected = report.propagator.topLeftCorner(2, 2);
  report.target_distance = phase_gauged_distance(report.projected, target);
  return report;
}

MatX run_schedule(const GateSchedule& ops, const MatX& rho0,
                  const ScheduleRunConfig& config) {
  MatX rho = rho0;
  FrameState frame;
  for (const GateOp& op : ops) {
    if (frame.channel_phase.find(op.channel) == frame.channel_phase.end()) {
      frame.channel_phase[op.channel] = 0.0;
    }
    if (op.kind == GateOpKind::VirtualZ) {
      apply_virtual_z(frame, op.channel, op.phase);
      continue;
    }
    PulseSpec spec = config.pulse;
    spec.drive_phase = effective_drive_phase(frame, op.channel, op.gamma);
    spec.amplitude *= op.theta / (pi / 2.0);
    const Waveform wf =
        render_pulse(spec, config.chain, config.device.rwa_single_tone);
    const DriveFunction drive = drive_from_waveform(wf);
    rho = evolve_density(rho, drive, wf.duration(), config.device,
                         config.open_system, wf.sample_period);
  }
  return rho;
}

std::vector<double> measure_populations(const MatX& rho) {
  std::vector<double> p(static_cast<std::size_t>(rho.rows()));
  for (int k = 0; k < rho.rows(); ++k) p[static_cast<std::size_t>(k)] = rho(k, k).real();
  return p;
}

std::vector<double> apply_confusion(const std::vector<double>& populations,
                                    const MatXd& confusion) {
  const auto n = static_cast<Eigen::Index>(populations.size());
  if (confusion.rows() != n || confusion.cols() != n) {
    throw std::invalid_argument("confusion matrix dimension mismatch");
  }
  const Eigen::Map<const VecXd> p(populations.data(), n);
  const VecXd m = confusion.transpose() * p;
  return std::vector<double>(m.data(), m.data() + n);
}

std::vector<double> invert_povm(const std::vector<double>& measured,
                                const MatXd& confusion) {
  const auto n = static_cast<Eigen::Index>(measured.size());
  if (confusion.rows() != n || confusion.cols() != n) {
    throw std::invalid_argument("confusion matrix dimension mismatch");
  }
  const Eigen::ColPivHouseholderQR<MatXd> qr(confusion.transpose());
  if (qr.rank() < n) {
    throw std::invalid_argument("confusion matrix is singular");
  }
  const Eigen::Map<const VecXd> m(measured.data(), n);
  const VecXd p = qr.solve(m);
  return std::vector<double>(p.data(), p.data() + n);
}

std::vector<double> sample_shots(const std::vector<double>& populations,
                                 int shots, std::uint64_t key) {
  if (shots <= 0) throw std::invalid_argument("shots must be positive");
  std::vector<double> cdf(populations.size());
  double total = 0.0;
  for (std::size_t k = 0; k < populations.size(); ++k) {
    total += std::max(0.0, populations[k]);
    cdf[k] = total;
  }
  if (total <= 0.0) throw std::invalid_argument("populations sum to zero");
  std::vector<int> counts(populations.size(), 0);
  for (int s = 0; s < shots; ++s) {
    const double u = total * uniform_double(counter_word(key, static_cast<std::uint64_t>(s)));
    std::size_t bin = 0;
    while (bin + 1 < cdf.size() && u >= cdf[bin]) ++bin;
    ++counts[bin];
  }
  std::vector<double> freq(populations.size());
  for (std::size_t k = 0; k < counts.size(); ++k) {
    freq[k] = static_cast<double>(counts[k]) / static_cast<double>(shots);
  }
  return freq;
}

}  // namespace vzsim
