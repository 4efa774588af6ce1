#include "vzsim/experiment.hpp"

#include <Eigen/Dense>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "vzsim/angles.hpp"
#include "vzsim/clifford.hpp"
#include "vzsim/frame.hpp"
#include "vzsim/rng.hpp"

namespace vzsim {

namespace {

constexpr const char* kChannel = "d0";

// Pi/2 pulse channel cached once per experiment. All scheduled pulses are the
// same prototype played at different drive phases; a phase change conjugates
// the Hamiltonian by the number-operator phase e^{-i n gamma}, which the
// drift and the dissipators commute with, so one gamma = 0 superoperator
// serves every pulse:
//   rho_out(gamma) = R^dag M0(R rho R^dag) R,  R = diag(e^{-i j gamma}).
// The conjugation is exact for the intended drive tone; the mixer's image
// and carrier-leak tones (when enabled) do not rotate with gamma, but their
// phase sensitivity is several orders below the per-gate error scale.
struct CachedPulse {
  MatX superop;
  int dims = 0;
};

MatX embedded_quarter_turn(int dims) {
  MatX u = MatX::Identity(dims, dims);
  u.topLeftCorner(2, 2) = x_rotation(pi / 2.0);
  return u;
}

CachedPulse build_pulse_channel(const PulseSpec& pulse,
                                const SignalChainParams& chain,
                                const DeviceParams& device, GateModel model,
                                bool open_system) {
  CachedPulse cache;
  cache.dims = device.dims;
  PulseSpec spec = pulse;
  spec.drive_phase = 0.0;
  if (model == GateModel::IdealPulses) {
    MatX s = unitary_superoperator(embedded_quarter_turn(cache.dims));
    if (open_system) {
      s = (decay_superoperator(spec.gate_time(), device) * s).eval();
    }
    cache.superop = std::move(s);
  } else {
    if (!(spec.amplitude > 0.0)) {
      throw std::invalid_argument(
          "run_rb_experiment: pulse amplitude must be calibrated (> 0)");
    }
    Waveform waveform = render_pulse(spec, chain, device.rwa_single_tone);
    cache.superop =
        gate_superoperator(drive_from_waveform(waveform), waveform.duration(),
                           device, open_system, waveform.sample_period);
  }
  return cache;
}

// Applies the cached channel at drive phase gamma to a column-stacked state.
void apply_phased(const CachedPulse& cache, double gamma,
                  Eigen::VectorXcd& state, Eigen::VectorXcd& scratch) {
  const int d = cache.dims;
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) {
      const double angle = -static_cast<double>(j - k) * gamma;
      state[j + d * k] *= Complex(std::cos(angle), std::sin(angle));
    }
  }
  scratch.noalias() = cache.superop * state;
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) {
      const double angle = static_cast<double>(j - k) * gamma;
      scratch[j + d * k] *= Complex(std::cos(angle), std::sin(angle));
    }
  }
  state.swap(scratch);
}

// Plays a list of Clifford indices on |0><0| and returns the final
// column-stacked state.
Eigen::VectorXcd play_cliffords(const std::vector<int>& indices,
                                const CliffordTable& table,
                                const CachedPulse& cache, bool use_hz_basis,
                                double vz_correction) {
  const int d = cache.dims;
  Eigen::VectorXcd state = Eigen::VectorXcd::Zero(d * d);
  state[0] = 1.0;
  Eigen::VectorXcd scratch(d * d);
  FrameState frame = make_frame({kChannel});
  for (int index : indices) {
    const GateSchedule ops =
        clifford_schedule(table, index, use_hz_basis, kChannel, vz_correction);
    for (const GateOp& op : ops) {
      if (op.kind == GateOpKind::VirtualZ) {
        apply_virtual_z(frame, op.channel, op.phase);
      } else {
        if (std::abs(op.theta - pi / 2.0) > 1e-12) {
          throw std::logic_error(
              "rb scheduling produced a pulse that is not a quarter turn");
        }
        apply_phased(cache, effective_drive_phase(frame, op.channel, op.gamma),
                     state, scratch);
      }
    }
  }
  return state;
}

double population(const Eigen::VectorXcd& state, int dims, int level) {
  if (level >= dims) return 0.0;
  return std::real(state[level + dims * level]);
}

// Deterministic parallel map over [0, items): each index writes only its own
// output slot, so results are bitwise independent of scheduling.
template <typename Fn>
void parallel_map(int items, Fn&& fn) {
  const int workers = worker_count(items);
  if (workers <= 1) {
    for (int i = 0; i < items; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto body = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= items) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

void check_composes_to_identity(const RbSequence& seq,
                                const CliffordTable& table) {
  int composed = table.identity_index;
  for (int index : seq.cliffords) {
    composed = table.product[static_cast<std::size_t>(index)]
                            [static_cast<std::size_t>(composed)];
  }
  composed = table.product[static_cast<std::size_t>(seq.recovery)]
                          [static_cast<std::size_t>(composed)];
  if (composed != table.identity_index) {
    throw std::logic_error("rb sequence does not compose to the identity");
  }
}

void check_config(const RbConfig& config) {
  if (config.lengths.empty()) {
    throw std::invalid_argument("run_rb_experiment: no sequence lengths");
  }
  int previous = 0;
  for (int m : config.lengths) {
    if (m < 1 || m <= previous) {
      throw std::invalid_argument(
          "run_rb_experiment: lengths must be strictly increasing and >= 1");
    }
    previous = m;
  }
  if (config.n_seeds < 1) {
    throw std::invalid_argument("run_rb_experiment: n_seeds must be >= 1");
  }
  if (config.interleaved_gate >= 24) {
    throw std::invalid_argument("run_rb_experiment: Clifford index out of range");
  }
}

}  // namespace

int worker_count(int items) {
  if (items <= 1) return 1;
  const unsigned hardware = std::thread::hardware_concurrency();
  long workers = hardware == 0 ? 1 : static_cast<long>(hardware);
  if (const char* env = std::getenv("VZSIM_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && parsed >= 1) workers = parsed;
  }
  workers = std::min<long>(workers, items);
  return static_cast<int>(std::max<long>(1, workers));
}

RbResult run_rb_experiment(const RbConfig& config) {
  check_config(config);
  const CliffordTable table = build_clifford_table();
  const CachedPulse cache = build_pulse_channel(
      config.pulse, config.chain, config.device, config.model,
      config.open_system);
  const bool use_hz = config.basis == RbBasis::HZ;
  const double vz_correction = uses_vz_sandwich(config.pulse.family)
                                   ? config.pulse.vz_correction
                                   : 0.0;

  const int n_lengths = static_cast<int>(config.lengths.size());
  const int items = n_lengths * config.n_seeds;
  RbResult result;
  result.points.resize(static_cast<std::size_t>(items));

  parallel_map(items, [&](int item) {
    const int length_index = item / config.n_seeds;
    const int seed_index = item % config.n_seeds;
    const int m = config.lengths[static_cast<std::size_t>(length_index)];
    const std::uint64_t key =
        stream_key(config.seed, static_cast<std::uint64_t>(length_index),
                   static_cast<std::uint64_t>(seed_index));
    RbSequence seq = rb_sequence(m, key, table);
    if (config.interleaved_gate >= 0) {
      seq = interleave(seq, config.interleaved_gate, table);
    }
    check_composes_to_identity(seq, table);

    std::vector<int> played = seq.cliffords;
    played.push_back(seq.recovery);
    const Eigen::VectorXcd state =
        play_cliffords(played, table, cache, use_hz, vz_correction);

    RbPoint& point = result.points[static_cast<std::size_t>(item)];
    point.length = m;
    point.seed_index = seed_index;
    point.p0 = population(state, cache.dims, 0);
    point.p1 = population(state, cache.dims, 1);
    point.p2 = population(state, cache.dims, 2);
  });

  result.mean_p0.assign(static_cast<std::size_t>(n_lengths), 0.0);
  result.mean_p2.assign(static_cast<std::size_t>(n_lengths), 0.0);
  for (int li = 0; li < n_lengths; ++li) {
    double sum0 = 0.0;
    double sum2 = 0.0;
    for (int si = 0; si < config.n_seeds; ++si) {
      const RbPoint& point =
          result.points[static_cast<std::size_t>(li * config.n_seeds + si)];
      sum0 += point.p0;
      sum2 += point.p2;
    }
    result.mean_p0[static_cast<std::size_t>(li)] = sum0 / config.n_seeds;
    result.mean_p2[static_cast<std::size_t>(li)] = sum2 / config.n_seeds;
  }

  std::vector<double> lengths(config.lengths.begin(), config.lengths.end());
  result.ground_fit = fit_rb_decay(lengths, result.mean_p0);
  result.leak_fit = fit_rb_decay(lengths, result.mean_p2);

  result.gates_per_clifford =
      use_hz ? table.hz_mean_gates() : table.xy_mean_gates();
  const double n_g = result.gates_per_clifford;
  const double r = result.ground_fit.rate;
  result.epc = error_per_clifford(r);
  result.epc_stderr = result.ground_fit.rate_err / 2.0;
  result.epg = error_per_gate(r, n_g);
  result.epg_stderr =
      result.ground_fit.rate_err * std::pow(r, 1.0 / n_g - 1.0) / (2.0 * n_g);
  const double r2 = result.leak_fit.rate;
  // Noise around a near-zero leakage floor can push the fitted asymptote
  // marginally outside its physical range; clamp for the rate conversion.
  const double b2 =
      std::min(1.0, std::max(0.0, result.leak_fit.baseline));
  result.lpg = leakage_per_gate(r2, b2, n_g);
  result.lpg_stderr =
      std::sqrt(std::pow(b2 * result.leak_fit.rate_err, 2) +
                std::pow((1.0 - r2) * result.leak_fit.baseline_err, 2)) /
      n_g;
  return result;
}

double leakage_proxy(const PulseSpec& pulse, const SignalChainParams& chain,
                     const DeviceParams& device, RbBasis basis,
                     int n_cliffords, int n_seeds, std::uint64_t seed) {
  if (device.dims < 3) {
    throw std::invalid_argument("leakage_proxy: need at least three levels");
  }
  if (n_cliffords < 1 || n_seeds < 1) {
    throw std::invalid_argument("leakage_proxy: counts must be >= 1");
  }
  const CliffordTable table = build_clifford_table();
  const CachedPulse cache = build_pulse_channel(pulse, chain, device,
                                                GateModel::Simulated, true);
  const bool use_hz = basis == RbBasis::HZ;
  const double vz_correction =
      uses_vz_sandwich(pulse.family) ? pulse.vz_correction : 0.0;

  std::vector<double> p2(static_cast<std::size_t>(n_seeds), 0.0);
  parallel_map(n_seeds, [&](int seed_index) {
    const std::uint64_t key =
        stream_key(seed, 0, static_cast<std::uint64_t>(seed_index));
    const RbSequence seq = rb_sequence(n_cliffords, key, table);
    const Eigen::VectorXcd state =
        play_cliffords(seq.cliffords, table, cache, use_hz, vz_correction);
    p2[static_cast<std::size_t>(seed_index)] = population(state, cache.dims, 2);
  });
  double sum = 0.0;
  for (double value : p2) sum += value;
  return sum / n_seeds;
}

}  // namespace vzsim
